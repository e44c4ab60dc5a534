#ifndef ARRFROB_MATRIX_HPP
#define ARRFROB_MATRIX_HPP

#include "arrfrob/rational.hpp"

#include <algorithm>
#include <cassert>
#include <vector>

namespace arrfrob {

template <class S> using Vec = std::vector<S>;

template <class S> class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : r_(rows), c_(cols), d_(static_cast<size_t>(rows) * cols, from_rational<S>(Rational(0))) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = from_rational<S>(Rational(1));
        return m;
    }
    static Matrix from_columns(const std::vector<Vec<S>>& cols, int rows) {
        Matrix m(rows, static_cast<int>(cols.size()));
        for (int j = 0; j < m.c_; ++j)
            for (int i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    S& operator()(int i, int j) { return d_[static_cast<size_t>(i) * c_ + j]; }
    const S& operator()(int i, int j) const { return d_[static_cast<size_t>(i) * c_ + j]; }

    Vec<S> column(int j) const {
        Vec<S> v(r_);
        for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    Matrix transpose() const {
        Matrix t(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero_matrix() const {
        for (const auto& x : d_)
            if (!is_zero(x)) return false;
        return true;
    }

    double max_abs() const {
        double m = 0;
        for (const auto& x : d_) m = std::max(m, magnitude(x));
        return m;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        Matrix m(a.r_, a.c_);
        for (size_t i = 0; i < a.d_.size(); ++i) m.d_[i] = a.d_[i] + b.d_[i];
        return m;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix m(a.r_, a.c_);
        for (size_t i = 0; i < a.d_.size(); ++i) m.d_[i] = a.d_[i] - b.d_[i];
        return m;
    }
    friend Matrix operator*(const S& s, const Matrix& a) {
        Matrix m(a.r_, a.c_);
        for (size_t i = 0; i < a.d_.size(); ++i) m.d_[i] = s * a.d_[i];
        return m;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        assert(a.c_ == b.r_);
        Matrix m(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int l = 0; l < a.c_; ++l) {
                const S& x = a(i, l);
                if (is_zero(x)) continue;
                for (int j = 0; j < b.c_; ++j) m(i, j) += x * b(l, j);
            }
        return m;
    }
    friend Vec<S> operator*(const Matrix& a, const Vec<S>& v) {
        Vec<S> out(a.r_, from_rational<S>(Rational(0)));
        for (int i = 0; i < a.r_; ++i)
            for (int j = 0; j < a.c_; ++j) out[i] += a(i, j) * v[j];
        return out;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.d_ == b.d_;
    }

private:
    int r_ = 0, c_ = 0;
    std::vector<S> d_;
};

template <class S> Matrix<S> convert(const Matrix<Rational>& m) {
    Matrix<S> out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = from_rational<S>(m(i, j));
    return out;
}

template <class S> Vec<S> zeros(int n) { return Vec<S>(n, from_rational<S>(Rational(0))); }

template <class S> Vec<S> add(const Vec<S>& x, const Vec<S>& y) {
    Vec<S> r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
}
template <class S> Vec<S> sub(const Vec<S>& x, const Vec<S>& y) {
    Vec<S> r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
    return r;
}
template <class S> Vec<S> scale(const S& s, const Vec<S>& x) {
    Vec<S> r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = s * x[i];
    return r;
}
template <class S> void axpy(const S& s, const Vec<S>& x, Vec<S>& y) {
    for (size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}
template <class S> bool all_zero(const Vec<S>& x) {
    for (const auto& e : x)
        if (!is_zero(e)) return false;
    return true;
}
template <class S> double max_abs(const Vec<S>& x) {
    double m = 0;
    for (const auto& e : x) m = std::max(m, magnitude(e));
    return m;
}

// Reduced row echelon form in place; returns pivot columns.
template <class S> std::vector<int> rref(Matrix<S>& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int best = -1;
        double best_mag = 0;
        for (int i = row; i < m.rows(); ++i) {
            double mag = magnitude(m(i, col));
            if (!is_zero(m(i, col)) && (best < 0 || mag > best_mag)) {
                best = i;
                best_mag = mag;
            }
        }
        if (best < 0) continue;
        if (best != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(best, j), m(row, j));
        S inv = from_rational<S>(Rational(1)) / m(row, col);
        for (int j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || is_zero(m(i, col))) continue;
            S f = m(i, col);
            for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class S> int rank(Matrix<S> m) { return static_cast<int>(rref(m).size()); }

// Basis of {x : m x = 0}.
template <class S> std::vector<Vec<S>> nullspace(Matrix<S> m) {
    auto piv = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : piv) is_pivot[p] = true;
    std::vector<Vec<S>> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec<S> v = zeros<S>(m.cols());
        v[f] = from_rational<S>(Rational(1));
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(static_cast<int>(r), f);
        basis.push_back(v);
    }
    return basis;
}

template <class S> S determinant(Matrix<S> m) {
    assert(m.rows() == m.cols());
    int n = m.rows();
    S det = from_rational<S>(Rational(1));
    for (int col = 0; col < n; ++col) {
        int best = -1;
        double best_mag = 0;
        for (int i = col; i < n; ++i) {
            double mag = magnitude(m(i, col));
            if (!is_zero(m(i, col)) && (best < 0 || mag > best_mag)) {
                best = i;
                best_mag = mag;
            }
        }
        if (best < 0) return from_rational<S>(Rational(0));
        if (best != col) {
            for (int j = 0; j < n; ++j) std::swap(m(best, j), m(col, j));
            det = -det;
        }
        det = det * m(col, col);
        for (int i = col + 1; i < n; ++i) {
            if (is_zero(m(i, col))) continue;
            S f = m(i, col) / m(col, col);
            for (int j = col; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return det;
}

// Solves a x = b for square nonsingular a; throws if singular.
template <class S> Vec<S> solve(const Matrix<S>& a, const Vec<S>& b) {
    int n = a.rows();
    Matrix<S> aug(n, n + 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    auto piv = rref(aug);
    if (static_cast<int>(piv.size()) < n || piv.back() >= n) throw std::runtime_error("singular linear system");
    Vec<S> x(n);
    for (int i = 0; i < n; ++i) x[i] = aug(i, n);
    return x;
}

}  // namespace arrfrob

#endif
