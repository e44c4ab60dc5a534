#ifndef ARRFROB_POLY_HPP
#define ARRFROB_POLY_HPP

#include "arrfrob/rational.hpp"

#include <map>
#include <vector>

namespace arrfrob {

// Sparse multivariate polynomial over Q in variables z_0..z_{n-1}.
class Poly {
public:
    using Exponent = std::vector<int>;

    Poly() = default;
    explicit Poly(int nvars) : n_(nvars) {}
    static Poly constant(int nvars, const Rational& c);
    static Poly linear(const std::vector<Rational>& coeffs);

    int nvars() const { return n_; }
    const std::map<Exponent, Rational>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    // Largest and smallest total degree among nonzero terms (-1 for the zero polynomial).
    int max_degree() const;
    int min_degree() const;

    Poly derivative(int var) const;
    Poly pow(int e) const;

    template <class S> S evaluate(const std::vector<S>& z) const {
        S total = from_rational<S>(Rational(0));
        for (const auto& [e, c] : t_) {
            S term = from_rational<S>(c);
            for (int i = 0; i < n_; ++i)
                for (int p = 0; p < e[i]; ++p) term = term * z[i];
            total += term;
        }
        return total;
    }

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Rational& s, const Poly& a);
    friend bool operator==(const Poly& a, const Poly& b) { return a.n_ == b.n_ && a.t_ == b.t_; }

private:
    void add_term(const Exponent& e, const Rational& c);
    int n_ = 0;
    std::map<Exponent, Rational> t_;
};

// Dense univariate polynomial over a scalar field, coefficients by ascending degree.
template <class S> struct UPoly {
    std::vector<S> c;
    int degree() const {
        for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
            if (!is_zero(c[i])) return i;
        return -1;
    }
    void trim() { c.resize(static_cast<size_t>(degree() + 1)); }
};

template <class S> UPoly<S> operator+(const UPoly<S>& a, const UPoly<S>& b) {
    UPoly<S> r;
    r.c.assign(std::max(a.c.size(), b.c.size()), from_rational<S>(Rational(0)));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.trim();
    return r;
}
template <class S> UPoly<S> operator-(const UPoly<S>& a, const UPoly<S>& b) {
    UPoly<S> r;
    r.c.assign(std::max(a.c.size(), b.c.size()), from_rational<S>(Rational(0)));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    r.trim();
    return r;
}
template <class S> UPoly<S> operator*(const UPoly<S>& a, const UPoly<S>& b) {
    UPoly<S> r;
    if (a.c.empty() || b.c.empty()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, from_rational<S>(Rational(0)));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    r.trim();
    return r;
}
// Exact division; the remainder must vanish.
UPoly<Rational> exact_divide(const UPoly<Rational>& a, const UPoly<Rational>& b);

}  // namespace arrfrob

#endif
