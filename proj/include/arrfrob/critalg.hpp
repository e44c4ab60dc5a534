#ifndef ARRFROB_CRITALG_HPP
#define ARRFROB_CRITALG_HPP

#include "arrfrob/core.hpp"

#include <functional>
#include <map>

namespace arrfrob {

struct CriticalPoint {
    std::vector<Complex> t;
    Complex hess;
    double residual = 0.0;
};

struct CriticalSet {
    std::vector<CriticalPoint> points;
    int expected = 0;
    bool degenerate = false;
    std::string diagnostic;
    bool ok() const { return !degenerate && static_cast<int>(points.size()) == expected; }
};

long long binomial(int n, int k);
int expected_critical_count(const Family& fam);

std::vector<Complex> f_values(const Family& fam, const std::vector<Complex>& z, const std::vector<Complex>& t);
std::vector<Complex> master_gradient(const Family& fam, const std::vector<Complex>& z, const std::vector<Complex>& t);
Matrix<Complex> master_hessian(const Family& fam, const std::vector<Complex>& z, const std::vector<Complex>& t);

// k in {1, 2}: eigenvalue / resultant elimination followed by damped Newton refinement.
CriticalSet solve_critical(const Family& fam, const std::vector<Rational>& z);

// Sum over critical points of g(p) h(p) / Hess(p), given point values.
Complex residue_pairing_analytic(const CriticalSet& cs, const std::vector<Complex>& g, const std::vector<Complex>& h);

// Exact model of the algebra of functions on the critical set in the anchored w-basis.
class WAlgebra {
public:
    WAlgebra(const Family& fam, int anchor);

    const Family& family() const { return fam_; }
    int anchor() const { return anchor_; }
    const SubsetIndex& basis() const { return basis_; }
    int dim() const { return basis_.size(); }

    // w_tuple for any ordered tuple, rewritten in the anchored basis.
    Vec<Rational> w_element(const Subset& tuple) const;
    // prod_j [a_j/f_j]^{s_j} for a sorted multiset of size k (z-independent).
    const Vec<Rational>& reduce(const Subset& multiset) const;
    // Same reduction with every admissible elimination choice; returns all distinct results.
    std::vector<Vec<Rational>> reduce_all_orders(const Subset& multiset) const;

    template <class S> S circuit_form(const Subset& tuple, const std::vector<S>& z) const {
        S f = from_rational<S>(Rational(0));
        for (size_t m = 0; m < tuple.size(); ++m) {
            Subset rest = tuple;
            rest.erase(rest.begin() + static_cast<long>(m));
            S term = from_rational<S>(fam_.minor(rest)) * z[tuple[m]];
            if (m % 2) f -= term; else f += term;
        }
        return f;
    }

    // [a_i/f_i] * w_tuple.
    template <class S> Vec<S> gen_mul_tuple(int i, const Subset& tuple, const std::vector<S>& z) const {
        Vec<S> out = zeros<S>(dim());
        auto hit = std::find(tuple.begin(), tuple.end(), i);
        if (hit == tuple.end()) {
            Subset full{i};
            full.insert(full.end(), tuple.begin(), tuple.end());
            S f = circuit_form(full, z);
            if (is_zero(f)) throw DiscriminantError("pole of the generator product at " + subset_label(full));
            S coef = from_rational<S>(fam_.minor(tuple)) / f;
            for (size_t l = 0; l < full.size(); ++l) {
                Subset rest = full;
                rest.erase(rest.begin() + static_cast<long>(l));
                Rational c = fam_.a()[full[l]];
                if (l % 2) c = -c;
                axpy(S(coef * from_rational<S>(c)), convert<S>(w_element(rest)), out);
            }
            return out;
        }
        long p = hit - tuple.begin();
        Subset rest = tuple;
        rest.erase(rest.begin() + p);
        for (int m = 0; m < fam_.n(); ++m) {
            if (m == i || std::find(rest.begin(), rest.end(), m) != rest.end()) continue;
            Subset other{m};
            other.insert(other.end(), rest.begin(), rest.end());
            Vec<S> part = gen_mul_tuple(i, other, z);
            for (int r = 0; r < dim(); ++r) out[r] -= part[r];
        }
        if (p % 2)
            for (auto& x : out) x = -x;
        return out;
    }

    template <class S> Vec<S> gen_mul(int i, const Vec<S>& x, const std::vector<S>& z) const {
        Vec<S> out = zeros<S>(dim());
        for (int r = 0; r < dim(); ++r)
            if (!is_zero(x[r])) axpy(x[r], gen_mul_tuple(i, basis_.at(r), z), out);
        return out;
    }

    template <class S> Vec<S> multiply(const Vec<S>& x, const Vec<S>& y, const std::vector<S>& z) const {
        Vec<S> out = zeros<S>(dim());
        for (int r = 0; r < dim(); ++r) {
            if (is_zero(x[r])) continue;
            const Subset& t = basis_.at(r);
            Vec<S> acc = y;
            for (int idx : t) acc = gen_mul(idx, acc, z);
            axpy(S(x[r] * from_rational<S>(fam_.minor(t))), acc, out);
        }
        return out;
    }

    // [1] from the closed form in terms of circuit forms f_{i0,T}^k.
    template <class S> Vec<S> identity_closed(const std::vector<S>& z) const {
        int k = fam_.k();
        Vec<S> out = zeros<S>(dim());
        S scale = from_rational<S>(Rational(1) / power(fam_.abs_a(), k));
        for (int r = 0; r < dim(); ++r) {
            Subset full{anchor_};
            full.insert(full.end(), basis_.at(r).begin(), basis_.at(r).end());
            Rational den = 1;
            for (int m = 0; m <= k; ++m) {
                Subset rest = full;
                rest.erase(rest.begin() + m);
                den *= (m % 2 ? -1 : 1) * fam_.minor(rest);
            }
            out[r] = scale * power(circuit_form(full, z), k) / from_rational<S>(den);
        }
        return out;
    }

    // [1] = (|a|^{-1} sum_j z_j [a_j/f_j])^k expanded and reduced.
    template <class S> Vec<S> identity_power(const std::vector<S>& z) const {
        return padded_product({}, z);
    }

    // prod_{m in ms} [a_m/f_m] for |ms| <= k, padded by powers of [1] and reduced.
    template <class S> Vec<S> padded_product(const Subset& ms, const std::vector<S>& z) const {
        int k = fam_.k();
        int pad = k - static_cast<int>(ms.size());
        Vec<S> out = zeros<S>(dim());
        S inv = from_rational<S>(Rational(1) / fam_.abs_a());
        for (const auto& ex : multisets(pad)) {
            S coef = from_rational<S>(multinomial(ex));
            for (int j : ex) coef = coef * z[j] * inv;
            Subset m = ms;
            m.insert(m.end(), ex.begin(), ex.end());
            std::sort(m.begin(), m.end());
            axpy(coef, convert<S>(reduce(m)), out);
        }
        return out;
    }

    // prod_{m in ms} [a_m/f_m] for any length, by successive generator multiplication of [1].
    template <class S> Vec<S> generator_product(const Subset& ms, const std::vector<S>& z) const {
        Vec<S> x = identity_closed(z);
        for (int m : ms) x = gen_mul(m, x, z);
        return x;
    }

    Vec<Rational> change_anchor(const Vec<Rational>& x, const WAlgebra& to) const;

    // Point value of the rational-function representative at t.
    Complex evaluate(const Vec<Complex>& x, const std::vector<Complex>& z, const std::vector<Complex>& t) const;
    Complex evaluate_w(int r, const std::vector<Complex>& z, const std::vector<Complex>& t) const;

    std::vector<Subset> multisets(int size) const;
    static Rational multinomial(const Subset& sorted_multiset);

private:
    Vec<Rational> reduce_step(const Subset& multiset, int eliminate, const Subset& relation) const;
    Subset relation_for(const Subset& multiset, int eliminate) const;
    void all_orders(const Subset& multiset, std::vector<Vec<Rational>>& out) const;

    const Family& fam_;
    int anchor_;
    SubsetIndex basis_;
    std::map<Subset, Vec<Rational>> reduced_;
};

}  // namespace arrfrob

#endif
