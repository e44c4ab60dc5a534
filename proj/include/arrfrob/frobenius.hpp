#ifndef ARRFROB_FROBENIUS_HPP
#define ARRFROB_FROBENIUS_HPP

#include "arrfrob/critalg.hpp"
#include "arrfrob/gaussmanin.hpp"
#include "arrfrob/poly.hpp"

namespace arrfrob {

int default_anchor(const Family& fam);

// {1}(z) = q(z) in the standard basis as polynomials of degree k (normalized so that c = 1).
std::vector<Poly> period_polynomials(const Family& fam, int anchor = -1);

template <class S> Vec<S> evaluate_polys(const std::vector<Poly>& ps, const std::vector<S>& z) {
    Vec<S> out;
    out.reserve(ps.size());
    for (const auto& p : ps) out.push_back(p.evaluate(z));
    return out;
}

FlagVector period_map(const Family& fam, const std::vector<Rational>& z, int anchor = -1);
// Section-specific closed forms: k = 1 coordinates q_i, k = 2 sum over pairs avoiding a fixed index.
FlagVector period_k1_closed(const Family& fam, const std::vector<Rational>& z);
FlagVector period_k2_closed(const Family& fam, const std::vector<Rational>& z, int fixed);

// Naive isomorphism w_T -> v_T as a matrix from the anchored w-basis to V.
Matrix<Rational> naive_iso(const WAlgebra& alg);
template <class S> Vec<S> nu_apply(const WAlgebra& alg, const Vec<S>& x) {
    return convert<S>(naive_iso(alg)) * x;
}
// Inverse of the naive isomorphism on Sing V.
Vec<Rational> nu_inverse(const WAlgebra& alg, const FlagVector& u);

// Residue pairing transported to V with c = 1: (x, y) = (-1)^k S(nu x, nu y).
template <class S> S structural_pairing(const WAlgebra& alg, const Vec<S>& x, const Vec<S>& y) {
    const Family& fam = alg.family();
    S s = contravariant_pairing(fam, nu_apply(alg, x), nu_apply(alg, y));
    return fam.k() % 2 ? S(-s) : s;
}

struct CanonicalIso {
    CriticalSet cs;
    Matrix<Complex> alpha;  // columns: images of the anchored w-basis
};

// alpha([g]) from point values of g at the critical points.
Vec<Complex> alpha_from_values(const Family& fam, const CriticalSet& cs, const std::vector<Rational>& z,
                               const std::vector<Complex>& g);
CanonicalIso canonical_iso_analytic(const WAlgebra& alg, const std::vector<Rational>& z);
Checks check_canonical(const WAlgebra& alg, const std::vector<Rational>& z, double tol = 1e-8);

struct ConstantEstimate {
    Complex c;
    double spread = 0.0;
    bool constant = false;
    int samples = 0;
};
ConstantEstimate naive_iso_and_constant(const WAlgebra& alg, const std::vector<std::vector<Rational>>& zs,
                                        double tol = 1e-7);

Vec<Rational> contravariant_map_class(const WAlgebra& alg, const FlagVector& u);
Checks check_contravariant_class(const WAlgebra& alg, const SingularSubspace& sing);

FlagVector induced_multiplication_on_sing(const WAlgebra& alg, const std::vector<Rational>& z, const FlagVector& u,
                                          const FlagVector& w);
Checks check_multiplication(const WAlgebra& alg, const std::vector<Rational>& z);
Checks check_period_map(const WAlgebra& alg, const std::vector<Rational>& z);

Poly potential_polynomial(const Family& fam, int anchor = -1);
Rational potential_first(const Family& fam, const std::vector<Rational>& z);
Rational potential_k1_closed(const Family& fam, const std::vector<Rational>& z);
Rational potential_k2_closed(const Family& fam, const std::vector<Rational>& z);

// (2k+1)-st derivative of the log potential; rational in z.
template <class S> S potential_derivative(const Family& fam, const std::vector<S>& z, const Subset& ms) {
    int k = fam.k();
    S total = from_rational<S>(Rational(0));
    Subset need = ms;
    std::sort(need.begin(), need.end());
    need.erase(std::unique(need.begin(), need.end()), need.end());
    if (static_cast<int>(need.size()) > k + 1) return total;
    for (const auto& T : k_subsets(fam.n(), k + 1)) {
        if (!std::includes(T.begin(), T.end(), need.begin(), need.end())) continue;
        Rational coef = fam.weight_product(T);
        std::vector<Rational> dpart(fam.n(), Rational(0));
        S f = from_rational<S>(Rational(0));
        for (int m = 0; m <= k; ++m) {
            Subset rest = T;
            rest.erase(rest.begin() + m);
            Rational d = fam.minor(rest);
            coef /= d * d;
            dpart[T[m]] = m % 2 ? Rational(-d) : d;
            f += from_rational<S>(dpart[T[m]]) * z[T[m]];
        }
        for (int m : ms) coef *= dpart[m];
        if (is_zero(f)) throw DiscriminantError("potential derivative has a pole at " + subset_label(T));
        total += from_rational<S>(coef) / f;
    }
    return total;
}

// (-1)^k (prod_i beta d_{m_i}, [1]) evaluated in the w-basis algebra (c = 1).
template <class S> S potential_structural(const WAlgebra& alg, const std::vector<S>& z, const Subset& ms) {
    Vec<S> e = alg.generator_product(ms, z);
    Vec<S> one = alg.identity_closed(z);
    S p = structural_pairing(alg, e, one);
    return alg.family().k() % 2 ? S(-p) : p;
}

struct PotentialRow {
    Subset tuple;
    Rational lhs, rhs;
    bool pass = false;
};
std::vector<PotentialRow> potential_rows(const WAlgebra& alg, const std::vector<Rational>& z,
                                         const std::vector<Subset>& tuples);
nlohmann::ordered_json potential_report_json(const Family& fam, const std::vector<Rational>& z,
                                             const std::vector<PotentialRow>& rows);

Rational eta_and_beta(const WAlgebra& alg, const std::vector<Rational>& z, int i, int j);
Checks check_eta(const WAlgebra& alg, const std::vector<Rational>& z);

mpz_class a_constant(int k, int r);
Checks check_multi(const WAlgebra& alg, const std::vector<Rational>& z, int rmax);
Checks check_kernel_relations(const Family& fam, const std::vector<Rational>& z);
Checks check_plucker(const Family& fam);
Checks check_potential_homogeneity(const Family& fam, const std::vector<Rational>& z);
// P = S(q, q) against its polynomial form and the section-specific closed forms.
Checks check_potential_first(const Family& fam, const std::vector<Rational>& z);

struct PeriodOptions {
    int quad_nodes = 8;
    double flat_tol = 1e-6;
    double twisted_tol = 1e-5;
    double fd_step = 1e-3;
};
// Flat-period path integrals and, for k = 1, closedness of the twisted period form.
Checks flat_and_twisted_periods(const WAlgebra& alg, const GmTrajectory& tr, const Path& path,
                                const PeriodOptions& opt = {});
// Exactness relation of the twisted periods along a trajectory: pointwise and by finite differences.
Checks twisted_exactness(const WAlgebra& alg, const GmTrajectory& tr, const Path& path, double tol);

struct Partition {
    std::vector<Subset> blocks;
};
Checks strata_restriction_k1(const Family& fam, const Partition& part, const std::vector<Rational>& x);
std::vector<Rational> sample_stratum_point(const Family& fam, const Partition& part, std::uint64_t seed);

}  // namespace arrfrob

#endif
