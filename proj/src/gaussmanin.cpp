#include "arrfrob/gaussmanin.hpp"
#include "arrfrob/frobenius.hpp"

namespace arrfrob {

Matrix<Rational> l_c_matrix(const Family& fam, const Circuit& c) {
    const auto& basis = fam.basis();
    int d = basis.size();
    int r = static_cast<int>(c.indices.size());
    Matrix<Rational> L(d, d);
    for (int col = 0; col < d; ++col) {
        const Subset& T = basis.at(col);
        Subset rest;
        int missing = -1, hits = 0;
        for (int x : T)
            if (std::find(c.indices.begin(), c.indices.end(), x) == c.indices.end()) rest.push_back(x);
        for (int m = 0; m < r; ++m) {
            if (std::find(T.begin(), T.end(), c.indices[m]) != T.end())
                ++hits;
            else
                missing = m;
        }
        if (hits != r - 1) continue;
        Subset ordered;
        for (int m = 0; m < r; ++m)
            if (m != missing) ordered.push_back(c.indices[m]);
        ordered.insert(ordered.end(), rest.begin(), rest.end());
        int sigma = sort_with_sign(ordered);
        int outer = sigma * ((missing + 1) % 2 ? -1 : 1);
        for (int l = 0; l < r; ++l) {
            Subset image;
            for (int m = 0; m < r; ++m)
                if (m != l) image.push_back(c.indices[m]);
            image.insert(image.end(), rest.begin(), rest.end());
            Rational coef = fam.a()[c.indices[l]] * ((l + 1) % 2 ? -outer : outer);
            FlagVector e = flag_basis_vector(fam, image);
            for (int row = 0; row < d; ++row)
                if (sgn(e[row]) != 0) L(row, col) += coef * e[row];
        }
    }
    return L;
}

GmSystem::GmSystem(const Family& fam) : fam_(fam) {
    for (const auto& c : fam.circuits()) l_.push_back(l_c_matrix(fam, c));
}

Matrix<Rational> GmSystem::k_derivative(int j, int i, const std::vector<Rational>& z) const {
    int d = fam_.basis().size();
    Matrix<Rational> out(d, d);
    const auto& cs = fam_.circuits();
    for (size_t c = 0; c < cs.size(); ++c) {
        Rational lj = cs[c].lambda_at(j), li = cs[c].lambda_at(i);
        if (sgn(lj) == 0 || sgn(li) == 0) continue;
        Rational f = f_C_value(cs[c], z);
        out = out + Rational(-lj * li / (f * f)) * l_[c];
    }
    return out;
}

Checks check_symmetry_and_invariance(const Family& fam, const std::vector<Rational>& z) {
    Checks out;
    GmSystem gm(fam);
    auto sing = singular_subspace(fam);
    Matrix<Rational> G = contravariant_form(fam);
    Matrix<Rational> B = sing.basis_matrix(fam.basis().size());
    for (int j = 0; j < fam.n(); ++j) {
        Matrix<Rational> K = gm.k_operator(j, z);
        Matrix<Rational> GK = G * K;
        out.push_back(exact_check("gm.symmetry.K" + std::to_string(j + 1), "S(K_j u, w) = S(u, K_j w)",
                                  GK == GK.transpose()));
        out.push_back(exact_check("gm.invariance.K" + std::to_string(j + 1), "K_j(z) Sing V subset Sing V",
                                  (sing.conditions * K * B).is_zero_matrix()));
    }
    return out;
}

Checks check_flatness(const Family& fam, const std::vector<Rational>& z) {
    Checks out;
    GmSystem gm(fam);
    auto sing = singular_subspace(fam);
    Matrix<Rational> B = sing.basis_matrix(fam.basis().size());
    int n = fam.n();
    std::vector<Matrix<Rational>> K;
    for (int j = 0; j < n; ++j) K.push_back(gm.k_operator(j, z));
    bool closed_vs_dual = true, curl = true, comm = true;
    double full_comm = 0;
    for (int i = 0; i < n; ++i) {
        std::vector<Dual> zd;
        for (int m = 0; m < n; ++m) zd.push_back(Dual(z[m], m == i ? Rational(1) : Rational(0)));
        for (int j = 0; j < n; ++j) {
            Matrix<Dual> kd = gm.k_operator(j, zd);
            Matrix<Rational> slope(kd.rows(), kd.cols());
            for (int r = 0; r < kd.rows(); ++r)
                for (int c = 0; c < kd.cols(); ++c) slope(r, c) = kd(r, c).d;
            Matrix<Rational> dij = gm.k_derivative(j, i, z);
            closed_vs_dual = closed_vs_dual && slope == dij;
            if (j > i) {
                curl = curl && dij == gm.k_derivative(i, j, z);
                Matrix<Rational> c = K[i] * K[j] - K[j] * K[i];
                comm = comm && (c * B).is_zero_matrix();
                full_comm = std::max(full_comm, c.max_abs());
            }
        }
    }
    out.push_back(exact_check("gm.flat.derivative", "d_i K_j = -sum_C lambda_j lambda_i / f_C^2 L_C (dual-number route)",
                              closed_vs_dual));
    out.push_back(exact_check("gm.flat.curl", "d_i K_j - d_j K_i = 0", curl));
    out.push_back(exact_check("gm.flat.commutator", "[K_i, K_j] = 0 on Sing V", comm));
    Check measured{"gm.flat.commutator_full_V", "[K_i, K_j] on V (measured)", true, "measured", full_comm,
                   full_comm == 0 ? "vanishes on V" : "nonzero on V"};
    out.push_back(measured);
    return out;
}

Checks check_conformal_block(const Family& fam, const std::vector<Rational>& z, int anchor) {
    Checks out;
    if (anchor < 0) anchor = default_anchor(fam);
    GmSystem gm(fam);
    auto sing = singular_subspace(fam);
    auto polys = period_polynomials(fam, anchor);
    FlagVector q = evaluate_polys(polys, z);
    out.push_back(exact_check("cb.singular", "{1}(z) in Sing V", all_zero(sing.conditions * q)));
    Rational kappa = fam.abs_a() / fam.k();
    bool gm_ok = true;
    std::string witness;
    for (int j = 0; j < fam.n(); ++j) {
        std::vector<Poly> dp;
        for (const auto& p : polys) dp.push_back(p.derivative(j));
        FlagVector lhs = scale(kappa, evaluate_polys(dp, z));
        FlagVector rhs = gm.k_operator(j, z) * q;
        if (lhs != rhs) {
            gm_ok = false;
            witness = "j=" + std::to_string(j + 1);
        }
    }
    out.push_back(exact_check("cb.gm_equation", "(|a|/k) d_j {1} = K_j {1}", gm_ok, witness));

    int k = fam.k();
    int npts = k + 2;
    std::vector<Rational> lambdas;
    for (int i = 0; i < npts; ++i) lambdas.push_back(ratio(2 * i + 1, 3));
    Matrix<Rational> vander(npts, npts);
    for (int i = 0; i < npts; ++i)
        for (int p = 0; p < npts; ++p) vander(i, p) = power(lambdas[i], p);
    bool homogeneous = true;
    for (size_t coord = 0; coord < polys.size(); ++coord) {
        Vec<Rational> ys(npts);
        for (int i = 0; i < npts; ++i) {
            std::vector<Rational> zs;
            for (const auto& x : z) zs.push_back(lambdas[i] * x);
            ys[i] = polys[coord].evaluate(zs);
        }
        Vec<Rational> coeff = solve(vander, ys);
        for (int p = 0; p < npts; ++p)
            if (p == k ? coeff[p] != q[coord] : sgn(coeff[p]) != 0) homogeneous = false;
    }
    out.push_back(exact_check("cb.homogeneous", "{1}(lambda z) = lambda^k {1}(z) (interpolation at k+2 scalings)",
                              homogeneous));
    return out;
}

FlagVector derivative_sections(const Family& fam, const std::vector<Rational>& z, const Subset& ms, int anchor) {
    if (anchor < 0) anchor = default_anchor(fam);
    int k = fam.k();
    int r = static_cast<int>(ms.size());
    auto polys = period_polynomials(fam, anchor);
    for (auto& p : polys)
        for (int m : ms) p = p.derivative(m);
    FlagVector symbolic = evaluate_polys(polys, z);
    if (r > k) {
        if (!all_zero(symbolic)) throw std::logic_error("derivative of order > k does not vanish");
        return symbolic;
    }
    WAlgebra alg(fam, anchor);
    Rational coef = 1;
    for (int i = 0; i < r; ++i) coef *= Rational(k - i) / fam.abs_a();
    FlagVector algebraic = scale(coef, nu_apply(alg, alg.padded_product(ms, z)));
    if (algebraic != symbolic) throw std::logic_error("derivative section routes disagree");
    return symbolic;
}

}  // namespace arrfrob
