#include "arrfrob/frobenius.hpp"

namespace arrfrob {

int default_anchor(const Family& fam) { return fam.n() - 1; }

std::vector<Poly> period_polynomials(const Family& fam, int anchor) {
    if (!fam.generic()) throw std::invalid_argument("closed-form period map requires a generic family");
    if (anchor < 0) anchor = default_anchor(fam);
    int k = fam.k(), n = fam.n(), d = fam.basis().size();
    std::vector<Poly> q(d, Poly(n));
    Rational scale = Rational(1) / power(fam.abs_a(), k);
    for (const auto& T : fam.basis().items()) {
        if (std::find(T.begin(), T.end(), anchor) != T.end()) continue;
        Subset full{anchor};
        full.insert(full.end(), T.begin(), T.end());
        std::vector<Rational> lin(n, Rational(0));
        Rational den = 1;
        for (int m = 0; m <= k; ++m) {
            Subset rest = full;
            rest.erase(rest.begin() + m);
            Rational dm = fam.minor(rest);
            lin[full[m]] = m % 2 ? Rational(-dm) : dm;
            den *= m % 2 ? Rational(-dm) : dm;
        }
        Poly coef = Rational(scale / den) * Poly::linear(lin).pow(k);
        FlagVector v = v_vector(fam, T);
        for (int i = 0; i < d; ++i)
            if (sgn(v[i]) != 0) q[i] += v[i] * coef;
    }
    return q;
}

FlagVector period_map(const Family& fam, const std::vector<Rational>& z, int anchor) {
    return evaluate_polys(period_polynomials(fam, anchor), z);
}

FlagVector period_k1_closed(const Family& fam, const std::vector<Rational>& z) {
    Rational mean = 0;
    for (int j = 0; j < fam.n(); ++j) mean += fam.a()[j] * z[j] / fam.abs_a();
    FlagVector q = zeros<Rational>(fam.basis().size());
    for (int i = 0; i < fam.n(); ++i) q[fam.basis().find({i})] = (mean - z[i]) / fam.abs_a();
    return q;
}

FlagVector period_k2_closed(const Family& fam, const std::vector<Rational>& z, int fixed) {
    FlagVector q = zeros<Rational>(fam.basis().size());
    auto d = [&](int x, int y) { return fam.minor({x, y}); };
    Rational a2 = fam.abs_a() * fam.abs_a();
    for (int i = 0; i < fam.n(); ++i)
        for (int j = i + 1; j < fam.n(); ++j) {
            if (i == fixed || j == fixed) continue;
            int k = fixed;
            Rational f = d(j, k) * z[i] + d(k, i) * z[j] + d(i, j) * z[k];
            axpy(Rational(f * f / (d(i, j) * d(j, k) * d(k, i) * a2)), v_vector(fam, {i, j}), q);
        }
    return q;
}

Matrix<Rational> naive_iso(const WAlgebra& alg) {
    std::vector<Vec<Rational>> cols;
    for (const auto& T : alg.basis().items()) cols.push_back(v_vector(alg.family(), T));
    return Matrix<Rational>::from_columns(cols, alg.family().basis().size());
}

Vec<Rational> nu_inverse(const WAlgebra& alg, const FlagVector& u) {
    const Family& fam = alg.family();
    Matrix<Rational> N = naive_iso(alg);
    Matrix<Rational> NtG = N.transpose() * contravariant_form(fam);
    Vec<Rational> x = solve(NtG * N, NtG * u);
    if (N * x != u) throw std::invalid_argument("vector is not in Sing V");
    return x;
}

Vec<Complex> alpha_from_values(const Family& fam, const CriticalSet& cs, const std::vector<Rational>& z,
                               const std::vector<Complex>& g) {
    auto zc = convert<Complex>(z);
    int d = fam.basis().size();
    Vec<Complex> out(d, 0.0);
    for (size_t p = 0; p < cs.points.size(); ++p) {
        auto f = f_values(fam, zc, cs.points[p].t);
        Complex w = g[p] / cs.points[p].hess;
        for (int r = 0; r < d; ++r) {
            const Subset& T = fam.basis().at(r);
            Complex ft = fam.minor(T).get_d();
            for (int i : T) ft /= f[i];
            out[r] += w * ft;
        }
    }
    return out;
}

CanonicalIso canonical_iso_analytic(const WAlgebra& alg, const std::vector<Rational>& z) {
    const Family& fam = alg.family();
    CanonicalIso iso;
    iso.cs = solve_critical(fam, z);
    if (iso.cs.degenerate) throw std::invalid_argument(iso.cs.diagnostic);
    auto zc = convert<Complex>(z);
    std::vector<Vec<Complex>> cols;
    for (int r = 0; r < alg.dim(); ++r) {
        std::vector<Complex> vals;
        for (const auto& p : iso.cs.points) vals.push_back(alg.evaluate_w(r, zc, p.t));
        cols.push_back(alpha_from_values(fam, iso.cs, z, vals));
    }
    iso.alpha = Matrix<Complex>::from_columns(cols, fam.basis().size());
    return iso;
}

namespace {

double max_diff(const Vec<Complex>& x, const Vec<Rational>& y) {
    double m = 0;
    for (size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - to_complex(y[i])));
    return m;
}

}  // namespace

Checks check_canonical(const WAlgebra& alg, const std::vector<Rational>& z, double tol) {
    const Family& fam = alg.family();
    Checks out;
    auto iso = canonical_iso_analytic(alg, z);
    const auto& cs = iso.cs;
    out.push_back(exact_check("canonical.count", "#critical points = |chi(U)|", cs.ok(), cs.diagnostic));
    if (!cs.ok()) return out;
    auto sing = singular_subspace(fam);
    auto zc = convert<Complex>(z);
    double image = 0;
    for (int r = 0; r < alg.dim(); ++r) image = std::max(image, singular_residual(sing, iso.alpha.column(r)));
    out.push_back(numeric_check("canonical.image", "alpha(A) subset Sing V", image, tol));

    std::vector<std::vector<Complex>> wv(alg.dim());
    for (int r = 0; r < alg.dim(); ++r)
        for (const auto& p : cs.points) wv[r].push_back(alg.evaluate_w(r, zc, p.t));
    double iso_err = 0;
    for (int r = 0; r < alg.dim(); ++r)
        for (int s = 0; s < alg.dim(); ++s) {
            Complex lhs = residue_pairing_analytic(cs, wv[r], wv[s]);
            Complex rhs = contravariant_pairing(fam, iso.alpha.column(r), iso.alpha.column(s));
            if (fam.k() % 2) rhs = -rhs;
            iso_err = std::max(iso_err, std::abs(lhs - rhs));
        }
    out.push_back(numeric_check("canonical.isometry", "(f,g)_z = (-1)^k S(alpha f, alpha g)", iso_err, tol));

    if (fam.k() == 1) {
        double err = 0;
        for (int m = 0; m < fam.n(); ++m) {
            std::vector<Complex> g;
            for (const auto& p : cs.points) g.push_back(fam.a()[m].get_d() / f_values(fam, zc, p.t)[m]);
            err = std::max(err, max_diff(alpha_from_values(fam, cs, z, g), v_vector(fam, {m})));
        }
        out.push_back(numeric_check("canonical.k1_generators", "alpha([a_m/f_m]) = v_m", err, tol));
    }
    double werr = 0;
    for (int r = 0; r < alg.dim(); ++r) werr = std::max(werr, max_diff(iso.alpha.column(r), v_vector(fam, alg.basis().at(r))));
    out.push_back(numeric_check("canonical.w_to_v", "alpha(w_T) = v_T", werr, tol));

    std::vector<Complex> ones(cs.points.size(), 1.0);
    double qerr = max_diff(alpha_from_values(fam, cs, z, ones), period_map(fam, z, alg.anchor()));
    out.push_back(numeric_check("canonical.identity", "alpha([1]) = q(z)", qerr, tol));
    return out;
}

ConstantEstimate naive_iso_and_constant(const WAlgebra& alg, const std::vector<std::vector<Rational>>& zs, double tol) {
    const Family& fam = alg.family();
    Matrix<Rational> N = naive_iso(alg);
    ConstantEstimate est;
    std::vector<Complex> ratios;
    double residual = 0;
    for (const auto& z : zs) {
        auto iso = canonical_iso_analytic(alg, z);
        for (int r = 0; r < alg.dim(); ++r) {
            Vec<Complex> a = iso.alpha.column(r);
            Vec<Rational> v = N.column(r);
            Complex num = 0;
            double den = 0;
            for (size_t i = 0; i < v.size(); ++i) {
                num += a[i] * v[i].get_d();
                den += v[i].get_d() * v[i].get_d();
            }
            Complex c = num / den;
            ratios.push_back(c);
            for (size_t i = 0; i < v.size(); ++i) residual = std::max(residual, std::abs(a[i] - c * v[i].get_d()));
        }
        ++est.samples;
    }
    (void)fam;
    Complex mean = 0;
    for (const auto& c : ratios) mean += c;
    mean /= static_cast<double>(ratios.size());
    for (const auto& c : ratios) est.spread = std::max(est.spread, std::abs(c - mean));
    est.spread = std::max(est.spread, residual);
    est.c = mean;
    est.constant = est.spread <= tol;
    return est;
}

Vec<Rational> contravariant_map_class(const WAlgebra& alg, const FlagVector& u) {
    Vec<Rational> out = zeros<Rational>(alg.dim());
    const auto& basis = alg.family().basis();
    for (int r = 0; r < basis.size(); ++r)
        if (sgn(u[r]) != 0) axpy(u[r], alg.w_element(basis.at(r)), out);
    return out;
}

Checks check_contravariant_class(const WAlgebra& alg, const SingularSubspace& sing) {
    const Family& fam = alg.family();
    Checks out;
    bool plus = true, minus = true;
    for (int r = 0; r < fam.basis().size(); ++r) {
        FlagVector F = flag_basis_vector(fam, fam.basis().at(r));
        FlagVector img = nu_apply(alg, contravariant_map_class(alg, F));
        FlagVector pi = orthogonal_projection(fam, sing, F);
        plus = plus && img == pi;
        minus = minus && img == scale(Rational(-1), pi);
    }
    int sign = plus ? 1 : (minus ? -1 : 0);
    int expected = fam.k() == 1 ? -1 : 1;
    std::string detail = "measured sign " + std::to_string(sign);
    if (fam.k() <= 2)
        out.push_back(exact_check("contravariant.alpha_S", "alpha o [S] = (-1)^{k} pi for k <= 2", sign == expected, detail));
    else
        out.push_back(Check{"contravariant.alpha_S", "alpha o [S] vs pi (measured)", true, "measured", 0.0, detail});
    bool back = true;
    for (int r = 0; r < alg.dim(); ++r) {
        Vec<Rational> e = zeros<Rational>(alg.dim());
        e[r] = 1;
        Vec<Rational> img = contravariant_map_class(alg, nu_apply(alg, e));
        back = back && sign != 0 && img == scale(Rational(sign), e);
    }
    out.push_back(exact_check("contravariant.S_alpha", "[S] o alpha = sign * identity on the w-basis", back, detail));
    if (fam.k() == 1) {
        bool gen = true;
        std::vector<Rational> z0(fam.n(), Rational(0));
        for (int i = 0; i < fam.n(); ++i) {
            Vec<Rational> g = alg.reduce({i});
            gen = gen && contravariant_map_class(alg, nu_apply(alg, g)) == scale(Rational(-1), g);
        }
        out.push_back(exact_check("contravariant.k1_generators", "([S] o alpha)([a_i/f_i]) = -[a_i/f_i]", gen));
    }
    return out;
}

FlagVector induced_multiplication_on_sing(const WAlgebra& alg, const std::vector<Rational>& z, const FlagVector& u,
                                          const FlagVector& w) {
    return nu_apply(alg, alg.multiply(nu_inverse(alg, u), nu_inverse(alg, w), z));
}

Checks check_multiplication(const WAlgebra& alg, const std::vector<Rational>& z) {
    const Family& fam = alg.family();
    Checks out;
    GmSystem gm(fam);
    int n = fam.n();
    std::vector<Vec<Rational>> gens;
    for (int j = 0; j < n; ++j) gens.push_back(alg.padded_product({j}, z));

    bool gen_routes = true;
    for (int j = 0; j < n; ++j) gen_routes = gen_routes && gens[j] == alg.generator_product({j}, z);
    out.push_back(exact_check("mult.generator_routes", "[a_j/f_j] padded by [1]^(k-1) = [a_j/f_j] * [1]", gen_routes));

    bool kf = true;
    for (int j = 0; j < n; ++j) {
        Matrix<Rational> K = gm.k_operator(j, z);
        for (int r = 0; r < alg.dim(); ++r) {
            Vec<Rational> e = zeros<Rational>(alg.dim());
            e[r] = 1;
            kf = kf && nu_apply(alg, alg.gen_mul(j, e, z)) == K * nu_apply(alg, e);
            kf = kf && nu_apply(alg, alg.multiply(gens[j], e, z)) == K * nu_apply(alg, e);
        }
    }
    out.push_back(exact_check("mult.K_equals_generator", "alpha([a_j/f_j]) * v = K_j(z) v on Sing V", kf));

    Vec<Rational> one = alg.identity_closed(z);
    bool unit = true;
    for (int r = 0; r < alg.dim(); ++r) {
        Vec<Rational> e = zeros<Rational>(alg.dim());
        e[r] = 1;
        unit = unit && alg.multiply(one, e, z) == e && alg.multiply(e, one, z) == e;
    }
    out.push_back(exact_check("mult.identity", "q(z) * x = x", unit));

    bool comm = true, assoc = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vec<Rational> ij = alg.multiply(gens[i], gens[j], z);
            comm = comm && ij == alg.multiply(gens[j], gens[i], z);
            for (int l = 0; l < n; ++l)
                assoc = assoc && alg.multiply(ij, gens[l], z) == alg.multiply(gens[i], alg.multiply(gens[j], gens[l], z), z);
        }
    out.push_back(exact_check("mult.commutative", "x * y = y * x on generators", comm));
    out.push_back(exact_check("mult.associative", "(x * y) * w = x * (y * w) on generators", assoc));

    if (fam.k() == 1) {
        std::vector<FlagVector> v;
        for (int j = 0; j < n; ++j) v.push_back(v_vector(fam, {j}));
        auto closed = [&](int j, int i) {
            if (i != j)
                return add(scale(Rational(fam.a()[j] / (z[j] - z[i])), v[i]), scale(Rational(fam.a()[i] / (z[i] - z[j])), v[j]));
            FlagVector s = zeros<Rational>(fam.basis().size());
            for (int m = 0; m < n; ++m)
                if (m != j)
                    s = sub(s, add(scale(Rational(fam.a()[j] / (z[j] - z[m])), v[m]),
                                   scale(Rational(fam.a()[m] / (z[m] - z[j])), v[j])));
            return s;
        };
        bool mv = true;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) mv = mv && induced_multiplication_on_sing(alg, z, v[j], v[i]) == closed(j, i);
        out.push_back(exact_check("mult.k1_closed_form", "v_j * v_i = a_j/(z_j-z_i) v_i + a_i/(z_i-z_j) v_j", mv));

        Matrix<Rational> gram(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) gram(i, j) = contravariant_pairing(fam, v[i], v[j]);
        auto h = [&](int j, int i) { return Rational(fam.a()[i] / fam.abs_a() - (i == j ? 1 : 0)); };
        int anchor = alg.anchor();
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (i != anchor) idx.push_back(i);
        int s = static_cast<int>(idx.size());
        Matrix<Rational> gs(s, s);
        for (int r = 0; r < s; ++r)
            for (int c = 0; c < s; ++c) gs(r, c) = gram(idx[r], idx[c]);
        auto sigma_inv = [&](int j) {
            Vec<Rational> rhs(s);
            for (int r = 0; r < s; ++r) rhs[r] = h(j, idx[r]);
            Vec<Rational> c = solve(gs, rhs);
            FlagVector u = zeros<Rational>(fam.basis().size());
            for (int r = 0; r < s; ++r) axpy(c[r], v[idx[r]], u);
            return u;
        };
        bool mh = true;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                if (i == j) continue;
                FlagVector prod = induced_multiplication_on_sing(alg, z, sigma_inv(j), sigma_inv(i));
                for (int m = 0; m < n; ++m) {
                    Rational lhs = contravariant_pairing(fam, prod, v[m]);
                    Rational rhs = h(i, m) / (z[i] - z[j]) + h(j, m) / (z[j] - z[i]);
                    mh = mh && lhs == rhs;
                }
            }
        out.push_back(exact_check("mult.k1_dual", "h_j * h_i = h_i/(z_i-z_j) + h_j/(z_j-z_i)", mh));
    }
    return out;
}

Checks check_period_map(const WAlgebra& alg, const std::vector<Rational>& z) {
    const Family& fam = alg.family();
    Checks out;
    FlagVector q = period_map(fam, z, alg.anchor());
    out.push_back(exact_check("period.identity_image", "q(z) = alpha([1]) (combinatorial)",
                              q == nu_apply(alg, alg.identity_closed(z))));
    bool anchors = true;
    for (int i0 = 0; i0 < fam.n(); ++i0) anchors = anchors && period_map(fam, z, i0) == q;
    out.push_back(exact_check("period.anchor_independent", "q(z) independent of the anchor", anchors));
    int n = fam.n();
    if (fam.k() == 1) {
        out.push_back(exact_check("period.k1_closed", "q = (1/|a|) sum_i q_i F_i, q_i = -z_i + sum_j a_j z_j/|a|",
                                  q == period_k1_closed(fam, z)));
        std::vector<Rational> shifted = z;
        for (auto& x : shifted) x += Rational(7, 3);
        out.push_back(exact_check("period.k1_kernel", "q(z + t(1,...,1)) = q(z)", period_map(fam, shifted) == q));
    }
    if (fam.k() == 2) {
        bool all = true;
        for (int f = 0; f < n; ++f) all = all && period_k2_closed(fam, z, f) == q;
        out.push_back(exact_check("period.k2_closed", "q = |a|^-2 sum f_ijk^2/(d_ij d_jk d_ki) v_ij", all));
        auto polys = period_polynomials(fam, alg.anchor());
        int d = fam.basis().size();
        Matrix<Rational> dq(d, n);
        for (int r = 0; r < d; ++r)
            for (int j = 0; j < n; ++j) dq(r, j) = polys[r].derivative(j).evaluate(z);
        bool kernel = true;
        for (int i = 0; i < n; ++i) {
            Vec<Rational> xi(n, Rational(0));
            for (int j = 0; j < n; ++j)
                if (j != i) xi[j] = fam.minor({j, i});
            kernel = kernel && all_zero(dq * xi);
        }
        out.push_back(exact_check("period.k2_kernel", "dq(sum_{j != i} d_ji d_j) = 0 and rank dq = n - 2",
                                  kernel && rank(dq) == n - 2));
    }
    return out;
}

Rational eta_and_beta(const WAlgebra& alg, const std::vector<Rational>& z, int i, int j) {
    return structural_pairing(alg, alg.padded_product({i}, z), alg.padded_product({j}, z));
}

Checks check_eta(const WAlgebra& alg, const std::vector<Rational>& z) {
    const Family& fam = alg.family();
    int n = fam.n(), k = fam.k();
    Checks out;
    auto polys = period_polynomials(fam, alg.anchor());
    std::vector<FlagVector> dq;
    for (int j = 0; j < n; ++j) {
        std::vector<Poly> d;
        for (const auto& p : polys) d.push_back(p.derivative(j));
        dq.push_back(evaluate_polys(d, z));
    }
    Rational factor = fam.abs_a() * fam.abs_a() / (k * k) * (k % 2 ? -1 : 1);
    bool etaa = true, k1 = true, kernel = true;
    Matrix<Rational> eta(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            eta(i, j) = eta_and_beta(alg, z, i, j);
            etaa = etaa && eta(i, j) == factor * contravariant_pairing(fam, dq[i], dq[j]);
            if (k == 1) {
                Rational expect = i == j ? Rational(-fam.a()[j] + fam.a()[j] * fam.a()[j] / fam.abs_a())
                                         : Rational(fam.a()[i] * fam.a()[j] / fam.abs_a());
                k1 = k1 && eta(i, j) == expect;
            }
        }
    out.push_back(exact_check("eta.derivatives_of_q", "eta(d_i, d_j) = |a|^2/k^2 (-1)^k S(d_i q, d_j q)", etaa));
    if (k == 1) {
        for (int j = 0; j < n; ++j) {
            Rational s = 0;
            for (int i = 0; i < n; ++i) s += eta(i, j);
            kernel = kernel && sgn(s) == 0;
        }
        out.push_back(exact_check("eta.k1_constants", "eta(d_i,d_j) = a_i a_j/|a|, eta(d_j,d_j) = -a_j + a_j^2/|a|", k1));
        out.push_back(exact_check("eta.k1_kernel", "eta(sum_j d_j, .) = 0", kernel));
    }
    if (k <= 2) {
        auto cs = solve_critical(fam, z);
        if (cs.ok()) {
            auto zc = convert<Complex>(z);
            double err = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    std::vector<Complex> gi, gj;
                    for (const auto& p : cs.points) {
                        auto f = f_values(fam, zc, p.t);
                        gi.push_back(fam.a()[i].get_d() / f[i]);
                        gj.push_back(fam.a()[j].get_d() / f[j]);
                    }
                    err = std::max(err, std::abs(residue_pairing_analytic(cs, gi, gj) - eta(i, j).get_d()));
                }
            out.push_back(numeric_check("eta.analytic", "eta = ([a_i/f_i],[a_j/f_j])_z by residues", err, 1e-8));
        } else {
            out.push_back(exact_check("eta.analytic", "eta = ([a_i/f_i],[a_j/f_j])_z by residues", false, cs.diagnostic));
        }
    }
    return out;
}

}  // namespace arrfrob
