#include "arrfrob/frobenius.hpp"

namespace arrfrob {

Poly potential_polynomial(const Family& fam, int anchor) {
    auto q = period_polynomials(fam, anchor);
    Poly P(fam.n());
    for (int r = 0; r < fam.basis().size(); ++r) P += fam.weight_product(fam.basis().at(r)) * (q[r] * q[r]);
    return P;
}

Rational potential_first(const Family& fam, const std::vector<Rational>& z) {
    FlagVector q = period_map(fam, z);
    return contravariant_pairing(fam, q, q);
}

Rational potential_k1_closed(const Family& fam, const std::vector<Rational>& z) {
    Rational total = 0, a3 = power(fam.abs_a(), 3);
    for (int i = 0; i < fam.n(); ++i)
        for (int j = i + 1; j < fam.n(); ++j) {
            Rational u = fam.b()[j][0] * z[i] - fam.b()[i][0] * z[j];
            total += fam.a()[i] * fam.a()[j] / a3 * u * u / (fam.b()[i][0] * fam.b()[i][0] * fam.b()[j][0] * fam.b()[j][0]);
        }
    return total;
}

Rational potential_k2_closed(const Family& fam, const std::vector<Rational>& z) {
    auto d = [&](int x, int y) { return fam.minor({x, y}); };
    Rational total = 0, a5 = power(fam.abs_a(), 5);
    int n = fam.n();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                Rational f = d(j, k) * z[i] + d(k, i) * z[j] + d(i, j) * z[k];
                Rational den = d(i, j) * d(j, k) * d(k, i);
                total += fam.a()[i] * fam.a()[j] * fam.a()[k] / a5 * power(f, 4) / (den * den);
            }
    return total;
}

Checks check_potential_first(const Family& fam, const std::vector<Rational>& z) {
    Checks out;
    Rational P = potential_first(fam, z);
    out.push_back(exact_check("potential.polynomial", "P(z) = S(q(z), q(z)) as a polynomial",
                              potential_polynomial(fam).evaluate(z) == P));
    if (fam.k() == 1)
        out.push_back(exact_check("potential.k1_closed", "P = sum_{i<j} a_i a_j/|a|^3 (z_i - z_j)^2",
                                  potential_k1_closed(fam, z) == P, "P = " + to_string(P)));
    if (fam.k() == 2)
        out.push_back(exact_check("potential.k2_closed",
                                  "P = sum_{i<j<k} a_i a_j a_k/|a|^5 f_ijk^4/(d_ij^2 d_jk^2 d_ki^2)",
                                  potential_k2_closed(fam, z) == P, "P = " + to_string(P)));
    return out;
}

std::vector<PotentialRow> potential_rows(const WAlgebra& alg, const std::vector<Rational>& z,
                                         const std::vector<Subset>& tuples) {
    std::vector<PotentialRow> rows;
    rows.reserve(tuples.size());
    for (const auto& t : tuples) {
        PotentialRow row{t, potential_derivative(alg.family(), z, t), potential_structural(alg, z, t)};
        row.pass = row.lhs == row.rhs;
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::ordered_json potential_report_json(const Family& fam, const std::vector<Rational>& z,
                                             const std::vector<PotentialRow>& rows) {
    nlohmann::ordered_json doc;
    doc["schema"] = report_schema_version();
    doc["z"] = rational_vector_json(z);
    doc["P"] = to_string(potential_first(fam, z));
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json row;
        auto t = nlohmann::ordered_json::array();
        for (int i : r.tuple) t.push_back(i + 1);
        row["tuple"] = t;
        row["lhs"] = to_string(r.lhs);
        row["rhs"] = to_string(r.rhs);
        row["mode"] = "exact";
        row["abs_err"] = format_double(std::abs(Rational(r.lhs - r.rhs).get_d()));
        arr.push_back(row);
    }
    doc["rows"] = arr;
    return doc;
}

mpz_class a_constant(int k, int r) {
    if (k < 1 || r < 0 || r > 2 * k) throw std::invalid_argument("A_{k,r} requires 0 <= r <= 2k");
    auto fac = [](int m) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m));
        return f;
    };
    mpz_class total = 0;
    for (int i = std::max(0, r - k); i <= std::min(r, k); ++i) {
        mpz_class c;
        mpz_bin_uiui(c.get_mpz_t(), r, i);
        total += c * fac(k) / fac(k - i) * fac(k) / fac(k - r + i);
    }
    return total;
}

Checks check_multi(const WAlgebra& alg, const std::vector<Rational>& z, int rmax) {
    const Family& fam = alg.family();
    int k = fam.k();
    Poly P = potential_polynomial(fam, alg.anchor());
    Vec<Rational> one = alg.identity_closed(z);
    bool ok = true;
    std::string witness;
    for (int r = 0; r <= std::min(rmax, 2 * k); ++r) {
        Rational factor = power(fam.abs_a(), r) / Rational(a_constant(k, r));
        if (k % 2) factor = -factor;
        for (const auto& ms : alg.multisets(r)) {
            Poly d = P;
            for (int m : ms) d = d.derivative(m);
            Rational lhs = structural_pairing(alg, alg.generator_product(ms, z), one);
            if (lhs != factor * d.evaluate(z)) {
                ok = false;
                if (witness.empty()) witness = "tuple " + subset_label(ms);
            }
        }
    }
    Checks out;
    out.push_back(exact_check("potential.multi", "(prod beta d_m, [1]) = (-1)^k |a|^r / A_{k,r} d^r P", ok, witness));
    return out;
}

Checks check_kernel_relations(const Family& fam, const std::vector<Rational>& z) {
    int k = fam.k(), n = fam.n();
    Checks out;
    std::vector<Subset> tails;
    for (const auto& I : k_subsets(n, k - 1)) tails.push_back(I);
    if (k == 1) tails = {Subset{}};
    std::vector<Subset> tuples;
    std::function<void(Subset&, int)> rec = [&](Subset& cur, int start) {
        if (static_cast<int>(cur.size()) == 2 * k) {
            tuples.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            rec(cur, i);
            cur.pop_back();
        }
    };
    Subset cur;
    rec(cur, 0);
    bool ok = true;
    std::string witness;
    for (const auto& I : tails)
        for (const auto& ms : tuples) {
            Rational s = 0;
            for (int j = 0; j < n; ++j) {
                Subset idx{j};
                idx.insert(idx.end(), I.begin(), I.end());
                Rational d = fam.minor(idx);
                if (sgn(d) == 0) continue;
                Subset t = ms;
                t.push_back(j);
                s += d * potential_derivative(fam, z, t);
            }
            if (sgn(s) != 0 && witness.empty()) witness = "I = " + subset_label(I) + ", tuple " + subset_label(ms);
            ok = ok && sgn(s) == 0;
        }
    out.push_back(exact_check("potential.kernel", "sum_j d_{j,I} d/dz_j annihilates d^{2k} Ptilde", ok, witness));
    if (fam.generic()) {
        WAlgebra alg(fam, default_anchor(fam));
        bool rel = true;
        for (const auto& I : tails) {
            Vec<Rational> s = zeros<Rational>(alg.dim());
            for (int j = 0; j < n; ++j) {
                Subset idx{j};
                idx.insert(idx.end(), I.begin(), I.end());
                Rational d = fam.minor(idx);
                if (sgn(d) != 0) axpy(d, alg.generator_product({j}, z), s);
            }
            rel = rel && all_zero(s);
        }
        out.push_back(exact_check("potential.generator_relations", "sum_j d_{j,I} [a_j/f_j] = 0", rel));
    }
    return out;
}

Checks check_plucker(const Family& fam) {
    Checks out;
    if (fam.k() != 2 || !fam.generic()) return out;
    int n = fam.n();
    auto d = [&](int x, int y) { return fam.minor({x, y}); };
    auto f = [&](int i, int j, int k) {
        std::vector<Rational> c(n, Rational(0));
        c[i] = d(j, k);
        c[j] = d(k, i);
        c[k] = d(i, j);
        return Poly::linear(c);
    };
    bool lin = true, quad = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    if (i == j || i == k || i == l || j == k || j == l || k == l) continue;
                    Poly s = Rational(1 / (d(k, i) * d(i, j))) * f(i, j, k) + Rational(1 / (d(l, i) * d(i, k))) * f(i, k, l) +
                             Rational(1 / (d(j, i) * d(i, l))) * f(i, l, j);
                    lin = lin && s.is_zero();
                    Poly t = Rational(1 / (d(i, j) * d(j, k) * d(k, i))) * f(i, j, k).pow(2) -
                             Rational(1 / (d(j, k) * d(k, l) * d(l, j))) * f(j, k, l).pow(2) +
                             Rational(1 / (d(k, l) * d(l, i) * d(i, k))) * f(k, l, i).pow(2) -
                             Rational(1 / (d(l, i) * d(i, j) * d(j, l))) * f(l, i, j).pow(2);
                    quad = quad && t.is_zero();
                }
    out.push_back(exact_check("plucker.linear", "f_ijk/(d_ki d_ij) + f_ikl/(d_li d_ik) + f_ilj/(d_ji d_il) = 0", lin));
    out.push_back(exact_check("plucker.quadratic",
                              "f_ijk^2/(d_ij d_jk d_ki) - f_jkl^2/(d_jk d_kl d_lj) + f_kli^2/(d_kl d_li d_ik) - "
                              "f_lij^2/(d_li d_ij d_jl) = 0",
                              quad));
    return out;
}

Checks check_potential_homogeneity(const Family& fam, const std::vector<Rational>& z) {
    Checks out;
    int k = fam.k();
    Poly P = potential_polynomial(fam);
    bool degree = P.is_zero() || (P.min_degree() == 2 * k && P.max_degree() == 2 * k);
    Rational base = P.evaluate(z);
    bool scaling = true;
    for (const Rational& lam : {Rational(2), Rational(-1, 3), Rational(5, 7)}) {
        std::vector<Rational> s = z;
        for (auto& x : s) x *= lam;
        scaling = scaling && potential_first(fam, s) == power(lam, 2 * k) * base;
    }
    out.push_back(exact_check("potential.homogeneity", "P(lambda z) = lambda^{2k} P(z)", degree && scaling));
    std::vector<Rational> diag(fam.n(), Rational(7, 5));
    if (k == 1) out.push_back(exact_check("potential.diagonal", "P(t,...,t) = 0", sgn(potential_first(fam, diag)) == 0));
    return out;
}

}  // namespace arrfrob
