#include "arrfrob/frobenius.hpp"

namespace arrfrob {

namespace {

struct Stratum {
    std::vector<int> block_of;
    std::vector<Rational> weights;
};

Stratum validate(const Family& fam, const Partition& part) {
    if (fam.k() != 1) throw ConfigError("strata restriction requires k = 1");
    for (const auto& row : fam.b())
        if (row[0] != 1) throw ConfigError("strata restriction requires b_j = 1 for all j");
    Stratum st;
    st.block_of.assign(fam.n(), -1);
    for (size_t l = 0; l < part.blocks.size(); ++l) {
        if (part.blocks[l].empty()) throw ConfigError("empty block in partition");
        Rational w = 0;
        for (int j : part.blocks[l]) {
            if (j < 0 || j >= fam.n() || st.block_of[j] != -1) throw ConfigError("blocks must partition the index set");
            st.block_of[j] = static_cast<int>(l);
            w += fam.a()[j];
        }
        if (sgn(w) == 0) throw ConfigError("block weight sum vanishes");
        st.weights.push_back(w);
    }
    for (int b : st.block_of)
        if (b == -1) throw ConfigError("blocks must partition the index set");
    if (part.blocks.size() < 2) throw ConfigError("stratum needs at least two blocks");
    return st;
}

Family stratum_family(const Stratum& st) {
    std::vector<std::vector<Rational>> b(st.weights.size(), std::vector<Rational>{Rational(1)});
    return Family(1, b, st.weights);
}

}  // namespace

std::vector<Rational> sample_stratum_point(const Family& fam, const Partition& part, std::uint64_t seed) {
    Family sf = stratum_family(validate(fam, part));
    return sample_good_point(sf, seed);
}

Checks strata_restriction_k1(const Family& fam, const Partition& part, const std::vector<Rational>& x) {
    Stratum st = validate(fam, part);
    Family sf = stratum_family(st);
    int n = fam.n(), m = sf.n();
    if (static_cast<int>(x.size()) != m) throw ConfigError("stratum point has the wrong length");
    if (!is_good_fiber(sf, x)) throw DiscriminantError("stratum point lies on the stratum discriminant");
    std::vector<Rational> z(n);
    for (int j = 0; j < n; ++j) z[j] = x[st.block_of[j]];

    Matrix<Rational> f(fam.basis().size(), sf.basis().size());
    for (int j = 0; j < n; ++j) f(fam.basis().find({j}), sf.basis().find({st.block_of[j]})) = 1;
    auto v = [&](int j) { return v_vector(fam, {j}); };
    auto vx = [&](int l) { return v_vector(sf, {l}); };
    auto block_sum = [&](int l) {
        FlagVector s = zeros<Rational>(fam.basis().size());
        for (int j : part.blocks[l]) s = add(s, v(j));
        return s;
    };
    Checks out;

    bool embed = true;
    for (int l = 0; l < m; ++l) embed = embed && f * vx(l) == block_sum(l);
    out.push_back(exact_check("strata.embedding", "f(v_{l,X}) = sum_{j in J_l} v_j", embed));

    GmSystem gx(sf), g(fam);
    bool fk = true;
    for (int l = 0; l < m; ++l) {
        Matrix<Rational> Kx = gx.k_operator(l, x);
        Matrix<Rational> K(fam.basis().size(), fam.basis().size());
        const auto& cs = fam.circuits();
        for (size_t c = 0; c < cs.size(); ++c) {
            Rational coef = 0;
            for (int j : part.blocks[l]) coef += cs[c].lambda_at(j);
            if (sgn(coef) == 0) continue;
            Rational fc = f_C_value(cs[c], z);
            if (sgn(fc) == 0) throw DiscriminantError("block sum has an unregularized pole");
            K = K + (coef / fc) * g.l_matrices()[c];
        }
        for (int kk = 0; kk < m; ++kk) fk = fk && f * (Kx * vx(kk)) == K * (f * vx(kk));
    }
    out.push_back(exact_check("strata.K", "f(K_{l,X}(x) v_{k,X}) = sum_{j in J_l} K_j(x) f(v_{k,X})", fk));

    WAlgebra ax(sf, default_anchor(sf));
    auto mv = [&](int j, int i) {
        return add(scale(Rational(fam.a()[j] / (z[j] - z[i])), v(i)), scale(Rational(fam.a()[i] / (z[i] - z[j])), v(j)));
    };
    bool mult = true;
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            FlagVector lhs = f * induced_multiplication_on_sing(ax, x, vx(p), vx(q));
            FlagVector rhs = zeros<Rational>(fam.basis().size());
            for (int i : part.blocks[p])
                for (int j = 0; j < n; ++j) {
                    if (p != q && st.block_of[j] == q) rhs = add(rhs, mv(i, j));
                    if (p == q && st.block_of[j] != p) rhs = sub(rhs, mv(i, j));
                }
            mult = mult && lhs == rhs;
        }
    out.push_back(exact_check("strata.multiplication", "f(v_{P,X} * v_{Q,X}) = block sums of v_i * v_j", mult));

    out.push_back(exact_check("strata.period", "f(q_X(x)) = q(x)", f * period_map(sf, x) == period_map(fam, z)));
    out.push_back(exact_check("strata.potential", "P_X(x) = P(x)", potential_first(sf, x) == potential_first(fam, z)));

    // d_i d_j of (1/2) a_p a_q u^2 log u, u = z_p - z_q, is (d_i u)(d_j u) a_p a_q (log u + 3/2);
    // block sums are compared as log coefficients per pair of blocks.
    bool pot = true;
    for (int l = 0; l < m; ++l)
        for (int kk = 0; kk < m; ++kk) {
            std::map<std::pair<int, int>, Rational> big, small;
            for (int p = 0; p < n; ++p)
                for (int q = p + 1; q < n; ++q) {
                    Rational c = 0;
                    for (int i : part.blocks[l])
                        for (int j : part.blocks[kk]) {
                            int di = i == p ? 1 : (i == q ? -1 : 0);
                            int dj = j == p ? 1 : (j == q ? -1 : 0);
                            c += di * dj;
                        }
                    if (sgn(c) == 0) continue;
                    int bp = st.block_of[p], bq = st.block_of[q];
                    if (bp == bq) {
                        pot = false;
                        continue;
                    }
                    big[{std::min(bp, bq), std::max(bp, bq)}] += c * fam.a()[p] * fam.a()[q];
                }
            for (int p = 0; p < m; ++p)
                for (int q = p + 1; q < m; ++q) {
                    int dl = l == p ? 1 : (l == q ? -1 : 0);
                    int dk = kk == p ? 1 : (kk == q ? -1 : 0);
                    if (dl * dk != 0) small[{p, q}] += dl * dk * sf.a()[p] * sf.a()[q];
                }
            for (auto it = big.begin(); it != big.end();)
                it = sgn(it->second) == 0 ? big.erase(it) : std::next(it);
            pot = pot && big == small;
        }
    out.push_back(exact_check("strata.potential_second",
                              "d^2 Ptilde_X/dx_l dx_k = lim sum_{i in J_l} sum_{j in J_k} d^2 Ptilde/dz_i dz_j", pot));
    return out;
}

}  // namespace arrfrob
