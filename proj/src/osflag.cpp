#include "arrfrob/osflag.hpp"

namespace arrfrob {

FlagVector flag_basis_vector(const Family& fam, const Subset& tuple) {
    FlagVector v = zeros<Rational>(fam.basis().size());
    Subset s = tuple;
    int sign = sort_with_sign(s);
    if (sign == 0) return v;
    int pos = fam.basis().find(s);
    if (pos >= 0) v[pos] = sign;
    return v;
}

Matrix<Rational> contravariant_form(const Family& fam) {
    int d = fam.basis().size();
    Matrix<Rational> g(d, d);
    for (int i = 0; i < d; ++i) g(i, i) = fam.weight_product(fam.basis().at(i));
    return g;
}

SingularSubspace singular_subspace(const Family& fam) {
    const auto& basis = fam.basis();
    auto lower = k_subsets(fam.n(), fam.k() - 1);
    SingularSubspace sing;
    sing.conditions = Matrix<Rational>(static_cast<int>(lower.size()), basis.size());
    for (size_t r = 0; r < lower.size(); ++r)
        for (int j = 0; j < fam.n(); ++j) {
            Subset t{j};
            t.insert(t.end(), lower[r].begin(), lower[r].end());
            int sign = sort_with_sign(t);
            if (sign == 0) continue;
            int pos = basis.find(t);
            if (pos >= 0) sing.conditions(static_cast<int>(r), pos) += sign * fam.a()[j];
        }
    sing.basis = nullspace(sing.conditions);
    Matrix<Rational> g = contravariant_form(fam);
    int s = sing.dim();
    sing.gram = Matrix<Rational>(s, s);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) sing.gram(i, j) = contravariant_pairing(fam, sing.basis[i], sing.basis[j]);
    return sing;
}

FlagVector v_vector(const Family& fam, const Subset& tuple) {
    FlagVector v = flag_basis_vector(fam, tuple);
    Subset probe = tuple;
    if (sort_with_sign(probe) == 0) return v;
    for (size_t m = 0; m < tuple.size(); ++m) {
        Rational w = fam.a()[tuple[m]] / fam.abs_a();
        for (int j = 0; j < fam.n(); ++j) {
            Subset t = tuple;
            t[m] = j;
            axpy(Rational(-w), flag_basis_vector(fam, t), v);
        }
    }
    if (fam.k() == 1)
        for (auto& x : v) x = -x;
    return v;
}

Rational gram_v(const Family& fam, const Subset& t1, const Subset& t2) {
    Subset s1 = t1, s2 = t2;
    int e1 = sort_with_sign(s1), e2 = sort_with_sign(s2);
    if (e1 == 0 || e2 == 0) return 0;
    int k = fam.k();
    Subset common, only1, only2;
    for (int x : s1)
        (std::find(s2.begin(), s2.end(), x) != s2.end() ? common : only1).push_back(x);
    for (int x : s2)
        if (std::find(s1.begin(), s1.end(), x) == s1.end()) only2.push_back(x);
    int overlap = static_cast<int>(common.size());
    if (overlap == k) {
        Rational rest = fam.abs_a();
        for (int x : s1) rest -= fam.a()[x];
        return rest * fam.weight_product(s1) / fam.abs_a();
    }
    if (overlap < k - 1) return 0;
    Subset u1 = common, u2 = common;
    u1.push_back(only1[0]);
    u2.push_back(only2[0]);
    Subset w1 = u1, w2 = u2;
    int p1 = sort_with_sign(w1), p2 = sort_with_sign(w2);
    Subset all = common;
    all.push_back(only1[0]);
    all.push_back(only2[0]);
    return Rational(-e1 * e2 * p1 * p2) * fam.weight_product(all) / fam.abs_a();
}

FlagVector orthogonal_projection(const Family& fam, const SingularSubspace& sing, const FlagVector& u) {
    int s = sing.dim();
    Vec<Rational> rhs(s);
    for (int i = 0; i < s; ++i) rhs[i] = contravariant_pairing(fam, sing.basis[i], u);
    Vec<Rational> x = solve(sing.gram, rhs);
    FlagVector out = zeros<Rational>(fam.basis().size());
    for (int i = 0; i < s; ++i) axpy(x[i], sing.basis[i], out);
    return out;
}

nlohmann::json flag_vector_json(const Family& fam, const FlagVector& v) {
    auto out = nlohmann::json::array();
    for (int i = 0; i < fam.basis().size(); ++i) {
        if (sgn(v[i]) == 0) continue;
        auto idx = nlohmann::json::array();
        for (int x : fam.basis().at(i)) idx.push_back(x + 1);
        out.push_back({{"indices", idx}, {"coeff", to_string(v[i])}});
    }
    return out;
}

}  // namespace arrfrob
