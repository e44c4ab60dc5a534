#include "arrfrob/critalg.hpp"

#include <functional>

namespace arrfrob {

WAlgebra::WAlgebra(const Family& fam, int anchor) : fam_(fam), anchor_(anchor) {
    if (!fam.generic()) throw std::invalid_argument("the w-basis algebra requires a generic family");
    if (anchor < 0 || anchor >= fam.n()) throw std::invalid_argument("anchor out of range");
    std::vector<Subset> items;
    for (const auto& t : fam.basis().items())
        if (std::find(t.begin(), t.end(), anchor) == t.end()) items.push_back(t);
    basis_ = SubsetIndex(items);

    std::function<const Vec<Rational>&(const Subset&)> rec = [&](const Subset& m) -> const Vec<Rational>& {
        auto it = reduced_.find(m);
        if (it != reduced_.end()) return it->second;
        Vec<Rational> out = zeros<Rational>(dim());
        Subset distinct = m;
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        bool has_anchor = std::find(m.begin(), m.end(), anchor_) != m.end();
        if (!has_anchor && distinct.size() == m.size()) {
            out[basis_.find(m)] = Rational(1) / fam_.minor(m);
        } else {
            int e = anchor_;
            if (!has_anchor)
                for (size_t i = 1; i < m.size(); ++i)
                    if (m[i] == m[i - 1]) {
                        e = m[i];
                        break;
                    }
            Subset rel = relation_for(m, e);
            Rational de = fam_.minor([&] { Subset t{e}; t.insert(t.end(), rel.begin(), rel.end()); return t; }());
            Subset base = m;
            base.erase(std::find(base.begin(), base.end(), e));
            for (int i = 0; i < fam_.n(); ++i) {
                if (i == e || std::find(rel.begin(), rel.end(), i) != rel.end()) continue;
                Subset t{i};
                t.insert(t.end(), rel.begin(), rel.end());
                Rational coef = -fam_.minor(t) / de;
                Subset next = base;
                next.push_back(i);
                std::sort(next.begin(), next.end());
                axpy(coef, rec(next), out);
            }
        }
        return reduced_.emplace(m, std::move(out)).first->second;
    };
    for (const auto& m : multisets(fam.k())) rec(m);
}

Subset WAlgebra::relation_for(const Subset& m, int e) const {
    Subset rel;
    for (int x : m)
        if (x != e && std::find(rel.begin(), rel.end(), x) == rel.end()) rel.push_back(x);
    if (e != anchor_) rel.push_back(anchor_);
    for (int x = 0; static_cast<int>(rel.size()) < fam_.k() - 1 && x < fam_.n(); ++x)
        if (x != e && std::find(rel.begin(), rel.end(), x) == rel.end()) rel.push_back(x);
    std::sort(rel.begin(), rel.end());
    return rel;
}

Vec<Rational> WAlgebra::reduce_step(const Subset& m, int e, const Subset& rel) const {
    Vec<Rational> out = zeros<Rational>(dim());
    Subset te{e};
    te.insert(te.end(), rel.begin(), rel.end());
    Rational de = fam_.minor(te);
    Subset base = m;
    base.erase(std::find(base.begin(), base.end(), e));
    for (int i = 0; i < fam_.n(); ++i) {
        if (i == e || std::find(rel.begin(), rel.end(), i) != rel.end()) continue;
        Subset t{i};
        t.insert(t.end(), rel.begin(), rel.end());
        Subset next = base;
        next.push_back(i);
        std::sort(next.begin(), next.end());
        axpy(Rational(-fam_.minor(t) / de), reduce(next), out);
    }
    return out;
}

const Vec<Rational>& WAlgebra::reduce(const Subset& multiset) const { return reduced_.at(multiset); }

std::vector<Vec<Rational>> WAlgebra::reduce_all_orders(const Subset& m) const {
    std::vector<Vec<Rational>> results;
    auto record = [&](const Vec<Rational>& v) {
        if (std::find(results.begin(), results.end(), v) == results.end()) results.push_back(v);
    };
    record(reduce(m));
    bool has_anchor = std::find(m.begin(), m.end(), anchor_) != m.end();
    std::vector<int> candidates;
    if (has_anchor)
        candidates.push_back(anchor_);
    else
        for (size_t i = 1; i < m.size(); ++i)
            if (m[i] == m[i - 1] && std::find(candidates.begin(), candidates.end(), m[i]) == candidates.end())
                candidates.push_back(m[i]);
    int k = fam_.k();
    for (int e : candidates) {
        Subset required;
        for (int x : m)
            if (x != e && std::find(required.begin(), required.end(), x) == required.end()) required.push_back(x);
        if (e != anchor_) required.push_back(anchor_);
        Subset pool;
        for (int x = 0; x < fam_.n(); ++x)
            if (x != e && std::find(required.begin(), required.end(), x) == required.end()) pool.push_back(x);
        int extra = k - 1 - static_cast<int>(required.size());
        for (const auto& pick : k_subsets(static_cast<int>(pool.size()), extra)) {
            Subset rel = required;
            for (int p : pick) rel.push_back(pool[p]);
            std::sort(rel.begin(), rel.end());
            record(reduce_step(m, e, rel));
        }
    }
    return results;
}

Vec<Rational> WAlgebra::w_element(const Subset& tuple) const {
    Vec<Rational> out = zeros<Rational>(dim());
    Subset s = tuple;
    int sign = sort_with_sign(s);
    if (sign == 0) return out;
    if (std::find(s.begin(), s.end(), anchor_) == s.end()) {
        out[basis_.find(s)] = sign;
        return out;
    }
    Subset rest;
    for (int x : s)
        if (x != anchor_) rest.push_back(x);
    Subset with_anchor = rest;
    with_anchor.push_back(anchor_);
    int p = sort_with_sign(with_anchor);
    for (int j = 0; j < fam_.n(); ++j) {
        if (j == anchor_ || std::find(rest.begin(), rest.end(), j) != rest.end()) continue;
        Subset t = rest;
        t.push_back(j);
        int q = sort_with_sign(t);
        out[basis_.find(t)] -= sign * p * q;
    }
    return out;
}

Vec<Rational> WAlgebra::change_anchor(const Vec<Rational>& x, const WAlgebra& to) const {
    Vec<Rational> out = zeros<Rational>(to.dim());
    for (int r = 0; r < dim(); ++r)
        if (sgn(x[r]) != 0) axpy(x[r], to.w_element(basis_.at(r)), out);
    return out;
}

Complex WAlgebra::evaluate_w(int r, const std::vector<Complex>& z, const std::vector<Complex>& t) const {
    const Subset& T = basis_.at(r);
    auto f = f_values(fam_, z, t);
    Complex v = to_complex(fam_.weight_product(T) * fam_.minor(T));
    for (int i : T) v /= f[i];
    return v;
}

Complex WAlgebra::evaluate(const Vec<Complex>& x, const std::vector<Complex>& z, const std::vector<Complex>& t) const {
    Complex total = 0;
    for (int r = 0; r < dim(); ++r) total += x[r] * evaluate_w(r, z, t);
    return total;
}

std::vector<Subset> WAlgebra::multisets(int size) const {
    std::vector<Subset> out;
    Subset cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == size) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < fam_.n(); ++i) {
            cur.push_back(i);
            rec(i);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

Rational WAlgebra::multinomial(const Subset& m) {
    mpz_class num, den = 1;
    mpz_fac_ui(num.get_mpz_t(), m.size());
    size_t i = 0;
    while (i < m.size()) {
        size_t j = i;
        while (j < m.size() && m[j] == m[i]) ++j;
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), j - i);
        den *= f;
        i = j;
    }
    return ratio(num, den);
}

}  // namespace arrfrob
