#include "arrfrob/poly.hpp"

#include <stdexcept>

namespace arrfrob {

Poly Poly::constant(int nvars, const Rational& c) {
    Poly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
}

Poly Poly::linear(const std::vector<Rational>& coeffs) {
    int n = static_cast<int>(coeffs.size());
    Poly p(n);
    for (int i = 0; i < n; ++i) {
        Exponent e(n, 0);
        e[i] = 1;
        p.add_term(e, coeffs[i]);
    }
    return p;
}

void Poly::add_term(const Exponent& e, const Rational& c) {
    if (sgn(c) == 0) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
        t_.emplace(e, c);
        return;
    }
    it->second += c;
    if (sgn(it->second) == 0) t_.erase(it);
}

int Poly::max_degree() const {
    int d = -1;
    for (const auto& [e, c] : t_) {
        int s = 0;
        for (int x : e) s += x;
        d = std::max(d, s);
    }
    return d;
}

int Poly::min_degree() const {
    int d = -1;
    for (const auto& [e, c] : t_) {
        int s = 0;
        for (int x : e) s += x;
        d = d < 0 ? s : std::min(d, s);
    }
    return d;
}

Poly Poly::derivative(int var) const {
    Poly p(n_);
    for (const auto& [e, c] : t_) {
        if (e[var] == 0) continue;
        Exponent f = e;
        f[var] -= 1;
        p.add_term(f, c * e[var]);
    }
    return p;
}

Poly Poly::pow(int e) const {
    Poly r = constant(n_, 1);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (n_ == 0) n_ = o.n_;
    for (const auto& [e, c] : o.t_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (n_ == 0) n_ = o.n_;
    for (const auto& [e, c] : o.t_) add_term(e, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r(std::max(a.n_, b.n_));
    for (const auto& [ea, ca] : a.t_)
        for (const auto& [eb, cb] : b.t_) {
            Poly::Exponent e(r.n_, 0);
            for (int i = 0; i < r.n_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

Poly operator*(const Rational& s, const Poly& a) {
    Poly r(a.n_);
    for (const auto& [e, c] : a.t_) r.add_term(e, s * c);
    return r;
}

UPoly<Rational> exact_divide(const UPoly<Rational>& a, const UPoly<Rational>& b) {
    int db = b.degree();
    if (db < 0) throw std::runtime_error("division by zero polynomial");
    UPoly<Rational> rem = a;
    rem.trim();
    int da = rem.degree();
    UPoly<Rational> q;
    if (da < db) {
        if (da >= 0) throw std::runtime_error("inexact polynomial division");
        return q;
    }
    q.c.assign(static_cast<size_t>(da - db + 1), Rational(0));
    for (int i = da; i >= db; --i) {
        if (sgn(rem.c[i]) == 0) continue;
        Rational f = rem.c[i] / b.c[db];
        q.c[i - db] = f;
        for (int j = 0; j <= db; ++j) rem.c[i - db + j] -= f * b.c[j];
    }
    if (rem.degree() >= 0) throw std::runtime_error("inexact polynomial division");
    q.trim();
    return q;
}

}  // namespace arrfrob
