#ifndef ARRFROB_RATIONAL_HPP
#define ARRFROB_RATIONAL_HPP

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace arrfrob {

using Rational = mpq_class;
using Complex = std::complex<double>;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepts "p" or "p/q" with q > 0.
Rational parse_rational(const std::string& text);

// p/q in lowest terms.
inline Rational ratio(const mpz_class& p, const mpz_class& q) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}
std::string to_string(const Rational& x);
std::string to_string(const Complex& x);

// First-order dual numbers over the rationals: value + eps * slope.
struct Dual {
    Rational v, d;
    Dual() = default;
    Dual(const Rational& value) : v(value), d(0) {}
    Dual(const Rational& value, const Rational& slope) : v(value), d(slope) {}
};

inline Dual operator+(const Dual& x, const Dual& y) { return {x.v + y.v, x.d + y.d}; }
inline Dual operator-(const Dual& x, const Dual& y) { return {x.v - y.v, x.d - y.d}; }
inline Dual operator-(const Dual& x) { return {-x.v, -x.d}; }
inline Dual operator*(const Dual& x, const Dual& y) { return {x.v * y.v, x.v * y.d + x.d * y.v}; }
inline Dual operator/(const Dual& x, const Dual& y) {
    Rational q = x.v / y.v;
    return {q, (x.d - q * y.d) / y.v};
}
inline Dual& operator+=(Dual& x, const Dual& y) { return x = x + y; }
inline Dual& operator-=(Dual& x, const Dual& y) { return x = x - y; }
inline Dual& operator*=(Dual& x, const Dual& y) { return x = x * y; }
inline bool operator==(const Dual& x, const Dual& y) { return x.v == y.v && x.d == y.d; }

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Complex& x) { return x.real() == 0.0 && x.imag() == 0.0; }
inline bool is_zero(const Dual& x) { return is_zero(x.v) && is_zero(x.d); }

inline double magnitude(const Rational& x) { return std::fabs(x.get_d()); }
inline double magnitude(const Complex& x) { return std::abs(x); }
inline double magnitude(const Dual& x) { return std::fabs(x.v.get_d()); }

template <class S> S from_rational(const Rational& q);
template <> inline Rational from_rational<Rational>(const Rational& q) { return q; }
template <> inline Complex from_rational<Complex>(const Rational& q) { return Complex(q.get_d(), 0.0); }
template <> inline Dual from_rational<Dual>(const Rational& q) { return Dual(q); }

template <class S> std::vector<S> convert(const std::vector<Rational>& z) {
    std::vector<S> out;
    out.reserve(z.size());
    for (const auto& x : z) out.push_back(from_rational<S>(x));
    return out;
}

inline Complex to_complex(const Rational& q) { return Complex(q.get_d(), 0.0); }
inline Complex to_complex(const Complex& c) { return c; }

template <class S> S power(const S& x, int e) {
    S r = from_rational<S>(Rational(1));
    for (int i = 0; i < e; ++i) r = r * x;
    return r;
}

}  // namespace arrfrob

#endif
