#include "arrfrob/rational.hpp"

#include <cctype>
#include <cstdio>

namespace arrfrob {

namespace {

bool valid_integer(const std::string& s, bool allow_sign) {
    size_t i = 0;
    if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!valid_integer(num, true) || !valid_integer(den, false))
        throw ConfigError("malformed rational: \"" + text + "\"");
    if (num[0] == '+') num = num.substr(1);
    mpz_class p(num, 10), q(den, 10);
    if (q == 0) throw ConfigError("zero denominator in rational: \"" + text + "\"");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }

std::string to_string(const Complex& x) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.12e%+.12ei", x.real(), x.imag());
    return buf;
}

}  // namespace arrfrob
