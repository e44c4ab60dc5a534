#ifndef ARRFROB_REPORT_HPP
#define ARRFROB_REPORT_HPP

#include <string>
#include <vector>

#include "json.hpp"

namespace arrfrob {

struct Check {
    std::string id;
    std::string anchor;  // the identity being checked, as a formula
    bool pass = false;
    std::string mode;  // "exact" or "numeric"
    double err = 0.0;
    std::string detail;
};

using Checks = std::vector<Check>;

inline Check exact_check(std::string id, std::string anchor, bool ok, std::string detail = {}) {
    return Check{std::move(id), std::move(anchor), ok, "exact", ok ? 0.0 : 1.0, std::move(detail)};
}

inline Check numeric_check(std::string id, std::string anchor, double err, double tol, std::string detail = {}) {
    return Check{std::move(id), std::move(anchor), err <= tol, "numeric", err, std::move(detail)};
}

inline bool all_pass(const Checks& cs) {
    for (const auto& c : cs)
        if (!c.pass) return false;
    return true;
}

inline void append(Checks& into, const Checks& more) { into.insert(into.end(), more.begin(), more.end()); }

std::string report_schema_version();
std::string format_double(double x);
nlohmann::ordered_json check_json(const Check& c);

}  // namespace arrfrob

#endif
