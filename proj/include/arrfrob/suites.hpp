#ifndef ARRFROB_SUITES_HPP
#define ARRFROB_SUITES_HPP

#include "arrfrob/frobenius.hpp"

namespace arrfrob {

struct SuiteConfig {
    std::vector<std::string> suites;
    std::uint64_t seed = 1;
    double tol = 1e-8;
    int samples = 5;
    int anchor = -1;
};

const std::vector<std::string>& known_suites();
// Comma-separated suite names; "all" expands to every suite. Unknown names throw ConfigError.
std::vector<std::string> parse_suites(const std::string& csv);

// Base point first (if the config has one), then seeded good points.
std::vector<std::vector<Rational>> sample_points(const LoadedConfig& cfg, std::uint64_t seed, int count);

struct SuiteResult {
    std::string name;
    std::vector<std::vector<Rational>> points;  // one entry per sample, empty for z-independent suites
    std::vector<Checks> checks;                 // parallel to points (single entry when z-independent)
    std::string skipped;                        // nonempty: reason the suite did not run
};

SuiteResult run_suite(const std::string& name, const LoadedConfig& cfg, const SuiteConfig& sc);

struct Report {
    std::vector<SuiteResult> suites;
    bool pass() const;
    nlohmann::ordered_json to_json(const LoadedConfig& cfg, const SuiteConfig& sc) const;
};

Report run_suites(const LoadedConfig& cfg, const SuiteConfig& sc);

nlohmann::ordered_json family_json(const Family& fam);
nlohmann::ordered_json critical_report_json(const std::vector<Rational>& z, const CriticalSet& cs);

}  // namespace arrfrob

#endif
