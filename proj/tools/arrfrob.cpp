#include "arrfrob/parallel.hpp"
#include "arrfrob/suites.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace arrfrob;

namespace {

struct Options {
    std::string config;
    std::string suites = "all";
    std::uint64_t seed = 1;
    double tol = 1e-8;
    int samples = 5;
    std::string json;
    int anchor = 0;  // 1-based; 0 means default
    double kappa = 17.0;
    int steps = 200;
};

void emit(const nlohmann::ordered_json& doc, const std::string& path) {
    std::string text = doc.dump(2) + "\n";
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << text;
}

int anchor_index(const Family& fam, int anchor) {
    if (anchor == 0) return default_anchor(fam);
    if (anchor < 1 || anchor > fam.n()) throw ConfigError("--anchor must lie in 1..n");
    return anchor - 1;
}

std::vector<Rational> base_point(const LoadedConfig& cfg, std::uint64_t seed) {
    return sample_points(cfg, seed, 1).front();
}

int run_check(const Options& o) {
    auto cfg = load_family_file(o.config);
    SuiteConfig sc;
    sc.suites = parse_suites(o.suites);
    sc.seed = o.seed;
    sc.tol = o.tol;
    sc.samples = o.samples;
    sc.anchor = anchor_index(cfg.family, o.anchor);
    Report rep = run_suites(cfg, sc);
    std::ostream& txt = o.json == "-" ? std::cerr : std::cout;
    for (const auto& s : rep.suites) {
        if (!s.skipped.empty()) {
            txt << s.name << ": skipped (" << s.skipped << ")\n";
            continue;
        }
        int total = 0, failed = 0;
        for (size_t i = 0; i < s.checks.size(); ++i)
            for (const auto& c : s.checks[i]) {
                ++total;
                if (c.pass) continue;
                ++failed;
                txt << "  FAIL " << c.id << "  [" << c.anchor << "]";
                if (i < s.points.size()) txt << " at " << rational_vector_json(s.points[i]).dump();
                txt << " err=" << format_double(c.err);
                if (!c.detail.empty()) txt << " (" << c.detail << ")";
                txt << "\n";
            }
        txt << s.name << ": " << (failed ? "FAIL" : "pass") << " (" << total - failed << "/" << total << ")\n";
    }
    if (!o.json.empty()) emit(rep.to_json(cfg, sc), o.json);
    txt << "overall: " << (rep.pass() ? "pass" : "FAIL") << "\n";
    return rep.pass() ? 0 : 1;
}

int run_circuits(const Options& o) {
    auto cfg = load_family_file(o.config);
    nlohmann::ordered_json doc;
    doc["schema"] = report_schema_version();
    doc["family"] = family_json(cfg.family);
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : cfg.family.circuits()) {
        nlohmann::ordered_json cj;
        auto idx = nlohmann::ordered_json::array();
        for (int i : c.indices) idx.push_back(i + 1);
        cj["indices"] = idx;
        auto lam = nlohmann::ordered_json::array();
        Rational weight = 0;
        for (size_t m = 0; m < c.lambda.size(); ++m) {
            lam.push_back(to_string(c.lambda[m]));
            weight += cfg.family.a()[c.indices[m]];
        }
        cj["lambda"] = lam;
        cj["weight"] = to_string(weight);
        arr.push_back(cj);
    }
    doc["circuits"] = arr;
    emit(doc, o.json);
    return 0;
}

int run_basis(const Options& o) {
    auto cfg = load_family_file(o.config);
    const Family& fam = cfg.family;
    nlohmann::ordered_json doc;
    doc["schema"] = report_schema_version();
    doc["family"] = family_json(fam);
    auto basis = nlohmann::ordered_json::array();
    for (const auto& T : fam.basis().items()) {
        auto t = nlohmann::ordered_json::array();
        for (int i : T) t.push_back(i + 1);
        basis.push_back(t);
    }
    doc["flag_basis"] = basis;
    auto sing = singular_subspace(fam);
    doc["sing_dim"] = sing.dim();
    if (fam.generic()) {
        WAlgebra alg(fam, anchor_index(fam, o.anchor));
        auto v = nlohmann::ordered_json::array();
        for (const auto& T : alg.basis().items()) {
            nlohmann::ordered_json vj;
            auto t = nlohmann::ordered_json::array();
            for (int i : T) t.push_back(i + 1);
            vj["T"] = t;
            vj["v"] = flag_vector_json(fam, v_vector(fam, T));
            v.push_back(vj);
        }
        doc["anchor"] = alg.anchor() + 1;
        doc["v_basis"] = v;
    }
    emit(doc, o.json);
    return 0;
}

int run_critical(const Options& o) {
    auto cfg = load_family_file(o.config);
    auto z = base_point(cfg, o.seed);
    auto cs = solve_critical(cfg.family, z);
    auto doc = critical_report_json(z, cs);
    emit(doc, o.json);
    if (o.json.empty() || o.json == "-") return cs.ok() ? 0 : 1;
    std::cout << cs.points.size() << " critical points (expected " << cs.expected << ")\n";
    return cs.ok() ? 0 : 1;
}

int run_potential(const Options& o) {
    auto cfg = load_family_file(o.config);
    const Family& fam = cfg.family;
    if (!fam.generic()) throw ConfigError("potential identities require a generic family");
    auto z = base_point(cfg, o.seed);
    WAlgebra alg(fam, anchor_index(fam, o.anchor));
    auto rows = potential_rows_parallel(alg, z, alg.multisets(2 * fam.k() + 1));
    emit(potential_report_json(fam, z, rows), o.json);
    bool ok = true;
    for (const auto& r : rows) ok = ok && r.pass;
    return ok ? 0 : 1;
}

int run_flow(const Options& o) {
    auto cfg = load_family_file(o.config);
    const Family& fam = cfg.family;
    if (o.steps < 2) throw ConfigError("--steps must be at least 2");
    auto z = base_point(cfg, o.seed);
    auto zc = convert<Complex>(z);
    double dist = min_circuit_distance(fam, zc);
    Path path;
    for (int m = 0; m <= o.steps; ++m) {
        std::vector<Complex> p = zc;
        double th = 2.0 * M_PI * m / o.steps;
        for (int i = 0; i < fam.n(); ++i) p[i] += 0.2 * dist / fam.n() * (std::polar(1.0, th * (i + 1)) - 1.0);
        path.vertices.push_back(p);
    }
    Vec<Complex> I0(fam.basis().size(), 0.0);
    auto sing = singular_subspace(fam);
    for (const auto& b : sing.basis) I0 = add(I0, convert<Complex>(b));
    auto tr = flow_flat_section(fam, o.kappa, path, I0);
    nlohmann::ordered_json doc;
    doc["schema"] = report_schema_version();
    doc["kappa"] = o.kappa;
    doc["steps"] = tr.steps;
    doc["trajectory"] = trajectory_json_lines(tr);
    emit(doc, o.json);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification toolkit for Frobenius-like structures on translated weighted arrangements"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "family config (JSON)")->required();
        sub->add_option("--seed", o.seed, "seed for sampled points");
        sub->add_option("--json", o.json, "write the JSON report here ('-' for stdout)");
        sub->add_option("--anchor", o.anchor, "anchor index i0 (1-based, default n)");
    };
    auto* check = app.add_subcommand("check", "run identity suites");
    common(check);
    check->add_option("--suites", o.suites, "comma-separated suites or 'all'");
    check->add_option("--tol", o.tol, "numeric tolerance");
    check->add_option("--samples", o.samples, "sample points per suite")->check(CLI::PositiveNumber);
    auto* circ = app.add_subcommand("circuits", "list circuits");
    common(circ);
    auto* basis = app.add_subcommand("basis", "flag basis, Sing V and v-vectors");
    common(basis);
    auto* crit = app.add_subcommand("critical", "critical points of the master function");
    common(crit);
    auto* pot = app.add_subcommand("potential", "potential derivative identities");
    common(pot);
    auto* flow = app.add_subcommand("gm-flow", "flat section along a loop");
    common(flow);
    flow->add_option("--kappa", o.kappa, "connection parameter");
    flow->add_option("--steps", o.steps, "path vertices");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        if (*check) return run_check(o);
        if (*circ) return run_circuits(o);
        if (*basis) return run_basis(o);
        if (*crit) return run_critical(o);
        if (*pot) return run_potential(o);
        if (*flow) return run_flow(o);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DiscriminantError& e) {
        std::cerr << "discriminant: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
