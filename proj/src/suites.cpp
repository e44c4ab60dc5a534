#include "arrfrob/suites.hpp"

#include "arrfrob/parallel.hpp"

#include <Eigen/Dense>
#include <cstdio>
#include <random>
#include <sstream>

namespace arrfrob {

std::string report_schema_version() { return "arrfrob-report/1"; }

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return buf;
}

nlohmann::ordered_json check_json(const Check& c) {
    nlohmann::ordered_json j;
    j["id"] = c.id;
    j["anchor"] = c.anchor;
    j["mode"] = c.mode;
    j["pass"] = c.pass;
    j["err"] = format_double(c.err);
    if (!c.detail.empty()) j["detail"] = c.detail;
    return j;
}

const std::vector<std::string>& known_suites() {
    static const std::vector<std::string> names{"circuits", "basis",     "flatness",  "symmetry", "critical",
                                                "canonical", "conformal", "potential", "periods",  "strata"};
    return names;
}

std::vector<std::string> parse_suites(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if (item == "all") {
            for (const auto& s : known_suites())
                if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
            continue;
        }
        if (std::find(known_suites().begin(), known_suites().end(), item) == known_suites().end())
            throw ConfigError("unknown suite '" + item + "'");
        if (std::find(out.begin(), out.end(), item) == out.end()) out.push_back(item);
    }
    if (out.empty()) throw ConfigError("no suites selected");
    return out;
}

std::vector<std::vector<Rational>> sample_points(const LoadedConfig& cfg, std::uint64_t seed, int count) {
    std::vector<std::vector<Rational>> out;
    if (cfg.z) {
        if (!is_good_fiber(cfg.family, *cfg.z)) throw ConfigError("configured z lies on the discriminant");
        out.push_back(*cfg.z);
    }
    for (std::uint64_t i = 0; static_cast<int>(out.size()) < count; ++i) out.push_back(sample_good_point(cfg.family, seed + i));
    return out;
}

namespace {

nlohmann::ordered_json rjson(const std::vector<Rational>& v) {
    auto a = nlohmann::ordered_json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

}  // namespace

nlohmann::ordered_json family_json(const Family& fam) {
    nlohmann::ordered_json j;
    j["k"] = fam.k();
    j["n"] = fam.n();
    auto b = nlohmann::ordered_json::array();
    for (const auto& row : fam.b()) b.push_back(rjson(row));
    j["b"] = b;
    j["a"] = rjson(fam.a());
    j["generic"] = fam.generic();
    return j;
}

nlohmann::ordered_json critical_report_json(const std::vector<Rational>& z, const CriticalSet& cs) {
    nlohmann::ordered_json j;
    j["schema"] = report_schema_version();
    j["z"] = rjson(z);
    auto pts = nlohmann::ordered_json::array();
    for (const auto& p : cs.points) {
        nlohmann::ordered_json pj;
        auto t = nlohmann::ordered_json::array();
        for (const auto& x : p.t) t.push_back(to_string(x));
        pj["t"] = t;
        pj["hess"] = to_string(p.hess);
        pj["residual"] = format_double(p.residual);
        pts.push_back(pj);
    }
    j["points"] = pts;
    j["expected_count"] = cs.expected;
    if (!cs.diagnostic.empty()) j["diagnostic"] = cs.diagnostic;
    return j;
}

namespace {

Checks circuit_checks(const Family& fam) {
    Checks out;
    bool relation = true, minimal = true, normalized = true;
    for (const auto& c : fam.circuits()) {
        std::vector<Rational> s(fam.k(), Rational(0));
        for (size_t m = 0; m < c.indices.size(); ++m)
            for (int i = 0; i < fam.k(); ++i) s[i] += c.lambda[m] * fam.b()[c.indices[m]][i];
        for (const auto& x : s) relation = relation && sgn(x) == 0;
        Matrix<Rational> rows(static_cast<int>(c.indices.size()), fam.k());
        for (size_t m = 0; m < c.indices.size(); ++m)
            for (int i = 0; i < fam.k(); ++i) rows(static_cast<int>(m), i) = fam.b()[c.indices[m]][i];
        minimal = minimal && rank(rows) == static_cast<int>(c.indices.size()) - 1;
        for (const auto& l : c.lambda) minimal = minimal && sgn(l) != 0;
        normalized = normalized && c.lambda.front() == 1;
    }
    out.push_back(exact_check("circuits.relation", "sum_{j in C} lambda_j b_j = 0", relation));
    out.push_back(exact_check("circuits.minimal", "rank b_C = |C| - 1 and every lambda_j != 0", minimal));
    out.push_back(exact_check("circuits.normalized", "lambda = 1 at the smallest index", normalized));
    if (fam.generic())
        out.push_back(exact_check("circuits.generic_count", "#circuits = C(n, k+1)",
                                  static_cast<long long>(fam.circuits().size()) == binomial(fam.n(), fam.k() + 1)));
    std::string zw;
    for (const auto& c : fam.zero_weight_circuits()) zw += (zw.empty() ? "" : " ") + subset_label(c);
    out.push_back(Check{"circuits.zero_weight", "circuits with a_C = 0 (reported)", true, "report", 0.0,
                        zw.empty() ? "none" : zw});
    return out;
}

Checks basis_checks(const Family& fam, int anchor) {
    Checks out;
    auto sing = singular_subspace(fam);
    if (!fam.generic()) {
        out.push_back(Check{"basis.sing_dim", "dim Sing V (reported)", true, "report", 0.0, "dim " + std::to_string(sing.dim())});
        return out;
    }
    bool in_sing = true, gram = true;
    const auto& items = fam.basis().items();
    std::vector<FlagVector> vs;
    for (const auto& T : items) {
        vs.push_back(v_vector(fam, T));
        in_sing = in_sing && all_zero(sing.conditions * vs.back());
    }
    for (size_t r = 0; r < items.size(); ++r)
        for (size_t s = 0; s < items.size(); ++s)
            gram = gram && gram_v(fam, items[r], items[s]) == contravariant_pairing(fam, vs[r], vs[s]);
    out.push_back(exact_check("basis.v_singular", "v_T in Sing V", in_sing));
    out.push_back(exact_check("basis.gram_v", "S(v_T, v_T') closed form", gram));
    if (fam.k() == 1) {
        int n = fam.n();
        Matrix<Rational> G(n - 1, n - 1);
        for (int i = 0; i < n - 1; ++i)
            for (int j = 0; j < n - 1; ++j) G(i, j) = contravariant_pairing(fam, vs[i], vs[j]);
        Rational expect = fam.weight_product([&] {
                              Subset all(n);
                              for (int i = 0; i < n; ++i) all[i] = i;
                              return all;
                          }()) /
                          fam.abs_a();
        out.push_back(exact_check("basis.gram_det", "det S(v_i, v_j)_{i,j<n} = prod a_j / |a|", determinant(G) == expect));
    }
    out.push_back(exact_check("basis.sing_dim", "dim Sing V = C(n-1, k)", sing.dim() == expected_critical_count(fam),
                              "dim " + std::to_string(sing.dim())));
    WAlgebra alg(fam, anchor);
    out.push_back(exact_check("basis.w_dim", "#anchored w-basis = C(n-1, k)", alg.dim() == expected_critical_count(fam)));
    out.push_back(exact_check("basis.nu_rank", "nu maps the w-basis onto Sing V", rank(naive_iso(alg)) == sing.dim()));
    bool order = true;
    for (const auto& m : alg.multisets(fam.k())) order = order && alg.reduce_all_orders(m).size() == 1;
    out.push_back(exact_check("basis.reduction_order", "monomial reduction is independent of the elimination order", order));
    append(out, check_contravariant_class(alg, sing));
    return out;
}

Checks critical_checks(const Family& fam, const std::vector<Rational>& z, int anchor, std::uint64_t seed) {
    Checks out;
    auto cs = solve_critical(fam, z);
    out.push_back(exact_check("critical.count", "#critical points = |chi(U)| = C(n-1, k)",
                              static_cast<int>(cs.points.size()) == cs.expected && !cs.degenerate,
                              std::to_string(cs.points.size()) + " of " + std::to_string(cs.expected) +
                                  (cs.diagnostic.empty() ? "" : "; " + cs.diagnostic)));
    double min_hess = 1e300, res = 0;
    for (const auto& p : cs.points) {
        min_hess = std::min(min_hess, std::abs(p.hess));
        res = std::max(res, p.residual);
    }
    bool hess_ok = cs.points.empty() || min_hess > 1e-10;
    out.push_back(Check{"critical.hessian", "|Hess(p)| > 1e-10", hess_ok, "numeric", hess_ok ? 0.0 : 1.0,
                        cs.points.empty() ? "no points" : "min |Hess| = " + format_double(min_hess)});
    out.push_back(numeric_check("critical.residual", "grad Phi(p) = 0", res, 1e-10));
    auto zc = convert<Complex>(z);
    double rel = 0;
    for (const auto& I : fam.k() == 1 ? std::vector<Subset>{Subset{}} : k_subsets(fam.n(), fam.k() - 1))
        for (const auto& p : cs.points) {
            auto f = f_values(fam, zc, p.t);
            Complex s = 0;
            double mag = 1.0;
            for (int j = 0; j < fam.n(); ++j) {
                Subset idx{j};
                idx.insert(idx.end(), I.begin(), I.end());
                Complex term = fam.minor(idx).get_d() * fam.a()[j].get_d() / f[j];
                s += term;
                mag = std::max(mag, std::abs(term));
            }
            rel = std::max(rel, std::abs(s) / mag);
        }
    out.push_back(numeric_check("critical.relations", "sum_j d_{j,I} a_j/f_j(p) = 0", rel, 1e-9));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<Complex> t(fam.k());
    for (auto& x : t) x = Complex(u(rng), u(rng));
    auto f = f_values(fam, zc, t);
    auto g = master_gradient(fam, zc, t);
    Complex e = 0;
    for (int i = 0; i < fam.k(); ++i) e += t[i] * g[i];
    for (int j = 0; j < fam.n(); ++j) e += zc[j] * fam.a()[j].get_d() / f[j];
    out.push_back(numeric_check("critical.euler", "sum_i t_i dPhi/dt_i + sum_j z_j a_j/f_j = |a|",
                                std::abs(e - fam.abs_a().get_d()), 1e-9));
    if (fam.generic() && cs.ok()) {
        WAlgebra alg(fam, anchor);
        int d = alg.dim();
        Eigen::MatrixXcd E(d, d);
        for (int r = 0; r < d; ++r)
            for (int p = 0; p < d; ++p) E(r, p) = alg.evaluate_w(r, zc, cs.points[p].t);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(E);
        double smax = svd.singularValues()(0), smin = svd.singularValues()(d - 1);
        out.push_back(Check{"critical.w_basis", "[w_T(p)] is nonsingular", smin > 1e-12 * smax, "numeric", smin / smax,
                            "condition " + format_double(smax / smin)});
    }
    return out;
}

Path loop_path(const Family& fam, const std::vector<Rational>& z0, std::uint64_t seed, int vertices) {
    auto zc = convert<Complex>(z0);
    double lam = 1.0;
    for (const auto& c : fam.circuits()) {
        double s = 0;
        for (const auto& l : c.lambda) s += std::abs(l.get_d());
        lam = std::max(lam, s);
    }
    double rho = 0.25 * min_circuit_distance(fam, zc) / lam;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<Complex> e(fam.n());
    double norm = 0;
    for (auto& x : e) {
        x = Complex(g(rng), g(rng));
        norm = std::max(norm, std::abs(x));
    }
    Path p;
    for (int m = 0; m <= vertices; ++m) {
        std::vector<Complex> z = zc;
        if (m != 0 && m != vertices) {
            double th = 2.0 * M_PI * (m - 1) / (vertices - 1);
            Complex w = rho / norm * std::polar(1.0, th);
            for (size_t i = 0; i < z.size(); ++i) z[i] += w * e[i];
        }
        p.vertices.push_back(z);
    }
    return p;
}

Checks period_checks(const Family& fam, const std::vector<Rational>& z, int anchor, std::uint64_t seed) {
    Checks out;
    WAlgebra alg(fam, anchor);
    Path path = loop_path(fam, z, seed, 8);
    auto polys = period_polynomials(fam, anchor);
    Complex ak = fam.abs_a().get_d() / fam.k();
    FlowOptions opt;
    opt.samples_per_segment = 4;
    auto qflow = flow_flat_section(fam, ak, path, convert<Complex>(period_map(fam, z, anchor)), opt);
    double qerr = 0;
    for (size_t i = 0; i < qflow.s.size(); ++i) {
        auto q = evaluate_polys(polys, qflow.z[i]);
        double mag = 1.0;
        for (const auto& x : q) mag = std::max(mag, std::abs(x));
        for (size_t r = 0; r < q.size(); ++r) qerr = std::max(qerr, std::abs(q[r] - qflow.I[i][r]) / mag);
    }
    out.push_back(numeric_check("periods.q_flat", "q(z) is flat for kappa = |a|/k", qerr, 1e-8));
    Complex kappa = 17.0;
    if (std::abs(std::abs(kappa) - ak.real()) < 1e-9) kappa = 19.0;
    Vec<Complex> I0 = convert<Complex>(add(period_map(fam, z, anchor), v_vector(fam, fam.basis().at(0))));
    auto tr = flow_flat_section(fam, kappa, path, I0, opt);
    double ret = 0, mag = 1.0;
    for (size_t r = 0; r < I0.size(); ++r) {
        ret = std::max(ret, std::abs(tr.I.back()[r] - I0[r]));
        mag = std::max(mag, std::abs(I0[r]));
    }
    out.push_back(numeric_check("periods.loop_return", "flat section returns after a contractible loop", ret / mag, 1e-6));
    append(out, flat_and_twisted_periods(alg, tr, path));
    return out;
}

std::vector<Partition> strata_partitions(const Family& fam) {
    std::vector<Partition> out;
    int n = fam.n();
    Partition p;
    p.blocks.push_back({0, 1});
    for (int j = 2; j < n; ++j) p.blocks.push_back({j});
    out.push_back(p);
    if (n >= 4) {
        Partition q;
        q.blocks.push_back({0, 1});
        q.blocks.push_back({2, 3});
        for (int j = 4; j < n; ++j) q.blocks.push_back({j});
        out.push_back(q);
    }
    return out;
}

std::string partition_label(const Partition& p) {
    std::string s;
    for (const auto& b : p.blocks) s += subset_label(b);
    return s;
}

std::vector<Subset> potential_tuples(const WAlgebra& alg, std::uint64_t seed) {
    auto all = alg.multisets(2 * alg.family().k() + 1);
    if (all.size() <= 400) return all;
    std::mt19937_64 rng(seed);
    std::vector<Subset> pick;
    std::uniform_int_distribution<int> d(0, alg.family().n() - 1);
    for (int i = 0; i < 50; ++i) {
        Subset t(2 * alg.family().k() + 1);
        for (auto& x : t) x = d(rng);
        pick.push_back(t);
    }
    return pick;
}

Checks potential_checks(const Family& fam, const std::vector<Rational>& z, int anchor, std::uint64_t seed) {
    Checks out;
    append(out, check_potential_first(fam, z));
    append(out, check_potential_homogeneity(fam, z));
    WAlgebra alg(fam, anchor);
    auto tuples = potential_tuples(alg, seed);
    auto rows = potential_rows_parallel(alg, z, tuples);
    std::string witness;
    bool ok = true;
    for (const auto& r : rows) {
        if (!r.pass && witness.empty()) witness = "tuple " + subset_label(r.tuple);
        ok = ok && r.pass;
    }
    out.push_back(exact_check("potential.derivatives",
                              "d^{2k+1} Ptilde / dz_{m_0}..dz_{m_2k} = (-1)^k (prod beta d_{m_i}, [1])", ok,
                              std::to_string(rows.size()) + " tuples" + (witness.empty() ? "" : "; " + witness)));
    append(out, check_multi(alg, z, std::min(4, 2 * fam.k())));
    if (fam.k() <= 2) append(out, check_kernel_relations(fam, z));
    append(out, check_eta(alg, z));
    return out;
}

Checks conformal_checks(const Family& fam, const std::vector<Rational>& z, int anchor) {
    Checks out;
    append(out, check_conformal_block(fam, z, anchor));
    WAlgebra alg(fam, anchor);
    append(out, check_period_map(alg, z));
    append(out, check_multiplication(alg, z));
    out.push_back(exact_check("identity.closed_vs_power", "closed form of [1] = (sum_j z_j [a_j/f_j] / |a|)^k reduced",
                              alg.identity_closed(z) == alg.identity_power(z)));
    int other = anchor == 0 ? 1 : 0;
    WAlgebra alt(fam, other);
    out.push_back(exact_check("identity.anchor_change", "[1] agrees after change of anchor",
                              alg.change_anchor(alg.identity_closed(z), alt) == alt.identity_closed(z)));
    bool der = true;
    std::string why;
    for (const auto& ms : alg.multisets(std::min(fam.k(), 2))) {
        try {
            derivative_sections(fam, z, ms, anchor);
        } catch (const std::logic_error& e) {
            der = false;
            why = e.what();
        }
    }
    out.push_back(exact_check("conformal.derivatives", "d^r {1}/dz_m.. = k..(k-r+1)/|a|^r alpha(prod [a_m/f_m])", der, why));
    return out;
}

SuiteResult z_independent(const std::string& name, Checks cs) {
    SuiteResult r;
    r.name = name;
    r.checks.push_back(std::move(cs));
    return r;
}

}  // namespace

SuiteResult run_suite(const std::string& name, const LoadedConfig& cfg, const SuiteConfig& sc) {
    const Family& fam = cfg.family;
    int anchor = sc.anchor < 0 ? default_anchor(fam) : sc.anchor;
    if (anchor >= fam.n()) throw ConfigError("anchor out of range");
    if (name == "circuits") {
        Checks cs = circuit_checks(fam);
        append(cs, check_plucker(fam));
        return z_independent(name, cs);
    }
    if (name == "basis") {
        Checks cs = basis_checks(fam, anchor);
        bool a_ok = a_constant(2, 3) == 24;
        for (int k = 1; k <= 5; ++k) {
            mpz_class f;
            mpz_fac_ui(f.get_mpz_t(), 2 * k);
            a_ok = a_ok && a_constant(k, 2 * k) == f && a_constant(k, 0) == 1;
        }
        cs.push_back(exact_check("constants.A", "A_{2,3} = 24, A_{k,2k} = (2k)!, A_{k,0} = 1", a_ok));
        return z_independent(name, cs);
    }
    SuiteResult r;
    r.name = name;
    bool generic = fam.generic();
    if (name == "critical" || name == "canonical" || name == "periods" || name == "conformal" || name == "potential") {
        if (!generic) {
            r.skipped = "requires a generic family";
            return r;
        }
    }
    if ((name == "critical" || name == "canonical") && fam.k() > 2) {
        r.skipped = "numeric critical solving is available for k <= 2 only";
        return r;
    }
    if (name == "strata") {
        bool ok = fam.k() == 1 && fam.n() >= 3;
        for (const auto& row : fam.b()) ok = ok && row[0] == 1;
        if (!ok) {
            r.skipped = "requires k = 1, b_j = 1 and n >= 3";
            return r;
        }
        std::uint64_t s = sc.seed;
        for (const auto& part : strata_partitions(fam)) {
            int count = std::min(sc.samples, 3);
            for (int i = 0; i < count; ++i) {
                auto x = sample_stratum_point(fam, part, s++);
                Checks cs = strata_restriction_k1(fam, part, x);
                for (auto& c : cs) c.detail = "partition " + partition_label(part) + (c.detail.empty() ? "" : "; " + c.detail);
                r.points.push_back(x);
                r.checks.push_back(cs);
            }
        }
        return r;
    }
    auto pts = sample_points(cfg, sc.seed, sc.samples);
    if (name == "canonical") {
        WAlgebra alg(fam, anchor);
        r.points = pts;
        try {
            for (const auto& z : pts) r.checks.push_back(check_canonical(alg, z, sc.tol));
        } catch (const std::exception& e) {
            r.checks.resize(pts.size());
            r.checks.front().push_back(exact_check("canonical.completed", "suite ran to completion", false, e.what()));
            return r;
        }
        auto est = naive_iso_and_constant(alg, pts);
        bool unit = std::abs(est.c - Complex(1.0)) <= 1e-7;
        r.checks.front().push_back(Check{"canonical.constant", "alpha = c nu with c constant; c = 1 for k <= 2",
                                         est.constant && unit, "numeric", std::max(est.spread, std::abs(est.c - Complex(1.0))),
                                         "c = " + to_string(est.c) + " over " + std::to_string(est.samples) + " samples"});
        return r;
    }
    std::uint64_t s = sc.seed;
    for (const auto& z : pts) {
        Checks cs;
        try {
            if (name == "flatness") cs = check_flatness(fam, z);
            else if (name == "symmetry") cs = check_symmetry_and_invariance(fam, z);
            else if (name == "critical") cs = critical_checks(fam, z, anchor, s);
            else if (name == "conformal") cs = conformal_checks(fam, z, anchor);
            else if (name == "potential") cs = potential_checks(fam, z, anchor, s);
            else if (name == "periods") cs = period_checks(fam, z, anchor, s);
            else throw ConfigError("unknown suite '" + name + "'");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            cs.push_back(exact_check(name + ".completed", "suite ran to completion", false, e.what()));
        }
        ++s;
        r.points.push_back(z);
        r.checks.push_back(std::move(cs));
    }
    return r;
}

bool Report::pass() const {
    for (const auto& s : suites)
        for (const auto& cs : s.checks)
            if (!all_pass(cs)) return false;
    return true;
}

nlohmann::ordered_json Report::to_json(const LoadedConfig& cfg, const SuiteConfig& sc) const {
    nlohmann::ordered_json doc;
    doc["schema"] = report_schema_version();
    doc["family"] = family_json(cfg.family);
    doc["seed"] = sc.seed;
    doc["tol"] = format_double(sc.tol);
    doc["samples"] = sc.samples;
    doc["anchor"] = (sc.anchor < 0 ? default_anchor(cfg.family) : sc.anchor) + 1;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& s : suites) {
        nlohmann::ordered_json sj;
        sj["name"] = s.name;
        if (!s.skipped.empty()) sj["skipped"] = s.skipped;
        auto samples = nlohmann::ordered_json::array();
        for (size_t i = 0; i < s.checks.size(); ++i) {
            nlohmann::ordered_json one;
            if (i < s.points.size()) one["point"] = rjson(s.points[i]);
            auto checks = nlohmann::ordered_json::array();
            for (const auto& c : s.checks[i]) checks.push_back(check_json(c));
            one["checks"] = checks;
            samples.push_back(one);
        }
        sj["samples"] = samples;
        bool ok = true;
        for (const auto& cs : s.checks) ok = ok && all_pass(cs);
        sj["pass"] = ok;
        arr.push_back(sj);
    }
    doc["suites"] = arr;
    doc["pass"] = pass();
    return doc;
}

Report run_suites(const LoadedConfig& cfg, const SuiteConfig& sc) {
    Report rep;
    for (const auto& name : sc.suites) rep.suites.push_back(run_suite(name, cfg, sc));
    return rep;
}

}  // namespace arrfrob
