// Acceptance runner: one pass/fail line per criterion.
#include "arrfrob/parallel.hpp"
#include "arrfrob/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

using namespace arrfrob;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::mt19937_64& rng() {
    static std::mt19937_64 g(20241019);
    return g;
}

Rational positive_rational() {
    std::uniform_int_distribution<int> num(1, 9), den(1, 4);
    return ratio(num(rng()), den(rng()));
}

Rational nonzero_rational() {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
    int p = 0;
    while (p == 0) p = num(rng());
    return ratio(p, den(rng()));
}

std::vector<Rational> positive_weights(int n) {
    std::vector<Rational> a(n);
    for (auto& x : a) x = positive_rational();
    return a;
}

Family points_family(const std::vector<Rational>& a) {
    return Family(1, std::vector<std::vector<Rational>>(a.size(), {Rational(1)}), a);
}

Family generic_lines(const std::vector<Rational>& a) {
    std::uniform_int_distribution<int> e(-3, 3);
    for (;;) {
        std::vector<std::vector<Rational>> b(a.size(), std::vector<Rational>(2));
        for (auto& row : b)
            for (auto& x : row) x = e(rng());
        try {
            Family fam(2, b, a);
            if (fam.generic()) return fam;
        } catch (const ConfigError&) {
        }
    }
}

Family generic_family(int k, int n) {
    std::uniform_int_distribution<int> e(-3, 3);
    for (;;) {
        std::vector<std::vector<Rational>> b(n, std::vector<Rational>(k));
        for (auto& row : b)
            for (auto& x : row) x = e(rng());
        try {
            Family fam(k, b, positive_weights(n));
            if (fam.generic()) return fam;
        } catch (const ConfigError&) {
        }
    }
}

std::uint64_t next_seed() { return rng()(); }

void fail(Outcome& o, const std::string& why) {
    if (o.pass) o.detail = why;
    o.pass = false;
}

double check_err(const Checks& cs, const std::string& id) {
    for (const auto& c : cs)
        if (c.id == id) return c.pass ? c.err : std::max(c.err, 1.0);
    return 1e300;
}

bool checks_pass(const Checks& cs, Outcome& o, const std::string& where) {
    for (const auto& c : cs)
        if (!c.pass) {
            fail(o, where + ": " + c.id + (c.detail.empty() ? "" : " (" + c.detail + ")"));
            return false;
        }
    return true;
}

std::string sci(double x) { return format_double(x); }

Outcome criterion1() {
    Outcome o;
    double worst = 0;
    for (int n : {3, 4, 5})
        for (int w = 0; w < 5; ++w) {
            Family fam = points_family(positive_weights(n));
            WAlgebra alg(fam, default_anchor(fam));
            for (int s = 0; s < 3; ++s) {
                auto cs = check_canonical(alg, sample_good_point(fam, next_seed()));
                double e = check_err(cs, "canonical.k1_generators");
                worst = std::max(worst, e);
                if (e > 1e-8) fail(o, "n=" + std::to_string(n) + " err " + sci(e));
            }
        }
    o.detail = (o.pass ? "" : o.detail + "; ") + "max |alpha([a_m/f_m]) - v_m| = " + sci(worst);
    return o;
}

Outcome criterion2(double& iso_worst) {
    Outcome o;
    double worst = 0, cdev = 0;
    for (int n : {4, 5})
        for (int w = 0; w < 5; ++w) {
            Family fam = generic_lines(positive_weights(n));
            WAlgebra alg(fam, default_anchor(fam));
            std::vector<std::vector<Rational>> zs;
            for (int s = 0; s < 3; ++s) {
                zs.push_back(sample_good_point(fam, next_seed()));
                auto cs = check_canonical(alg, zs.back());
                double e = check_err(cs, "canonical.w_to_v");
                worst = std::max(worst, e);
                iso_worst = std::max(iso_worst, check_err(cs, "canonical.isometry"));
                if (e > 1e-8) fail(o, "n=" + std::to_string(n) + " err " + sci(e));
            }
            auto est = naive_iso_and_constant(alg, zs);
            double dev = std::max(est.spread, std::abs(est.c - Complex(1.0)));
            cdev = std::max(cdev, dev);
            if (!est.constant || dev > 1e-7) fail(o, "constant c = " + to_string(est.c));
        }
    o.detail = (o.pass ? "" : o.detail + "; ") + "max |alpha(w_ij) - v_ij| = " + sci(worst) + ", max |c - 1| = " + sci(cdev);
    return o;
}

Outcome criterion3() {
    Outcome o;
    int runs = 0;
    double min_hess = 1e300;
    auto run = [&](const Family& fam) {
        for (int s = 0; s < 3; ++s) {
            auto cs = solve_critical(fam, sample_good_point(fam, next_seed()));
            ++runs;
            for (const auto& p : cs.points) min_hess = std::min(min_hess, std::abs(p.hess));
            if (!cs.ok())
                fail(o, "k=" + std::to_string(fam.k()) + " n=" + std::to_string(fam.n()) + ": " +
                            std::to_string(cs.points.size()) + " points, expected " + std::to_string(cs.expected));
        }
    };
    for (int n = 2; n <= 7; ++n) {
        Family fam = points_family(positive_weights(n));
        if (expected_critical_count(fam) != n - 1) fail(o, "k=1 count formula");
        run(fam);
    }
    for (int n = 3; n <= 6; ++n) {
        Family fam = generic_lines(positive_weights(n));
        if (expected_critical_count(fam) != binomial(n - 1, 2)) fail(o, "k=2 count formula");
        run(fam);
    }
    o.detail = (o.pass ? "" : o.detail + "; ") + std::to_string(runs) + " fibers, min |Hess| = " + sci(min_hess);
    if (min_hess <= 1e-10) fail(o, "degenerate Hessian");
    return o;
}

Outcome criterion4(double iso_worst) {
    Outcome o;
    for (int n : {3, 4, 5}) {
        Family fam = points_family(positive_weights(n));
        WAlgebra alg(fam, default_anchor(fam));
        for (int s = 0; s < 3; ++s)
            iso_worst = std::max(iso_worst, check_err(check_canonical(alg, sample_good_point(fam, next_seed())), "canonical.isometry"));
    }
    if (iso_worst > 1e-8) fail(o, "isometry error " + sci(iso_worst));
    o.detail = "max |(x,y)_z - (-1)^k S(alpha x, alpha y)| = " + sci(iso_worst) + " (k=1 n<=5 and k=2 fibers of criterion 2)";
    return o;
}

std::vector<Family> structural_families() {
    std::vector<Family> out;
    out.push_back(points_family(positive_weights(5)));
    out.push_back(generic_lines(positive_weights(4)));
    out.push_back(generic_lines(positive_weights(5)));
    out.push_back(generic_family(3, 5));
    return out;
}

Outcome criterion5(const std::vector<Family>& fams) {
    Outcome o;
    int n_checks = 0;
    for (const auto& fam : fams)
        for (int s = 0; s < 5; ++s) {
            auto z = sample_good_point(fam, next_seed());
            Checks cs = check_flatness(fam, z);
            append(cs, check_symmetry_and_invariance(fam, z));
            n_checks += static_cast<int>(cs.size());
            checks_pass(cs, o, "k=" + std::to_string(fam.k()) + " n=" + std::to_string(fam.n()));
        }
    if (o.pass) o.detail = std::to_string(n_checks) + " exact checks over (k,n) in {(1,5),(2,4),(2,5),(3,5)}";
    return o;
}

Outcome criterion6(const std::vector<Family>& fams) {
    Outcome o;
    int n_checks = 0;
    for (const auto& fam : fams)
        for (int s = 0; s < 5; ++s) {
            Checks cs = check_conformal_block(fam, sample_good_point(fam, next_seed()));
            n_checks += static_cast<int>(cs.size());
            checks_pass(cs, o, "k=" + std::to_string(fam.k()) + " n=" + std::to_string(fam.n()));
        }
    if (o.pass) o.detail = std::to_string(n_checks) + " exact checks (singular, (|a|/k) d_j{1} = K_j{1}, homogeneity)";
    return o;
}

Outcome criterion7() {
    Outcome o;
    int cases = 0;
    for (int k = 1; k <= 3; ++k)
        for (int n = k + 1; n <= 6; ++n) {
            Family fam = k == 1 ? points_family(positive_weights(n)) : generic_family(k, n);
            auto z = sample_good_point(fam, next_seed());
            int anchors[2] = {n - 1, 0};
            std::vector<Vec<Rational>> ones;
            std::vector<WAlgebra> algs;
            algs.emplace_back(fam, anchors[0]);
            algs.emplace_back(fam, anchors[1]);
            for (auto& alg : algs) {
                ++cases;
                if (alg.identity_closed(z) != alg.identity_power(z))
                    fail(o, "closed form != reduced power at k=" + std::to_string(k) + " n=" + std::to_string(n));
            }
            if (algs[0].change_anchor(algs[0].identity_closed(z), algs[1]) != algs[1].identity_closed(z))
                fail(o, "anchor dependence at k=" + std::to_string(k) + " n=" + std::to_string(n));
        }
    if (o.pass) o.detail = std::to_string(cases) + " (family, anchor) cases, k <= 3, n <= 6";
    return o;
}

std::vector<Subset> ordered_tuples(int n, int len) {
    std::vector<Subset> out;
    Subset cur(len, 0);
    for (;;) {
        out.push_back(cur);
        int i = len - 1;
        while (i >= 0 && ++cur[i] == n) cur[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

Outcome criterion8() {
    Outcome o;
    long rows = 0;
    auto run = [&](const Family& fam, const std::vector<Subset>& tuples, int points) {
        WAlgebra alg(fam, default_anchor(fam));
        for (int s = 0; s < points; ++s) {
            auto z = sample_good_point(fam, next_seed());
            for (const auto& r : potential_rows_parallel(alg, z, tuples)) {
                ++rows;
                if (!r.pass) fail(o, "k=" + std::to_string(fam.k()) + " tuple " + subset_label(r.tuple));
            }
        }
    };
    for (int n = 2; n <= 5; ++n) {
        Family fam = points_family(positive_weights(n));
        run(fam, ordered_tuples(n, 3), 3);
    }
    for (int n = 3; n <= 5; ++n) {
        Family fam = generic_lines(positive_weights(n));
        run(fam, ordered_tuples(n, 5), 3);
    }
    Family fam3 = generic_family(3, 5);
    std::uniform_int_distribution<int> idx(0, 4);
    std::vector<Subset> pick;
    for (int i = 0; i < 50; ++i) {
        Subset t(7);
        for (auto& x : t) x = idx(rng());
        pick.push_back(t);
    }
    run(fam3, pick, 1);
    if (o.pass) o.detail = std::to_string(rows) + " exact rows (k=1,2 all ordered tuples n<=5; k=3 n=5 50 tuples)";
    return o;
}

Outcome criterion9() {
    Outcome o;
    if (a_constant(2, 3) != 24) fail(o, "A_{2,3} = " + a_constant(2, 3).get_str());
    for (int k = 1; k <= 5; ++k) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), 2 * k);
        if (a_constant(k, 2 * k) != f) fail(o, "A_{" + std::to_string(k) + ",2k} = " + a_constant(k, 2 * k).get_str());
    }
    if (o.pass) o.detail = "A_{2,3} = 24, A_{k,2k} = (2k)! for k <= 5";
    return o;
}

Outcome criterion10() {
    Outcome o;
    for (int n = 2; n <= 7; ++n)
        for (int rep = 0; rep < 3; ++rep) {
            std::vector<Rational> a;
            Rational sum = 0;
            do {
                a.clear();
                for (int i = 0; i < n; ++i) a.push_back(nonzero_rational());
                sum = 0;
                for (const auto& x : a) sum += x;
            } while (sgn(sum) == 0);
            Family fam = points_family(a);
            Matrix<Rational> G(n - 1, n - 1);
            for (int i = 0; i < n - 1; ++i)
                for (int j = 0; j < n - 1; ++j)
                    G(i, j) = contravariant_pairing(fam, v_vector(fam, {i}), v_vector(fam, {j}));
            Rational prod = 1;
            for (const auto& x : a) prod *= x;
            if (determinant(G) != prod / sum) fail(o, "n=" + std::to_string(n) + ": det " + to_string(determinant(G)));
        }
    if (o.pass) o.detail = "det = prod a_j / |a| for n = 2..7, signed rational weights";
    return o;
}

Outcome criterion11() {
    Outcome o;
    Family fam = points_family({Rational(1), Rational(1), Rational(1)});
    std::vector<Rational> z0{Rational(0), Rational(1), Rational(3)};
    // Rational points near a circle of radius 1/5 around z0; the first vertex is repeated at the end.
    Path path;
    const int steps = 200;
    std::vector<Rational> start;
    for (int m = 0; m <= steps; ++m) {
        double th = 2.0 * M_PI * (m % steps) / steps;
        Rational c(std::round(std::cos(th) * 1e6) / 1e6), s(std::round(std::sin(th) * 1e6) / 1e6);
        std::vector<Rational> z = {z0[0] + Rational(1, 5) * c, z0[1] + Rational(1, 5) * s, z0[2] - Rational(1, 5) * c};
        if (m == 0) start = z;
        path.vertices.push_back(convert<Complex>(z));
    }
    WAlgebra alg(fam, default_anchor(fam));
    FlowOptions opt;
    Vec<Complex> I0 = convert<Complex>(add(period_map(fam, start), v_vector(fam, {0})));
    auto tr = flow_flat_section(fam, 17.0, path, I0, opt);
    double ret = 0, mag = 0;
    for (size_t i = 0; i < I0.size(); ++i) {
        ret = std::max(ret, std::abs(tr.I.back()[i] - I0[i]));
        mag = std::max(mag, std::abs(I0[i]));
    }
    ret /= mag;
    if (ret > 1e-6) fail(o, "loop return " + sci(ret));
    auto polys = period_polynomials(fam);
    auto qtr = flow_flat_section(fam, fam.abs_a().get_d(), path, convert<Complex>(period_map(fam, start)), opt);
    double qerr = 0;
    for (size_t i = 0; i < qtr.s.size(); ++i) {
        auto q = evaluate_polys(polys, qtr.z[i]);
        for (size_t r = 0; r < q.size(); ++r) qerr = std::max(qerr, std::abs(q[r] - qtr.I[i][r]));
    }
    if (qerr > 1e-8) fail(o, "q drift " + sci(qerr));
    auto tw = twisted_exactness(alg, tr, path, 1e-5);
    double twe = 0;
    for (const auto& c : tw) twe = std::max(twe, c.err);
    checks_pass(tw, o, "twisted");
    o.detail = (o.pass ? "" : o.detail + "; ") + "return " + sci(ret) + ", q drift " + sci(qerr) + ", twisted residual " + sci(twe);
    return o;
}

Outcome criterion12() {
    Outcome o;
    Family fam = points_family(positive_weights(4));
    std::vector<Partition> parts(2);
    parts[0].blocks = {{0, 1}, {2}, {3}};
    parts[1].blocks = {{0, 1}, {2, 3}};
    int n_checks = 0;
    for (const auto& p : parts)
        for (int s = 0; s < 3; ++s) {
            auto cs = strata_restriction_k1(fam, p, sample_stratum_point(fam, p, next_seed()));
            n_checks += static_cast<int>(cs.size());
            checks_pass(cs, o, "stratum");
        }
    if (o.pass) o.detail = std::to_string(n_checks) + " exact checks (embedding, K restriction, multiplication, q_X, P_X, second derivatives)";
    return o;
}

}  // namespace

int main() {
    bool all = true;
    auto report = [&](int id, const char* what, const std::function<Outcome()>& f) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = f();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %2d: %s  %s [%s] (%.2fs)\n", id, o.pass ? "PASS" : "FAIL", what, o.detail.c_str(), sec);
        std::fflush(stdout);
        all = all && o.pass;
    };
    double iso = 0;
    report(1, "canonical map k=1", criterion1);
    report(2, "canonical map k=2 and constant c", [&] { return criterion2(iso); });
    report(3, "critical count", criterion3);
    report(4, "isometry", [&] { return criterion4(iso); });
    auto fams = structural_families();
    report(5, "flatness and symmetry", [&] { return criterion5(fams); });
    report(6, "conformal block", [&] { return criterion6(fams); });
    report(7, "identity element", criterion7);
    report(8, "potential identities", criterion8);
    report(9, "constants A_{k,r}", criterion9);
    report(10, "Gram determinant", criterion10);
    report(11, "GM flow", criterion11);
    report(12, "strata functoriality", criterion12);
    std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
    return all ? 0 : 1;
}
