#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "arrfrob/gaussmanin.hpp"

using namespace arrfrob;

namespace {

Rational q(long p, long d) { return ratio(p, d); }

std::string failures(const Checks& cs) {
    std::string s;
    for (const auto& c : cs)
        if (!c.pass) s += c.id + " (" + c.detail + ") ";
    return s;
}

std::vector<Rational> zr(std::initializer_list<long> v) {
    std::vector<Rational> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

Path circle(std::vector<Complex> base, int moving, Complex center, double radius, int m) {
    Path p;
    for (int i = 0; i <= m; ++i) {
        auto z = base;
        z[moving] = center + radius * std::polar(1.0, 2.0 * M_PI * (i % m) / m);
        p.vertices.push_back(z);
    }
    return p;
}

double diff_norm(const Vec<Complex>& a, const Vec<Complex>& b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("circuit operator for a pair of points") {
    Family fam(1, {{1}, {1}, {1}}, {1, 2, 3});
    const Circuit& c = fam.circuits()[0];
    REQUIRE(c.indices == Subset{0, 1});
    Matrix<Rational> L = l_c_matrix(fam, c);
    // L F_0 = a_1 F_0 - a_0 F_1, L F_1 = a_0 F_1 - a_1 F_0, L F_2 = 0
    CHECK(L.column(0) == Vec<Rational>{2, -1, 0});
    CHECK(L.column(1) == Vec<Rational>{-2, 1, 0});
    CHECK(L.column(2) == Vec<Rational>{0, 0, 0});
}

TEST_CASE("K operator for three points") {
    Family fam(1, {{1}, {1}, {1}}, {1, 1, 1});
    GmSystem gm(fam);
    auto K0 = gm.k_operator(0, zr({0, 1, 3}));
    // K_0 = L_01/(z_0-z_1) + L_02/(z_0-z_2)
    CHECK(K0.column(0) == Vec<Rational>{q(-4, 3), 1, q(1, 3)});
    CHECK(K0.column(1) == Vec<Rational>{1, -1, 0});
    CHECK(K0.column(2) == Vec<Rational>{q(1, 3), 0, q(-1, 3)});
    CHECK_THROWS_AS(gm.k_operator(0, zr({0, 0, 3})), DiscriminantError);
}

TEST_CASE("structural identities hold on sample families") {
    Family pts(1, {{1}, {1}, {1}, {1}}, {1, 2, 3, 5});
    Family lines(2, {{1, 0}, {0, 1}, {1, 1}, {1, -1}}, {1, 1, 1, 1});
    Family nongeneric(2, {{1, 0}, {2, 0}, {0, 1}, {1, 1}}, {1, 2, 1, 3});
    struct Case {
        const Family* fam;
        std::vector<Rational> z;
    };
    std::vector<Case> cases{{&pts, zr({0, 1, 3, 7})}, {&lines, zr({0, 1, 3, 7})}, {&nongeneric, zr({0, 1, 3, 7})}};
    for (const auto& cs : cases) {
        auto sym = check_symmetry_and_invariance(*cs.fam, cs.z);
        auto flat = check_flatness(*cs.fam, cs.z);
        CHECK_MESSAGE(all_pass(sym), failures(sym));
        CHECK_MESSAGE(all_pass(flat), failures(flat));
        if (cs.fam->generic()) {
            auto cb = check_conformal_block(*cs.fam, cs.z);
            CHECK_MESSAGE(all_pass(cb), failures(cb));
        } else {
            CHECK_THROWS(check_conformal_block(*cs.fam, cs.z));
        }
        CHECK_FALSE(sym.empty());
        CHECK_FALSE(flat.empty());
    }
}

TEST_CASE("K derivative matches finite differences of K") {
    Family fam(2, {{1, 0}, {0, 1}, {1, 1}, {1, -1}}, {1, 2, 1, 3});
    GmSystem gm(fam);
    auto z = zr({0, 1, 3, 7});
    Rational h = q(1, 1000000);
    auto zp = z;
    zp[2] += h;
    Rational inv = Rational(1) / h;
    auto fd = inv * (gm.k_operator(1, zp) - gm.k_operator(1, z));
    auto exact = gm.k_derivative(1, 2, z);
    double worst = 0;
    for (int r = 0; r < exact.rows(); ++r)
        for (int c = 0; c < exact.cols(); ++c)
            worst = std::max(worst, std::abs(Rational(fd(r, c) - exact(r, c)).get_d()));
    CHECK(worst < 1e-4);
}

TEST_CASE("flow around a contractible loop returns to the start") {
    Family fam(1, {{1}, {1}, {1}}, {1, 1, 1});
    Path p = circle({0.0, 1.0, 3.0}, 1, 1.0, 0.3, 16);
    Vec<Complex> I0{1.0, 0.0, 0.0};
    auto tr = flow_flat_section(fam, 17.0, p, I0);
    CHECK(diff_norm(tr.I.back(), I0) < 1e-8);
    CHECK(tr.steps > 0);
}

TEST_CASE("flow around a discriminant hyperplane has nontrivial monodromy") {
    Family fam(1, {{1}, {1}, {1}}, {1, 1, 1});
    Path p = circle({0.0, 1.0, 3.0}, 1, 0.0, 0.5, 16);
    Vec<Complex> I0{1.0, 0.0, 0.0};
    auto tr = flow_flat_section(fam, 17.0, p, I0);
    CHECK(diff_norm(tr.I.back(), I0) > 1e-2);
    // F_2 is killed by L_01, so its image only moves through the other circuits
    Vec<Complex> J0{0.0, 0.0, 1.0};
    auto tj = flow_flat_section(fam, 17.0, p, J0);
    CHECK(std::isfinite(diff_norm(tj.I.back(), J0)));
}

TEST_CASE("flow through the discriminant is rejected") {
    Family fam(1, {{1}, {1}, {1}}, {1, 1, 1});
    Path p;
    p.vertices = {{0.0, 1.0, 3.0}, {0.0, -1.0, 3.0}};
    CHECK_THROWS(flow_flat_section(fam, 17.0, p, Vec<Complex>{1.0, 0.0, 0.0}));
}

TEST_CASE("derivative sections of the identity section") {
    Family fam(1, {{1}, {1}, {1}}, {1, 1, 1});
    auto z = zr({0, 1, 3});
    FlagVector d0 = derivative_sections(fam, z, {0});
    CHECK(d0.size() == 3);
    CHECK_FALSE(all_zero(d0));
    CHECK(derivative_sections(fam, z, {0, 1}) == derivative_sections(fam, z, {1, 0}));
    CHECK(derivative_sections(fam, z, {0, 2}) == derivative_sections(fam, z, {2, 0}));
}
