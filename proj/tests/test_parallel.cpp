#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>

#include "arrfrob/parallel.hpp"

using namespace arrfrob;

namespace {

std::vector<Rational> zr(std::initializer_list<long> v) {
    std::vector<Rational> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

Family lines5() { return Family(2, {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 3}}, {1, 2, 3, 1, 2}); }

}  // namespace

TEST_CASE("potential rows: parallel equals serial") {
    Family fam = lines5();
    WAlgebra alg(fam, default_anchor(fam));
    auto z = zr({0, 1, 3, 7, -4});
    auto tuples = alg.multisets(5);
    auto s = potential_rows_serial(alg, z, tuples);
    for (int threads : {1, 2, 4}) {
        auto p = potential_rows_parallel(alg, z, tuples, threads);
        REQUIRE(p.size() == s.size());
        for (size_t i = 0; i < s.size(); ++i) {
            CHECK(p[i].tuple == s[i].tuple);
            CHECK(p[i].lhs == s[i].lhs);
            CHECK(p[i].rhs == s[i].rhs);
        }
    }
    for (const auto& r : s) CHECK(r.lhs == r.rhs);
}

TEST_CASE("K operators: parallel equals serial") {
    Family fam(2, {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 3}}, {1, 1, 1, 1, 1});
    GmSystem gm(fam);
    auto z = zr({0, 1, 3, 7, -4});
    auto s = k_operators_serial(gm, z);
    auto p = k_operators_parallel(gm, z, 3);
    REQUIRE(s.size() == 5);
    REQUIRE(p.size() == 5);
    for (int j = 0; j < 5; ++j) {
        CHECK(s[j] == gm.k_operator(j, z));
        CHECK(p[j] == s[j]);
    }
}

TEST_CASE("critical batches: parallel equals serial") {
    Family fam(2, {{1, 0}, {0, 1}, {1, 1}, {1, -1}}, {1, 1, 1, 1});
    std::vector<std::vector<Rational>> zs{zr({0, 1, 3, 7}), zr({2, -1, 5, 4}), zr({1, 6, -3, 2}), zr({0, 2, 9, 4})};
    auto s = solve_critical_serial(fam, zs);
    auto p = solve_critical_parallel(fam, zs, 2);
    REQUIRE(s.size() == zs.size());
    REQUIRE(p.size() == zs.size());
    for (size_t i = 0; i < zs.size(); ++i) {
        CHECK(s[i].ok());
        REQUIRE(p[i].points.size() == s[i].points.size());
        for (size_t k = 0; k < s[i].points.size(); ++k)
            for (int c = 0; c < 2; ++c) CHECK(p[i].points[k].t[c] == s[i].points[k].t[c]);
    }
}

TEST_CASE("worker count honours ARRFROB_THREADS") {
    setenv("ARRFROB_THREADS", "3", 1);
    CHECK(thread_count() == 3);
    setenv("ARRFROB_THREADS", "0", 1);
    CHECK(thread_count() >= 1);
    setenv("ARRFROB_THREADS", "junk", 1);
    CHECK(thread_count() >= 1);
    unsetenv("ARRFROB_THREADS");
    CHECK(thread_count() >= 1);
}

TEST_CASE("exceptions inside parallel regions propagate") {
    Family fam(2, {{1, 0}, {0, 1}, {1, 1}, {1, -1}}, {1, 1, 1, 1});
    GmSystem gm(fam);
    CHECK_THROWS_AS(k_operators_parallel(gm, zr({0, 1, 1, 7}), 2), DiscriminantError);
}
