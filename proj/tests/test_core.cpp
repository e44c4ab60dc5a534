#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arrfrob/core.hpp"

using namespace arrfrob;

namespace {

Family pts3() { return Family(1, {{1}, {1}, {1}}, {1, 1, 1}); }

Family lines4() { return Family(2, {{1, 0}, {0, 1}, {1, 1}, {1, -1}}, {1, 1, 1, 1}); }

Rational q(long p, long d) { return ratio(p, d); }

}  // namespace

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3/6") == q(1, 2));
    CHECK(parse_rational("-7") == -7);
    CHECK(to_string(parse_rational("4/6")) == "2/3");
    CHECK_THROWS_AS(parse_rational("1/0"), ConfigError);
    CHECK_THROWS_AS(parse_rational("1/-2"), ConfigError);
    CHECK_THROWS_AS(parse_rational("abc"), ConfigError);
    CHECK_THROWS_AS(parse_rational(""), ConfigError);
}

TEST_CASE("permutation signs and subsets") {
    Subset a{2, 0, 1};
    CHECK(sort_with_sign(a) == 1);
    CHECK(a == Subset{0, 1, 2});
    Subset b{1, 0};
    CHECK(sort_with_sign(b) == -1);
    Subset c{1, 1};
    CHECK(sort_with_sign(c) == 0);
    auto s = k_subsets(4, 2);
    REQUIRE(s.size() == 6);
    CHECK(s.front() == Subset{0, 1});
    CHECK(s.back() == Subset{2, 3});
    CHECK(subset_label({0, 2}) == "{1,3}");
}

TEST_CASE("points on a line: circuits are pairs with lambda (1,-1)") {
    Family fam = pts3();
    REQUIRE(fam.circuits().size() == 3);
    for (const auto& c : fam.circuits()) {
        CHECK(c.indices.size() == 2);
        CHECK(c.lambda == std::vector<Rational>{1, -1});
    }
    CHECK(fam.generic());
    CHECK(fam.basis().size() == 3);
    CHECK(fam.abs_a() == 3);
}

TEST_CASE("four lines: minors and circuit coefficients") {
    Family fam = lines4();
    CHECK(fam.minor({0, 1}) == 1);
    CHECK(fam.minor({1, 0}) == -1);
    CHECK(fam.minor({2, 3}) == -2);
    CHECK(fam.minor({1, 1}) == 0);
    REQUIRE(fam.circuits().size() == 4);
    std::map<Subset, std::vector<Rational>> expect{
        {{0, 1, 2}, {1, 1, -1}},
        {{0, 1, 3}, {1, -1, -1}},
        {{0, 2, 3}, {1, q(-1, 2), q(-1, 2)}},
        {{1, 2, 3}, {1, q(-1, 2), q(1, 2)}},
    };
    for (const auto& c : fam.circuits()) CHECK(expect.at(c.indices) == c.lambda);
    CHECK(fam.circuits()[0].lambda_at(3) == 0);
    CHECK(fam.basis().size() == 6);
    CHECK(fam.basis().find({1, 3}) == 4);
}

TEST_CASE("non-generic family: parallel lines") {
    Family fam(2, {{1, 0}, {2, 0}, {0, 1}, {1, 1}}, {1, 2, 1, 3});
    CHECK_FALSE(fam.generic());
    CHECK(fam.basis().size() == 5);
    bool has_pair = false;
    for (const auto& c : fam.circuits()) has_pair = has_pair || c.indices == Subset{0, 1};
    CHECK(has_pair);
}

TEST_CASE("zero-weight circuits are reported") {
    Family fam(1, {{1}, {1}, {1}}, {1, -1, 2});
    REQUIRE(fam.zero_weight_circuits().size() == 1);
    CHECK(fam.zero_weight_circuits()[0] == Subset{0, 1});
}

TEST_CASE("family validation") {
    CHECK_THROWS_AS(Family(0, {{1}}, {1}), ConfigError);
    CHECK_THROWS_AS(Family(1, {{1}}, {1}), ConfigError);
    CHECK_THROWS_AS(Family(1, {{1}, {0}, {1}}, {1, 1, 1}), ConfigError);
    CHECK_THROWS_AS(Family(1, {{1}, {1}}, {1, -1}), ConfigError);
    CHECK_THROWS_AS(Family(1, {{1}, {1}}, {1, 0}), ConfigError);
    CHECK_THROWS_AS(Family(2, {{1, 0}, {2, 0}, {3, 0}}, {1, 1, 1}), ConfigError);
    CHECK_THROWS_AS(Family(1, {{1}, {1}}, {1, 1, 1}), ConfigError);
}

TEST_CASE("config loading") {
    auto doc = nlohmann::json::parse(R"({"k":1,"n":3,"b":[["1"],["1"],["1"]],"weights":["1","1","1"],"z":["0","1","3"]})");
    auto cfg = load_family(doc);
    CHECK(cfg.family.n() == 3);
    REQUIRE(cfg.z.has_value());
    CHECK((*cfg.z)[2] == 3);
    CHECK_THROWS_AS(load_family(nlohmann::json::parse(R"({"k":1,"n":2,"b":[["1"],["1"]]})")), ConfigError);
    CHECK_THROWS_AS(load_family(nlohmann::json::parse(R"({"k":1,"n":2,"b":[["1"],["1"]],"weights":["1","x"]})")),
                    ConfigError);
    CHECK_THROWS_AS(load_family(nlohmann::json::parse(R"({"k":1,"n":2,"b":[["1"]],"weights":["1","1"]})")), ConfigError);
    CHECK_THROWS_AS(load_family_file("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("good fibers and sampling") {
    Family fam = pts3();
    CHECK(is_good_fiber(fam, std::vector<Rational>{0, 1, 3}));
    CHECK_FALSE(is_good_fiber(fam, std::vector<Rational>{0, 0, 1}));
    auto z1 = sample_good_point(fam, 42);
    auto z2 = sample_good_point(fam, 42);
    CHECK(z1 == z2);
    CHECK(is_good_fiber(fam, z1));
    for (const auto& x : z1) {
        Rational c = x;
        c.canonicalize();
        CHECK(c == x);
        CHECK(to_string(c) == to_string(x));
    }
    CHECK(min_circuit_distance(fam, std::vector<Rational>{0, 1, 3}) == doctest::Approx(1.0));
}
