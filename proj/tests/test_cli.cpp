#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const std::string cli = ARRFROB_CLI_PATH;
const std::string configs = ARRFROB_CONFIG_DIR;

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = "\"" + cli + "\" " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("arrfrob_cli_test_" + std::to_string(getpid()));
    fs::create_directories(dir);
    return dir / name;
}

std::string cfg(const std::string& name) { return "--config \"" + configs + "/" + name + "\""; }

}  // namespace

TEST_CASE("help and usage errors") {
    CHECK(run("--help").code == 0);
    CHECK(run("").code == 2);
    CHECK(run("check").code == 2);
    CHECK(run("frobnicate " + cfg("pts3.json")).code == 2);
}

TEST_CASE("check passes on sample configs") {
    auto r = run("check " + cfg("pts3.json") + " --suites canonical,conformal");
    CHECK(r.code == 0);
    CHECK(r.out.find("canonical: pass") != std::string::npos);
    CHECK(r.out.find("overall: pass") != std::string::npos);
    CHECK(run("check " + cfg("lines4.json") + " --suites circuits,basis,potential").code == 0);
}

TEST_CASE("configuration errors exit with 2") {
    CHECK(run("check " + cfg("pts3.json") + " --suites nosuch").code == 2);
    CHECK(run("check --config /nonexistent.json").code == 2);
    CHECK(run("check " + cfg("pts3.json") + " --anchor 9").code == 2);
    fs::path bad = scratch("bad.json");
    std::ofstream(bad) << R"({"k":1,"n":3,"b":[["1"],["1"],["1"]],"weights":["1","1","1"],"z":["0","0","3"]})";
    CHECK(run("check --config \"" + bad.string() + "\"").code == 2);
    fs::path broken = scratch("broken.json");
    std::ofstream(broken) << "{ not json";
    CHECK(run("circuits --config \"" + broken.string() + "\"").code == 2);
}

TEST_CASE("critical report for four lines") {
    fs::path out = scratch("crit.json");
    auto r = run("critical " + cfg("lines4.json") + " --json \"" + out.string() + "\"");
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(slurp(out));
    CHECK(doc["schema"] == "arrfrob-report/1");
    CHECK(doc["points"].size() == 3);
    CHECK(doc["expected_count"] == 3);
}

TEST_CASE("reports are deterministic for a fixed seed") {
    fs::path a = scratch("a.json"), b = scratch("b.json");
    std::string args = "check " + cfg("lines4.json") + " --suites circuits,canonical,potential --seed 5 --json ";
    CHECK(run(args + "\"" + a.string() + "\"").code == 0);
    CHECK(run(args + "\"" + b.string() + "\"").code == 0);
    std::string ta = slurp(a), tb = slurp(b);
    CHECK_FALSE(ta.empty());
    CHECK(ta == tb);
    auto doc = nlohmann::json::parse(ta);
    CHECK(doc["schema"] == "arrfrob-report/1");
    CHECK(doc["pass"] == true);
}

TEST_CASE("stdout JSON is clean") {
    auto r = run("check " + cfg("pts3.json") + " --suites basis --json -");
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["schema"] == "arrfrob-report/1");
}

TEST_CASE("other verbs") {
    auto c = run("circuits " + cfg("pts3.json"));
    CHECK(c.code == 0);
    CHECK(nlohmann::json::parse(c.out)["circuits"].size() == 3);
    auto b = run("basis " + cfg("lines4.json"));
    CHECK(b.code == 0);
    CHECK(nlohmann::json::parse(b.out)["schema"] == "arrfrob-report/1");
    auto p = run("potential " + cfg("pts3.json"));
    CHECK(p.code == 0);
    auto pd = nlohmann::json::parse(p.out);
    CHECK(pd["schema"] == "arrfrob-report/1");
    for (const auto& row : pd["rows"]) CHECK(row["lhs"] == row["rhs"]);
    auto g = run("gm-flow " + cfg("pts3.json") + " --steps 16");
    CHECK(g.code == 0);
    CHECK(nlohmann::json::parse(g.out)["schema"] == "arrfrob-report/1");
}
