#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "arakelov/cli.hpp"

using namespace arakelov;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

std::string e8() { return std::string(ARAKELOV_DATA_DIR) + "/e8.gram"; }

std::string temp_file(const std::string& name, const std::string& content) {
    const std::string path = std::string(ARAKELOV_TEST_TMP_DIR) + "/" + name;
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_CASE("field-info") {
    const Run r = run({"field-info", "--field", "Q(sqrt{5})"});
    REQUIRE(r.code == kExitOk);
    const auto j = json_of(r);
    CHECK(j["discriminant"] == 5);
    CHECK(j["real_places"] == 2);
    const Run d = run({"field-info", "--field", "Q", "--element", "6"});
    CHECK(json_of(d)["divisor_product"].get<double>() == doctest::Approx(1.0));
    CHECK(run({"field-info", "--field", "Q(sqrt{-5})"}).code == kExitUsage);
}

TEST_CASE("sections and density of E8") {
    const Run s = run({"sections", "--gram", e8()});
    REQUIRE(s.code == kExitOk);
    CHECK(json_of(s)["count"] == 0);
    const Run d = run({"density", "--gram", e8()});
    REQUIRE(d.code == kExitOk);
    const auto j = json_of(d);
    CHECK(j["kind"] == "density");
    CHECK(j["verdict"] == "at or above the Minkowski-Hlawka bound");
    const Run t = run({"--format", "text", "density", "--gram", e8()});
    CHECK(t.code == kExitOk);
    CHECK(t.out.find("values.density = ") != std::string::npos);
}

TEST_CASE("sections node cap maps to indeterminate") {
    const std::string g = temp_file("wide.gram", "Q\n6\n" + std::string(
        "0.04 0 0 0 0 0\n0 0.04 0 0 0 0\n0 0 0.04 0 0 0\n0 0 0 0.04 0 0\n0 0 0 0 0.04 0\n0 0 0 0 0 0.04\n"));
    CHECK(run({"--node-cap", "10", "sections", "--gram", g}).code == kExitIndeterminate);
}

TEST_CASE("zeta csv layout") {
    const std::string g = temp_file("o2.gram", "Q\n2\n1 0\n0 1\n");
    const Run r = run({"zeta", "--gram", g, "--l", "1", "--s", "6", "--cutoff", "0.6931471805599453"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.rfind("degree,multiplicity\n0,2\n", 0) == 0);
    CHECK(r.out.find("partial_sum,2.25\n") != std::string::npos);
    CHECK(r.out.find("terms,4\n") != std::string::npos);
    const Run j = run({"--format", "json", "zeta", "--gram", g, "--l", "1", "--s", "6", "--cutoff", "0.7"});
    CHECK(json_of(j)["partial_sum"].get<double>() == doctest::Approx(2.25));
    CHECK(run({"zeta", "--gram", g, "--l", "1", "--s", "0.5", "--cutoff", "5"}).code == kExitIndeterminate);
}

TEST_CASE("bounds") {
    const Run t = run({"bounds", "--kind", "thresholds", "--n", "8"});
    REQUIRE(t.code == kExitOk);
    const auto j = json_of(t);
    CHECK(j["kind"] == "thresholds");
    const Run th = run({"bounds", "--kind", "theorem", "--n", "8", "--slope", "-0.5"});
    CHECK(th.code == kExitOk);
    CHECK(json_of(th)["verdict"] == "existence guaranteed");
    CHECK(run({"bounds", "--kind", "theorem", "--n", "8", "--slope", "0.5"}).code == kExitNegative);
    CHECK(run({"bounds", "--kind", "theorem", "--n", "8"}).code == kExitUsage);
    CHECK(run({"bounds", "--kind", "nonsense", "--n", "8"}).code == kExitUsage);
}

TEST_CASE("mvt-verify exit status follows the z score") {
    const Run r = run({"--seed", "7", "mvt-verify", "--n", "3", "--l", "1", "--trials", "300", "--p", "100003"});
    REQUIRE(r.code == kExitOk);
    const auto j = json_of(r);
    CHECK(j["verdict"] == "consistent");
    CHECK(j["lhs"]["config"]["seed"] == 7);
    CHECK(run({"--seed", "7", "mvt-verify", "--n", "3", "--trials", "300", "--p", "100003", "--z-max", "0"}).code ==
          kExitNegative);
    CHECK(run({"mvt-verify", "--n", "3", "--l", "3"}).code == kExitUsage);
}

TEST_CASE("search") {
    const std::string g = temp_file("o1.gram", "Q\n1\n1\n");
    const Run r = run({"--seed", "11", "search", "--rank-e", g, "--n", "8", "--slope", "-0.4"});
    REQUIRE(r.code == kExitOk);
    const auto j = json_of(r);
    CHECK(j["status"] == "found");
    CHECK(j["certificate"]["count"] == 0);
    CHECK(run({"search", "--gram", g, "--n", "8", "--slope", "0.5"}).code == kExitNegative);
}

TEST_CASE("config files and usage errors") {
    const std::string cfg = temp_file("run.cfg", "# defaults\nn = 8\nkind = corollary\n");
    const Run r = run({"--config", cfg, "bounds"});
    REQUIRE(r.code == kExitOk);
    CHECK(json_of(r)["values"]["value"].get<double>() == doctest::Approx(-0.379217762365));
    const Run over = run({"--config", cfg, "bounds", "--n", "16"});
    CHECK(json_of(over)["inputs"]["n"] == 16);
    const std::string bad = temp_file("bad.cfg", "bogus = 1\n");
    CHECK(run({"--config", bad, "bounds", "--n", "8"}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitOk);
    CHECK(run({"sections", "--gram", "/nonexistent"}).code == kExitUsage);
    const std::string broken = temp_file("broken.gram", "Q\n2\n1 0\n0 x\n");
    const Run b = run({"sections", "--gram", broken});
    CHECK(b.code == kExitUsage);
    CHECK(b.err.find("line 4") != std::string::npos);
    CHECK(run({"--format", "csv", "sections", "--gram", e8()}).code == kExitUsage);
}
