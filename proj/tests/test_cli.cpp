#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "flatlab/liouville.hpp"

using namespace flatlab;
using cli::run;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("flatlab_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::size_t line_count(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

}  // namespace

TEST_CASE("gauss-fresnel flatness reports an l1 ratio") {
    const auto r = invoke({"flatness", "--family", "gauss-fresnel", "--n", "256", "--alpha", "1"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["schema_version"] == 1);
    CHECK(j["tool"] == "flatlab");
    CHECK(j["results"].size() == 1);
    const double ratio = j["results"][0]["lp_ratio"];
    CHECK(ratio > 0.99);
    CHECK(ratio < 1.0);
}

TEST_CASE("blaschke parameter outside (0,1) is a usage error") {
    const auto r = invoke({"flatness", "--family", "blaschke", "--n", "8", "--a", "1.5"});
    CHECK(r.code == 2);
    CHECK(r.err.find("(0,1)") != std::string::npos);
    CHECK(r.out.empty());
}

TEST_CASE("littlewood runs with one seed are byte-identical") {
    const std::vector<std::string> args{"flatness", "--family", "littlewood-random", "--n", "200", "--seed", "7"};
    const auto a = invoke(args);
    const auto b = invoke(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(json::parse(a.out)["rng"]["seed"] == 7);
    CHECK(json::parse(a.out)["rng"]["name"] == "splitmix64");

    const auto c = invoke({"flatness", "--family", "littlewood-random", "--n", "200", "--seed", "8"});
    CHECK(c.out != a.out);
}

TEST_CASE("thread count does not change output") {
    const std::vector<std::string> base{"criterion", "--family", "littlewood-random", "--gap", "--n-list",
                                        "32,64", "--samples", "20", "--alpha", "1"};
    auto one = base;
    one.insert(one.end(), {"--threads", "1"});
    auto four = base;
    four.insert(four.end(), {"--threads", "4"});
    const auto a = invoke(one);
    const auto b = invoke(four);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(line_count(a.out) == 41);
}

TEST_CASE("barker search at 13 is consistent") {
    const auto r = invoke({"barker", "search", "--n", "13"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["search"]["count"] == 4);
    CHECK(j["verdict"] == "consistent");

    const auto reduced = invoke({"barker", "search", "--n", "13", "--symmetry-reduce"});
    CHECK(json::parse(reduced.out)["search"]["sequences"] == j["search"]["sequences"]);
}

TEST_CASE("barker census up to 14 is consistent") {
    const auto r = invoke({"barker", "search", "--n-max", "14", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(line_count(r.out) == 15);
    CHECK(r.out.find("13,4,true") != std::string::npos);
    CHECK(r.out.find("12,0,true") != std::string::npos);
}

TEST_CASE("barker profile and flatness") {
    const auto prof = invoke({"barker", "profile", "--signs", "1,1,1,-1"});
    REQUIRE(prof.code == 0);
    CHECK(json::parse(prof.out)["profile"]["is_barker"] == true);

    const auto flat = invoke({"barker", "flatness", "--signs", "1,1,-1", "--alpha", "2"});
    REQUIRE(flat.code == 0);
    CHECK(json::parse(flat.out)["results"][0]["lp_ratio"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(invoke({"barker", "profile", "--signs", "1,2"}).code == 2);
    CHECK(invoke({"barker", "profile"}).code == 2);
}

TEST_CASE("criterion on littlewood 1024 at alpha 4") {
    const auto r = invoke({"criterion", "--family", "littlewood-random", "--n", "1024", "--alpha", "4", "--k", "3"});
    REQUIRE(r.code == 0);
    const auto v = json::parse(r.out)["verdicts"][0];
    CHECK(v["satisfied"] == true);
    CHECK(v["predicted_direction"] == "above-2");
    CHECK(v["observed_ratio"].get<double>() > 1.0);
}

TEST_CASE("riesz demo gives one csv row per length") {
    const auto r = invoke({"riesz", "demo", "--n-list", "64,256,1024"});
    REQUIRE(r.code == 0);
    CHECK(line_count(r.out) == 4);
    CHECK(r.out.rfind("n,l4_ratio,l1,flat2,mahler\n", 0) == 0);

    const auto j = invoke({"riesz", "demo", "--n-list", "64", "--format", "json"});
    CHECK(json::parse(j.out)["rows"].size() == 1);
}

TEST_CASE("riesz plan reports product formula agreement") {
    const auto r = invoke({"riesz", "plan", "--degrees", "2,3", "--seed", "5"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["plan"]["depth"] == 2);
    CHECK(j["stability"]["stable"] == true);
    CHECK(j["mahler"]["abs_difference"].get<double>() < 1e-6);
}

TEST_CASE("clarkson suites") {
    const auto gen = invoke({"clarkson", "--suite", "general", "--count", "50", "--p", "1.5", "--r", "3", "--s", "1.5"});
    REQUIRE(gen.code == 0);
    CHECK(json::parse(gen.out)["result"]["all_hold"] == true);

    const auto bad = invoke({"clarkson", "--suite", "general", "--p", "1.5", "--r", "1.2", "--s", "1.5"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("p <= r") != std::string::npos);

    const auto sub = invoke({"clarkson", "--suite", "sublevel", "--family", "gauss-fresnel", "--n", "64"});
    REQUIRE(sub.code == 0);
    CHECK(json::parse(sub.out)["result"]["count"] == 1);

    const auto delta = invoke({"clarkson", "--suite", "delta", "--eps", "2", "--p", "2"});
    REQUIRE(delta.code == 0);
    CHECK(json::parse(delta.out)["result"]["delta"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("liouville subcommands") {
    const auto sweep = invoke({"liouville", "sweep", "--n-list", "100", "--alpha", "1,inf"});
    REQUIRE(sweep.code == 0);
    CHECK(line_count(sweep.out) == 3);
    CHECK(sweep.out.find("100,inf,") != std::string::npos);

    const auto partial = invoke({"liouville", "partial", "--n", "10"});
    REQUIRE(partial.code == 0);
    CHECK(json::parse(partial.out)["partial_sums"]["final_sum"] == 0);

    const auto path = temp_path("lambda.bin");
    const auto exp = invoke({"liouville", "export", "--n", "100", "--output", path.string()});
    REQUIRE(exp.code == 0);
    std::ifstream in(path, std::ios::binary);
    const auto table = nt::read_liouville_bits(in);
    CHECK(table.bound() == 100);
    CHECK(table == nt::liouville_sieve(100));
    std::filesystem::remove(path);

    CHECK(invoke({"liouville", "export", "--n", "10"}).code == 2);
}

TEST_CASE("config round trip reproduces the report") {
    const auto first = invoke({"flatness", "--family", "littlewood-random", "--n", "100", "--seed", "3", "--alpha",
                               "1,4", "--oversample", "16"});
    REQUIRE(first.code == 0);
    const auto report = json::parse(first.out);
    const auto cfg = report["config"].get<cli::RunConfig>();
    CHECK(json(cfg) == report["config"]);

    const auto path = temp_path("config.json");
    std::ofstream(path) << report["config"].dump();
    const auto again = invoke({"--config", path.string()});
    REQUIRE(again.code == 0);
    CHECK(again.out == first.out);

    // explicit flags override the file
    const auto changed = invoke({"flatness", "--config", path.string(), "--oversample", "8"});
    REQUIRE(changed.code == 0);
    CHECK(json::parse(changed.out)["config"]["oversample"] == 8);
    CHECK(json::parse(changed.out)["config"]["generator"]["seed"] == 3);

    const auto mismatch = invoke({"riesz", "demo", "--config", path.string()});
    CHECK(mismatch.code == 2);
    std::filesystem::remove(path);
}

TEST_CASE("report file output") {
    const auto path = temp_path("report.csv");
    const auto r = invoke({"riesz", "demo", "--n-list", "64", "--output", path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    CHECK(line_count(slurp(path)) == 2);
    std::filesystem::remove(path);
}

TEST_CASE("usage and capability errors") {
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"nonsense"}).code == 2);
    CHECK(invoke({"flatness", "--family", "nope"}).code == 2);
    CHECK(invoke({"flatness"}).code == 2);
    CHECK(invoke({"flatness", "--family", "gauss-fresnel", "--n", "0"}).code == 2);
    CHECK(invoke({"flatness", "--family", "gauss-fresnel", "--oversample", "2"}).code == 2);
    CHECK(invoke({"--config", "/nonexistent/config.json"}).code == 2);
    CHECK(invoke({"barker", "search", "--n", "40"}).code == 3);
    CHECK(invoke({"--version"}).code == 0);
}
