#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "flatlab/generators.hpp"

namespace flatlab::cli {

enum ExitCode : int { ok = 0, usage = 2, capability = 3 };

/// Everything a run depends on. Reports embed it, and feeding it back through
/// --config reproduces the report.
struct RunConfig {
    std::string subcommand;
    std::string action;  // barker: search|profile|flatness, liouville: sweep|partial|export, riesz: demo|plan
    std::optional<GeneratorSpec> generator;
    std::vector<double> alphas;
    std::size_t oversample = 8;
    std::vector<double> eps_ladder;
    std::string output;
    std::string format = "json";
    std::optional<std::uint64_t> seed;

    // criterion
    std::optional<double> k;
    bool gap = false;
    std::vector<std::size_t> n_list;
    std::size_t samples = 200;
    // clarkson
    std::string suite = "general";
    double p = 1.5;
    double r = 3.0;
    double s = 1.5;
    double zeta2 = 0.2;
    double eps = 1.0;
    std::size_t count = 1000;
    std::size_t max_degree = 64;
    // barker, liouville
    std::size_t n = 0;
    std::size_t n_max = 0;
    std::vector<int> signs;
    bool symmetry_reduce = false;
    // riesz
    std::vector<std::size_t> degrees;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

std::string version();

/// Runs one command line (without the program name). Reports go to `out`
/// unless an output path is configured; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flatlab::cli
