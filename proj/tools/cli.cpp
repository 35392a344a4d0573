#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>

#include "flatlab/barker.hpp"
#include "flatlab/criterion.hpp"
#include "flatlab/errors.hpp"
#include "flatlab/inequalities.hpp"
#include "flatlab/liouville.hpp"
#include "flatlab/norms.hpp"
#include "flatlab/parallel.hpp"
#include "flatlab/riesz.hpp"
#include "flatlab/rng.hpp"
#include "flatlab/serialization.hpp"

#ifndef FLATLAB_VERSION
#define FLATLAB_VERSION "0.0.0"
#endif

namespace flatlab::cli {
namespace {

constexpr const char* kTool = "flatlab";
constexpr double kInf = std::numeric_limits<double>::infinity();

json real(double v) { return std::isfinite(v) ? json(v) : json(format_double(v)); }

double parse_real(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return kInf;
        throw ParameterError("expected a number or \"inf\", got \"" + s + "\"");
    }
    return j.get<double>();
}

double parse_real(const std::string& s) {
    if (s == "inf" || s == "sup") return kInf;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) throw ParameterError("not a number: '" + s + "'");
    return v;
}

std::vector<double> parse_reals(const std::vector<std::string>& items) {
    std::vector<double> out;
    for (const auto& s : items) out.push_back(parse_real(s));
    return out;
}

json reals(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(real(x));
    return a;
}

bool is_sweep(const RunConfig& c) {
    return (c.subcommand == "riesz" && c.action == "demo") ||
           (c.subcommand == "liouville" && c.action == "sweep") || (c.subcommand == "criterion" && c.gap);
}

// Per-command defaults, so that the embedded config is fully resolved.
void resolve(RunConfig& c) {
    if (c.format.empty()) c.format = is_sweep(c) ? "csv" : "json";
    if (c.format != "json" && c.format != "csv") throw ParameterError("--format must be json or csv");
    if (c.oversample < 4) throw ParameterError("--oversample must be >= 4");
    if (c.eps_ladder.empty() && c.subcommand == "flatness") c.eps_ladder = kDefaultEpsLadder;
    if (c.alphas.empty()) {
        if (c.subcommand == "liouville" && c.action == "sweep") {
            c.alphas = {1.0, 4.0, kInf};
        } else if (c.subcommand == "flatness" || c.subcommand == "criterion" ||
                   (c.subcommand == "barker" && c.action == "flatness")) {
            c.alphas = {1.0};
        }
    }
    if (c.n_list.empty()) {
        if (c.subcommand == "criterion" && c.gap) c.n_list = {128, 512};
        if (c.subcommand == "liouville" && c.action == "sweep") c.n_list = {1000, 10000};
        if (c.subcommand == "riesz" && c.action == "demo") c.n_list = {64, 256, 1024, 4096};
    }
    if (c.subcommand == "criterion" && !c.gap && !c.k) c.k = 3.0;
    if (c.subcommand == "riesz" && c.action == "plan" && c.degrees.empty()) c.degrees = {2, 2, 2};
    if (c.generator && c.generator->family == Family::littlewood_random && !c.generator->seed) {
        c.generator->seed = c.seed.value_or(0);
    }
    const bool seeded = (c.subcommand == "clarkson" && c.suite != "delta" && !c.generator) ||
                        (c.subcommand == "riesz" && c.action == "plan");
    if (seeded && !c.seed) c.seed = 0;
    if (c.generator) c.generator->validate();
}

json envelope(const RunConfig& c) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["tool"] = kTool;
    j["version"] = version();
    j["config"] = c;
    const bool uses_rng = c.seed.has_value() ||
                          (c.generator && c.generator->family == Family::littlewood_random);
    if (uses_rng) {
        j["rng"] = {{"name", SplitMix64::name},
                    {"seed", c.generator && c.generator->seed ? *c.generator->seed : c.seed.value_or(0)}};
    }
    return j;
}

const GeneratorSpec& need_generator(const RunConfig& c) {
    if (!c.generator) throw ParameterError(c.subcommand + ": a generator is required (--family ...)");
    return *c.generator;
}

CirclePolynomial random_poly(SplitMix64& rng, std::size_t degree) {
    std::vector<Complex> v(degree + 1);
    for (auto& x : v) x = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    if (v.back() == Complex{0.0}) v.back() = 1.0;
    return CirclePolynomial(std::move(v));
}

// A report is either a JSON document or CSV text; `code` carries verdict
// failures that still produce output.
struct Outcome {
    json report;
    std::string csv;
    int code = ok;
};

std::string csv_comment_free(std::string text, bool keep_header) {
    if (keep_header) return text;
    const auto nl = text.find('\n');
    return nl == std::string::npos ? std::string() : text.substr(nl + 1);
}

Outcome cmd_flatness(const RunConfig& c, unsigned) {
    const auto& spec = need_generator(c);
    const CirclePolynomial p = generate(spec);
    RefineOptions opt;
    opt.oversample = c.oversample;
    Outcome o;
    o.report = envelope(c);
    o.report["l2_norm"] = p.l2_norm();
    json results = json::array();
    std::string csv = flatness_csv_header() + "\n";
    for (double alpha : c.alphas) {
        const FlatnessReport r = flatness_report(p, alpha, c.eps_ladder, opt);
        results.push_back(r);
        csv += flatness_csv_row(r) + "\n";
    }
    o.report["results"] = results;
    o.csv = csv;
    return o;
}

Outcome cmd_criterion(const RunConfig& c, unsigned threads) {
    const auto& spec = need_generator(c);
    Outcome o;
    o.report = envelope(c);
    if (c.gap) {
        GeneratorSpec base = spec;
        if (base.family == Family::littlewood_random) base.seed = spec.seed.value_or(c.seed.value_or(0));
        criterion::GapOptions opt;
        opt.oversample = c.oversample;
        opt.threads = threads;
        json estimates = json::array();
        bool first = true;
        for (double alpha : c.alphas) {
            const auto run = criterion::estimate_gap(base, alpha, c.n_list, c.samples, opt);
            estimates.push_back(run.estimate);
            std::ostringstream rows;
            criterion::write_gap_csv(rows, run);
            o.csv += csv_comment_free(rows.str(), first);
            first = false;
        }
        o.report["estimates"] = estimates;
        return o;
    }
    const CirclePolynomial p = generate(spec);
    RefineOptions opt;
    opt.oversample = c.oversample;
    json verdicts = json::array();
    o.csv = "alpha,K_min,threshold,satisfied,observed_ratio\n";
    for (double alpha : c.alphas) {
        const auto v = criterion::flatness_verdict(p, alpha, *c.k, opt);
        verdicts.push_back(v);
        o.csv += format_double(alpha) + ',' + format_double(v.criterion.K_min) + ',' + format_double(*c.k) +
                 ',' + (v.satisfied ? "true" : "false") + ',' + format_double(v.observed_ratio) + '\n';
    }
    o.report["verdicts"] = verdicts;
    return o;
}

Outcome cmd_clarkson(const RunConfig& c, unsigned threads) {
    Outcome o;
    o.report = envelope(c);
    const std::uint64_t seed = c.seed.value_or(0);
    json summary;
    summary["suite"] = c.suite;
    if (c.suite == "delta") {
        const double d = criterion::convexity_delta(c.eps, c.p);
        summary["eps"] = c.eps;
        summary["p"] = c.p;
        summary["delta"] = d;
        o.csv = "eps,p,delta\n" + format_double(c.eps) + ',' + format_double(c.p) + ',' + format_double(d) + '\n';
        o.report["result"] = summary;
        return o;
    }
    if (c.count == 0 && !c.generator) throw ParameterError("--count must be >= 1");

    const bool pairs = c.suite == "general" || c.suite == "classical";
    if (!pairs && c.suite != "sublevel" && c.suite != "markov") {
        throw ParameterError("--suite must be general, classical, sublevel, markov or delta");
    }
    if (pairs && c.generator) throw ParameterError("clarkson: the " + c.suite + " suite draws random pairs");
    if (c.suite == "general") criterion::clarkson_general(CirclePolynomial{1.0}, CirclePolynomial{1.0}, c.p, c.r, c.s);
    if (c.suite == "classical") criterion::clarkson_classical(CirclePolynomial{1.0}, CirclePolynomial{1.0}, c.p);
    if (c.suite == "sublevel" && !(c.zeta2 > 0.0 && c.zeta2 < 1.0)) {
        throw ParameterError("sublevel check: zeta2 must lie in (0,1)");
    }

    const std::size_t count = c.generator ? 1 : c.count;
    std::vector<double> margin(count);
    std::vector<char> holds(count);
    std::vector<json> details(count);
    parallel_for(count, threads, [&](std::size_t i) {
        SplitMix64 rng(SplitMix64::derive(seed, i));
        if (pairs) {
            const auto f = random_poly(rng, rng.below(c.max_degree + 1)).normalized();
            const auto g = random_poly(rng, rng.below(c.max_degree + 1)).normalized();
            const auto chk = c.suite == "general" ? criterion::clarkson_general(f, g, c.p, c.r, c.s, c.oversample)
                                                  : criterion::clarkson_classical(f, g, c.p, c.oversample);
            margin[i] = chk.slack;
            holds[i] = chk.slack >= -1e-9;
            details[i] = chk;
        } else {
            const auto f = c.generator ? generate(*c.generator) : random_poly(rng, rng.below(c.max_degree + 1));
            if (c.suite == "sublevel") {
                const auto chk = criterion::sublevel_bound_check(f, c.zeta2, c.oversample);
                margin[i] = chk.chebyshev_bound + chk.slack - chk.measure;
                holds[i] = chk.holds;
                details[i] = chk;
            } else {
                const auto chk = criterion::markov_bound_check(f, c.oversample);
                margin[i] = chk.applicable ? chk.measure - (chk.lower_bound - chk.slack) : kInf;
                holds[i] = !chk.applicable || chk.holds;
                details[i] = chk;
            }
        }
    });
    const auto worst = std::min_element(margin.begin(), margin.end()) - margin.begin();
    const auto failures = std::count(holds.begin(), holds.end(), 0);
    summary["count"] = count;
    summary["failures"] = failures;
    summary["all_hold"] = failures == 0;
    summary["min_margin"] = real(margin[worst]);
    summary["worst_case"] = details[worst];
    if (c.suite == "general") summary["exponents"] = {{"p", c.p}, {"r", c.r}, {"s", c.s}};
    if (c.suite == "classical") summary["exponents"] = {{"p", c.p}};
    if (c.suite == "sublevel") summary["zeta2"] = c.zeta2;
    if (count == 1) summary["check"] = details[0];
    o.report["result"] = summary;
    o.csv = "index,margin,holds\n";
    for (std::size_t i = 0; i < count; ++i) {
        o.csv += std::to_string(i) + ',' + format_double(margin[i]) + ',' + (holds[i] ? "true" : "false") + '\n';
    }
    if (failures != 0) o.code = capability;
    return o;
}

Outcome cmd_barker(const RunConfig& c, unsigned threads) {
    Outcome o;
    o.report = envelope(c);
    barker::SearchOptions opt;
    opt.symmetry_reduce = c.symmetry_reduce;
    opt.threads = threads;
    if (c.action == "search") {
        if (c.n_max > 0) {
            const auto rep = barker::turyn_storer_probe(c.n_max, opt);
            o.report["probe"] = rep;
            o.report["verdict"] = rep.consistent ? "consistent" : "inconsistent";
            o.csv = "n,count,consistent\n";
            for (const auto& e : rep.entries) {
                o.csv += std::to_string(e.n) + ',' + std::to_string(e.count) + ',' +
                         (e.consistent ? "true" : "false") + '\n';
            }
            if (!rep.consistent) o.code = capability;
            return o;
        }
        if (c.n == 0) throw ParameterError("barker search: give --n or --n-max");
        const auto res = barker::search_barker(c.n, opt);
        const bool consistent = res.sequences.empty() || barker::turyn_storer_admissible(c.n);
        o.report["search"] = res;
        o.report["verdict"] = consistent ? "consistent" : "inconsistent";
        std::ostringstream rows;
        barker::write_sequences_csv(rows, res);
        o.csv = rows.str();
        if (!consistent) o.code = capability;
        return o;
    }
    if (c.signs.empty()) throw ParameterError("barker " + c.action + ": --signs is required");
    const SignSequence b(c.signs);
    if (c.action == "profile") {
        const auto prof = barker::autocorrelate_signs(b);
        o.report["profile"] = prof;
        o.csv = "k,c_k\n";
        for (std::size_t k = 0; k < prof.sidelobes.size(); ++k) {
            o.csv += std::to_string(k + 1) + ',' + std::to_string(prof.sidelobes[k]) + '\n';
        }
        return o;
    }
    RefineOptions ropt;
    ropt.oversample = c.oversample;
    json results = json::array();
    o.csv = flatness_csv_header() + ",square_deviation\n";
    for (double alpha : c.alphas) {
        const auto f = barker::barker_flatness(b, alpha, ropt);
        json entry = f.report;
        entry["square_deviation"] = f.square_deviation;
        results.push_back(entry);
        o.csv += flatness_csv_row(f.report) + ',' + format_double(f.square_deviation) + '\n';
    }
    o.report["results"] = results;
    return o;
}

Outcome cmd_liouville(const RunConfig& c, unsigned threads) {
    Outcome o;
    o.report = envelope(c);
    if (c.action == "sweep") {
        RefineOptions opt;
        opt.oversample = c.oversample;
        const auto rows = nt::liouville_norm_sweep(c.n_list, c.alphas, opt, threads);
        o.report["rows"] = rows;
        std::ostringstream out;
        nt::write_sweep_csv(out, rows);
        o.csv = out.str();
        return o;
    }
    if (c.n == 0) throw ParameterError("liouville " + c.action + ": --n must be >= 1");
    if (c.action == "partial") {
        const auto r = nt::partial_sum_ratio(c.n);
        o.report["partial_sums"] = r;
        o.csv = "N,max_ratio,argmax_M,final_sum\n" + std::to_string(r.N) + ',' + format_double(r.max_ratio) +
                ',' + std::to_string(r.argmax_M) + ',' + std::to_string(r.final_sum) + '\n';
        return o;
    }
    // export: the bit table goes to --output, the report to stdout
    if (c.output.empty()) throw ParameterError("liouville export: --output is required");
    const auto table = nt::liouville_sieve(c.n);
    std::ofstream file(c.output, std::ios::binary);
    if (!file) throw CapabilityError("cannot open " + c.output + " for writing");
    nt::write_liouville_bits(file, table);
    if (!file) throw CapabilityError("write to " + c.output + " failed");
    o.report["export"] = {{"N", c.n}, {"path", c.output}, {"bytes", 16 + (c.n + 7) / 8}};
    o.csv = "N,path,bytes\n" + std::to_string(c.n) + ',' + c.output + ',' + std::to_string(16 + (c.n + 7) / 8) + '\n';
    return o;
}

Outcome cmd_riesz(const RunConfig& c, unsigned threads) {
    Outcome o;
    o.report = envelope(c);
    RefineOptions opt;
    opt.oversample = c.oversample;
    if (c.action == "demo") {
        const auto rows = riesz::gauss_fresnel_mahler_demo(c.n_list, opt, threads);
        o.report["rows"] = rows;
        std::ostringstream out;
        riesz::write_demo_csv(out, rows);
        o.csv = out.str();
        return o;
    }
    riesz::RieszPlan plan;
    const std::uint64_t seed = c.seed.value_or(0);
    for (std::size_t i = 0; i < c.degrees.size(); ++i) {
        if (c.degrees[i] == 0) throw ParameterError("riesz plan: degrees must be >= 1");
        SplitMix64 rng(SplitMix64::derive(seed, i));
        plan = riesz::extend_product(plan, random_poly(rng, c.degrees[i]).normalized());
    }
    if (plan.depth() == 0) throw ParameterError("riesz plan: --degrees is empty");
    const auto stability = riesz::stability_profile(plan);
    const auto mahler = riesz::mahler_of_plan(plan, opt);
    o.report["plan"] = riesz::plan_to_json(plan);
    o.report["stability"] = stability;
    o.report["mahler"] = mahler;
    o.csv = "depth,spread,mass_error,max_discrepancy,product_formula,direct\n" + std::to_string(plan.depth()) +
            ',' + std::to_string(plan.spread()) + ',' + format_double(stability.max_mass_error) + ',' +
            format_double(stability.max_discrepancy) + ',' + format_double(mahler.product_formula) + ',' +
            format_double(mahler.direct) + '\n';
    if (!stability.stable) o.code = capability;
    return o;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot read config file " + path);
    try {
        return json::parse(in).get<RunConfig>();
    } catch (const json::exception& e) {
        throw ParameterError("config file " + path + ": " + e.what());
    }
}

// Flag values, kept apart from the config so only flags the user actually
// passed override a loaded config file.
struct FlagValues {
    RunConfig cfg;
    std::string family;
    std::size_t n = 0;
    std::uint64_t gen_seed = 0;
    double a = 0.0;
    std::vector<double> phases;
    bool normalized = false;
    std::vector<std::string> alphas;
    std::vector<std::string> signs;
    std::string config_path;
    unsigned threads = 0;
    double k = 0.0;
    std::uint64_t seed = 0;
};

GeneratorSpec family_spec(Family family, std::size_t n) {
    GeneratorSpec g;
    g.family = family;
    g.n = n;
    return g;
}

struct Override {
    CLI::Option* option;
    std::function<void(RunConfig&)> apply;
};

}  // namespace

std::string version() { return FLATLAB_VERSION; }

void to_json(json& j, const RunConfig& c) {
    j = json{{"subcommand", c.subcommand},
             {"action", c.action},
             {"generator", c.generator ? json(*c.generator) : json(nullptr)},
             {"alphas", reals(c.alphas)},
             {"oversample", c.oversample},
             {"eps_ladder", c.eps_ladder},
             {"output", c.output},
             {"format", c.format},
             {"seed", c.seed ? json(*c.seed) : json(nullptr)},
             {"k", c.k ? json(*c.k) : json(nullptr)},
             {"gap", c.gap},
             {"n_list", c.n_list},
             {"samples", c.samples},
             {"suite", c.suite},
             {"p", c.p},
             {"r", c.r},
             {"s", c.s},
             {"zeta2", c.zeta2},
             {"eps", c.eps},
             {"count", c.count},
             {"max_degree", c.max_degree},
             {"n", c.n},
             {"n_max", c.n_max},
             {"signs", c.signs},
             {"symmetry_reduce", c.symmetry_reduce},
             {"degrees", c.degrees}};
}

void from_json(const json& j, RunConfig& c) {
    c = RunConfig{};
    c.subcommand = j.value("subcommand", std::string());
    c.action = j.value("action", std::string());
    if (j.contains("generator") && !j["generator"].is_null()) c.generator = j["generator"].get<GeneratorSpec>();
    if (j.contains("alphas")) {
        for (const auto& a : j["alphas"]) c.alphas.push_back(parse_real(a));
    }
    c.oversample = j.value("oversample", c.oversample);
    c.eps_ladder = j.value("eps_ladder", c.eps_ladder);
    c.output = j.value("output", c.output);
    c.format = j.value("format", c.format);
    if (j.contains("seed") && !j["seed"].is_null()) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("k") && !j["k"].is_null()) c.k = j["k"].get<double>();
    c.gap = j.value("gap", c.gap);
    c.n_list = j.value("n_list", c.n_list);
    c.samples = j.value("samples", c.samples);
    c.suite = j.value("suite", c.suite);
    c.p = j.value("p", c.p);
    c.r = j.value("r", c.r);
    c.s = j.value("s", c.s);
    c.zeta2 = j.value("zeta2", c.zeta2);
    c.eps = j.value("eps", c.eps);
    c.count = j.value("count", c.count);
    c.max_degree = j.value("max_degree", c.max_degree);
    c.n = j.value("n", c.n);
    c.n_max = j.value("n_max", c.n_max);
    c.signs = j.value("signs", c.signs);
    c.symmetry_reduce = j.value("symmetry_reduce", c.symmetry_reduce);
    c.degrees = j.value("degrees", c.degrees);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Flatness laboratory for polynomials on the unit circle", kTool};
    app.set_version_flag("--version", version());
    app.require_subcommand(0, 1);
    app.fallthrough();

    FlagValues f;
    std::vector<Override> overrides;
    auto add_override = [&](CLI::Option* opt, std::function<void(RunConfig&)> apply) {
        overrides.push_back({opt, std::move(apply)});
        return opt;
    };

    app.add_option("--config", f.config_path, "JSON RunConfig; explicit flags override it");
    add_override(app.add_option("--format", f.cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"})),
                 [&](RunConfig& c) { c.format = f.cfg.format; });
    add_override(app.add_option("--output,-o", f.cfg.output, "report file (default: stdout)"),
                 [&](RunConfig& c) { c.output = f.cfg.output; });
    app.add_option("--threads", f.threads, "worker threads (0: all cores)");

    // Generator flags, shared by several subcommands.
    std::vector<CLI::Option*> generator_options;
    auto add_generator = [&](CLI::App* sub) {
        generator_options.push_back(sub->add_option("--family", f.family,
                                                     "littlewood-random | unimodular-phases | gauss-fresnel | "
                                                     "blaschke | liouville"));
        generator_options.push_back(sub->add_option("--n", f.n, "length"));
        generator_options.push_back(sub->add_option("--gen-seed", f.gen_seed, "generator seed (default: --seed)"));
        generator_options.push_back(sub->add_option("--a", f.a, "Blaschke parameter in (0,1)"));
        generator_options.push_back(
            sub->add_option("--phases", f.phases, "unimodular phases, comma separated")->delimiter(','));
        generator_options.push_back(sub->add_flag("--normalized", f.normalized,
                                                  "divide by the l2 norm"));
    };
    auto add_common = [&](CLI::App* sub) {
        add_override(sub->add_option("--alpha", f.alphas, "exponents, comma separated ('inf' for sup)")
                         ->delimiter(','),
                     [&](RunConfig& c) { c.alphas = parse_reals(f.alphas); });
        add_override(sub->add_option("--oversample", f.cfg.oversample, "grid points per coefficient (>= 4)"),
                     [&](RunConfig& c) { c.oversample = f.cfg.oversample; });
        add_override(sub->add_option("--seed", f.seed, "base seed"), [&](RunConfig& c) { c.seed = f.seed; });
    };

    auto* flatness = app.add_subcommand("flatness", "flatness metrics of one generated polynomial");
    add_generator(flatness);
    add_common(flatness);
    add_override(flatness->add_option("--eps", f.cfg.eps_ladder, "measure-deviation ladder")->delimiter(','),
                 [&](RunConfig& c) { c.eps_ladder = f.cfg.eps_ladder; });

    auto* criterion = app.add_subcommand("criterion", "Littlewood coefficient criterion and gap estimates");
    add_generator(criterion);
    add_common(criterion);
    add_override(criterion->add_option("--k", f.k, "threshold K (default 3)"), [&](RunConfig& c) { c.k = f.k; });
    add_override(criterion->add_flag("--gap", f.cfg.gap, "empirical gap over --n-list x --samples"),
                 [&](RunConfig& c) { c.gap = f.cfg.gap; });
    add_override(criterion->add_option("--n-list", f.cfg.n_list, "lengths")->delimiter(','),
                 [&](RunConfig& c) { c.n_list = f.cfg.n_list; });
    add_override(criterion->add_option("--samples", f.cfg.samples, "samples per length"),
                 [&](RunConfig& c) { c.samples = f.cfg.samples; });

    auto* clarkson = app.add_subcommand("clarkson", "Clarkson inequalities and measure bounds");
    add_generator(clarkson);
    add_common(clarkson);
    add_override(clarkson->add_option("--suite", f.cfg.suite, "general | classical | sublevel | markov | delta")
                     ->check(CLI::IsMember({"general", "classical", "sublevel", "markov", "delta"})),
                 [&](RunConfig& c) { c.suite = f.cfg.suite; });
    add_override(clarkson->add_option("--p", f.cfg.p), [&](RunConfig& c) { c.p = f.cfg.p; });
    add_override(clarkson->add_option("--r", f.cfg.r), [&](RunConfig& c) { c.r = f.cfg.r; });
    add_override(clarkson->add_option("--s", f.cfg.s), [&](RunConfig& c) { c.s = f.cfg.s; });
    add_override(clarkson->add_option("--zeta2", f.cfg.zeta2), [&](RunConfig& c) { c.zeta2 = f.cfg.zeta2; });
    add_override(clarkson->add_option("--eps", f.cfg.eps, "delta: eps in (0,2]"),
                 [&](RunConfig& c) { c.eps = f.cfg.eps; });
    add_override(clarkson->add_option("--count", f.cfg.count, "random cases"),
                 [&](RunConfig& c) { c.count = f.cfg.count; });
    add_override(clarkson->add_option("--max-degree", f.cfg.max_degree, "degree bound of random cases"),
                 [&](RunConfig& c) { c.max_degree = f.cfg.max_degree; });

    auto* barker = app.add_subcommand("barker", "Barker sequences: search, profile, flatness");
    add_override(barker->add_option("action", f.cfg.action, "search | profile | flatness")
                     ->check(CLI::IsMember({"search", "profile", "flatness"})),
                 [&](RunConfig& c) { c.action = f.cfg.action; });
    add_common(barker);
    add_override(barker->add_option("--n", f.cfg.n, "search length"), [&](RunConfig& c) { c.n = f.cfg.n; });
    add_override(barker->add_option("--n-max", f.cfg.n_max, "existence census for 1..n-max"),
                 [&](RunConfig& c) { c.n_max = f.cfg.n_max; });
    add_override(barker->add_option("--signs", f.signs, "+-1 entries, comma separated")->delimiter(','),
                 [&](RunConfig& c) {
                     c.signs.clear();
                     for (const auto& s : f.signs) {
                         if (s == "1" || s == "+1") c.signs.push_back(1);
                         else if (s == "-1") c.signs.push_back(-1);
                         else throw ParameterError("--signs entries must be +1 or -1, got '" + s + "'");
                     }
                 });
    add_override(barker->add_flag("--symmetry-reduce", f.cfg.symmetry_reduce, "fix b0 = b1 = +1, then re-expand"),
                 [&](RunConfig& c) { c.symmetry_reduce = f.cfg.symmetry_reduce; });

    auto* liouville = app.add_subcommand("liouville", "Liouville sums: sweep, partial, export");
    add_override(liouville->add_option("action", f.cfg.action, "sweep | partial | export")
                     ->check(CLI::IsMember({"sweep", "partial", "export"})),
                 [&](RunConfig& c) { c.action = f.cfg.action; });
    add_common(liouville);
    add_override(liouville->add_option("--n-list", f.cfg.n_list, "bounds N")->delimiter(','),
                 [&](RunConfig& c) { c.n_list = f.cfg.n_list; });
    add_override(liouville->add_option("--n", f.cfg.n, "bound N"), [&](RunConfig& c) { c.n = f.cfg.n; });

    auto* riesz = app.add_subcommand("riesz", "Riesz products: demo, plan");
    add_override(riesz->add_option("action", f.cfg.action, "demo | plan")->check(CLI::IsMember({"demo", "plan"})),
                 [&](RunConfig& c) { c.action = f.cfg.action; });
    add_common(riesz);
    add_override(riesz->add_option("--n-list", f.cfg.n_list, "Gauss-Fresnel lengths")->delimiter(','),
                 [&](RunConfig& c) { c.n_list = f.cfg.n_list; });
    add_override(riesz->add_option("--degrees", f.cfg.degrees, "factor degrees")->delimiter(','),
                 [&](RunConfig& c) { c.degrees = f.cfg.degrees; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        RunConfig cfg;
        if (!f.config_path.empty()) cfg = load_config(f.config_path);
        std::string chosen;
        if (!app.get_subcommands().empty()) chosen = app.get_subcommands().front()->get_name();
        if (chosen.empty()) chosen = cfg.subcommand;
        if (chosen.empty()) {
            err << app.help();
            return usage;
        }
        if (!cfg.subcommand.empty() && cfg.subcommand != chosen) {
            throw ParameterError("config file is for '" + cfg.subcommand + "', not '" + chosen + "'");
        }
        cfg.subcommand = chosen;
        if (f.config_path.empty()) cfg.format.clear();  // let resolve() pick the per-command default

        for (const auto& o : overrides) {
            if (o.option->count() > 0) o.apply(cfg);
        }
        const bool any_generator = std::any_of(generator_options.begin(), generator_options.end(),
                                               [](CLI::Option* o) { return o->count() > 0; });
        if (any_generator) {
            GeneratorSpec g = cfg.generator.value_or(family_spec(Family::littlewood_random, 64));
            for (auto* o : generator_options) {
                if (o->count() == 0) continue;
                const std::string name = o->get_name();
                if (name == "--family") {
                    const Family fam = parse_family(f.family);
                    if (fam != g.family) g = family_spec(fam, g.n);
                } else if (name == "--n") {
                    g.n = f.n;
                } else if (name == "--gen-seed") {
                    g.seed = f.gen_seed;
                } else if (name == "--a") {
                    g.a = f.a;
                } else if (name == "--phases") {
                    g.phases = f.phases;
                } else if (name == "--normalized") {
                    g.normalized = true;
                }
            }
            cfg.generator = g;
        }
        if ((chosen == "barker" || chosen == "liouville" || chosen == "riesz") && cfg.action.empty()) {
            throw ParameterError(chosen + ": an action is required");
        }
        resolve(cfg);

        const unsigned threads = resolve_threads(f.threads);
        Outcome outcome;
        if (chosen == "flatness") outcome = cmd_flatness(cfg, threads);
        else if (chosen == "criterion") outcome = cmd_criterion(cfg, threads);
        else if (chosen == "clarkson") outcome = cmd_clarkson(cfg, threads);
        else if (chosen == "barker") outcome = cmd_barker(cfg, threads);
        else if (chosen == "liouville") outcome = cmd_liouville(cfg, threads);
        else outcome = cmd_riesz(cfg, threads);

        const std::string text = cfg.format == "csv" ? outcome.csv : outcome.report.dump(2) + "\n";
        const bool to_file = !cfg.output.empty() && !(chosen == "liouville" && cfg.action == "export");
        if (to_file) {
            std::ofstream file(cfg.output, std::ios::binary);
            if (!file) throw CapabilityError("cannot open " + cfg.output + " for writing");
            file << text;
            if (!file) throw CapabilityError("write to " + cfg.output + " failed");
        } else {
            out << text;
        }
        if (outcome.code != ok) err << "error: verdict failed, see report\n";
        return outcome.code;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const CapabilityError& e) {
        err << "error: " << e.what() << '\n';
        return capability;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return capability;
    }
}

}  // namespace flatlab::cli
