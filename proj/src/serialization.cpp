#include "flatlab/serialization.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "flatlab/errors.hpp"

namespace flatlab {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, end);
}

namespace {
// Non-finite values are written as strings; JSON has no literal for them.
json number(double v) { return std::isfinite(v) ? json(v) : json(format_double(v)); }
}  // namespace

void to_json(json& j, const GeneratorSpec& spec) {
    j = json{{"family", std::string(family_name(spec.family))}, {"n", spec.n}};
    j["seed"] = spec.seed ? json(*spec.seed) : json(nullptr);
    j["a"] = spec.a ? json(*spec.a) : json(nullptr);
    j["phases"] = spec.phases;
    j["normalized"] = spec.normalized;
}

void from_json(const json& j, GeneratorSpec& spec) {
    try {
        spec = GeneratorSpec{};
        spec.family = parse_family(j.at("family").get<std::string>());
        spec.n = j.at("n").get<std::size_t>();
        if (j.contains("seed") && !j["seed"].is_null()) spec.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("a") && !j["a"].is_null()) spec.a = j["a"].get<double>();
        if (j.contains("phases") && !j["phases"].is_null()) spec.phases = j["phases"].get<std::vector<double>>();
        spec.normalized = j.value("normalized", false);
    } catch (const json::exception& e) {
        throw ParameterError(std::string("generator spec: ") + e.what());
    }
}

json polynomial_to_json(const CirclePolynomial& p) {
    json arr = json::array();
    for (const auto& c : p.coeffs()) arr.push_back(json::array({c.real(), c.imag()}));
    return arr;
}

CirclePolynomial polynomial_from_json(const json& j) {
    if (!j.is_array()) throw ParameterError("polynomial json must be an array of [re, im] pairs");
    std::vector<Complex> c;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) throw ParameterError("polynomial json entries must be [re, im]");
        c.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return CirclePolynomial(std::move(c));
}

void write_polynomial_csv(std::ostream& out, const CirclePolynomial& p) {
    out << "exponent,re,im\n";
    const auto c = p.coeffs();
    for (std::size_t j = 0; j < c.size(); ++j) {
        out << j << ',' << format_double(c[j].real()) << ',' << format_double(c[j].imag()) << '\n';
    }
}

void to_json(json& j, const FlatnessReport& r) {
    json ladder = json::array();
    for (const auto& [eps, m] : r.measure_deviation) ladder.push_back({{"eps", eps}, {"measure", m}});
    j = json{{"alpha", r.alpha},
             {"degree", r.degree},
             {"lp_ratio", number(r.lp_ratio)},
             {"flatness_distance", number(r.flatness_distance)},
             {"sup_deviation", number(r.sup_deviation)},
             {"measure_deviation", ladder},
             {"mahler", number(r.mahler)},
             {"mahler_clip_count", r.mahler_clip_count},
             {"mahler_low_confidence", r.mahler_low_confidence},
             {"grid_M", r.grid_M},
             {"oversample", r.oversample},
             {"converged", r.converged}};
}

std::string flatness_csv_header() {
    return "alpha,degree,lp_ratio,flatness_distance,sup_deviation,mahler,grid_M,converged";
}

std::string flatness_csv_row(const FlatnessReport& r) {
    return format_double(r.alpha) + ',' + std::to_string(r.degree) + ',' + format_double(r.lp_ratio) +
           ',' + format_double(r.flatness_distance) + ',' + format_double(r.sup_deviation) + ',' +
           format_double(r.mahler) + ',' + std::to_string(r.grid_M) + ',' +
           (r.converged ? "true" : "false");
}

namespace criterion {

void to_json(json& j, const CriterionReport& r) {
    j = json{{"n", r.n}, {"K_min", r.K_min}, {"family_tag", r.family_tag}};
    j["threshold"] = r.threshold ? json(*r.threshold) : json(nullptr);
    j["satisfied"] = r.satisfied;
}

void to_json(json& j, const Verdict& v) {
    j = json{{"criterion", v.criterion},
             {"alpha", v.alpha},
             {"satisfied", v.satisfied},
             {"degenerate", v.degenerate},
             {"predicted_direction", direction_name(v.predicted)},
             {"verdict", v.verdict},
             {"prediction", v.prediction},
             {"observed_ratio", v.observed_ratio},
             {"grid_M", v.grid_M}};
}

void to_json(json& j, const GapEstimate& e) {
    j = json{{"alpha", e.alpha},
             {"side", direction_name(e.side)},
             {"empirical_A", e.empirical_A},
             {"extreme_ratio", e.extreme_ratio},
             {"sample_count", e.sample_count},
             {"n_range", {e.n_min, e.n_max}}};
}

void to_json(json& j, const InequalityCheck& c) {
    j = json{{"lhs", c.lhs}, {"rhs", c.rhs}, {"slack", c.slack}, {"grid_M", c.grid_M}};
}

void to_json(json& j, const SublevelCheck& c) {
    j = json{{"zeta2", c.zeta2},   {"l1", c.l1},         {"measure", c.measure},
             {"chebyshev_bound", number(c.chebyshev_bound)}, {"slack", c.slack},
             {"grid_M", c.grid_M}, {"holds", c.holds}};
}

void to_json(json& j, const MarkovCheck& c) {
    j = json{{"applicable", c.applicable}, {"a", c.a},         {"measure", c.measure},
             {"lower_bound", c.lower_bound}, {"slack", c.slack}, {"grid_M", c.grid_M},
             {"holds", c.holds}};
}

void write_gap_csv(std::ostream& out, const GapRun& run) {
    out << "family,n,seed,alpha,ratio\n";
    for (const auto& s : run.samples) {
        out << s.family << ',' << s.n << ',' << s.seed << ',' << format_double(s.alpha) << ','
            << format_double(s.ratio) << '\n';
    }
}

}  // namespace criterion

namespace barker {

void to_json(json& j, const AutocorrelationProfile& p) {
    j = json{{"n", p.n},
             {"sidelobes", p.sidelobes},
             {"sidelobe_energy", p.sidelobe_energy},
             {"merit_factor", number(p.merit_factor)},
             {"is_barker", p.is_barker}};
}

void to_json(json& j, const SearchResult& r) {
    json seqs = json::array();
    for (const auto& s : r.sequences) seqs.push_back(std::vector<int>(s.signs().begin(), s.signs().end()));
    j = json{{"n", r.n},
             {"count", r.sequences.size()},
             {"sequences", seqs},
             {"nodes_visited", r.nodes_visited},
             {"symmetry_reduced", r.symmetry_reduced}};
}

void to_json(json& j, const TurynStorerReport& r) {
    json entries = json::array();
    for (const auto& e : r.entries) {
        entries.push_back({{"n", e.n}, {"count", e.count}, {"consistent", e.consistent}});
    }
    j = json{{"n_max", r.n_max},
             {"entries", entries},
             {"nodes_visited", r.nodes_visited},
             {"consistent", r.consistent}};
}

void write_sequences_csv(std::ostream& out, const SearchResult& result) {
    for (const auto& s : result.sequences) {
        for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s[i];
        out << '\n';
    }
}

}  // namespace barker

namespace nt {

void write_sweep_csv(std::ostream& out, std::span<const NormSweepRow> rows) {
    out << "N,alpha,ratio\n";
    for (const auto& r : rows) {
        out << r.N << ',' << format_double(r.alpha) << ',' << format_double(r.ratio) << '\n';
    }
}

void to_json(json& j, const NormSweepRow& r) {
    j = json{{"N", r.N}, {"alpha", number(r.alpha)}, {"ratio", r.ratio}, {"grid_M", r.grid_M}};
}

void to_json(json& j, const PartialSumRatio& r) {
    j = json{{"N", r.N}, {"max_ratio", r.max_ratio}, {"argmax_M", r.argmax_M}, {"final_sum", r.final_sum}};
}

}  // namespace nt

namespace riesz {

json plan_to_json(const RieszPlan& plan) {
    json factors = json::array();
    for (const auto& f : plan.factors()) factors.push_back(polynomial_to_json(f));
    return json{{"depth", plan.depth()},
                {"spacings", std::vector<std::uint64_t>(plan.spacings().begin(), plan.spacings().end())},
                {"factors", factors},
                {"spread", plan.spread()}};
}

void to_json(json& j, const PlanMahler& m) {
    j = json{{"product_formula", m.product_formula},
             {"direct", m.direct},
             {"abs_difference", m.abs_difference},
             {"grid_M", m.grid_M},
             {"clip_count", m.clip_count},
             {"converged", m.converged}};
}

void to_json(json& j, const StabilityProfile& s) {
    j = json{{"depth", s.depth},
             {"max_discrepancy", s.max_discrepancy},
             {"max_mass_error", s.max_mass_error},
             {"stable", s.stable}};
}

void to_json(json& j, const GaussFresnelRow& r) {
    j = json{{"n", r.n},         {"l4_ratio", r.l4_ratio}, {"l1", r.l1},
             {"flat2", r.flat2}, {"mahler", r.mahler},     {"grid_M", r.grid_M},
             {"mahler_converged", r.mahler_converged}};
}

void write_demo_csv(std::ostream& out, std::span<const GaussFresnelRow> rows) {
    out << "n,l4_ratio,l1,flat2,mahler\n";
    for (const auto& r : rows) {
        out << r.n << ',' << format_double(r.l4_ratio) << ',' << format_double(r.l1) << ','
            << format_double(r.flat2) << ',' << format_double(r.mahler) << '\n';
    }
}

}  // namespace riesz

}  // namespace flatlab
