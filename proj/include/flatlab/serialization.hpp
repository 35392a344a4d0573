#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "flatlab/barker.hpp"
#include "flatlab/criterion.hpp"
#include "flatlab/generators.hpp"
#include "flatlab/inequalities.hpp"
#include "flatlab/liouville.hpp"
#include "flatlab/norms.hpp"
#include "flatlab/riesz.hpp"

// JSON and CSV forms of the library's records. Field names are stable; any
// change to them bumps kSchemaVersion.

namespace flatlab {

inline constexpr int kSchemaVersion = 1;

using nlohmann::json;

void to_json(json& j, const GeneratorSpec& spec);
void from_json(const json& j, GeneratorSpec& spec);

/// [[re, im], ...] indexed by exponent.
json polynomial_to_json(const CirclePolynomial& p);
CirclePolynomial polynomial_from_json(const json& j);
/// "exponent,re,im" header plus one row per coefficient, 17 significant digits.
void write_polynomial_csv(std::ostream& out, const CirclePolynomial& p);

void to_json(json& j, const FlatnessReport& report);
std::string flatness_csv_header();
std::string flatness_csv_row(const FlatnessReport& report);

/// Shortest round-trip decimal form used by every CSV writer.
std::string format_double(double value);

namespace criterion {
void to_json(json& j, const CriterionReport& report);
void to_json(json& j, const Verdict& verdict);
void to_json(json& j, const GapEstimate& estimate);
void to_json(json& j, const InequalityCheck& check);
void to_json(json& j, const SublevelCheck& check);
void to_json(json& j, const MarkovCheck& check);
/// family,n,seed,alpha,ratio
void write_gap_csv(std::ostream& out, const GapRun& run);
}  // namespace criterion

namespace barker {
void to_json(json& j, const AutocorrelationProfile& profile);
/// wall_time_s is left out so that reports stay byte-identical across runs.
void to_json(json& j, const SearchResult& result);
void to_json(json& j, const TurynStorerReport& report);
/// One comma-separated +-1 row per sequence.
void write_sequences_csv(std::ostream& out, const SearchResult& result);
}  // namespace barker

namespace nt {
/// N,alpha,ratio (alpha "inf" for the sup norm)
void write_sweep_csv(std::ostream& out, std::span<const NormSweepRow> rows);
void to_json(json& j, const NormSweepRow& row);
void to_json(json& j, const PartialSumRatio& r);
}  // namespace nt

namespace riesz {
json plan_to_json(const RieszPlan& plan);
void to_json(json& j, const PlanMahler& m);
void to_json(json& j, const StabilityProfile& s);
void to_json(json& j, const GaussFresnelRow& row);
/// n,l4_ratio,l1,flat2,mahler
void write_demo_csv(std::ostream& out, std::span<const GaussFresnelRow> rows);
}  // namespace riesz

}  // namespace flatlab
