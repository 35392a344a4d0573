#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flatlab/generators.hpp"
#include "flatlab/norms.hpp"
#include "flatlab/polynomial.hpp"

namespace flatlab::criterion {

// Littlewood's coefficient criterion. For magnitudes a_1..a_n (1-based
// weights) the smallest K with
//     sum a_m^2 <= (K / n^2) sum m^2 a_m^2
// is K_min = n^2 sum a_m^2 / sum m^2 a_m^2, which lies in [1, n^2].
struct CriterionReport {
    std::size_t n = 0;
    double K_min = 0.0;
    std::optional<double> threshold;
    bool satisfied = false;  // K_min <= threshold, when a threshold is given
    std::string family_tag;

    bool satisfied_at(double K) const noexcept { return K_min <= K; }
};

/// magnitudes[i] carries weight (i+1)^2. All-zero input throws
/// DegenerateInputError; negative entries throw ParameterError.
CriterionReport minimal_K(std::span<const double> magnitudes, std::string family_tag = {});
/// Coefficient at exponent j gets weight (j+1)^2; |P| on the circle is
/// unchanged by the shift z -> z P.
CriterionReport minimal_K(const CirclePolynomial& p, std::string family_tag = {});

/// 6 n^2 / ((n+1)(2n+1)), the value for any unit-modulus coefficient sequence.
double unimodular_K(std::size_t n);

enum class Direction { below, above, none };

struct Verdict {
    CriterionReport criterion;
    double alpha = 0.0;
    bool satisfied = false;
    bool degenerate = false;  // a single nonzero term: |P| constant, no claim
    Direction predicted = Direction::none;
    std::string verdict;
    std::string prediction;  // "ratio <= 1 - A(K,alpha)" or ">= 1 + A(K,alpha)"
    double observed_ratio = 0.0;  // ||P||_alpha / ||P||_2
    std::size_t grid_M = 0;
};

Verdict flatness_verdict(const CirclePolynomial& p, double alpha, double K_threshold,
                         const RefineOptions& options = {});

struct GapEstimate {
    double alpha = 0.0;
    Direction side = Direction::below;  // below-2 or above-2
    double empirical_A = 0.0;  // alpha<2: 1 - max ratio; alpha>2: min ratio - 1
    double extreme_ratio = 0.0;
    std::size_t sample_count = 0;
    std::size_t n_min = 0;
    std::size_t n_max = 0;
};

struct GapSample {
    std::string family;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double alpha = 0.0;
    double ratio = 0.0;
};

struct GapRun {
    GapEstimate estimate;
    std::vector<GapSample> samples;  // (family, n, seed, alpha, ratio) rows
};

struct GapOptions {
    std::size_t oversample = kDefaultOversample;
    unsigned threads = 1;
};

/// Produces the polynomial for (n, derived seed).
using SampleGenerator = std::function<CirclePolynomial(std::size_t n, std::uint64_t seed)>;

/// Per-sample seeds are SplitMix64::derive(base_seed, n, index).
GapRun estimate_gap(const GeneratorSpec& family_template, double alpha,
                    std::span<const std::size_t> n_list, std::size_t samples,
                    const GapOptions& options = {});
GapRun estimate_gap(const SampleGenerator& generator, std::string family_tag,
                    std::uint64_t base_seed, double alpha, std::span<const std::size_t> n_list,
                    std::size_t samples, const GapOptions& options = {});

std::string direction_name(Direction d);

}  // namespace flatlab::criterion
