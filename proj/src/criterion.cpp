#include "flatlab/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flatlab/errors.hpp"
#include "flatlab/parallel.hpp"
#include "flatlab/rng.hpp"
#include "flatlab/summation.hpp"

namespace flatlab::criterion {

std::string direction_name(Direction d) {
    switch (d) {
        case Direction::below: return "below-2";
        case Direction::above: return "above-2";
        case Direction::none: return "none";
    }
    return "none";
}

CriterionReport minimal_K(std::span<const double> magnitudes, std::string family_tag) {
    const std::size_t n = magnitudes.size();
    std::vector<double> mass(n);
    std::vector<double> weighted(n);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = magnitudes[i];
        if (!(a >= 0.0) || !std::isfinite(a)) {
            throw ParameterError("minimal_K: magnitudes must be finite and nonnegative");
        }
        any = any || a > 0.0;
        const double m = static_cast<double>(i + 1);
        mass[i] = a * a;
        weighted[i] = m * m * mass[i];
    }
    if (!any) throw DegenerateInputError("minimal_K: all magnitudes are zero");
    CriterionReport report;
    report.n = n;
    const double nn = static_cast<double>(n);
    report.K_min = nn * nn * pairwise_sum<double>(mass) / pairwise_sum<double>(weighted);
    report.family_tag = std::move(family_tag);
    return report;
}

CriterionReport minimal_K(const CirclePolynomial& p, std::string family_tag) {
    const auto m = p.magnitudes();
    return minimal_K(std::span<const double>(m), std::move(family_tag));
}

double unimodular_K(std::size_t n) {
    const double x = static_cast<double>(n);
    return 6.0 * x * x / ((x + 1.0) * (2.0 * x + 1.0));
}

Verdict flatness_verdict(const CirclePolynomial& p, double alpha, double K_threshold,
                         const RefineOptions& options) {
    if (!(alpha > 0.0)) throw ParameterError("flatness_verdict: alpha must be > 0");
    if (!(K_threshold > 0.0)) throw ParameterError("flatness_verdict: K threshold must be > 0");
    Verdict v;
    v.alpha = alpha;
    v.criterion = minimal_K(p);
    v.criterion.threshold = K_threshold;
    v.criterion.satisfied = v.criterion.K_min <= K_threshold;
    v.satisfied = v.criterion.satisfied;
    v.degenerate = p.nonzero_count() == 1;

    const auto refined = lp_norm_refined(p, alpha, options);
    v.observed_ratio = refined.value / p.l2_norm();
    v.grid_M = refined.M;

    if (alpha < 2.0) {
        v.predicted = Direction::below;
        v.prediction = "ratio <= 1 - A(K,alpha)";
    } else if (alpha > 2.0) {
        v.predicted = Direction::above;
        v.prediction = "ratio >= 1 + A(K,alpha)";
    }

    if (v.degenerate) {
        v.verdict = "degenerate single-term polynomial: |P| is constant, no flatness conclusion";
        v.predicted = Direction::none;
        v.prediction.clear();
    } else if (!v.satisfied) {
        v.verdict = "criterion not satisfied at this threshold";
        v.predicted = Direction::none;
        v.prediction.clear();
    } else if (alpha == 2.0) {
        v.verdict = "criterion satisfied: alpha = 2 ratio is identically 1";
    } else {
        v.verdict = "criterion satisfied: family cannot be L^alpha-flat";
    }
    return v;
}

GapRun estimate_gap(const SampleGenerator& generator, std::string family_tag,
                    std::uint64_t base_seed, double alpha, std::span<const std::size_t> n_list,
                    std::size_t samples, const GapOptions& options) {
    if (!(alpha > 0.0)) throw ParameterError("estimate_gap: alpha must be > 0");
    if (alpha == 2.0) throw ParameterError("estimate_gap: alpha = 2 gives ratio identically 1");
    if (n_list.empty() || samples == 0) throw ParameterError("estimate_gap: empty sweep");

    GapRun run;
    run.samples.resize(n_list.size() * samples);
    parallel_for(run.samples.size(), options.threads, [&](std::size_t idx) {
        const std::size_t n = n_list[idx / samples];
        const std::uint64_t seed = SplitMix64::derive(base_seed, n, idx % samples);
        const CirclePolynomial p = generator(n, seed);
        const auto grid = evaluate_on_grid(p, {0, options.oversample, GridPhase::aligned});
        run.samples[idx] = {family_tag, n, seed, alpha, grid_lp_norm(grid, alpha) / p.l2_norm()};
    });

    auto& est = run.estimate;
    est.alpha = alpha;
    est.sample_count = run.samples.size();
    est.n_min = *std::min_element(n_list.begin(), n_list.end());
    est.n_max = *std::max_element(n_list.begin(), n_list.end());
    if (alpha < 2.0) {
        est.side = Direction::below;
        est.extreme_ratio = -std::numeric_limits<double>::infinity();
        for (const auto& s : run.samples) est.extreme_ratio = std::max(est.extreme_ratio, s.ratio);
        est.empirical_A = 1.0 - est.extreme_ratio;
    } else {
        est.side = Direction::above;
        est.extreme_ratio = std::numeric_limits<double>::infinity();
        for (const auto& s : run.samples) est.extreme_ratio = std::min(est.extreme_ratio, s.ratio);
        est.empirical_A = est.extreme_ratio - 1.0;
    }
    return run;
}

GapRun estimate_gap(const GeneratorSpec& family_template, double alpha,
                    std::span<const std::size_t> n_list, std::size_t samples,
                    const GapOptions& options) {
    GeneratorSpec base = family_template;
    const std::uint64_t base_seed = base.seed.value_or(0);
    auto generator = [base](std::size_t n, std::uint64_t seed) {
        GeneratorSpec spec = base;
        spec.n = n;
        if (spec.family == Family::littlewood_random) spec.seed = seed;
        return generate(spec);
    };
    return estimate_gap(generator, std::string(family_name(base.family)), base_seed, alpha, n_list,
                        samples, options);
}

}  // namespace flatlab::criterion
