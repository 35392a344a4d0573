#include "flatlab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flatlab/errors.hpp"
#include "flatlab/summation.hpp"

namespace flatlab::criterion {
namespace {

struct SharedGrid {
    EvaluationGrid f;
    EvaluationGrid g;
};

SharedGrid shared_grid(const CirclePolynomial& f, const CirclePolynomial& g, std::size_t oversample) {
    const std::size_t d = std::max(f.degree(), g.degree());
    const std::size_t m = default_grid_size(d, oversample);
    return {evaluate_on_grid(f, {m, oversample, GridPhase::aligned}),
            evaluate_on_grid(g, {m, oversample, GridPhase::aligned})};
}

EvaluationGrid combine(const SharedGrid& s, double sign, double scale) {
    EvaluationGrid out = s.f;
    for (std::size_t t = 0; t < out.values.size(); ++t) {
        out.values[t] = scale * (s.f.values[t] + sign * s.g.values[t]);
    }
    return out;
}

// Set measures are grid fractions with resolution 1/M, so small polynomials
// still get a fine grid.
constexpr std::size_t kMeasureGridFloor = 4096;

EvaluationGrid measure_grid(const CirclePolynomial& unit, std::size_t oversample) {
    const std::size_t m = std::max(default_grid_size(unit.degree(), oversample), kMeasureGridFloor);
    return evaluate_on_grid(unit, {m, oversample, GridPhase::aligned});
}

double fraction_below(const EvaluationGrid& grid, double level) {
    const auto count = std::count_if(grid.values.begin(), grid.values.end(),
                                     [level](Complex v) { return std::abs(v) < level; });
    return static_cast<double>(count) / static_cast<double>(grid.M);
}

}  // namespace

double conjugate(double x) {
    if (!(x > 1.0)) throw ParameterError("conjugate exponent needs x > 1");
    return x / (x - 1.0);
}

InequalityCheck clarkson_general(const CirclePolynomial& f, const CirclePolynomial& g, double p,
                                 double r, double s, std::size_t oversample) {
    if (!(p > 1.0 && p <= 2.0)) throw ParameterError("clarkson: requires 1 < p <= 2");
    if (!(s > 1.0)) throw ParameterError("clarkson: requires 1 < s");
    if (!(s <= p)) throw ParameterError("clarkson: requires s <= p");
    if (!(p <= r)) throw ParameterError("clarkson: requires p <= r");
    if (!(conjugate(r) <= s)) throw ParameterError("clarkson: requires r' <= s");

    const SharedGrid grids = shared_grid(f, g, oversample);
    const double sum = grid_lp_norm(combine(grids, 1.0, 1.0), p);
    const double diff = grid_lp_norm(combine(grids, -1.0, 1.0), p);
    const double nf = grid_lp_norm(grids.f, p);
    const double ng = grid_lp_norm(grids.g, p);

    InequalityCheck check;
    check.lhs = std::pow(std::pow(sum, r) + std::pow(diff, r), 1.0 / r);
    check.rhs = std::pow(2.0, 1.0 / conjugate(s)) * std::pow(std::pow(nf, s) + std::pow(ng, s), 1.0 / s);
    check.slack = check.rhs - check.lhs;
    check.grid_M = grids.f.M;
    return check;
}

InequalityCheck clarkson_classical(const CirclePolynomial& f, const CirclePolynomial& g, double p,
                                   std::size_t oversample) {
    if (!(p > 1.0 && p <= 2.0)) throw ParameterError("clarkson: requires 1 < p <= 2");
    const double q = conjugate(p);
    const SharedGrid grids = shared_grid(f, g, oversample);
    const double half_sum = grid_lp_norm(combine(grids, 1.0, 0.5), p);
    const double half_diff = grid_lp_norm(combine(grids, -1.0, 0.5), p);
    const double nf = grid_lp_norm(grids.f, p);
    const double ng = grid_lp_norm(grids.g, p);

    InequalityCheck check;
    check.lhs = std::pow(half_sum, q) + std::pow(half_diff, q);
    check.rhs = std::pow(0.5 * std::pow(nf, p) + 0.5 * std::pow(ng, p), 1.0 / (p - 1.0));
    check.slack = check.rhs - check.lhs;
    check.grid_M = grids.f.M;
    return check;
}

double convexity_delta(double eps, double p) {
    if (!(eps > 0.0 && eps <= 2.0)) throw ParameterError("convexity_delta: eps must lie in (0,2]");
    if (!(p > 1.0)) throw ParameterError("convexity_delta: p must be > 1");
    const double q = p >= 2.0 ? p : conjugate(p);
    return 1.0 - std::pow(1.0 - std::pow(eps / 2.0, q), 1.0 / q);
}

SublevelCheck sublevel_bound_check(const CirclePolynomial& f, double zeta2, std::size_t oversample) {
    if (!(zeta2 > 0.0 && zeta2 < 1.0)) throw ParameterError("sublevel check: zeta2 must lie in (0,1)");
    const CirclePolynomial unit = f.normalized();
    const auto grid = measure_grid(unit, oversample);
    SublevelCheck check;
    check.zeta2 = zeta2;
    check.grid_M = grid.M;
    check.l1 = grid_lp_norm(grid, 1.0);
    check.measure = fraction_below(grid, 1.0 - zeta2);
    check.chebyshev_bound = std::max(0.0, 2.0 - 2.0 * check.l1) / (zeta2 * zeta2);
    check.slack = 2.0 / static_cast<double>(grid.M);
    check.holds = check.measure <= check.chebyshev_bound + check.slack;
    return check;
}

MarkovCheck markov_bound_check(const CirclePolynomial& f, std::size_t oversample) {
    const CirclePolynomial unit = f.normalized();
    const auto grid = measure_grid(unit, oversample);
    MarkovCheck check;
    check.grid_M = grid.M;
    check.slack = 2.0 / static_cast<double>(grid.M);
    const double l1 = grid_lp_norm(grid, 1.0);
    check.a = 1.0 - l1;
    if (l1 >= 1.0 - 1e-12) {
        check.applicable = false;
        return check;
    }
    check.applicable = true;
    const double half = check.a / 2.0;
    check.measure = fraction_below(grid, 1.0 - half);
    check.lower_bound = half / (1.0 - half);
    check.holds = check.measure > check.lower_bound - check.slack;
    return check;
}

}  // namespace flatlab::criterion
