#include "flatlab/norms.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "flatlab/errors.hpp"
#include "flatlab/summation.hpp"

namespace flatlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool close_enough(double previous, double current, double rel_tol) {
    const double scale = std::max(std::abs(previous), std::abs(current));
    return std::abs(current - previous) <= rel_tol * scale + 1e-15;
}

double mean_power(const EvaluationGrid& grid, double alpha) {
    std::vector<double> terms(grid.values.size());
    if (alpha == 1.0) {
        std::transform(grid.values.begin(), grid.values.end(), terms.begin(),
                       [](Complex v) { return std::abs(v); });
    } else if (alpha == 2.0) {
        std::transform(grid.values.begin(), grid.values.end(), terms.begin(),
                       [](Complex v) { return std::norm(v); });
    } else if (alpha == 4.0) {
        std::transform(grid.values.begin(), grid.values.end(), terms.begin(), [](Complex v) {
            const double s = std::norm(v);
            return s * s;
        });
    } else {
        std::transform(grid.values.begin(), grid.values.end(), terms.begin(),
                       [alpha](Complex v) { return std::pow(std::abs(v), alpha); });
    }
    return pairwise_mean<double>(terms);
}

void require_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw ParameterError("alpha must be a positive finite real");
    }
}

// Golden-section search for the extremum of sign * |P(e^{i theta})| on the arc
// of one grid step either side of the best sample.
ExtremeValue refine_extremum(const CirclePolynomial& p, const EvaluationGrid& grid, double sign) {
    if (grid.values.empty()) throw ParameterError("empty evaluation grid");
    std::size_t best = 0;
    double best_value = sign * std::abs(grid.values[0]);
    for (std::size_t t = 1; t < grid.values.size(); ++t) {
        const double v = sign * std::abs(grid.values[t]);
        if (v > best_value) {
            best_value = v;
            best = t;
        }
    }
    double best_angle = grid.angle(best);
    const double step = kTwoPi / static_cast<double>(grid.M);
    auto f = [&](double theta) { return sign * std::abs(p.evaluate_at_angle(theta)); };

    constexpr double inv_phi = 0.6180339887498949;
    double lo = best_angle - step;
    double hi = best_angle + step;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int iter = 0; iter < 80; ++iter) {
        if (f1 > best_value) { best_value = f1; best_angle = x1; }
        if (f2 > best_value) { best_value = f2; best_angle = x2; }
        if (f1 >= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if (f1 > best_value) { best_value = f1; best_angle = x1; }
    if (f2 > best_value) { best_value = f2; best_angle = x2; }
    return {sign * best_value, std::remainder(best_angle, kTwoPi), grid.oversample()};
}

}  // namespace

double EvaluationGrid::angle(std::size_t t) const noexcept {
    const double shift = phase == GridPhase::midpoint ? 0.5 : 0.0;
    return kTwoPi * (static_cast<double>(t) + shift) / static_cast<double>(M);
}

std::size_t default_grid_size(std::size_t degree, std::size_t oversample) {
    if (oversample < 4) throw ParameterError("grid oversample must be >= 4");
    const std::size_t minimum = next_power_of_two(2 * (degree + 1));
    const std::size_t wanted = next_power_of_two(std::max<std::size_t>(oversample * (degree + 1), 8));
    return std::max(minimum, std::min(wanted, kMaxGridSize));
}

EvaluationGrid evaluate_on_grid(const CirclePolynomial& p, const GridOptions& options) {
    const std::size_t d = p.degree();
    std::size_t m = options.M;
    if (m == 0) {
        m = default_grid_size(d, options.oversample);
    } else if (!is_power_of_two(m) || m < 2 * (d + 1)) {
        throw GridResolutionError("grid size M=" + std::to_string(m) +
                                  " must be a power of two >= 2(deg P + 1) = " +
                                  std::to_string(2 * (d + 1)));
    }
    EvaluationGrid grid;
    grid.M = m;
    grid.source_degree = d;
    grid.phase = options.phase;
    grid.values.assign(m, Complex{0.0});
    const auto c = p.coeffs();
    if (options.phase == GridPhase::midpoint) {
        for (std::size_t j = 0; j < c.size(); ++j) {
            // exp(i pi j / M), with j reduced mod 2M so the angle stays small.
            const double angle = std::numbers::pi * static_cast<double>(j % (2 * m)) /
                                 static_cast<double>(m);
            grid.values[j] = c[j] * std::polar(1.0, angle);
        }
    } else {
        std::copy(c.begin(), c.end(), grid.values.begin());
    }
    fft_inplace(grid.values, FftSign::positive);
    return grid;
}

double grid_lp_norm(const EvaluationGrid& grid, double alpha) {
    require_alpha(alpha);
    return std::pow(mean_power(grid, alpha), 1.0 / alpha);
}

double lp_norm(const CirclePolynomial& p, double alpha, const EvaluationGrid* grid) {
    require_alpha(alpha);
    if (alpha == 2.0) return p.l2_norm();
    if (grid != nullptr) {
        if (grid->source_degree != p.degree()) {
            throw ParameterError("lp_norm: grid was built from a polynomial of another degree");
        }
        return grid_lp_norm(*grid, alpha);
    }
    return grid_lp_norm(evaluate_on_grid(p), alpha);
}

double l4_norm_autocorrelation(const CirclePolynomial& p) {
    const auto gamma = autocorrelation(p);
    std::vector<double> terms(gamma.size());
    for (std::size_t k = 0; k < gamma.size(); ++k) {
        terms[k] = (k == 0 ? 1.0 : 2.0) * std::norm(gamma[k]);
    }
    return std::pow(pairwise_sum<double>(terms), 0.25);
}

RefinedValue lp_norm_refined(const CirclePolynomial& p, double alpha, const RefineOptions& options) {
    require_alpha(alpha);
    std::size_t m = default_grid_size(p.degree(), options.oversample);
    if (alpha == 2.0) return {p.l2_norm(), m, true};
    RefinedValue result;
    result.M = m;
    result.value = grid_lp_norm(evaluate_on_grid(p, {m, options.oversample, options.phase}), alpha);
    if (!options.refine) return result;
    while (2 * m <= options.max_M) {
        m *= 2;
        const double next = grid_lp_norm(evaluate_on_grid(p, {m, options.oversample, options.phase}), alpha);
        const bool done = close_enough(result.value, next, options.rel_tol);
        result = {next, m, done};
        if (done) break;
    }
    return result;
}

ExtremeValue sup_norm(const CirclePolynomial& p, const EvaluationGrid& grid) {
    return refine_extremum(p, grid, 1.0);
}

ExtremeValue inf_modulus(const CirclePolynomial& p, const EvaluationGrid& grid) {
    return refine_extremum(p, grid, -1.0);
}

MahlerQuadrature mahler_quadrature(const CirclePolynomial& p, const EvaluationGrid& grid) {
    if (p.is_zero()) throw DegenerateInputError("mahler_quadrature: zero polynomial");
    MahlerQuadrature result;
    result.M = grid.M;
    std::vector<double> logs(grid.values.size());
    bool any_nonzero = false;
    for (std::size_t t = 0; t < grid.values.size(); ++t) {
        const double modulus = std::abs(grid.values[t]);
        any_nonzero = any_nonzero || modulus > 0.0;
        const double l = modulus > 0.0 ? std::log(modulus) : -HUGE_VAL;
        if (l < kLogClip) {
            logs[t] = kLogClip;
            ++result.clip_count;
        } else {
            logs[t] = l;
        }
    }
    if (!any_nonzero) throw DegenerateInputError("mahler_quadrature: every grid value is zero");
    result.value = std::exp(pairwise_mean<double>(logs));
    result.low_confidence = static_cast<double>(result.clip_count) > 1e-3 * static_cast<double>(grid.M);
    return result;
}

MahlerQuadrature mahler_quadrature_refined(const CirclePolynomial& p, const RefineOptions& options) {
    std::size_t m = default_grid_size(p.degree(), options.oversample);
    auto run = [&](std::size_t size) {
        return mahler_quadrature(p, evaluate_on_grid(p, {size, options.oversample, GridPhase::midpoint}));
    };
    MahlerQuadrature result = run(m);
    result.converged = false;
    if (!options.refine) return result;
    while (2 * m <= options.max_M) {
        m *= 2;
        MahlerQuadrature next = run(m);
        next.converged = close_enough(result.value, next.value, options.rel_tol);
        result = next;
        if (result.converged) break;
    }
    return result;
}

std::vector<Complex> polynomial_roots(const CirclePolynomial& p) {
    if (p.is_zero()) throw DegenerateInputError("roots of the zero polynomial");
    const auto c = p.coeffs();
    std::size_t low = 0;
    while (c[low] == Complex{0.0}) ++low;
    const std::size_t m = c.size() - 1 - low;
    std::vector<Complex> roots(low, Complex{0.0});
    if (m == 0) return roots;
    const Complex lead = c.back();
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(m),
                                                        static_cast<Eigen::Index>(m));
    for (std::size_t i = 1; i < m; ++i) {
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    }
    for (std::size_t i = 0; i < m; ++i) {
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m - 1)) = -c[low + i] / lead;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw NumericError("companion eigenvalue solver failed");
    const auto& eig = solver.eigenvalues();
    for (Eigen::Index i = 0; i < eig.size(); ++i) roots.push_back(eig(i));
    return roots;
}

double mahler_roots(const CirclePolynomial& p, std::size_t max_degree) {
    if (p.degree() > max_degree) {
        throw CapabilityError("mahler_roots: degree " + std::to_string(p.degree()) +
                              " exceeds the root-solver limit " + std::to_string(max_degree) +
                              "; use mahler_quadrature");
    }
    const auto roots = polynomial_roots(p);
    std::vector<double> logs;
    logs.reserve(roots.size() + 1);
    logs.push_back(std::log(std::abs(p.coeffs().back())));
    for (const auto& r : roots) logs.push_back(std::max(0.0, std::log(std::abs(r))));
    return std::exp(pairwise_sum<double>(logs));
}

double FlatnessReport::measure_at(double eps) const {
    for (const auto& [e, m] : measure_deviation) {
        if (e == eps) return m;
    }
    throw ParameterError("eps " + std::to_string(eps) + " is not on the report's ladder");
}

FlatnessReport flatness_report(const CirclePolynomial& p, double alpha,
                               std::span<const double> eps_ladder, const RefineOptions& options) {
    require_alpha(alpha);
    for (double eps : eps_ladder) {
        if (!(eps >= 0.0)) throw ParameterError("eps ladder entries must be nonnegative");
    }
    const CirclePolynomial unit = p.normalized();
    const double l2 = unit.l2_norm();

    FlatnessReport report;
    report.alpha = alpha;
    report.degree = p.degree();

    auto distance = [alpha](const EvaluationGrid& grid) {
        std::vector<double> terms(grid.values.size());
        std::transform(grid.values.begin(), grid.values.end(), terms.begin(), [alpha](Complex v) {
            return std::pow(std::abs(std::abs(v) - 1.0), alpha);
        });
        return pairwise_mean<double>(terms);
    };

    std::size_t m = default_grid_size(unit.degree(), options.oversample);
    EvaluationGrid grid;
    double ratio = 0.0;
    double dist = 0.0;
    MahlerQuadrature mahler;
    bool converged = false;
    for (bool first = true;; first = false) {
        grid = evaluate_on_grid(unit, {m, options.oversample, GridPhase::aligned});
        const double next_ratio = alpha == 2.0 ? 1.0 : grid_lp_norm(grid, alpha) / l2;
        const double next_dist = distance(grid);
        const MahlerQuadrature next_mahler =
            mahler_quadrature(unit, evaluate_on_grid(unit, {m, options.oversample, GridPhase::midpoint}));
        if (!first) {
            converged = close_enough(ratio, next_ratio, options.rel_tol) &&
                        close_enough(dist, next_dist, options.rel_tol) &&
                        close_enough(mahler.value, next_mahler.value, options.rel_tol);
        }
        ratio = next_ratio;
        dist = next_dist;
        mahler = next_mahler;
        if (!options.refine || converged || 2 * m > options.max_M) break;
        m *= 2;
    }

    report.lp_ratio = ratio;
    report.flatness_distance = dist;
    report.mahler = mahler.value;
    report.mahler_clip_count = mahler.clip_count;
    report.mahler_low_confidence = mahler.low_confidence;
    report.grid_M = grid.M;
    report.oversample = grid.oversample();
    report.converged = converged;

    const double sup = sup_norm(unit, grid).value;
    const double inf = inf_modulus(unit, grid).value;
    report.sup_deviation = std::max({sup - 1.0, 1.0 - inf, 0.0});

    std::vector<double> deviations(grid.values.size());
    std::transform(grid.values.begin(), grid.values.end(), deviations.begin(),
                   [](Complex v) { return std::abs(std::abs(v) - 1.0); });
    for (double eps : eps_ladder) {
        const auto count = std::count_if(deviations.begin(), deviations.end(),
                                         [eps](double dev) { return dev > eps; });
        report.measure_deviation.emplace_back(eps, static_cast<double>(count) /
                                                       static_cast<double>(grid.M));
    }
    return report;
}

}  // namespace flatlab
