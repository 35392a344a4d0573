#include "flatlab/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "flatlab/errors.hpp"
#include "flatlab/generators.hpp"
#include "flatlab/parallel.hpp"

namespace flatlab::riesz {
namespace {

std::vector<std::uint64_t> support(const CirclePolynomial& p) {
    std::vector<std::uint64_t> s;
    const auto c = p.coeffs();
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] != Complex{0.0}) s.push_back(j);
    }
    return s;
}

constexpr std::uint64_t kSpreadLimit = std::uint64_t{1} << 62;

}  // namespace

bool dissociated_check(std::span<const CirclePolynomial> factors,
                       std::span<const std::uint64_t> spacings, std::size_t cap) {
    if (factors.size() != spacings.size()) {
        throw ParameterError("dissociated_check: factors and spacings differ in length");
    }
    std::vector<std::vector<std::uint64_t>> supports;
    double tuples = 1.0;
    for (const auto& f : factors) {
        if (f.is_zero()) throw ParameterError("dissociated_check: zero factor");
        supports.push_back(support(f));
        tuples *= static_cast<double>(supports.back().size());
    }
    if (tuples > static_cast<double>(cap)) {
        throw CapabilityError("dissociated_check: " + std::to_string(static_cast<long double>(tuples)) +
                              " exponent tuples exceed the cap " + std::to_string(cap));
    }
    std::vector<std::uint64_t> sums{0};
    for (std::size_t j = 0; j < factors.size(); ++j) {
        if (spacings[j] == 0) throw ParameterError("dissociated_check: spacings must be >= 1");
        std::vector<std::uint64_t> next;
        next.reserve(sums.size() * supports[j].size());
        for (std::uint64_t s : sums) {
            for (std::uint64_t e : supports[j]) next.push_back(s + spacings[j] * e);
        }
        sums = std::move(next);
    }
    std::sort(sums.begin(), sums.end());
    return std::adjacent_find(sums.begin(), sums.end()) == sums.end();
}

std::vector<std::uint64_t> dissociation_spacings(std::span<const std::size_t> degrees) {
    if (degrees.empty()) throw ParameterError("dissociation_spacings: empty degree list");
    std::vector<std::uint64_t> spacings;
    std::uint64_t spread = 0;
    for (std::size_t d : degrees) {
        if (d == 0) throw ParameterError("dissociation_spacings: degrees must be positive");
        const std::uint64_t n = spacings.empty() ? 1 : 2 * spread + 1;
        if (n > kSpreadLimit / d || spread > kSpreadLimit - n * d) {
            throw CapabilityError("dissociation_spacings: spacing overflow");
        }
        spacings.push_back(n);
        spread += n * d;
    }
    // Certify each prefix with full-support stand-ins, the worst case for collisions.
    std::vector<CirclePolynomial> dummies;
    double tuples = 1.0;
    for (std::size_t j = 0; j < degrees.size(); ++j) {
        dummies.emplace_back(std::vector<Complex>(degrees[j] + 1, Complex{1.0}));
        tuples *= static_cast<double>(degrees[j] + 1);
        if (tuples > static_cast<double>(kDissociationTupleCap)) break;
        if (!dissociated_check(dummies, std::span(spacings).first(j + 1))) {
            throw NumericError("dissociation_spacings: spacing rule failed certification");
        }
    }
    return spacings;
}

CirclePolynomial RieszPlan::partial_at(std::size_t depth) const {
    if (depth > factors_.size()) throw ParameterError("partial_at: depth beyond the plan");
    CirclePolynomial q{Complex{1.0}};
    for (std::size_t j = 0; j < depth; ++j) q = multiply(q, substitute_power(factors_[j], spacings_[j]));
    return q;
}

RieszPlan extend_product(const RieszPlan& plan, const CirclePolynomial& next) {
    if (std::abs(next.l2_norm() - 1.0) > 1e-12) {
        throw ParameterError("extend_product: factor must have unit L2 norm");
    }
    const std::uint64_t spacing = plan.depth() == 0 ? 1 : 2 * plan.spread_ + 1;
    const std::uint64_t spread = plan.spread_ + spacing * next.degree();
    if (spread > kPartialDegreeCap) {
        throw CapabilityError("extend_product: partial degree " + std::to_string(spread) +
                              " exceeds the cap " + std::to_string(kPartialDegreeCap));
    }
    RieszPlan out = plan;
    out.factors_.push_back(next);
    out.spacings_.push_back(spacing);
    out.partial_ = multiply(plan.partial_, substitute_power(next, spacing));
    out.spread_ = spread;
    const double mass = out.partial_.l2_norm_squared();
    if (std::abs(mass - 1.0) > 1e-10) {
        throw NumericError("extend_product: int |partial|^2 = " + std::to_string(mass) + ", expected 1");
    }
    return out;
}

std::vector<Complex> squared_modulus_coefficients(const CirclePolynomial& q) {
    auto gamma = autocorrelation(q);
    for (auto& g : gamma) g = std::conj(g);
    return gamma;
}

Complex squared_modulus_coefficient(const CirclePolynomial& q, long long k) {
    const auto c = q.coeffs();
    const std::size_t lag = static_cast<std::size_t>(k < 0 ? -k : k);
    if (lag >= c.size()) return Complex{0.0};
    Complex acc{0.0};
    for (std::size_t j = 0; j + lag < c.size(); ++j) {
        if (c[j] == Complex{0.0}) continue;
        acc += c[j + lag] * std::conj(c[j]);
    }
    return k < 0 ? std::conj(acc) : acc;
}

CoefficientStability coefficient_stability(const RieszPlan& plan, long long k) {
    if (plan.depth() == 0) throw ParameterError("coefficient_stability: plan depth must be >= 1");
    CoefficientStability out;
    out.k = k;
    CirclePolynomial q{Complex{1.0}};
    for (std::size_t d = 0; d < plan.depth(); ++d) {
        q = multiply(q, substitute_power(plan.factors()[d], plan.spacings()[d]));
        const Complex v = squared_modulus_coefficient(q, k);
        out.per_depth.push_back(v);
        if (!out.first_nonzero_depth && std::abs(v) > kStabilityTolerance) {
            out.first_nonzero_depth = d + 1;
            out.value = v;
        } else if (out.first_nonzero_depth && std::abs(v - out.value) > kStabilityTolerance) {
            out.stable = false;
        }
    }
    return out;
}

StabilityProfile stability_profile(const RieszPlan& plan) {
    StabilityProfile out;
    out.depth = plan.depth();
    std::vector<Complex> previous{Complex{1.0}};
    CirclePolynomial q{Complex{1.0}};
    for (std::size_t d = 0; d < plan.depth(); ++d) {
        q = multiply(q, substitute_power(plan.factors()[d], plan.spacings()[d]));
        auto current = squared_modulus_coefficients(q);
        out.max_mass_error = std::max(out.max_mass_error, std::abs(current[0] - 1.0));
        for (std::size_t l = 0; l < previous.size(); ++l) {
            out.max_discrepancy = std::max(out.max_discrepancy, std::abs(current[l] - previous[l]));
        }
        previous = std::move(current);
    }
    out.stable = out.max_discrepancy <= kStabilityTolerance && out.max_mass_error <= 1e-10;
    return out;
}

namespace {

// Expanded coefficients cancel badly next to coincident zeros of the factors:
// (1+z)(1+z^3)(1+z^9) has a triple zero at -1 and is ~1e-17 at the nearest
// grid points of a 2^22 grid, below FFT rounding. Points whose expanded value
// falls under this fraction of sum |c_j| are re-evaluated from the factors.
constexpr double kCancellationLevel = 1e-6;

MahlerQuadrature plan_quadrature(const RieszPlan& plan, std::size_t m, std::size_t oversample) {
    const CirclePolynomial& q = plan.partial();
    EvaluationGrid grid = evaluate_on_grid(q, {m, oversample, GridPhase::midpoint});
    double abs_sum = 0.0;
    for (const auto& c : q.coeffs()) abs_sum += std::abs(c);
    const double level = kCancellationLevel * abs_sum;

    std::vector<std::size_t> suspect;
    for (std::size_t t = 0; t < m; ++t) {
        if (std::abs(grid.values[t]) < level) suspect.push_back(t);
    }
    if (!suspect.empty()) {
        std::vector<Complex> factored(suspect.size(), Complex{1.0});
        for (std::size_t j = 0; j < plan.depth(); ++j) {
            const std::uint64_t n = plan.spacings()[j];
            // Odd N permutes the midpoint grid: N (t + 1/2) = (N t + (N-1)/2) + 1/2.
            if (n % 2 == 0) throw NumericError("plan quadrature: spacing must be odd");
            const auto fgrid = evaluate_on_grid(plan.factors()[j], {m, oversample, GridPhase::midpoint});
            const std::uint64_t mm = m;
            for (std::size_t i = 0; i < suspect.size(); ++i) {
                const std::uint64_t idx = ((n % mm) * suspect[i] + (n - 1) / 2) % mm;
                factored[i] *= fgrid.values[idx];
            }
        }
        for (std::size_t i = 0; i < suspect.size(); ++i) grid.values[suspect[i]] = factored[i];
    }
    return mahler_quadrature(q, grid);
}

}  // namespace

PlanMahler mahler_of_plan(const RieszPlan& plan, const RefineOptions& options) {
    if (plan.depth() == 0) throw ParameterError("mahler_of_plan: plan depth must be >= 1");
    PlanMahler out;
    double log_product = 0.0;
    for (const auto& f : plan.factors()) {
        const double m = f.degree() <= kMahlerRootsMaxDegree ? mahler_roots(f)
                                                             : mahler_quadrature_refined(f, options).value;
        log_product += 2.0 * std::log(m);
    }
    out.product_formula = std::exp(log_product);

    std::size_t m = default_grid_size(plan.partial().degree(), options.oversample);
    MahlerQuadrature direct = plan_quadrature(plan, m, options.oversample);
    direct.converged = false;
    while (options.refine && 2 * m <= options.max_M) {
        m *= 2;
        MahlerQuadrature next = plan_quadrature(plan, m, options.oversample);
        next.converged = std::abs(next.value - direct.value) <= options.rel_tol * std::abs(next.value) + 1e-15;
        direct = next;
        if (direct.converged) break;
    }
    out.direct = direct.value * direct.value;
    out.abs_difference = std::abs(out.product_formula - out.direct);
    out.grid_M = direct.M;
    out.clip_count = direct.clip_count;
    out.converged = direct.converged;
    return out;
}

std::vector<GaussFresnelRow> gauss_fresnel_mahler_demo(std::span<const std::size_t> n_list,
                                                       const RefineOptions& options, unsigned threads) {
    for (std::size_t n : n_list) {
        if (n == 0) throw ParameterError("gauss_fresnel_mahler_demo: every n must be >= 1");
    }
    std::vector<GaussFresnelRow> rows(n_list.size());
    parallel_for(n_list.size(), threads, [&](std::size_t i) {
        const std::size_t n = n_list[i];
        const CirclePolynomial p = gen_gauss_fresnel(n);
        const CirclePolynomial unit = p.normalized();
        GaussFresnelRow& row = rows[i];
        row.n = n;
        // |P|^4 has degree 2(n-1) < M/2, so the default grid integrates it exactly.
        const double l4 = lp_norm(p, 4.0);
        const double nn = static_cast<double>(n);
        row.l4_ratio = l4 * l4 * l4 * l4 / (nn * nn);
        const auto l1 = lp_norm_refined(unit, 1.0, options);
        row.l1 = l1.value;
        row.flat2 = 2.0 - 2.0 * row.l1;
        const auto mahler = mahler_quadrature_refined(unit, options);
        row.mahler = mahler.value;
        row.grid_M = std::max(l1.M, mahler.M);
        row.mahler_converged = mahler.converged;
    });
    return rows;
}

}  // namespace flatlab::riesz
