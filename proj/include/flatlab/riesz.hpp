#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "flatlab/norms.hpp"
#include "flatlab/polynomial.hpp"

namespace flatlab::riesz {

inline constexpr std::size_t kDissociationTupleCap = 10'000'000;
inline constexpr std::size_t kPartialDegreeCap = 1'000'000;

/// N_1 = 1, N_{j+1} = 2 sum_{i<=j} N_i d_i + 1. Each prefix is certified with
/// dissociated_check on full-support factors when the tuple count is within
/// the cap. Throws ParameterError for an empty list.
std::vector<std::uint64_t> dissociation_spacings(std::span<const std::size_t> degrees);

/// True iff every choice of one support exponent e_j per factor gives a
/// distinct sum sum_j N_j e_j. Throws CapabilityError above `cap` tuples.
bool dissociated_check(std::span<const CirclePolynomial> factors,
                       std::span<const std::uint64_t> spacings,
                       std::size_t cap = kDissociationTupleCap);

/// Finite generalized Riesz product prod_j P_j(z^{N_j}) of unit-norm factors.
class RieszPlan {
public:
    RieszPlan() = default;

    std::size_t depth() const noexcept { return factors_.size(); }
    std::span<const CirclePolynomial> factors() const noexcept { return factors_; }
    std::span<const std::uint64_t> spacings() const noexcept { return spacings_; }
    const CirclePolynomial& partial() const noexcept { return partial_; }
    /// sum_{i<=depth} N_i deg P_i, the degree of the partial product.
    std::uint64_t spread() const noexcept { return spread_; }

    /// Partial product after the first `depth` factors (depth 0 is 1).
    CirclePolynomial partial_at(std::size_t depth) const;

    friend RieszPlan extend_product(const RieszPlan& plan, const CirclePolynomial& next);

private:
    std::vector<CirclePolynomial> factors_;
    std::vector<std::uint64_t> spacings_;
    CirclePolynomial partial_{Complex{1.0}};
    std::uint64_t spread_ = 0;
};

/// Appends `next` (unit L2 norm within 1e-12, else ParameterError) at the
/// next dissociating spacing and re-verifies int |partial|^2 = 1 to 1e-10.
RieszPlan extend_product(const RieszPlan& plan, const CirclePolynomial& next);

/// Fourier coefficients of |Q|^2: hat(k) = sum_j q_{j+k} conj(q_j), k >= 0.
std::vector<Complex> squared_modulus_coefficients(const CirclePolynomial& q);
Complex squared_modulus_coefficient(const CirclePolynomial& q, long long k);

struct CoefficientStability {
    long long k = 0;
    std::vector<Complex> per_depth;  // index d-1 holds the value at depth d
    std::optional<std::size_t> first_nonzero_depth;
    Complex value{0.0};
    bool stable = true;
};

inline constexpr double kStabilityTolerance = 1e-12;

/// k-th Fourier coefficient of |partial|^2 at depths 1..depth; stable when it
/// is constant from its first nonzero depth on. Throws ParameterError at depth 0.
CoefficientStability coefficient_stability(const RieszPlan& plan, long long k);

struct StabilityProfile {
    std::size_t depth = 0;
    double max_discrepancy = 0.0;  // over all consecutive depths and lags
    double max_mass_error = 0.0;   // max |hat(0) - 1| over depths
    bool stable = true;
};

/// Every lag of depth d-1 compared against depth d, for all d.
StabilityProfile stability_profile(const RieszPlan& plan);

struct PlanMahler {
    double product_formula = 0.0;  // prod_j M(P_j)^2
    double direct = 0.0;           // exp(int 2 log|partial|)
    double abs_difference = 0.0;
    std::size_t grid_M = 0;
    std::size_t clip_count = 0;
    bool converged = false;
};

/// Factor Mahler measures come from roots (degree <= 512) or quadrature; the
/// direct value is midpoint-grid quadrature of 2 log|partial| on grids
/// doubled to options.rel_tol or options.max_M.
PlanMahler mahler_of_plan(const RieszPlan& plan, const RefineOptions& options = {});

struct GaussFresnelRow {
    std::size_t n = 0;
    double l4_ratio = 0.0;  // unnormalized ||P||_4^4 / n^2
    double l1 = 0.0;        // ||P~||_1
    double flat2 = 0.0;     // || |P~| - 1 ||_2^2 = 2 - 2 ||P~||_1
    double mahler = 0.0;    // M(P~)
    std::size_t grid_M = 0;
    bool mahler_converged = false;
};

std::vector<GaussFresnelRow> gauss_fresnel_mahler_demo(std::span<const std::size_t> n_list,
                                                       const RefineOptions& options = {},
                                                       unsigned threads = 1);

}  // namespace flatlab::riesz
