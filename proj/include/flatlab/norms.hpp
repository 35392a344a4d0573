#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "flatlab/polynomial.hpp"

namespace flatlab {

/// Where the M sample points sit on the circle. Aligned points are the M-th
/// roots of unity; midpoint points are rotated by half a step, pi/M. The
/// midpoint layout never lands on the zeros at +-1 that Littlewood and
/// Riesz-type products often have, which matters for log|P|.
enum class GridPhase { aligned, midpoint };

inline constexpr std::size_t kDefaultOversample = 8;
inline constexpr std::size_t kMaxGridSize = std::size_t{1} << 22;

/// Values of P at M equispaced points of the unit circle.
struct EvaluationGrid {
    std::size_t M = 0;
    std::size_t source_degree = 0;
    GridPhase phase = GridPhase::aligned;
    std::vector<Complex> values;

    double oversample() const noexcept {
        return static_cast<double>(M) / static_cast<double>(source_degree + 1);
    }
    double angle(std::size_t t) const noexcept;
};

struct GridOptions {
    std::size_t M = 0;  // 0 selects the default size
    std::size_t oversample = kDefaultOversample;
    GridPhase phase = GridPhase::aligned;
};

/// Smallest power of two >= max(oversample (d+1), 2(d+1), 8), capped at
/// kMaxGridSize but never below 2(d+1).
std::size_t default_grid_size(std::size_t degree, std::size_t oversample = kDefaultOversample);

/// Zero-padded FFT of the coefficients. An explicit M must be a power of two
/// with M >= 2(deg P + 1), otherwise GridResolutionError.
EvaluationGrid evaluate_on_grid(const CirclePolynomial& p, const GridOptions& options = {});

/// (mean |v|^alpha)^(1/alpha) over the grid values; alpha > 0.
double grid_lp_norm(const EvaluationGrid& grid, double alpha);

/// ||P||_alpha. alpha == 2 uses Parseval and ignores the grid. Otherwise the
/// supplied grid is used, or a default one is built.
double lp_norm(const CirclePolynomial& p, double alpha, const EvaluationGrid* grid = nullptr);

/// ||P||_4 from the autocorrelation: ||P||_4^4 = sum over all lags of |gamma_k|^2.
double l4_norm_autocorrelation(const CirclePolynomial& p);

struct RefineOptions {
    std::size_t oversample = kDefaultOversample;
    double rel_tol = 1e-9;
    std::size_t max_M = kMaxGridSize;
    bool refine = true;  // false: single grid at the starting size
    GridPhase phase = GridPhase::aligned;
};

struct RefinedValue {
    double value = 0.0;
    std::size_t M = 0;
    bool converged = false;
};

/// lp_norm with the grid doubled until successive values agree to rel_tol.
RefinedValue lp_norm_refined(const CirclePolynomial& p, double alpha, const RefineOptions& options = {});

struct ExtremeValue {
    double value = 0.0;
    double angle = 0.0;  // where it is attained
    double oversample = 0.0;
};

/// max |P| over the grid, then golden-section refinement on the arc around the
/// best sample. The value is attained by P, hence a lower bound of the true sup.
ExtremeValue sup_norm(const CirclePolynomial& p, const EvaluationGrid& grid);
/// Same for min |P| (an upper bound of the true inf).
ExtremeValue inf_modulus(const CirclePolynomial& p, const EvaluationGrid& grid);

struct MahlerQuadrature {
    double value = 0.0;
    std::size_t clip_count = 0;
    bool low_confidence = false;  // clip_count > 0.1% of M
    std::size_t M = 0;
    bool converged = true;
};

inline constexpr double kLogClip = -50.0;
inline constexpr std::size_t kMahlerRootsMaxDegree = 512;

/// exp(mean log|P|) over the grid, log values clipped below at -50.
/// All-zero grid values throw DegenerateInputError.
MahlerQuadrature mahler_quadrature(const CirclePolynomial& p, const EvaluationGrid& grid);
/// Mahler quadrature on midpoint grids doubled until rel_tol.
MahlerQuadrature mahler_quadrature_refined(const CirclePolynomial& p, const RefineOptions& options = {});

/// |lead| * prod max(1, |root|) with roots from the eigenvalues of the
/// companion matrix. Degrees above max_degree throw CapabilityError.
double mahler_roots(const CirclePolynomial& p, std::size_t max_degree = kMahlerRootsMaxDegree);
std::vector<Complex> polynomial_roots(const CirclePolynomial& p);

/// All flatness metrics of P~ = P / ||P||_2 at one exponent alpha.
struct FlatnessReport {
    double alpha = 0.0;
    std::size_t degree = 0;
    double lp_ratio = 0.0;           // ||P||_alpha / ||P||_2
    double flatness_distance = 0.0;  // int ||P~| - 1|^alpha dz
    double sup_deviation = 0.0;      // max ||P~| - 1|, refined lower bound
    std::vector<std::pair<double, double>> measure_deviation;  // (eps, |{||P~|-1| > eps}|)
    double mahler = 0.0;             // M(P~)
    std::size_t mahler_clip_count = 0;
    bool mahler_low_confidence = false;
    std::size_t grid_M = 0;
    double oversample = 0.0;
    bool converged = false;

    double measure_at(double eps) const;
};

inline const std::vector<double> kDefaultEpsLadder{0.5, 0.25, 0.1, 0.05, 0.01};

/// Throws DegenerateInputError for the zero polynomial.
FlatnessReport flatness_report(const CirclePolynomial& p, double alpha,
                               std::span<const double> eps_ladder = kDefaultEpsLadder,
                               const RefineOptions& options = {});

}  // namespace flatlab
