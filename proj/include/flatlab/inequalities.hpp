#pragma once

#include <cstddef>

#include "flatlab/norms.hpp"
#include "flatlab/polynomial.hpp"

namespace flatlab::criterion {

/// Conjugate exponent x' = x / (x - 1).
double conjugate(double x);

struct InequalityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // rhs - lhs
    std::size_t grid_M = 0;
};

/// (||F+G||_p^r + ||F-G||_p^r)^(1/r) <= 2^(1/s') (||F||_p^s + ||G||_p^s)^(1/s)
/// for 1 < p <= 2, 1 < s <= p <= r, r' <= s. Norms share one grid.
InequalityCheck clarkson_general(const CirclePolynomial& f, const CirclePolynomial& g, double p,
                                 double r, double s, std::size_t oversample = kDefaultOversample);

/// ||(F+G)/2||_p^p' + ||(F-G)/2||_p^p' <= (||F||_p^p / 2 + ||G||_p^p / 2)^(1/(p-1)).
InequalityCheck clarkson_classical(const CirclePolynomial& f, const CirclePolynomial& g, double p,
                                   std::size_t oversample = kDefaultOversample);

/// Modulus of uniform convexity of L^p:
/// 1 - (1 - (eps/2)^q)^(1/q) with q = p for p >= 2 and q = p' for 1 < p <= 2.
double convexity_delta(double eps, double p);

/// Chebyshev bound for the sublevel set {|F~| < 1 - zeta2}, using
/// int (|F~| - 1)^2 = 2 - 2 ||F~||_1.
struct SublevelCheck {
    double zeta2 = 0.0;
    double l1 = 0.0;
    double measure = 0.0;
    double chebyshev_bound = 0.0;
    double slack = 0.0;  // grid allowance 2/M
    std::size_t grid_M = 0;
    bool holds = false;
};

SublevelCheck sublevel_bound_check(const CirclePolynomial& f, double zeta2,
                                   std::size_t oversample = kDefaultOversample);

/// Markov-type lower bound: with a = 1 - ||F~||_1 > 0 the set
/// {|F~| < 1 - a/2} has measure at least (a/2) / (1 - a/2).
struct MarkovCheck {
    bool applicable = false;  // false when ||F~||_1 >= 1 - 1e-12
    double a = 0.0;
    double measure = 0.0;
    double lower_bound = 0.0;
    double slack = 0.0;
    std::size_t grid_M = 0;
    bool holds = false;
};

MarkovCheck markov_bound_check(const CirclePolynomial& f, std::size_t oversample = kDefaultOversample);

}  // namespace flatlab::criterion
