#pragma once

// Test-only reference computations. Each one takes the slow, obvious route
// and shares no code with the library path it is used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

inline Complex horner(const std::vector<Complex>& c, Complex z) {
    Complex acc{0.0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

/// sum_j a_j z^j at z = exp(2 pi i t / M), computed term by term in long double.
inline Complex direct_point(const std::vector<Complex>& c, std::size_t t, std::size_t m) {
    std::complex<long double> acc{0.0L};
    for (std::size_t j = 0; j < c.size(); ++j) {
        const long double angle = 2.0L * std::numbers::pi_v<long double> *
                                  static_cast<long double>((j * t) % m) / static_cast<long double>(m);
        acc += std::complex<long double>(c[j].real(), c[j].imag()) *
               std::complex<long double>(std::cos(angle), std::sin(angle));
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

/// c_k for k = 0..n-1 by the defining double loop.
inline std::vector<long long> sign_autocorrelation(const std::vector<int>& b) {
    std::vector<long long> c(b.size(), 0);
    for (std::size_t k = 0; k < b.size(); ++k)
        for (std::size_t j = 0; j + k < b.size(); ++j) c[k] += b[j] * b[j + k];
    return c;
}

/// Every Barker sequence of length n by enumeration of all 2^n sign vectors,
/// sorted lexicographically with -1 < +1.
inline std::vector<std::vector<int>> plain_barker(std::size_t n) {
    std::vector<std::vector<int>> found;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<int> b(n);
        for (std::size_t j = 0; j < n; ++j) b[j] = (mask >> (n - 1 - j)) & 1 ? 1 : -1;
        const auto c = sign_autocorrelation(b);
        bool ok = true;
        for (std::size_t k = 1; k < n && ok; ++k) ok = std::llabs(c[k]) <= 1;
        if (ok) found.push_back(b);
    }
    std::sort(found.begin(), found.end());
    return found;
}

/// Omega(n) by trial division.
inline int big_omega(std::uint64_t n) {
    int count = 0;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            n /= p;
            ++count;
        }
    }
    if (n > 1) ++count;
    return count;
}

inline int liouville(std::uint64_t n) { return big_omega(n) % 2 == 0 ? 1 : -1; }

/// Multiplicity of each exponent in the formal expansion of prod_j P_j(z^{N_j}),
/// given the support exponents of each P_j.
inline std::map<std::uint64_t, int> expansion_multiplicity(
    const std::vector<std::vector<std::uint64_t>>& supports, const std::vector<std::uint64_t>& spacings) {
    std::map<std::uint64_t, int> counts{{0, 1}};
    for (std::size_t j = 0; j < supports.size(); ++j) {
        std::map<std::uint64_t, int> next;
        for (const auto& [e, c] : counts)
            for (std::uint64_t s : supports[j]) next[e + spacings[j] * s] += c;
        counts = std::move(next);
    }
    return counts;
}

inline bool all_distinct(const std::map<std::uint64_t, int>& counts) {
    return std::all_of(counts.begin(), counts.end(), [](const auto& kv) { return kv.second == 1; });
}

/// Crude midpoint-rule quadrature of f(theta) over [0, 2 pi) normalized, with
/// `steps` points; used where only a coarse independent estimate is needed.
template <typename F>
double circle_mean(F f, std::size_t steps) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < steps; ++i) {
        acc += f(2.0 * std::numbers::pi * (static_cast<double>(i) + 0.5) / static_cast<double>(steps));
    }
    return static_cast<double>(acc / static_cast<long double>(steps));
}

}  // namespace oracle
