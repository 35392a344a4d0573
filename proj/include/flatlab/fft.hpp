#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace flatlab {

using Complex = std::complex<double>;

constexpr bool is_power_of_two(std::size_t m) noexcept { return m != 0 && (m & (m - 1)) == 0; }

constexpr std::size_t next_power_of_two(std::size_t m) noexcept {
    std::size_t p = 1;
    while (p < m) p <<= 1;
    return p;
}

// Sign of the exponent in sum_j x_j exp(sign * 2 pi i j t / M).
enum class FftSign { negative = -1, positive = 1 };

/// Unnormalized in-place DFT of length data.size(), which must be a power of
/// two. FftSign::positive evaluates sum_j x_j w^{jt} with w = exp(2 pi i / M),
/// i.e. a polynomial at the M-th roots of unity. Plans are cached per
/// (length, sign) and built with estimate-mode planning, so repeated calls are
/// bit-identical.
void fft_inplace(std::vector<Complex>& data, FftSign sign);

}  // namespace flatlab
