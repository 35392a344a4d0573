#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "flatlab/norms.hpp"

namespace flatlab::nt {

inline constexpr std::size_t kLiouvilleCap = 100'000'000;

/// lambda(n) = (-1)^Omega(n) for n = 1..N.
class LiouvilleTable {
public:
    LiouvilleTable() = default;
    explicit LiouvilleTable(std::vector<std::int8_t> values) : values_(std::move(values)) {}

    std::size_t bound() const noexcept { return values_.size(); }
    int operator()(std::size_t n) const noexcept { return values_[n - 1]; }
    std::span<const std::int8_t> values() const noexcept { return values_; }

    friend bool operator==(const LiouvilleTable&, const LiouvilleTable&) = default;

private:
    std::vector<std::int8_t> values_;  // values_[n-1] = lambda(n)
};

/// Linear sieve over smallest prime factors: lambda(n) = -lambda(n / spf(n)).
LiouvilleTable liouville_sieve(std::size_t N);

// Binary export: 8-byte magic "LIOUVBIT", N as little-endian uint64, then
// ceil(N/8) bytes. Bit (n-1) % 8 of byte (n-1) / 8 is set iff lambda(n) = -1.
void write_liouville_bits(std::ostream& out, const LiouvilleTable& table);
LiouvilleTable read_liouville_bits(std::istream& in);

struct NormSweepRow {
    std::size_t N = 0;
    double alpha = 0.0;  // +inf denotes the sup norm
    double ratio = 0.0;  // ||sum_{k<=N} lambda(k) z^k||_alpha / sqrt(N)
    std::size_t grid_M = 0;
};

std::vector<NormSweepRow> liouville_norm_sweep(std::span<const std::size_t> bounds,
                                               std::span<const double> alphas,
                                               const RefineOptions& options = {},
                                               unsigned threads = 1);

struct PartialSumRatio {
    std::size_t N = 0;
    double max_ratio = 0.0;  // max_{M<=N} |L(M)| / sqrt(M)
    std::size_t argmax_M = 0;
    long long final_sum = 0;  // L(N)
};

/// L(M) = sum_{n<=M} lambda(n), exact.
PartialSumRatio partial_sum_ratio(std::size_t N);
PartialSumRatio partial_sum_ratio(const LiouvilleTable& table);

}  // namespace flatlab::nt
