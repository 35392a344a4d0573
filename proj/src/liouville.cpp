#include "flatlab/liouville.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "flatlab/errors.hpp"
#include "flatlab/generators.hpp"
#include "flatlab/parallel.hpp"

namespace flatlab::nt {

LiouvilleTable liouville_sieve(std::size_t N) {
    if (N == 0) throw ParameterError("liouville_sieve: N must be >= 1");
    if (N > kLiouvilleCap) {
        throw CapabilityError("liouville_sieve: N=" + std::to_string(N) + " exceeds the cap " +
                              std::to_string(kLiouvilleCap));
    }
    // spf[i] = smallest prime factor of i; primes collected in increasing order.
    std::vector<std::uint32_t> spf(N + 1, 0);
    std::vector<std::uint32_t> primes;
    std::vector<std::int8_t> lambda(N + 1, 1);
    for (std::size_t i = 2; i <= N; ++i) {
        if (spf[i] == 0) {
            spf[i] = static_cast<std::uint32_t>(i);
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        lambda[i] = static_cast<std::int8_t>(-lambda[i / spf[i]]);
        for (std::uint32_t p : primes) {
            if (p > spf[i] || static_cast<std::uint64_t>(p) * i > N) break;
            spf[p * i] = p;
        }
    }
    lambda.erase(lambda.begin());
    return LiouvilleTable(std::move(lambda));
}

namespace {
constexpr std::array<char, 8> kMagic{'L', 'I', 'O', 'U', 'V', 'B', 'I', 'T'};
}

void write_liouville_bits(std::ostream& out, const LiouvilleTable& table) {
    out.write(kMagic.data(), kMagic.size());
    std::uint64_t n = table.bound();
    for (int i = 0; i < 8; ++i) out.put(static_cast<char>((n >> (8 * i)) & 0xff));
    std::vector<unsigned char> bytes((n + 7) / 8, 0);
    for (std::size_t k = 1; k <= n; ++k) {
        if (table(k) == -1) bytes[(k - 1) / 8] |= static_cast<unsigned char>(1u << ((k - 1) % 8));
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

LiouvilleTable read_liouville_bits(std::istream& in) {
    std::array<char, 8> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) throw ParameterError("liouville bits: bad magic");
    std::uint64_t n = 0;
    for (int i = 0; i < 8; ++i) {
        const int c = in.get();
        if (c == std::char_traits<char>::eof()) throw ParameterError("liouville bits: truncated header");
        n |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
    }
    if (n > kLiouvilleCap) throw CapabilityError("liouville bits: N exceeds the cap");
    std::vector<unsigned char> bytes((n + 7) / 8);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!in) throw ParameterError("liouville bits: truncated payload");
    std::vector<std::int8_t> values(n);
    for (std::size_t k = 1; k <= n; ++k) {
        values[k - 1] = (bytes[(k - 1) / 8] >> ((k - 1) % 8)) & 1 ? -1 : 1;
    }
    return LiouvilleTable(std::move(values));
}

std::vector<NormSweepRow> liouville_norm_sweep(std::span<const std::size_t> bounds,
                                               std::span<const double> alphas,
                                               const RefineOptions& options, unsigned threads) {
    for (std::size_t N : bounds) {
        if (N == 0) throw ParameterError("liouville_norm_sweep: every N must be >= 1");
    }
    for (double a : alphas) {
        if (!(a > 0.0)) throw ParameterError("liouville_norm_sweep: alphas must be > 0");
    }
    std::vector<NormSweepRow> rows(bounds.size() * alphas.size());
    parallel_for(bounds.size(), threads, [&](std::size_t i) {
        const std::size_t N = bounds[i];
        const CirclePolynomial p = gen_liouville(N);
        const double root = std::sqrt(static_cast<double>(N));
        for (std::size_t j = 0; j < alphas.size(); ++j) {
            NormSweepRow& row = rows[i * alphas.size() + j];
            row.N = N;
            row.alpha = alphas[j];
            if (std::isinf(alphas[j])) {
                const auto grid = evaluate_on_grid(p, {0, options.oversample, GridPhase::aligned});
                row.ratio = sup_norm(p, grid).value / root;
                row.grid_M = grid.M;
            } else {
                const auto r = lp_norm_refined(p, alphas[j], options);
                row.ratio = r.value / root;
                row.grid_M = r.M;
            }
        }
    });
    return rows;
}

PartialSumRatio partial_sum_ratio(const LiouvilleTable& table) {
    PartialSumRatio r;
    r.N = table.bound();
    long long sum = 0;
    r.max_ratio = -1.0;
    for (std::size_t m = 1; m <= table.bound(); ++m) {
        sum += table(m);
        const double ratio = std::abs(static_cast<double>(sum)) / std::sqrt(static_cast<double>(m));
        if (ratio > r.max_ratio) {
            r.max_ratio = ratio;
            r.argmax_M = m;
        }
    }
    r.final_sum = sum;
    return r;
}

PartialSumRatio partial_sum_ratio(std::size_t N) { return partial_sum_ratio(liouville_sieve(N)); }

}  // namespace flatlab::nt
