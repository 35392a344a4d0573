#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flatlab/polynomial.hpp"

namespace flatlab {

enum class Family { littlewood_random, unimodular_phases, gauss_fresnel, blaschke, liouville };

std::string_view family_name(Family family) noexcept;
/// Accepts the canonical names ("littlewood-random", ...) plus the short
/// aliases "littlewood" and "unimodular". Throws ParameterError otherwise.
Family parse_family(std::string_view name);

/// Everything needed to regenerate one polynomial. Parameters that do not
/// apply to the family stay empty; validate() enforces that.
struct GeneratorSpec {
    Family family = Family::littlewood_random;
    std::size_t n = 1;
    std::optional<std::uint64_t> seed;  // littlewood-random only
    std::optional<double> a;            // blaschke only, strictly inside (0,1)
    std::vector<double> phases;         // unimodular-phases only, length n
    bool normalized = false;

    void validate() const;

    friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

CirclePolynomial generate(const GeneratorSpec& spec);

/// Random signs e_0..e_{n-1} from SplitMix64(seed), one top bit per draw.
/// Exponents run 0..n-1.
CirclePolynomial gen_littlewood(std::size_t n, std::uint64_t seed, bool normalized = false);
SignSequence littlewood_signs(std::size_t n, std::uint64_t seed);

/// Coefficient exp(i * phase_m) at exponent m.
CirclePolynomial gen_unimodular(const std::vector<double>& phases, bool normalized = false);

/// Coefficient exp(i pi j^2 / n) at exponent j = 0..n-1.
CirclePolynomial gen_gauss_fresnel(std::size_t n, bool normalized = false);

/// Truncated Taylor series of the Blaschke factor (z - a)/(1 - a z):
/// -a + sum_{j=1}^{n-1} a^{j-1} (1 - a^2) z^j.
CirclePolynomial gen_blaschke(std::size_t n, double a);

/// Coefficient lambda(k) at exponent k-1, k = 1..N.
CirclePolynomial gen_liouville(std::size_t n, bool normalized = false);

}  // namespace flatlab
