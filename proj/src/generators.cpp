#include "flatlab/generators.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "flatlab/errors.hpp"
#include "flatlab/liouville.hpp"
#include "flatlab/rng.hpp"

namespace flatlab {

std::string_view family_name(Family family) noexcept {
    switch (family) {
        case Family::littlewood_random: return "littlewood-random";
        case Family::unimodular_phases: return "unimodular-phases";
        case Family::gauss_fresnel: return "gauss-fresnel";
        case Family::blaschke: return "blaschke";
        case Family::liouville: return "liouville";
    }
    return "unknown";
}

Family parse_family(std::string_view name) {
    if (name == "littlewood-random" || name == "littlewood") return Family::littlewood_random;
    if (name == "unimodular-phases" || name == "unimodular") return Family::unimodular_phases;
    if (name == "gauss-fresnel") return Family::gauss_fresnel;
    if (name == "blaschke") return Family::blaschke;
    if (name == "liouville") return Family::liouville;
    throw ParameterError("unknown family '" + std::string(name) +
                         "' (expected littlewood-random, unimodular-phases, gauss-fresnel, "
                         "blaschke or liouville)");
}

void GeneratorSpec::validate() const {
    const std::string fam(family_name(family));
    if (n == 0) throw ParameterError(fam + ": n must be >= 1");
    if (seed.has_value() != (family == Family::littlewood_random)) {
        throw ParameterError(fam + (seed ? ": seed applies only to littlewood-random"
                                         : ": littlewood-random requires a seed"));
    }
    if (a.has_value() != (family == Family::blaschke)) {
        throw ParameterError(fam + (a ? ": a applies only to blaschke" : ": blaschke requires a"));
    }
    if (!phases.empty() != (family == Family::unimodular_phases)) {
        throw ParameterError(fam + (phases.empty() ? ": unimodular-phases requires phases"
                                                   : ": phases apply only to unimodular-phases"));
    }
    if (family == Family::blaschke) {
        if (!(*a > 0.0 && *a < 1.0)) throw ParameterError("blaschke: a must lie in (0,1)");
        if (n < 2) throw ParameterError("blaschke: n must be >= 2");
    }
    if (family == Family::unimodular_phases && phases.size() != n) {
        throw ParameterError("unimodular-phases: phases must have length n");
    }
}

CirclePolynomial generate(const GeneratorSpec& spec) {
    spec.validate();
    switch (spec.family) {
        case Family::littlewood_random: return gen_littlewood(spec.n, *spec.seed, spec.normalized);
        case Family::unimodular_phases: return gen_unimodular(spec.phases, spec.normalized);
        case Family::gauss_fresnel: return gen_gauss_fresnel(spec.n, spec.normalized);
        case Family::blaschke: {
            auto q = gen_blaschke(spec.n, *spec.a);
            return spec.normalized ? q.normalized() : q;
        }
        case Family::liouville: return gen_liouville(spec.n, spec.normalized);
    }
    throw ParameterError("unknown family");
}

SignSequence littlewood_signs(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw ParameterError("littlewood: n must be >= 1");
    SplitMix64 rng(seed);
    std::vector<int> signs(n);
    for (auto& s : signs) s = rng.sign();
    return SignSequence(std::move(signs));
}

CirclePolynomial gen_littlewood(std::size_t n, std::uint64_t seed, bool normalized) {
    return littlewood_signs(n, seed).to_polynomial(normalized);
}

CirclePolynomial gen_unimodular(const std::vector<double>& phases, bool normalized) {
    if (phases.empty()) throw ParameterError("unimodular: n must be >= 1");
    const double scale = normalized ? 1.0 / std::sqrt(static_cast<double>(phases.size())) : 1.0;
    std::vector<Complex> c(phases.size());
    for (std::size_t m = 0; m < phases.size(); ++m) c[m] = std::polar(scale, phases[m]);
    return CirclePolynomial(std::move(c));
}

CirclePolynomial gen_gauss_fresnel(std::size_t n, bool normalized) {
    if (n == 0) throw ParameterError("gauss-fresnel: n must be >= 1");
    const double scale = normalized ? 1.0 / std::sqrt(static_cast<double>(n)) : 1.0;
    const std::uint64_t period = 2 * static_cast<std::uint64_t>(n);
    std::vector<Complex> c(n);
    for (std::uint64_t j = 0; j < n; ++j) {
        // exp(i pi j^2 / n) depends only on j^2 mod 2n; reducing first keeps
        // the argument in [0, 2 pi).
        const std::uint64_t r = (j % period) * (j % period) % period;
        const double phase = std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
        c[j] = std::polar(scale, phase);
    }
    return CirclePolynomial(std::move(c));
}

CirclePolynomial gen_blaschke(std::size_t n, double a) {
    if (!(a > 0.0 && a < 1.0)) throw ParameterError("blaschke: a must lie in (0,1)");
    if (n < 2) throw ParameterError("blaschke: n must be >= 2");
    std::vector<Complex> c(n);
    c[0] = -a;
    double power = 1.0;  // a^{j-1}
    for (std::size_t j = 1; j < n; ++j) {
        c[j] = power * (1.0 - a * a);
        power *= a;
    }
    return CirclePolynomial(std::move(c));
}

CirclePolynomial gen_liouville(std::size_t n, bool normalized) {
    if (n == 0) throw ParameterError("liouville: N must be >= 1");
    const auto table = nt::liouville_sieve(n);
    const double scale = normalized ? 1.0 / std::sqrt(static_cast<double>(n)) : 1.0;
    std::vector<Complex> c(n);
    for (std::size_t k = 1; k <= n; ++k) c[k - 1] = scale * table(k);
    return CirclePolynomial(std::move(c));
}

}  // namespace flatlab
