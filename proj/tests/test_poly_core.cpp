#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"

#include "flatlab/errors.hpp"
#include "flatlab/generators.hpp"
#include "flatlab/norms.hpp"
#include "flatlab/polynomial.hpp"
#include "flatlab/rng.hpp"
#include "flatlab/serialization.hpp"

using namespace flatlab;

namespace {

// Seed whose first three SplitMix64 draws all have a clear top bit.
constexpr std::uint64_t kAllPlusSeed = 14;

CirclePolynomial random_poly(SplitMix64& rng, std::size_t degree) {
    std::vector<Complex> c(degree + 1);
    for (auto& x : c) x = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    if (std::abs(c.back()) < 1e-3) c.back() = 1.0;
    return CirclePolynomial(c);
}

std::vector<Complex> to_vec(const CirclePolynomial& p) { return {p.coeffs().begin(), p.coeffs().end()}; }

Complex unit(double theta) { return std::polar(1.0, theta); }

}  // namespace

TEST_CASE("CirclePolynomial trims trailing zeros") {
    CirclePolynomial p{1.0, 2.0, 0.0, 0.0};
    CHECK(p.degree() == 1);
    CHECK(p.size() == 2);
    CirclePolynomial z{0.0, 0.0};
    CHECK(z.is_zero());
    CHECK(z.degree() == 0);
    CHECK(CirclePolynomial{}.is_zero());
    CHECK(CirclePolynomial::monomial(3).degree() == 3);
    CHECK(CirclePolynomial::monomial(3)[3] == Complex{1.0});
    CHECK(CirclePolynomial::monomial(3)[10] == Complex{0.0});
}

TEST_CASE("l2 norm is the coefficient sum of squares") {
    CirclePolynomial p{Complex{3.0, 4.0}, Complex{0.0, -12.0}};
    CHECK(p.l2_norm_squared() == doctest::Approx(169.0));
    CHECK(p.l2_norm() == doctest::Approx(13.0));
    CHECK(p.normalized().l2_norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(CirclePolynomial{}.normalized(), DegenerateInputError);
}

TEST_CASE("gen_littlewood") {
    SUBCASE("documented seed forces all plus") {
        const auto p = gen_littlewood(3, kAllPlusSeed);
        CHECK(to_vec(p) == std::vector<Complex>{1.0, 1.0, 1.0});
    }
    SUBCASE("n = 1 normalized has unit norm") {
        for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
            const auto p = gen_littlewood(1, seed, true);
            CHECK(std::abs(std::abs(p[0]) - 1.0) == 0.0);
            CHECK(p.l2_norm() == doctest::Approx(1.0));
        }
    }
    SUBCASE("deterministic, bit-exact") {
        const auto a = gen_littlewood(256, 42);
        const auto b = gen_littlewood(256, 42);
        CHECK(a == b);
        CHECK(a.size() == 256);
        for (auto c : a.coeffs()) CHECK((c == Complex{1.0} || c == Complex{-1.0}));
        CHECK_FALSE(a == gen_littlewood(256, 43));
    }
    SUBCASE("first signs of seed 42 match the reference generator") {
        const auto s = littlewood_signs(8, 42);
        CHECK(std::vector<int>(s.signs().begin(), s.signs().end()) ==
              std::vector<int>{-1, 1, 1, 1, 1, -1, 1, -1});
    }
    SUBCASE("normalized coefficients are +-1/sqrt(n)") {
        const auto p = gen_littlewood(16, 5, true);
        for (auto c : p.coeffs()) CHECK(std::abs(c) == doctest::Approx(0.25).epsilon(1e-15));
    }
    CHECK_THROWS_AS(gen_littlewood(0, 1), ParameterError);
}

TEST_CASE("gen_gauss_fresnel") {
    const double r = std::sqrt(0.5);
    const auto p4 = gen_gauss_fresnel(4);
    const std::vector<Complex> want{1.0, {r, r}, -1.0, {r, r}};
    for (std::size_t j = 0; j < 4; ++j) {
        CHECK(std::abs(p4[j] - want[j]) < 1e-15);
    }
    CHECK(to_vec(gen_gauss_fresnel(1)) == std::vector<Complex>{1.0});
    const auto p2 = gen_gauss_fresnel(2);
    CHECK(std::abs(p2[0] - Complex{1.0}) < 1e-15);
    CHECK(std::abs(p2[1] - Complex{0.0, 1.0}) < 1e-15);

    // Large j: reduction mod 2n keeps the phase exact.
    const std::size_t n = 4096;
    const auto big = gen_gauss_fresnel(n);
    for (std::size_t j : {0UL, 1UL, 77UL, 4095UL}) {
        const long double ph = std::numbers::pi_v<long double> * static_cast<long double>(j) * j / n;
        const Complex ref{static_cast<double>(std::cos(ph)), static_cast<double>(std::sin(ph))};
        CHECK(std::abs(big[j] - ref) < 1e-12);
    }
    CHECK(gen_gauss_fresnel(9, true).l2_norm() == doctest::Approx(1.0));
    CHECK_THROWS_AS(gen_gauss_fresnel(0), ParameterError);
}

TEST_CASE("gen_blaschke") {
    CHECK(to_vec(gen_blaschke(2, 0.5)) == std::vector<Complex>{-0.5, 0.75});
    CHECK(to_vec(gen_blaschke(3, 0.5)) == std::vector<Complex>{-0.5, 0.75, 0.375});
    CHECK_THROWS_AS(gen_blaschke(4, 1.5), ParameterError);
    CHECK_THROWS_AS(gen_blaschke(4, 0.0), ParameterError);
    CHECK_THROWS_AS(gen_blaschke(4, 1.0), ParameterError);
    CHECK_THROWS_AS(gen_blaschke(1, 0.5), ParameterError);

    SUBCASE("norm matches the geometric series") {
        for (double a : {0.1, 0.5, 0.9, 0.99}) {
            for (std::size_t n : {2UL, 3UL, 10UL, 100UL}) {
                const double want = a * a + (1 - a * a) * (1 - std::pow(a, 2.0 * (n - 1)));
                CHECK(gen_blaschke(n, a).l2_norm_squared() == doctest::Approx(want).epsilon(1e-13));
            }
        }
    }
    SUBCASE("tail bound against the Blaschke factor") {
        for (double a : {0.3, 0.5, 0.8}) {
            for (std::size_t n : {2UL, 5UL, 20UL}) {
                const auto q = gen_blaschke(n, a);
                const auto grid = evaluate_on_grid(q);
                const double bound = (1 - a * a) * std::pow(a, n - 2.0) / (1 - a);
                for (std::size_t t = 0; t < grid.M; ++t) {
                    const Complex z = unit(grid.angle(t));
                    const Complex b = (z - a) / (1.0 - a * z);
                    CHECK(std::abs(grid.values[t] - b) <= bound + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("gen_liouville") {
    CHECK(to_vec(gen_liouville(4)) == std::vector<Complex>{1.0, -1.0, -1.0, 1.0});
    CHECK(to_vec(gen_liouville(1)) == std::vector<Complex>{1.0});
    const auto p10 = gen_liouville(10);
    Complex sum{0.0};
    for (auto c : p10.coeffs()) sum += c;
    CHECK(sum == Complex{0.0});
    const std::vector<int> hand{1, -1, -1, 1, -1, 1, -1, -1, 1, 1};
    for (std::size_t k = 0; k < 10; ++k) CHECK(p10[k].real() == hand[k]);
    CHECK_THROWS_AS(gen_liouville(0), ParameterError);
}

TEST_CASE("gen_unimodular") {
    const auto p = gen_unimodular({0.0, std::numbers::pi / 2, std::numbers::pi});
    CHECK(std::abs(p[0] - Complex{1.0}) < 1e-15);
    CHECK(std::abs(p[1] - Complex{0.0, 1.0}) < 1e-15);
    CHECK(std::abs(p[2] - Complex{-1.0}) < 1e-15);
    CHECK_THROWS_AS(gen_unimodular({}), ParameterError);
}

TEST_CASE("GeneratorSpec validation and generate") {
    GeneratorSpec s;
    s.family = Family::littlewood_random;
    s.n = 8;
    CHECK_THROWS_AS(s.validate(), ParameterError);  // seed missing
    s.seed = 3;
    CHECK_NOTHROW(s.validate());
    CHECK(generate(s) == gen_littlewood(8, 3));
    s.a = 0.5;
    CHECK_THROWS_AS(s.validate(), ParameterError);  // a not allowed

    GeneratorSpec b{Family::blaschke, 4, std::nullopt, 0.5, {}, false};
    CHECK(generate(b) == gen_blaschke(4, 0.5));
    b.a = 1.5;
    CHECK_THROWS_AS(b.validate(), ParameterError);

    GeneratorSpec u{Family::unimodular_phases, 2, std::nullopt, std::nullopt, {0.0, 1.0}, true};
    CHECK_NOTHROW(u.validate());
    u.phases.push_back(2.0);
    CHECK_THROWS_AS(u.validate(), ParameterError);

    GeneratorSpec g{Family::gauss_fresnel, 0, std::nullopt, std::nullopt, {}, false};
    CHECK_THROWS_AS(g.validate(), ParameterError);

    CHECK(parse_family("littlewood") == Family::littlewood_random);
    CHECK(parse_family("gauss-fresnel") == Family::gauss_fresnel);
    CHECK(family_name(Family::unimodular_phases) == "unimodular-phases");
    CHECK_THROWS_AS(parse_family("gaussian"), ParameterError);
}

TEST_CASE("GeneratorSpec JSON round trip") {
    GeneratorSpec s{Family::littlewood_random, 12, 77, std::nullopt, {}, true};
    json j = s;
    CHECK(j["family"] == "littlewood-random");
    CHECK(j["seed"] == 77);
    CHECK(j.get<GeneratorSpec>() == s);

    GeneratorSpec b{Family::blaschke, 5, std::nullopt, 0.25, {}, false};
    json jb = b;
    CHECK(jb.get<GeneratorSpec>() == b);

    CHECK_THROWS_AS(json::parse(R"({"family":"nope","n":3})").get<GeneratorSpec>(), ParameterError);
}

TEST_CASE("polynomial export") {
    CirclePolynomial p{Complex{1.0, -0.5}, Complex{0.0}, Complex{2.0}};
    const json j = polynomial_to_json(p);
    CHECK(j.dump() == "[[1.0,-0.5],[0.0,0.0],[2.0,0.0]]");
    CHECK(polynomial_from_json(j) == p);
    std::ostringstream csv;
    write_polynomial_csv(csv, p);
    CHECK(csv.str() == "exponent,re,im\n0,1,-0.5\n1,0,0\n2,2,0\n");
}

TEST_CASE("multiply") {
    CirclePolynomial one_z{1.0, 1.0};
    CHECK(to_vec(multiply(one_z, one_z)) == std::vector<Complex>{1.0, 2.0, 1.0});
    SplitMix64 rng(11);
    const auto p = random_poly(rng, 50);
    CHECK(multiply(p, CirclePolynomial{1.0}) == p);
    const auto q = random_poly(rng, 50);
    const auto pq = multiply(p, q);
    CHECK(pq.degree() == 100);
    const std::vector<Complex> cp = to_vec(p), cq = to_vec(q), cpq = to_vec(pq);
    for (std::size_t t = 0; t < 7; ++t) {
        const auto a = oracle::direct_point(cp, t, 7);
        const auto b = oracle::direct_point(cq, t, 7);
        const auto c = oracle::direct_point(cpq, t, 7);
        CHECK(std::abs(c - a * b) <= 1e-12 * std::abs(a * b));
    }
    CHECK(multiply(p, CirclePolynomial{}).is_zero());
}

TEST_CASE("substitute_power") {
    CHECK(to_vec(substitute_power(CirclePolynomial{1.0, 1.0}, 3)) ==
          std::vector<Complex>{1.0, 0.0, 0.0, 1.0});
    SplitMix64 rng(3);
    const auto p = random_poly(rng, 9);
    CHECK(substitute_power(p, 1) == p);
    CHECK_THROWS_AS(substitute_power(p, 0), ParameterError);
    for (std::size_t N : {1UL, 2UL, 5UL, 17UL}) {
        const auto s = substitute_power(p, N);
        CHECK(s.degree() == N * p.degree());
        CHECK(s.l2_norm() == doctest::Approx(p.l2_norm()).epsilon(1e-15));
    }
}

TEST_CASE("autocorrelation") {
    const auto g = autocorrelation(CirclePolynomial{1.0, 1.0});
    CHECK(g == std::vector<Complex>{2.0, 1.0});
    CHECK(autocorrelation(CirclePolynomial{1.0}) == std::vector<Complex>{1.0});

    const std::vector<int> b13{1, -1, 1, -1, 1, 1, -1, -1, 1, 1, 1, 1, 1};
    const auto ref = oracle::sign_autocorrelation(b13);
    CHECK(ref == std::vector<long long>{13, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1});
    const auto got = autocorrelation(SignSequence(b13).to_polynomial());
    REQUIRE(got.size() == 13);
    for (std::size_t k = 0; k < 13; ++k) CHECK(got[k] == Complex(static_cast<double>(ref[k])));

    SUBCASE("gamma_0 is the squared norm and lags use conj on the right") {
        CirclePolynomial p{Complex{0.0, 1.0}, Complex{2.0, 0.0}};
        const auto a = autocorrelation(p);
        CHECK(a[0] == Complex{5.0});
        CHECK(a[1] == Complex{0.0, 2.0});  // i * conj(2)
    }
    SUBCASE("direct and fft paths agree") {
        SplitMix64 rng(21);
        for (std::size_t d : {0UL, 1UL, 37UL, 300UL, 2100UL}) {
            const auto p = random_poly(rng, d);
            const auto a = autocorrelation_direct(p);
            const auto b = autocorrelation_fft(p);
            REQUIRE(a.size() == b.size());
            double scale = std::abs(a[0]);
            for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-11 * scale);
        }
    }
}

TEST_CASE("SignSequence") {
    CHECK_THROWS_AS(SignSequence(std::vector<int>{}), ParameterError);
    CHECK_THROWS_AS((SignSequence{1, 0, -1}), ParameterError);
    CHECK_THROWS_AS((SignSequence{1, 2}), ParameterError);
    const SignSequence s{1, -1, 1, 1};
    CHECK(s.to_polynomial() == CirclePolynomial{1.0, -1.0, 1.0, 1.0});
    CHECK(s.to_polynomial(true).l2_norm() == doctest::Approx(1.0));
    CHECK(SignSequence{-1, 1} < SignSequence{1, -1});
}

TEST_CASE("property: Parseval against lp_norm(2) for every generator") {
    SplitMix64 rng(2718);
    std::vector<CirclePolynomial> polys{gen_gauss_fresnel(33), gen_blaschke(17, 0.7), gen_liouville(101),
                                        gen_unimodular({0.1, 0.2, 3.0, -1.0})};
    for (int i = 0; i < 20; ++i) polys.push_back(gen_littlewood(1 + rng.below(200), rng.next()));
    for (const auto& p : polys) {
        double sum = 0.0;
        for (auto c : p.coeffs()) sum += std::norm(c);
        const double l2 = lp_norm(p, 2.0);
        CHECK(std::abs(l2 * l2 - sum) <= 1e-12 * sum);
        const auto grid = evaluate_on_grid(p);
        const double g2 = grid_lp_norm(grid, 2.0);
        CHECK(std::abs(g2 * g2 - sum) <= 1e-12 * sum);
    }
}

TEST_CASE("property: autocorrelation energy equals L4^4") {
    SplitMix64 rng(4);
    for (int i = 0; i < 25; ++i) {
        const auto p = random_poly(rng, rng.below(513));
        const auto g = autocorrelation(p);
        double energy = std::norm(g[0]);
        for (std::size_t k = 1; k < g.size(); ++k) energy += 2.0 * std::norm(g[k]);
        const auto grid = evaluate_on_grid(p);
        const double l4 = grid_lp_norm(grid, 4.0);
        const double l4_4 = l4 * l4 * l4 * l4;
        CHECK(std::abs(energy - l4_4) <= 1e-10 * l4_4);
    }
}

TEST_CASE("property: substitution and multiplication commute with evaluation") {
    SplitMix64 rng(99);
    for (int i = 0; i < 50; ++i) {
        const auto a = random_poly(rng, rng.below(30));
        const auto b = random_poly(rng, rng.below(30));
        const std::size_t N = 1 + rng.below(12);
        const auto prod = multiply(a, substitute_power(b, N));
        const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const Complex z = unit(theta);
        const Complex want = oracle::horner(to_vec(a), z) * oracle::horner(to_vec(b), unit(N * theta));
        CHECK(std::abs(prod.evaluate(z) - want) <= 1e-12 * std::max(1.0, std::abs(want)));
    }
}
