#include <cmath>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"

#include "flatlab/errors.hpp"
#include "flatlab/generators.hpp"
#include "flatlab/liouville.hpp"
#include "flatlab/rng.hpp"
#include "flatlab/serialization.hpp"

using namespace flatlab;
using namespace flatlab::nt;

TEST_CASE("liouville_sieve small values") {
    const auto t = liouville_sieve(1u << 20);
    CHECK(t(1) == 1);
    CHECK(t(2) == -1);
    CHECK(t(3) == -1);
    CHECK(t(4) == 1);
    CHECK(t(12) == -1);
    for (int k = 0; k <= 20; ++k) CHECK(t(std::size_t{1} << k) == (k % 2 == 0 ? 1 : -1));
    CHECK(liouville_sieve(1).bound() == 1);
    CHECK_THROWS_AS(liouville_sieve(0), ParameterError);
    CHECK_THROWS_AS(liouville_sieve(kLiouvilleCap + 1), CapabilityError);
}

TEST_CASE("sieve agrees with trial division up to 1e5") {
    const auto t = liouville_sieve(100000);
    int mismatches = 0;
    for (std::size_t n = 1; n <= 100000; ++n) mismatches += t(n) != oracle::liouville(n);
    CHECK(mismatches == 0);
}

TEST_CASE("property: complete multiplicativity and primes") {
    const std::size_t N = 1000000;
    const auto t = liouville_sieve(N);
    SplitMix64 rng(12);
    for (int i = 0; i < 10000; ++i) {
        const std::size_t m = 1 + rng.below(1000);
        const std::size_t n = 1 + rng.below(N / m);
        CHECK(t(m * n) == t(m) * t(n));
    }
    for (std::size_t p : {2UL, 3UL, 5UL, 7919UL, 999983UL}) CHECK(t(p) == -1);
}

TEST_CASE("binary export round trip") {
    const auto t = liouville_sieve(1001);
    std::stringstream buf;
    write_liouville_bits(buf, t);
    const std::string raw = buf.str();
    REQUIRE(raw.size() == 8 + 8 + 126);
    CHECK(raw.substr(0, 8) == "LIOUVBIT");
    CHECK(static_cast<unsigned char>(raw[8]) == (1001 & 0xff));
    CHECK(static_cast<unsigned char>(raw[9]) == (1001 >> 8));
    // lambda(1..8) = 1,-1,-1,1,-1,1,-1,-1 -> bits 1,2,4,6,7
    CHECK(static_cast<unsigned char>(raw[16]) == 0b11010110);
    std::stringstream in(raw);
    CHECK(read_liouville_bits(in) == t);

    std::stringstream bad("NOTMAGIC");
    CHECK_THROWS_AS(read_liouville_bits(bad), ParameterError);
    std::stringstream truncated(raw.substr(0, 20));
    CHECK_THROWS_AS(read_liouville_bits(truncated), ParameterError);
}

TEST_CASE("liouville_norm_sweep") {
    const double inf = std::numeric_limits<double>::infinity();
    const std::vector<std::size_t> one{1};
    const std::vector<double> alphas{1.0, 4.0, inf};
    for (const auto& row : liouville_norm_sweep(one, alphas)) CHECK(row.ratio == doctest::Approx(1.0).epsilon(1e-14));

    const std::vector<std::size_t> big{10000};
    const auto rows = liouville_norm_sweep(big, alphas);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].alpha == 1.0);
    CHECK(rows[0].ratio < 1.0);
    CHECK(std::abs(rows[0].ratio - 0.89020425) < 1e-6);
    CHECK(rows[1].ratio > 1.0);
    CHECK(std::abs(rows[1].ratio - 1.17998088) < 1e-6);
    CHECK(rows[2].ratio > rows[1].ratio);

    SUBCASE("matches the generator polynomial") {
        const auto p = gen_liouville(10000);
        CHECK(std::abs(lp_norm(p, 4.0) / 100.0 - rows[1].ratio) < 1e-9);
    }
    SUBCASE("CSV") {
        std::ostringstream out;
        write_sweep_csv(out, rows);
        const std::string s = out.str();
        CHECK(s.rfind("N,alpha,ratio\n10000,1,", 0) == 0);
        CHECK(s.find("\n10000,inf,") != std::string::npos);
    }
    SUBCASE("threads do not change values") {
        const std::vector<std::size_t> ns{100, 2000, 333};
        const auto a = liouville_norm_sweep(ns, alphas, {}, 1);
        const auto b = liouville_norm_sweep(ns, alphas, {}, 3);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].ratio == b[i].ratio);
    }
    const std::vector<std::size_t> zero{0};
    CHECK_THROWS_AS(liouville_norm_sweep(zero, alphas), ParameterError);
}

TEST_CASE("partial_sum_ratio") {
    const auto ten = partial_sum_ratio(10);
    CHECK(ten.final_sum == 0);
    const auto one = partial_sum_ratio(1);
    CHECK(one.max_ratio == 1.0);
    CHECK(one.argmax_M == 1);

    const auto big = partial_sum_ratio(1000000);
    CHECK(big.argmax_M == 96862);
    CHECK(std::abs(big.max_ratio - 1.3302204651592284) < 1e-12);
    CHECK(big.N == 1000000);

    // the running sum oracle
    const auto t = liouville_sieve(5000);
    long long run = 0;
    double best = 0.0;
    for (std::size_t m = 1; m <= 5000; ++m) {
        run += oracle::liouville(m);
        best = std::max(best, std::abs(static_cast<double>(run)) / std::sqrt(static_cast<double>(m)));
    }
    const auto r = partial_sum_ratio(t);
    CHECK(r.final_sum == run);
    CHECK(r.max_ratio == best);
}
