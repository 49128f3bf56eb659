#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "primelab/models.hpp"
#include "primelab/sieve.hpp"
#include "primelab/singular.hpp"

using namespace primelab;

namespace {

// Brute-force oracle: plain vector<bool> sieve, residues counted with a set,
// factor evaluated directly, product in long double.
long double brute_force_product(const TuplePattern& pattern, std::uint64_t cutoff) {
    std::vector<bool> composite(cutoff + 1, false);
    const auto k = static_cast<long double>(pattern.k());
    long double product = 1;
    for (std::uint64_t p = 2; p <= cutoff; ++p) {
        if (composite[p]) continue;
        for (std::uint64_t m = p * p; m <= cutoff; m += p) composite[m] = true;
        std::set<std::uint64_t> residues;
        for (auto o : pattern.offsets()) residues.insert(o % p);
        const long double lp = static_cast<long double>(p);
        product *= std::pow(lp, k - 1) * (lp - static_cast<long double>(residues.size())) / std::pow(lp - 1, k);
    }
    return product;
}

}  // namespace

TEST(ResidueCount, Examples) {
    EXPECT_EQ(residue_count({0, 2}, 2), 1u);
    EXPECT_EQ(residue_count({0, 2}, 3), 2u);
    EXPECT_EQ(residue_count({0, 4, 6}, 5), 3u);
    EXPECT_EQ(residue_count({0, 4, 6}, 3), 2u);
    EXPECT_EQ(residue_count({0, 4, 6}, 1'000'003), 3u);
    EXPECT_THROW(residue_count({0, 2}, 9), ValidationError);
    EXPECT_THROW(residue_count({0, 2}, 1), ValidationError);
}

TEST(ResidueCount, AdmissibilityEquivalence) {
    // every pattern with offsets <= 16 and k <= 5
    const std::uint64_t evens[] = {2, 4, 6, 8, 10, 12, 14, 16};
    for (unsigned mask = 0; mask < (1u << 8); ++mask) {
        std::vector<std::uint64_t> offs{0};
        for (unsigned b = 0; b < 8; ++b)
            if (mask & (1u << b)) offs.push_back(evens[b]);
        if (offs.size() > 5) continue;
        const TuplePattern p(offs);
        bool by_residues = true;
        for (std::uint64_t q : {2, 3, 5})
            if (q <= p.k() && residue_count(p, q) >= q) by_residues = false;
        EXPECT_EQ(is_admissible(p), by_residues) << p.to_string();
    }
}

TEST(SingularSeries, PrimesPatternIsExactlyOne) {
    const auto c = singular_series(TuplePattern{0});
    EXPECT_EQ(c.value, 1.0);
    EXPECT_EQ(c.tail_bound, 0.0);
}

TEST(SingularSeries, TwinConstant) {
    const auto c = singular_series(TuplePattern::twins(), 1e-6);
    EXPECT_LE(c.tail_bound, 1e-6);
    EXPECT_NEAR(c.value, 1.3203236, 1e-6);
    // true constant 1.320323631693739... lies in [value - tail_bound, value]
    EXPECT_LE(1.3203236316937391 - 1e-15, c.value);
    EXPECT_GE(1.3203236316937391 + 1e-15, c.value - c.tail_bound);
}

TEST(SingularSeries, MatchesBruteForceOracle) {
    for (const auto& p : {TuplePattern{0, 2}, TuplePattern{0, 4, 6}, TuplePattern{0, 2, 6, 8}, TuplePattern{0, 6}}) {
        const std::uint64_t cutoff = 200'000;
        const auto lib = detail::singular_product(p, cutoff);
        EXPECT_NEAR(lib.value, static_cast<double>(brute_force_product(p, cutoff)), 1e-12) << p.to_string();
    }
    // truncated product to 10^7
    const auto oracle = static_cast<double>(brute_force_product(TuplePattern::twins(), 10'000'000));
    EXPECT_NEAR(singular_series(TuplePattern::twins(), 1e-6).value, oracle, 1e-6);
    EXPECT_NEAR(oracle, 1.3203236, 1e-6);
}

TEST(SingularSeries, TruncationConvergence) {
    for (const auto& p : {TuplePattern{0, 2}, TuplePattern{0, 4, 6}}) {
        for (std::uint64_t cutoff : {1'000ULL, 10'000ULL, 100'000ULL}) {
            const auto a = detail::singular_product(p, cutoff);
            const auto b = detail::singular_product(p, 2 * cutoff);
            EXPECT_LT(std::fabs(a.value - b.value), a.tail_bound);
            EXPECT_LT(b.tail_bound, a.tail_bound);
        }
    }
}

TEST(SingularSeries, KnownConstants) {
    // Hardy-Littlewood constants: (0,6) = 2 C2, (0,4,6) = C(4,6) ~ 2.8582486.
    EXPECT_NEAR(singular_series({0, 6}, 1e-6).value, 2 * 1.3203236317, 2e-6);
    EXPECT_NEAR(singular_series({0, 4, 6}, 1e-6).value, 2.858248596, 1.1e-6);
}

TEST(SingularSeries, ConsistentWithTwinCounts) {
    const double x = 1e7;
    const double C = singular_series(TuplePattern::twins()).value;
    const auto count = sieve_tuple_count(TuplePattern::twins(), 10'000'000);
    const double ratio = (static_cast<double>(count) / x) / (C * li(x, 2, 1e-10).value / x);
    EXPECT_LT(std::fabs(ratio - 1.0), 0.05);
}

TEST(SingularSeries, TripleCrossCheck) {
    // C(4,6) Li_3(10^6) / 10^6 should be close to 1/691.563
    const double C = singular_series({0, 4, 6}).value;
    const double g = C * li(1e6, 3, 1e-10).value / 1e6;
    EXPECT_NEAR(g * 691.563, 1.0, 2e-4);
}

TEST(SingularSeries, Errors) {
    EXPECT_THROW(singular_series({0, 2, 4}), ValidationError);
    EXPECT_THROW(singular_series({0, 2}, 1e-14), PrecisionError);
    EXPECT_THROW(singular_series({0, 2}, -1), DomainError);
}
