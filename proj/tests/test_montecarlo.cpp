#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "primelab/montecarlo.hpp"
#include "primelab/random.hpp"

using namespace primelab;

TEST(Rng, SplitMixReferenceOutput) {
    // first outputs of SplitMix64 seeded with 0 (reference C implementation)
    SplitMix64 sm(0);
    EXPECT_EQ(sm(), 0xe220a8397b1dcdafULL);
    EXPECT_EQ(sm(), 0x6e789e6aa1b965f4ULL);
}

TEST(Rng, StreamsDiffer) {
    auto a = Xoshiro256StarStar::for_stream(1, 0);
    auto b = Xoshiro256StarStar::for_stream(1, 1);
    auto c = Xoshiro256StarStar::for_stream(1, 0);
    const auto a0 = a();
    EXPECT_NE(a0, b());
    EXPECT_EQ(a0, c());
}

TEST(Rng, BelowIsInRangeAndRoughlyUniform) {
    auto r = Xoshiro256StarStar::for_stream(42, 0);
    std::vector<int> hist(7, 0);
    for (int i = 0; i < 70'000; ++i) {
        const auto v = r.below(7);
        ASSERT_LT(v, 7u);
        ++hist[v];
    }
    for (int h : hist) EXPECT_NEAR(h, 10'000, 500);
    for (int i = 0; i < 1000; ++i) {
        const double u = r.uniform();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}

TEST(WithReplacement, CertainAndImpossible) {
    const auto all = simulate_with_replacement({2, 2, 3}, 1000, 5);
    EXPECT_EQ(all.histogram[3], 1000u);
    const auto none = simulate_with_replacement({100, 0, 10}, 1000, 5);
    EXPECT_EQ(none.histogram[0], 1000u);
}

TEST(WithReplacement, MeanNearBinomial) {
    const UrnSpec urn{10'000, 1229, 100};
    const auto r = simulate_with_replacement(urn, 100'000, 20150601);
    const double p = 0.1229;
    EXPECT_NEAR(r.mean(), 12.29, 3 * std::sqrt(100 * p * (1 - p) / 100'000));
    EXPECT_GT(chi_square_against_exact(r).p_value, 0.001);
}

TEST(WithoutReplacement, SmallUrnFrequency) {
    const auto r = simulate_without_replacement({4, 2, 2}, 60'000, 11);
    const double f = static_cast<double>(r.histogram[1]) / 60'000.0;
    EXPECT_NEAR(f, 2.0 / 3.0, 3 * std::sqrt((2.0 / 9.0) / 60'000.0));
    EXPECT_EQ(std::accumulate(r.histogram.begin(), r.histogram.end(), std::uint64_t{0}), 60'000u);
}

TEST(WithoutReplacement, FullDrawIsPointMass) {
    const auto r = simulate_without_replacement({50, 17, 50}, 500, 3);
    EXPECT_EQ(r.histogram[17], 500u);
}

TEST(WithoutReplacement, SupportRespected) {
    // n1 in [max(0, n - M2), min(n, M1)] = [3, 5]
    const auto r = simulate_without_replacement({10, 5, 8}, 20'000, 9);
    for (std::size_t j = 0; j < r.histogram.size(); ++j) {
        if (j < 3 || j > 5) {
            EXPECT_EQ(r.histogram[j], 0u) << j;
        }
    }
}

TEST(WithoutReplacement, ChiSquarePasses) {
    for (const UrnSpec urn : {UrnSpec{20, 7, 6}, UrnSpec{1000, 168, 40}, UrnSpec{10'000, 1229, 100}}) {
        const auto r = simulate_without_replacement(urn, 100'000, 77);
        const auto test = chi_square_against_exact(r);
        EXPECT_GT(test.degrees_of_freedom, 1u);
        EXPECT_GT(test.p_value, 0.001) << urn.M;
    }
}

TEST(WithoutReplacement, ChiSquareDetectsWrongModel) {
    // hypergeometric samples against the binomial pmf of a tiny urn
    auto r = simulate_without_replacement({10, 5, 5}, 100'000, 1);
    r.mode = DrawMode::with_replacement;
    EXPECT_LT(chi_square_against_exact(r).p_value, 1e-6);
}

TEST(WithoutReplacement, NearBinomialForLargeUrn) {
    const UrnSpec urn{100'000, 9592, 1000};
    EXPECT_LT(hypergeometric_binomial_tv(urn), 0.02);
    EXPECT_NEAR(hypergeometric_binomial_tv(urn), 0.0024313, 1e-6);
    const auto r = simulate_without_replacement(urn, 10'000, 2015);
    const double p = urn.white_fraction();
    const double to_binomial = empirical_tv(r, [&](std::uint64_t j) { return binomial_pmf(urn.n, p, j); });
    // 10^4 trials over ~60 occupied cells leave about 0.03 of sampling noise
    EXPECT_LT(to_binomial, 0.045);
    EXPECT_GT(chi_square_against_exact(r).p_value, 0.001);
}

TEST(WithoutReplacement, Errors) {
    EXPECT_THROW(simulate_without_replacement({3, 1, 4}, 10, 1), ValidationError);
    EXPECT_THROW(simulate_without_replacement({3, 1, 2}, 0, 1), ValidationError);
    EXPECT_NO_THROW(simulate_with_replacement({3, 1, 4}, 10, 1));
}

TEST(Determinism, SameSeedSameHistogram) {
    const UrnSpec urn{1000, 168, 40};
    const auto a = simulate_without_replacement(urn, 30'000, 99);
    const auto b = simulate_without_replacement(urn, 30'000, 99);
    const auto c = simulate_without_replacement(urn, 30'000, 100);
    EXPECT_EQ(a.histogram, b.histogram);
    EXPECT_NE(a.histogram, c.histogram);
    EXPECT_EQ(a.rng, b.rng);
    EXPECT_NE(a.rng.find("xoshiro256**"), std::string::npos);
}

TEST(Determinism, IndependentOfWorkerCount) {
    const UrnSpec urn{1000, 168, 40};
    for (auto mode : {DrawMode::with_replacement, DrawMode::without_replacement}) {
        const auto run = [&](unsigned threads) {
            return mode == DrawMode::with_replacement ? simulate_with_replacement(urn, 50'000, 5, {threads})
                                                      : simulate_without_replacement(urn, 50'000, 5, {threads});
        };
        const auto one = run(1);
        for (unsigned t : {2u, 3u, 8u, 0u}) EXPECT_EQ(run(t).histogram, one.histogram) << t;
    }
}
