#pragma once

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cstdint>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "primelab/errors.hpp"
#include "primelab/models.hpp"
#include "primelab/random.hpp"

namespace primelab {

enum class DrawMode { with_replacement, without_replacement };

/// Histogram of the white-ball count n1 over repeated urn draws.
struct SimResult {
    UrnSpec urn;
    DrawMode mode = DrawMode::with_replacement;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string rng;                      ///< generator + blocking scheme, for reproducibility
    std::vector<std::uint64_t> histogram; ///< histogram[n1], n1 in [0, n]

    [[nodiscard]] double mean() const {
        long double s = 0;
        for (std::size_t j = 0; j < histogram.size(); ++j) s += static_cast<long double>(j) * histogram[j];
        return static_cast<double>(s / static_cast<long double>(trials));
    }
};

struct SimOptions {
    /// 0 selects hardware_concurrency(). Never affects the histogram.
    unsigned threads = 1;
};

namespace detail {

/// Trials are grouped into fixed blocks, each with its own stream derived from
/// (seed, block). Workers claim whole blocks, so the merged histogram is the
/// same for any worker count.
inline constexpr std::uint64_t kTrialsPerBlock = 4096;

inline std::uint64_t draw_with_replacement(const UrnSpec& urn, Xoshiro256StarStar& rng) {
    std::uint64_t white = 0;
    for (std::uint64_t i = 0; i < urn.n; ++i) white += rng.below(urn.M) < urn.M1;
    return white;
}

/// Partial Fisher-Yates over the implicit array 0..M-1; only displaced slots
/// are stored. Balls 0..M1-1 are white.
inline std::uint64_t draw_without_replacement(const UrnSpec& urn, Xoshiro256StarStar& rng,
                                              std::unordered_map<std::uint64_t, std::uint64_t>& swapped) {
    swapped.clear();
    std::uint64_t white = 0;
    for (std::uint64_t i = 0; i < urn.n; ++i) {
        const std::uint64_t j = i + rng.below(urn.M - i);
        auto at = [&](std::uint64_t idx) {
            auto it = swapped.find(idx);
            return it == swapped.end() ? idx : it->second;
        };
        const std::uint64_t picked = at(j);
        swapped[j] = at(i);
        white += picked < urn.M1;
    }
    return white;
}

inline SimResult simulate(const UrnSpec& urn, DrawMode mode, std::uint64_t trials, std::uint64_t seed,
                          const SimOptions& options) {
    urn.validate(mode == DrawMode::with_replacement);
    if (trials == 0) throw ValidationError("simulation needs at least one trial");
    const std::uint64_t blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
    unsigned workers = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));

    std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(urn.n + 1, 0));
    auto work = [&](unsigned w) {
        std::unordered_map<std::uint64_t, std::uint64_t> swapped;
        auto& hist = partial[w];
        for (std::uint64_t b = w; b < blocks; b += workers) {
            auto rng = Xoshiro256StarStar::for_stream(seed, b);
            const std::uint64_t end = std::min(trials, (b + 1) * kTrialsPerBlock);
            for (std::uint64_t t = b * kTrialsPerBlock; t < end; ++t) {
                const auto white = mode == DrawMode::with_replacement ? draw_with_replacement(urn, rng)
                                                                      : draw_without_replacement(urn, rng, swapped);
                ++hist[static_cast<std::size_t>(white)];
            }
        }
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }

    SimResult out{urn, mode, trials, seed,
                  std::string(Xoshiro256StarStar::kName) + "/splitmix64-block" + std::to_string(kTrialsPerBlock),
                  std::vector<std::uint64_t>(urn.n + 1, 0)};
    for (const auto& h : partial)
        for (std::size_t j = 0; j < h.size(); ++j) out.histogram[j] += h[j];
    return out;
}

}  // namespace detail

/// n independent draws, each white with probability M1/M.
inline SimResult simulate_with_replacement(const UrnSpec& urn, std::uint64_t trials, std::uint64_t seed,
                                           const SimOptions& options = {}) {
    return detail::simulate(urn, DrawMode::with_replacement, trials, seed, options);
}

/// Uniform n-subsets of the M balls.
inline SimResult simulate_without_replacement(const UrnSpec& urn, std::uint64_t trials, std::uint64_t seed,
                                              const SimOptions& options = {}) {
    return detail::simulate(urn, DrawMode::without_replacement, trials, seed, options);
}

/// Exact pmf of n1 under the draw mode of `result`.
inline double exact_pmf(const SimResult& result, std::uint64_t n1) {
    return result.mode == DrawMode::with_replacement
               ? binomial_pmf(result.urn.n, result.urn.white_fraction(), n1)
               : hypergeometric_pmf(result.urn, n1);
}

struct ChiSquareTest {
    double statistic = 0;
    std::size_t degrees_of_freedom = 0;
    double p_value = 1;
};

/// Pearson goodness of fit against the exact pmf. Adjacent cells are pooled
/// (in n1 order) until each pooled cell expects at least `min_expected` counts.
inline ChiSquareTest chi_square_against_exact(const SimResult& result, double min_expected = 5.0) {
    std::vector<double> observed, expected;
    double obs = 0, exp = 0;
    const auto n_trials = static_cast<double>(result.trials);
    for (std::uint64_t j = 0; j < result.histogram.size(); ++j) {
        obs += static_cast<double>(result.histogram[j]);
        exp += n_trials * exact_pmf(result, j);
        if (exp >= min_expected) {
            observed.push_back(obs);
            expected.push_back(exp);
            obs = exp = 0;
        }
    }
    if (!expected.empty()) {
        observed.back() += obs;
        expected.back() += exp;
    }
    ChiSquareTest test;
    if (expected.size() < 2) return test;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const double d = observed[i] - expected[i];
        test.statistic += d * d / expected[i];
    }
    test.degrees_of_freedom = expected.size() - 1;
    const boost::math::chi_squared dist(static_cast<double>(test.degrees_of_freedom));
    test.p_value = boost::math::cdf(boost::math::complement(dist, test.statistic));
    return test;
}

/// Total-variation distance between the empirical histogram and a pmf.
template <class Pmf>
double empirical_tv(const SimResult& result, Pmf&& pmf) {
    long double s = 0;
    for (std::uint64_t j = 0; j < result.histogram.size(); ++j)
        s += std::fabs(static_cast<long double>(result.histogram[j]) / static_cast<long double>(result.trials) -
                       static_cast<long double>(pmf(j)));
    return static_cast<double>(s / 2);
}

}  // namespace primelab
