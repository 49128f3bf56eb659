#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "primelab/count_cache.hpp"
#include "primelab/errors.hpp"
#include "primelab/pattern.hpp"

namespace primelab {

enum class Provenance { sieved, cached, reference };

inline const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::sieved: return "sieved";
        case Provenance::cached: return "cached";
        case Provenance::reference: return "reference";
    }
    return "?";
}

/// Exact count of n <= limit for which every n + offset is prime.
struct CountRecord {
    std::uint64_t limit = 0;
    TuplePattern pattern;
    std::uint64_t count = 0;
    Provenance provenance = Provenance::sieved;
};

struct SieveOptions {
    /// Odd numbers per segment (one byte each). 128 KiB sits in L2 on most desktops.
    std::size_t segment_size = std::size_t{1} << 17;
    /// 0 selects std::thread::hardware_concurrency().
    unsigned threads = 1;
};

namespace detail {

inline std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

/// Odd primes up to `limit` by a plain odd-only sieve.
inline std::vector<std::uint32_t> odd_primes_up_to(std::uint64_t limit) {
    std::vector<std::uint32_t> primes;
    if (limit < 3) return primes;
    const std::size_t n = static_cast<std::size_t>((limit - 1) / 2);  // index i <-> 2i+1, i in [1, n]
    std::vector<std::uint8_t> composite(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        if (composite[i]) continue;
        const std::uint64_t p = 2 * i + 1;
        primes.push_back(static_cast<std::uint32_t>(p));
        for (std::uint64_t j = (p * p - 1) / 2; j <= n; j += p) composite[static_cast<std::size_t>(j)] = 1;
    }
    return primes;
}

/// Marks primality of the odd numbers 2i+1 for i in [first, first + flags.size()).
inline void sieve_odd_segment(std::uint64_t first, std::vector<std::uint8_t>& flags,
                              const std::vector<std::uint32_t>& base_primes) {
    std::fill(flags.begin(), flags.end(), std::uint8_t{1});
    const std::uint64_t end = first + flags.size();
    const std::uint64_t hi_value = 2 * (end - 1) + 1;
    for (const std::uint64_t p : base_primes) {
        const std::uint64_t sq = p * p;
        if (sq > hi_value) break;
        std::uint64_t j = (sq - 1) / 2;
        if (j < first) {
            // first odd multiple of p at or beyond 2*first+1
            const std::uint64_t lo_value = 2 * first + 1;
            std::uint64_t m = (lo_value + p - 1) / p * p;
            if (m % 2 == 0) m += p;
            j = (m - 1) / 2;
        }
        for (; j < end; j += p) flags[static_cast<std::size_t>(j - first)] = 0;
    }
    if (first == 0) flags[0] = 0;  // 1 is not prime
}

}  // namespace detail

/// Segmented Eratosthenes count of pattern occurrences with first element <= x.
/// Pure function of (pattern, x); segment size and thread count never change
/// the result.
inline std::uint64_t sieve_tuple_count(const TuplePattern& pattern, std::uint64_t x,
                                       const SieveOptions& options = {}) {
    if (x < 2) return 0;
    const bool primes_only = pattern.k() == 1;
    std::uint64_t total = primes_only ? 1 : 0;  // n = 2; never part of an even-offset k-tuple, k >= 2
    if (x < 3) return total;

    const std::uint64_t lookahead = pattern.max_offset() / 2;
    const std::uint64_t last_index = (x - 1) / 2;  // largest i with 2i+1 <= x
    const std::uint64_t sieve_top = 2 * (last_index + lookahead) + 1;
    const auto base_primes = detail::odd_primes_up_to(detail::isqrt(sieve_top));

    std::vector<std::uint64_t> half_offsets;
    for (auto o : pattern.offsets()) half_offsets.push_back(o / 2);

    const std::uint64_t segment = std::max<std::size_t>(options.segment_size, 64);
    const std::uint64_t segments = (last_index + 1 + segment - 1) / segment;
    unsigned workers = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                            : options.threads;
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, segments));

    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> sum{0};
    auto work = [&] {
        std::vector<std::uint8_t> flags;
        std::uint64_t local = 0;
        for (std::uint64_t s = next++; s < segments; s = next++) {
            const std::uint64_t first = s * segment;
            const std::uint64_t count_end = std::min(first + segment, last_index + 1);
            flags.assign(static_cast<std::size_t>(count_end - first + lookahead), 0);
            detail::sieve_odd_segment(first, flags, base_primes);
            const std::size_t span = static_cast<std::size_t>(count_end - first);
            if (primes_only) {
                for (std::size_t i = 0; i < span; ++i) local += flags[i];
            } else {
                for (std::size_t i = 0; i < span; ++i) {
                    if (!flags[i]) continue;
                    bool all = true;
                    for (std::size_t h = 1; h < half_offsets.size() && all; ++h)
                        all = flags[i + static_cast<std::size_t>(half_offsets[h])] != 0;
                    local += all;
                }
            }
        }
        sum += local;
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return total + sum.load();
}

/// Calls `visit(p)` for every prime p <= limit in increasing order.
template <class Visitor>
void for_each_prime(std::uint64_t limit, Visitor&& visit, std::size_t segment_size = std::size_t{1} << 17) {
    if (limit < 2) return;
    visit(std::uint64_t{2});
    if (limit < 3) return;
    const std::uint64_t last_index = (limit - 1) / 2;
    const auto base_primes = detail::odd_primes_up_to(detail::isqrt(limit));
    std::vector<std::uint8_t> flags;
    for (std::uint64_t first = 0; first <= last_index; first += segment_size) {
        const std::uint64_t end = std::min<std::uint64_t>(first + segment_size, last_index + 1);
        flags.assign(static_cast<std::size_t>(end - first), 0);
        detail::sieve_odd_segment(first, flags, base_primes);
        for (std::size_t i = 0; i < flags.size(); ++i)
            if (flags[i]) visit(2 * (first + i) + 1);
    }
}

struct CounterConfig {
    std::uint64_t budget = 1'000'000'000;
    std::optional<std::filesystem::path> cache_dir;  // no cache when empty
    SieveOptions sieve;
};

/// Budgeted, cache-backed front end to the sieve. Queries are safe to issue
/// concurrently; cache appends are serialized inside CountCache.
class PrimeCounter {
public:
    explicit PrimeCounter(CounterConfig config = {}) : config_(std::move(config)) {
        if (config_.cache_dir) cache_.emplace(*config_.cache_dir);
    }

    [[nodiscard]] const CounterConfig& config() const noexcept { return config_; }

    [[nodiscard]] CountRecord prime_count(std::uint64_t x) { return tuple_count(TuplePattern::primes(), x); }

    [[nodiscard]] CountRecord tuple_count(const TuplePattern& pattern, std::uint64_t x) {
        if (x < 1) throw DomainError("count limit must be >= 1");
        require_admissible(pattern);
        if (cache_) {
            if (auto hit = cache_->lookup(x, pattern.to_string()))
                return {x, pattern, *hit, Provenance::cached};
        }
        if (x > config_.budget)
            throw BudgetExceeded("limit " + std::to_string(x) + " exceeds sieve budget " +
                                     std::to_string(config_.budget),
                                 config_.budget);
        const auto count = sieve_tuple_count(pattern, x, config_.sieve);
        if (cache_) cache_->append(x, pattern.to_string(), count);
        return {x, pattern, count, Provenance::sieved};
    }

private:
    CounterConfig config_;
    std::optional<CountCache> cache_;
};

}  // namespace primelab
