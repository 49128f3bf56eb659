#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "primelab/errors.hpp"
#include "primelab/pattern.hpp"
#include "primelab/sieve.hpp"

namespace primelab {

/// Hardy-Littlewood constant C(m1, ..., m_{k-1}) as a truncated Euler product
///   prod_p p^{k-1} (p - w(p)) / (p - 1)^k,   w(p) = #distinct offsets mod p,
/// over primes p <= prime_cutoff. The true constant lies in
/// [value - tail_bound, value].
struct SingularConstant {
    TuplePattern pattern;
    double value = 1;
    double tail_bound = 0;
    std::uint64_t prime_cutoff = 0;
};

/// Number of distinct residues of the offsets modulo the prime p.
inline std::size_t residue_count(const TuplePattern& pattern, std::uint64_t p) {
    if (!detail::is_small_prime(p)) throw ValidationError("residue_count: " + std::to_string(p) + " is not prime");
    return detail::distinct_residues(pattern.offsets(), p);
}

namespace detail {

inline constexpr std::uint64_t kMaxSingularCutoff = 400'000'000;

/// Upper bound on -ln(tail product) for primes p > cutoff when every such p
/// has w(p) = k and p >= 2k: |ln f(p)| <= k^2/p^2, summed over odd integers.
inline long double singular_log_tail(std::size_t k, std::uint64_t cutoff) {
    const long double kk = static_cast<long double>(k) * static_cast<long double>(k);
    return kk / (2.0L * (static_cast<long double>(cutoff) - 1.0L));
}

inline long double singular_factor(std::size_t k, std::size_t w, std::uint64_t p) {
    const long double lp = static_cast<long double>(p);
    return std::pow(lp / (lp - 1.0L), static_cast<long double>(k - 1)) * (lp - static_cast<long double>(w)) /
           (lp - 1.0L);
}

inline SingularConstant singular_product(const TuplePattern& pattern, std::uint64_t cutoff) {
    const std::size_t k = pattern.k();
    const std::uint64_t generic_from = std::max<std::uint64_t>(pattern.max_offset(), k) + 1;
    long double product = 1.0L;
    std::uint64_t factors = 0;
    for_each_prime(cutoff, [&](std::uint64_t p) {
        const std::size_t w = p < generic_from ? distinct_residues(pattern.offsets(), p) : k;
        product *= singular_factor(k, w, p);
        ++factors;
    });
    const long double tail = singular_log_tail(k, cutoff);
    const long double rounding = product * 8 * static_cast<long double>(factors + 1) *
                                 std::numeric_limits<long double>::epsilon();
    SingularConstant out{pattern, static_cast<double>(product), 0.0, cutoff};
    out.tail_bound = static_cast<double>(product * -std::expm1(-tail) + rounding +
                                         std::numeric_limits<double>::epsilon() * product);
    return out;
}

}  // namespace detail

/// Singular series with prime_cutoff chosen so tail_bound <= tol.
/// Results are memoized per (pattern, tol); the function stays pure.
inline SingularConstant singular_series(const TuplePattern& pattern, double tol = 1e-6) {
    require_admissible(pattern);
    if (!(tol > 0)) throw DomainError("tolerance must be positive");
    const std::size_t k = pattern.k();
    if (k == 1) return {pattern, 1.0, 0.0, 2};

    static std::mutex memo_mutex;
    static std::map<std::pair<TuplePattern, double>, SingularConstant> memo;
    {
        std::lock_guard lock(memo_mutex);
        if (auto it = memo.find({pattern, tol}); it != memo.end()) return it->second;
    }

    const long double kk = static_cast<long double>(k * k);
    const std::uint64_t floor_cutoff = std::max<std::uint64_t>(pattern.max_offset(), 2 * k) + 1;

    // First pass at a small cutoff gives the magnitude; size the real cutoff from it.
    const auto probe = detail::singular_product(pattern, std::max<std::uint64_t>(floor_cutoff, 1000));
    const long double need = kk * static_cast<long double>(probe.value) / (2.0L * static_cast<long double>(tol)) * 1.05L + 2.0L;
    const std::uint64_t cutoff =
        std::max<std::uint64_t>(floor_cutoff, static_cast<std::uint64_t>(std::min(need, 1e18L)));
    if (cutoff > detail::kMaxSingularCutoff) {
        const double best = probe.value * static_cast<double>(
                                              -std::expm1(-detail::singular_log_tail(k, detail::kMaxSingularCutoff)));
        throw PrecisionError("singular series tolerance " + std::to_string(tol) + " needs prime cutoff " +
                                 std::to_string(cutoff) + "; best tail bound " + std::to_string(best),
                             best);
    }
    auto result = detail::singular_product(pattern, cutoff);
    if (result.tail_bound > tol) {
        throw PrecisionError("singular series tolerance " + std::to_string(tol) + " unreachable; best tail bound " +
                                 std::to_string(result.tail_bound),
                             result.tail_bound);
    }
    std::lock_guard lock(memo_mutex);
    memo.emplace(std::pair{pattern, tol}, result);
    return result;
}

}  // namespace primelab
