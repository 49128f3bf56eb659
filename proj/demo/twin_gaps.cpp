// Mean gap between twin primes: model interval vs. the sieved value.
#include <cstdio>

#include "primelab/primelab.hpp"

int main() {
    using namespace primelab;
    PrimeCounter counter;
    const auto twins = TuplePattern::twins();
    std::printf("%10s %10s %10s %10s %10s\n", "x", "lower", "M_H", "upper", "actual");
    for (std::uint64_t x : {10'000ULL, 100'000ULL, 1'000'000ULL, 10'000'000ULL}) {
        const auto H = make_density(DensityKind::tuple_gap_H, static_cast<double>(x), twins);
        const auto [lo, hi] = H.interval_endpoints(1.0);
        const auto count = counter.tuple_count(twins, x).count;
        std::printf("%10llu %10.3f %10.3f %10.3f %10.3f\n", static_cast<unsigned long long>(x), lo,
                    H.nominal_center(), hi, static_cast<double>(x) / static_cast<double>(count));
    }
}
