#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "primelab/errors.hpp"
#include "primelab/logint.hpp"

namespace primelab {

enum class OutputFormat { csv, markdown };

struct RunConfig {
    std::uint64_t sieve_budget = 1'000'000'000;
    double quadrature_tol = 1e-6;
    ToleranceMode tol_mode = ToleranceMode::relative;
    std::filesystem::path cache_dir = ".cache";
    std::uint64_t seed = 20150601;
    OutputFormat output_format = OutputFormat::csv;
    unsigned threads = 0;  ///< 0 = hardware concurrency

    void validate() const {
        if (sieve_budget < 1000) throw ValidationError("sieve budget must be at least 1000");
        if (!(quadrature_tol > 0)) throw ValidationError("quadrature tolerance must be positive");
    }

    /// Defaults overridden by PRIME_LAB_CACHE_DIR and PRIME_LAB_THREADS.
    static RunConfig from_environment() {
        RunConfig config;
        if (const char* dir = std::getenv("PRIME_LAB_CACHE_DIR"); dir && *dir) config.cache_dir = dir;
        if (const char* threads = std::getenv("PRIME_LAB_THREADS"); threads && *threads) {
            char* end = nullptr;
            const unsigned long v = std::strtoul(threads, &end, 10);
            if (*end != '\0') throw ValidationError(std::string("PRIME_LAB_THREADS is not a number: ") + threads);
            config.threads = static_cast<unsigned>(v);
        }
        return config;
    }
};

}  // namespace primelab
