#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "primelab/errors.hpp"

namespace primelab {

/// Offsets (0, 2m1, ..., 2m_{k-1}) of a prime k-tuple family. Construction
/// validates the structural invariants; admissibility is a separate query.
class TuplePattern {
public:
    TuplePattern() : offsets_{0} {}

    TuplePattern(std::initializer_list<std::uint64_t> offsets)
        : TuplePattern(std::vector<std::uint64_t>(offsets)) {}

    explicit TuplePattern(std::vector<std::uint64_t> offsets) : offsets_(std::move(offsets)) {
        if (offsets_.empty()) throw ValidationError("tuple pattern must have at least one offset");
        if (offsets_.front() != 0) throw ValidationError("tuple pattern must start at offset 0");
        for (std::size_t i = 1; i < offsets_.size(); ++i) {
            if (offsets_[i] <= offsets_[i - 1])
                throw ValidationError("tuple pattern offsets must be strictly increasing");
            if (offsets_[i] % 2 != 0)
                throw ValidationError("tuple pattern offsets must be even, got " +
                                      std::to_string(offsets_[i]));
        }
    }

    /// Parses a comma-joined offset list such as "0,4,6".
    static TuplePattern parse(std::string_view text) {
        std::vector<std::uint64_t> offsets;
        while (true) {
            const auto comma = text.find(',');
            auto field = text.substr(0, comma);
            while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
            while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
            std::uint64_t value = 0;
            const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
            if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
                throw ValidationError("malformed tuple pattern '" + std::string(text) + "'");
            offsets.push_back(value);
            if (comma == std::string_view::npos) break;
            text.remove_prefix(comma + 1);
        }
        return TuplePattern(std::move(offsets));
    }

    static TuplePattern primes() { return TuplePattern{0}; }
    static TuplePattern twins() { return TuplePattern{0, 2}; }

    [[nodiscard]] std::size_t k() const noexcept { return offsets_.size(); }
    [[nodiscard]] std::span<const std::uint64_t> offsets() const noexcept { return offsets_; }
    [[nodiscard]] std::uint64_t max_offset() const noexcept { return offsets_.back(); }

    [[nodiscard]] std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < offsets_.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(offsets_[i]);
        }
        return out;
    }

    friend bool operator==(const TuplePattern&, const TuplePattern&) = default;
    friend auto operator<=>(const TuplePattern&, const TuplePattern&) = default;

private:
    std::vector<std::uint64_t> offsets_;
};

namespace detail {

inline bool is_small_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::size_t distinct_residues(std::span<const std::uint64_t> offsets, std::uint64_t p) {
    std::vector<std::uint64_t> residues;
    residues.reserve(offsets.size());
    for (auto o : offsets) residues.push_back(o % p);
    std::sort(residues.begin(), residues.end());
    return static_cast<std::size_t>(std::unique(residues.begin(), residues.end()) - residues.begin());
}

}  // namespace detail

/// True iff for every prime p <= k the offsets miss at least one class mod p.
/// Primes above k can never be covered by k offsets.
inline bool is_admissible(const TuplePattern& pattern) {
    const auto k = pattern.k();
    for (std::uint64_t p = 2; p <= k; ++p) {
        if (!detail::is_small_prime(p)) continue;
        if (detail::distinct_residues(pattern.offsets(), p) >= p) return false;
    }
    return true;
}

inline void require_admissible(const TuplePattern& pattern) {
    if (!is_admissible(pattern))
        throw ValidationError("tuple pattern (" + pattern.to_string() + ") is not admissible");
}

}  // namespace primelab
