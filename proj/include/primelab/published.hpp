#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace primelab {

/// pi(10^k) for k = 1..12 (OEIS A006880). Lets table rows above the sieve
/// budget carry exact counts.
inline std::optional<std::uint64_t> reference_prime_count(std::uint64_t x) {
    constexpr std::pair<std::uint64_t, std::uint64_t> known[] = {
        {10ULL, 4ULL},
        {100ULL, 25ULL},
        {1'000ULL, 168ULL},
        {10'000ULL, 1'229ULL},
        {100'000ULL, 9'592ULL},
        {1'000'000ULL, 78'498ULL},
        {10'000'000ULL, 664'579ULL},
        {100'000'000ULL, 5'761'455ULL},
        {1'000'000'000ULL, 50'847'534ULL},
        {10'000'000'000ULL, 455'052'511ULL},
        {100'000'000'000ULL, 4'118'054'813ULL},
        {1'000'000'000'000ULL, 37'607'912'018ULL},
    };
    for (const auto& [limit, count] : known)
        if (limit == x) return count;
    return std::nullopt;
}

/// Values exactly as printed in the published tables, column order as in
/// report.hpp. Kept as text so the printed precision is preserved.
struct PublishedRow {
    int table;  // 1..4
    std::uint64_t x;
    std::vector<std::string_view> cells;
};

inline const std::vector<PublishedRow>& published_rows() {
    static const std::vector<PublishedRow> rows = {
        {1, 100'000'000ULL, {"5761455", "754", "2330", "2329", "7333"}},
        {1, 1'000'000'000ULL, {"50847534", "1701", "7091", "7089", "26087"}},
        {1, 10'000'000'000ULL, {"455052511", "3104", "20841", "20839", "91663"}},
        {1, 100'000'000'000ULL, {"4118054813", "11588", "62836", "62834", "318851"}},
        {1, 1'000'000'000'000ULL, {"37607912018", "38263", "190246", "190239", "1099961"}},

        {2, 100'000'000ULL, {"2330", "17.354", "17.361", "0.003", "0.007"}},
        {2, 1'000'000'000ULL, {"7091", "19.666", "19.669", "0.001", "0.003"}},
        {2, 10'000'000'000ULL, {"20841", "21.975", "21.976", "0.000", "0.001"}},
        {2, 100'000'000'000ULL, {"62856", "24.283", "24.284", "0.000", "0.001"}},
        {2, 1'000'000'000'000ULL, {"612099", "26.590", "26.590", "0.000", "0.000"}},

        {3, 100'000ULL, {"35", "80.064", "77.882", "82.372", "1224", "81.699", "1.635"}},
        {3, 1'000'000ULL, {"90", "121.242", "119.933", "122.579", "8169", "122.414", "1.1172"}},
        {3, 10'000'000ULL, {"242", "170.201", "169.503", "170.905", "58980", "169.549", "0.0652"}},

        {4, 1'000'000ULL, {"16", "691.563", "669.344", "715.308", "1444", "692.521", "0.958"}},
        {4, 10'000'000ULL, {"38", "1164.563", "1164.009", "1150.086", "8677", "1152.472", "-11.536"}},
        {4, 100'000'000ULL, {"93", "1802.094", "1793.079", "1811.086", "55556", "1799.986", "-2.108"}},
    };
    return rows;
}

inline const PublishedRow* find_published_row(int table, std::uint64_t x) {
    for (const auto& row : published_rows())
        if (row.table == table && row.x == x) return &row;
    return nullptr;
}

}  // namespace primelab
