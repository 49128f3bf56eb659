#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "primelab/errors.hpp"
#include "primelab/logint.hpp"
#include "primelab/models.hpp"
#include "primelab/pattern.hpp"
#include "primelab/published.hpp"
#include "primelab/sieve.hpp"

namespace primelab {

enum class TableId { T1 = 1, T2 = 2, T3 = 3, T4 = 4 };

inline TableId table_id_from_int(int id) {
    if (id < 1 || id > 4) throw ValidationError("table id must be 1..4, got " + std::to_string(id));
    return static_cast<TableId>(id);
}

inline std::string to_string(TableId id) { return "T" + std::to_string(static_cast<int>(id)); }

inline TableId parse_table_id(std::string_view s) {
    if (s.size() == 2 && s[0] == 'T' && s[1] >= '1' && s[1] <= '4') return table_id_from_int(s[1] - '0');
    throw ValidationError("bad table id '" + std::string(s) + "'");
}

/// Absent (count beyond budget), integer ("whole value" or exact count) or a
/// real kept at three decimals.
using CellValue = std::variant<std::monostate, std::int64_t, double>;

struct Cell {
    std::string column;
    CellValue value;

    friend bool operator==(const Cell&, const Cell&) = default;
};

struct TableRow {
    TableId table_id = TableId::T1;
    std::int64_t x = 0;
    std::vector<Cell> cells;
    bool exact_available = false;
    std::vector<std::string> flags;

    [[nodiscard]] const CellValue& at(std::string_view column) const {
        for (const auto& c : cells)
            if (c.column == column) return c.value;
        throw ValidationError("table row has no column '" + std::string(column) + "'");
    }
    [[nodiscard]] std::int64_t integer(std::string_view column) const { return std::get<std::int64_t>(at(column)); }
    [[nodiscard]] double real(std::string_view column) const { return std::get<double>(at(column)); }

    friend bool operator==(const TableRow&, const TableRow&) = default;
};

struct ColumnSpec {
    std::string_view name;
    bool integer;
};

inline const std::vector<ColumnSpec>& table_columns(TableId id) {
    static const std::vector<ColumnSpec> t1 = {
        {"pi_x", true}, {"li_minus_pi", true}, {"sigma_model1", true}, {"sigma_model2", true}, {"riemann_bound", true}};
    static const std::vector<ColumnSpec> t2 = {{"sigma_model1", true},
                                               {"expected_gap", false},
                                               {"gap_at_li_minus_sigma", false},
                                               {"actual_minus_expected", false},
                                               {"deviation_at_li_minus_sigma", false}};
    static const std::vector<ColumnSpec> tuple = {{"sigma_J", true},
                                                  {"expected_gap", false},
                                                  {"gap_at_plus_s_sigma", false},
                                                  {"gap_at_minus_s_sigma", false},
                                                  {"tuple_count", true},
                                                  {"actual_gap", false},
                                                  {"actual_minus_expected", false}};
    switch (id) {
        case TableId::T1: return t1;
        case TableId::T2: return t2;
        default: return tuple;
    }
}

/// pi as used for the published Riemann-bound column.
inline constexpr double kPublishedPi = 3.14;

struct TableOptions {
    double riemann_pi = kPublishedPi;
    /// Fall back to the built-in pi(10^k) list above the sieve budget.
    bool use_reference_counts = true;
    /// Attach flags where the published row differs from the recomputed one
    /// or is internally inconsistent.
    bool compare_published = true;
    unsigned threads = 1;
};

struct TableReport {
    TableId id = TableId::T1;
    std::vector<TableRow> rows;
    std::vector<std::string> notes;
};

namespace detail {

inline double round3(double v) {
    const double r = std::round(v * 1000.0) / 1000.0;
    return r == 0.0 ? 0.0 : r;  // no "-0.000"
}

inline std::string format_cell(const CellValue& v) {
    if (std::holds_alternative<std::int64_t>(v)) return std::to_string(std::get<std::int64_t>(v));
    if (std::holds_alternative<double>(v)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f", round3(std::get<double>(v)));
        return buf;
    }
    return {};
}

struct ExactCount {
    std::optional<std::uint64_t> count;
    std::optional<Provenance> provenance;
};

inline ExactCount exact_count(PrimeCounter& counter, const TuplePattern& pattern, std::uint64_t x,
                              const TableOptions& options) {
    try {
        const auto rec = counter.tuple_count(pattern, x);
        return {rec.count, rec.provenance};
    } catch (const BudgetExceeded&) {
        if (options.use_reference_counts && pattern.k() == 1) {
            if (auto ref = reference_prime_count(x)) return {*ref, Provenance::reference};
        }
        return {};
    }
}

inline int printed_decimals(std::string_view s) {
    const auto dot = s.find('.');
    return dot == std::string_view::npos ? 0 : static_cast<int>(s.size() - dot - 1);
}

inline double parse_double(std::string_view s) {
    double v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw ValidationError("bad number '" + std::string(s) + "'");
    return v;
}

/// Flags cells whose printed value disagrees with the recomputed one beyond
/// the printed precision, plus internal contradictions of the printed row.
inline void compare_with_published(TableRow& row) {
    const auto* pub = find_published_row(static_cast<int>(row.table_id), static_cast<std::uint64_t>(row.x));
    if (!pub) return;
    const auto& cols = table_columns(row.table_id);
    for (std::size_t i = 0; i < cols.size() && i < pub->cells.size(); ++i) {
        const auto& value = row.at(cols[i].name);
        if (std::holds_alternative<std::monostate>(value)) continue;
        const double printed = parse_double(pub->cells[i]);
        const double mine = std::holds_alternative<std::int64_t>(value)
                                ? static_cast<double>(std::get<std::int64_t>(value))
                                : std::get<double>(value);
        const double slack = cols[i].integer ? 0.0 : 0.5 * std::pow(10.0, -printed_decimals(pub->cells[i])) + 1e-9;
        const bool mismatch = cols[i].integer ? printed != mine : std::fabs(printed - mine) > std::max(slack, 5e-4 + 1e-9);
        if (mismatch)
            row.flags.push_back("published " + std::string(cols[i].name) + " = " + std::string(pub->cells[i]) +
                                " differs from recomputed " + format_cell(value));
    }
    if (row.table_id == TableId::T3 || row.table_id == TableId::T4) {
        const double center = parse_double(pub->cells[1]);
        const double lo = parse_double(pub->cells[2]);
        const double hi = parse_double(pub->cells[3]);
        if (!(lo < center && center < hi))
            row.flags.push_back("published row inconsistent: expected " + std::string(pub->cells[1]) +
                                " is not between endpoints " + std::string(pub->cells[2]) + " and " +
                                std::string(pub->cells[3]));
        const double actual = parse_double(pub->cells[5]);
        const double dev = parse_double(pub->cells[6]);
        if (std::fabs((actual - center) - dev) > 0.0015)
            row.flags.push_back("published row inconsistent: actual_minus_expected " + std::string(pub->cells[6]) +
                                " but " + std::string(pub->cells[5]) + " - " + std::string(pub->cells[1]) + " = " +
                                format_cell(round3(actual - center)));
    }
}

inline TableRow table1_row(std::uint64_t x, PrimeCounter& counter, const TableOptions& options) {
    const double xd = static_cast<double>(x);
    const auto m1 = model1_stats(xd);
    const auto m2 = model2_stats(xd);
    const auto exact = exact_count(counter, TuplePattern::primes(), x, options);
    TableRow row{TableId::T1, static_cast<std::int64_t>(x), {}, exact.count.has_value(), {}};
    // The difference column follows the standard li (lower limit 0).
    CellValue pi_cell, diff_cell;
    if (exact.count) {
        pi_cell = static_cast<std::int64_t>(*exact.count);
        diff_cell = static_cast<std::int64_t>(std::llround(m1.mean + kLiOfTwo - static_cast<double>(*exact.count)));
    }
    row.cells = {{"pi_x", pi_cell},
                 {"li_minus_pi", diff_cell},
                 {"sigma_model1", static_cast<std::int64_t>(std::floor(m1.sigma))},
                 {"sigma_model2", static_cast<std::int64_t>(std::floor(m2.sigma))},
                 {"riemann_bound", static_cast<std::int64_t>(std::floor(riemann_bound(xd, options.riemann_pi)))}};
    if (exact.provenance && *exact.provenance == Provenance::reference)
        row.flags.push_back("pi_x taken from reference table");
    return row;
}

inline TableRow table2_row(std::uint64_t x, PrimeCounter& counter, const TableOptions& options) {
    const double xd = static_cast<double>(x);
    const auto m1 = model1_stats(xd);
    const double expected = xd / m1.mean;
    const double at_minus = xd / (m1.mean - m1.sigma);
    const auto exact = exact_count(counter, TuplePattern::primes(), x, options);
    TableRow row{TableId::T2, static_cast<std::int64_t>(x), {}, exact.count.has_value(), {}};
    CellValue actual_cell;
    if (exact.count) actual_cell = round3(xd / static_cast<double>(*exact.count) - expected);
    row.cells = {{"sigma_model1", static_cast<std::int64_t>(std::floor(m1.sigma))},
                 {"expected_gap", round3(expected)},
                 {"gap_at_li_minus_sigma", round3(at_minus)},
                 {"actual_minus_expected", actual_cell},
                 {"deviation_at_li_minus_sigma", round3(at_minus - expected)}};
    if (exact.provenance && *exact.provenance == Provenance::reference)
        row.flags.push_back("pi_x taken from reference table");
    return row;
}

inline TableRow tuple_row(TableId id, const TuplePattern& pattern, double s, std::uint64_t x, PrimeCounter& counter,
                          const TableOptions& options) {
    const double xd = static_cast<double>(x);
    const auto st = tuple_stats(pattern, xd);
    const double expected = xd / st.mean;
    const double at_plus = xd / (st.mean + s * st.sigma);
    const double at_minus = xd / (st.mean - s * st.sigma);
    const auto exact = exact_count(counter, pattern, x, options);
    TableRow row{id, static_cast<std::int64_t>(x), {}, exact.count.has_value(), {}};
    CellValue count_cell, gap_cell, dev_cell;
    if (exact.count) {
        const double gap = xd / static_cast<double>(*exact.count);
        count_cell = static_cast<std::int64_t>(*exact.count);
        gap_cell = round3(gap);
        dev_cell = round3(gap - expected);
        if (!(at_plus <= gap && gap <= at_minus)) row.flags.push_back("actual gap outside the model interval");
    }
    row.cells = {{"sigma_J", static_cast<std::int64_t>(std::llround(st.sigma))},
                 {"expected_gap", round3(expected)},
                 {"gap_at_plus_s_sigma", round3(at_plus)},
                 {"gap_at_minus_s_sigma", round3(at_minus)},
                 {"tuple_count", count_cell},
                 {"actual_gap", gap_cell},
                 {"actual_minus_expected", dev_cell}};
    return row;
}

template <class RowFn>
TableReport build_table(TableId id, const std::vector<std::uint64_t>& xs, const TableOptions& options, RowFn&& row_fn) {
    if (xs.empty()) throw ValidationError("table needs at least one x");
    TableReport report{id, {}, {}};
    if (options.threads > 1) {
        std::vector<std::future<TableRow>> futures;
        for (auto x : xs) futures.push_back(std::async(std::launch::async, [&, x] { return row_fn(x); }));
        for (auto& f : futures) report.rows.push_back(f.get());
    } else {
        for (auto x : xs) report.rows.push_back(row_fn(x));
    }
    if (options.compare_published)
        for (auto& row : report.rows) compare_with_published(row);
    return report;
}

}  // namespace detail

/// Prime counts against Li(x): exact pi(x), whole value of li(x) - pi(x),
/// integer parts of both model sigmas and of the Riemann deviation bound.
inline TableReport table1(const std::vector<std::uint64_t>& xs, PrimeCounter& counter, const TableOptions& options = {}) {
    auto report = detail::build_table(TableId::T1, xs, options,
                                      [&](std::uint64_t x) { return detail::table1_row(x, counter, options); });
    char buf[96];
    std::snprintf(buf, sizeof buf, "riemann_bound = floor(sqrt(x) ln(x) / (8 * %.17g))", options.riemann_pi);
    report.notes.emplace_back(buf);
    report.notes.emplace_back("li_minus_pi = nearest integer to li(x) - pi(x), li with lower limit 0");
    return report;
}

/// Average prime gap: x/Li(x) against x/pi(x), and the gap at Li(x) - sigma.
inline TableReport table2(const std::vector<std::uint64_t>& xs, PrimeCounter& counter, const TableOptions& options = {}) {
    return detail::build_table(TableId::T2, xs, options,
                               [&](std::uint64_t x) { return detail::table2_row(x, counter, options); });
}

/// Twin primes (0, 2) with the +-1 sigma_J interval.
inline TableReport table3(const std::vector<std::uint64_t>& xs, PrimeCounter& counter, const TableOptions& options = {}) {
    auto report = detail::build_table(TableId::T3, xs, options, [&](std::uint64_t x) {
        return detail::tuple_row(TableId::T3, TuplePattern::twins(), 1.0, x, counter, options);
    });
    report.notes.emplace_back("pattern (0,2), endpoints at +-1 sigma_J");
    return report;
}

/// Prime triples (0, 4, 6) with the +-3 sigma_J interval.
inline TableReport table4(const std::vector<std::uint64_t>& xs, PrimeCounter& counter, const TableOptions& options = {}) {
    auto report = detail::build_table(TableId::T4, xs, options, [&](std::uint64_t x) {
        return detail::tuple_row(TableId::T4, TuplePattern{0, 4, 6}, 3.0, x, counter, options);
    });
    report.notes.emplace_back("pattern (0,4,6), endpoints at +-3 sigma_J");
    return report;
}

inline TableReport make_table(TableId id, const std::vector<std::uint64_t>& xs, PrimeCounter& counter,
                              const TableOptions& options = {}) {
    switch (id) {
        case TableId::T1: return table1(xs, counter, options);
        case TableId::T2: return table2(xs, counter, options);
        case TableId::T3: return table3(xs, counter, options);
        case TableId::T4: return table4(xs, counter, options);
    }
    throw ValidationError("unknown table");
}

/// Rows at which the published tables were computed.
inline std::vector<std::uint64_t> default_table_xs(TableId id) {
    switch (id) {
        case TableId::T1:
        case TableId::T2:
            return {100'000'000ULL, 1'000'000'000ULL, 10'000'000'000ULL, 100'000'000'000ULL, 1'000'000'000'000ULL};
        case TableId::T3: return {100'000ULL, 1'000'000ULL, 10'000'000ULL};
        case TableId::T4: return {1'000'000ULL, 10'000'000ULL, 100'000'000ULL};
    }
    return {};
}

// ---------------------------------------------------------------------------
// CSV / Markdown emission and parsing

namespace detail {

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

inline std::vector<std::string> csv_split(std::string_view line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    return fields;
}

inline std::string join_flags(const std::vector<std::string>& flags) {
    std::string out;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (i) out += "; ";
        out += flags[i];
    }
    return out;
}

inline std::vector<std::string> split_flags(std::string_view s) {
    std::vector<std::string> out;
    while (!s.empty()) {
        const auto pos = s.find("; ");
        out.emplace_back(s.substr(0, pos));
        if (pos == std::string_view::npos) break;
        s.remove_prefix(pos + 2);
    }
    return out;
}

inline std::string trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return std::string(s);
}

inline CellValue parse_cell(const std::string& text, bool integer) {
    if (text.empty() || text == "n/a") return std::monostate{};
    if (integer) {
        std::int64_t v = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw ValidationError("bad integer cell '" + text + "'");
        return v;
    }
    return parse_double(text);
}

inline std::vector<std::string> header_fields(TableId id) {
    std::vector<std::string> h = {"table", "x"};
    for (const auto& c : table_columns(id)) h.emplace_back(c.name);
    h.emplace_back("exact_available");
    h.emplace_back("flags");
    return h;
}

inline std::vector<TableRow> rows_from_fields(const std::vector<std::vector<std::string>>& records) {
    std::vector<TableRow> rows;
    if (records.empty()) return rows;
    const auto& header = records.front();
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& f = records[r];
        if (f.size() != header.size()) throw ValidationError("table row has wrong field count");
        TableRow row;
        row.table_id = parse_table_id(f[0]);
        const auto cols = table_columns(row.table_id);
        if (header != header_fields(row.table_id)) throw ValidationError("table header does not match table id");
        row.x = std::get<std::int64_t>(parse_cell(f[1], true));
        for (std::size_t c = 0; c < cols.size(); ++c)
            row.cells.push_back({std::string(cols[c].name), parse_cell(f[2 + c], cols[c].integer)});
        const auto& avail = f[2 + cols.size()];
        if (avail != "true" && avail != "false") throw ValidationError("bad exact_available '" + avail + "'");
        row.exact_available = avail == "true";
        row.flags = split_flags(f[3 + cols.size()]);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace detail

/// Header row, then one line per row; LF endings, '.' decimal separator.
inline std::string to_csv(const TableReport& report) {
    std::string out;
    const auto header = detail::header_fields(report.id);
    for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
    out += '\n';
    for (const auto& row : report.rows) {
        out += to_string(row.table_id) + ',' + std::to_string(row.x);
        for (const auto& c : row.cells) out += ',' + detail::format_cell(c.value);
        out += std::string(",") + (row.exact_available ? "true" : "false");
        out += ',' + detail::csv_quote(detail::join_flags(row.flags));
        out += '\n';
    }
    return out;
}

inline std::vector<TableRow> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        records.push_back(detail::csv_split(line));
    }
    return detail::rows_from_fields(records);
}

/// Pipe table, absent cells shown as n/a, followed by the report notes as a
/// bullet list.
inline std::string to_markdown(const TableReport& report) {
    const auto header = detail::header_fields(report.id);
    std::string out = "|";
    for (const auto& h : header) out += ' ' + h + " |";
    out += "\n|";
    for (std::size_t i = 0; i < header.size(); ++i) out += i < 2 ? " --- |" : " ---: |";
    out += '\n';
    for (const auto& row : report.rows) {
        out += "| " + to_string(row.table_id) + " | " + std::to_string(row.x) + " |";
        for (const auto& c : row.cells) {
            const auto s = detail::format_cell(c.value);
            out += ' ' + (s.empty() ? std::string("n/a") : s) + " |";
        }
        out += std::string(" ") + (row.exact_available ? "true" : "false") + " |";
        auto flags = detail::join_flags(row.flags);
        for (auto& ch : flags)
            if (ch == '|') ch = '/';
        out += ' ' + flags + " |\n";
    }
    if (!report.notes.empty()) {
        out += '\n';
        for (const auto& n : report.notes) out += "- " + n + '\n';
    }
    return out;
}

inline std::vector<TableRow> parse_markdown(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::istringstream in{std::string(text)};
    std::string line;
    bool separator_seen = false;
    while (std::getline(in, line)) {
        const auto t = detail::trim(line);
        if (t.size() < 2 || t.front() != '|') continue;
        std::vector<std::string> fields;
        std::string_view body(t);
        body.remove_prefix(1);
        if (!body.empty() && body.back() == '|') body.remove_suffix(1);
        while (true) {
            const auto pos = body.find('|');
            fields.push_back(detail::trim(body.substr(0, pos)));
            if (pos == std::string_view::npos) break;
            body.remove_prefix(pos + 1);
        }
        if (!separator_seen && !records.empty() && fields.front().starts_with("---")) {
            separator_seen = true;
            continue;
        }
        records.push_back(std::move(fields));
    }
    return detail::rows_from_fields(records);
}

}  // namespace primelab
