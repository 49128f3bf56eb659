#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "primelab/primelab.hpp"

namespace primelab::cli {

namespace {

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class UsageError : public Error {
public:
    explicit UsageError(const std::string& message) : Error("usage", message) {}
};

struct Grid {
    double lo = 0, hi = 0;
    std::uint64_t steps = 0;
};

Grid parse_grid(std::string_view text) {
    const auto a = text.find(':');
    const auto b = text.rfind(':');
    if (a == std::string_view::npos || a == b) throw UsageError("grid must be lo:hi:steps, got '" + std::string(text) + "'");
    Grid g;
    try {
        g.lo = std::stod(std::string(text.substr(0, a)));
        g.hi = std::stod(std::string(text.substr(a + 1, b - a - 1)));
    } catch (const std::exception&) {
        throw UsageError("grid bounds must be numbers, got '" + std::string(text) + "'");
    }
    g.steps = parse_exact_integer(text.substr(b + 1));
    if (g.steps == 0 || !(g.hi > g.lo)) throw UsageError("grid needs hi > lo and steps >= 1");
    return g;
}

std::optional<TuplePattern> optional_pattern(const std::string& text) {
    if (text.empty()) return std::nullopt;
    return TuplePattern::parse(text);
}

}  // namespace

std::uint64_t parse_exact_integer(std::string_view text) {
    auto fail = [&] { return UsageError("expected an exact non-negative integer, got '" + std::string(text) + "'"); };
    if (text.empty()) throw fail();
    std::string digits;
    std::int64_t exponent = 0;
    std::size_t i = 0;
    bool seen_dot = false, any_digit = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c >= '0' && c <= '9') {
            digits += c;
            any_digit = true;
            if (seen_dot) --exponent;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (!any_digit) throw fail();
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') throw fail();
        ++i;
        bool negative = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
        if (i == text.size()) throw fail();
        std::int64_t e = 0;
        for (; i < text.size(); ++i) {
            if (text[i] < '0' || text[i] > '9' || e > 1000) throw fail();
            e = e * 10 + (text[i] - '0');
        }
        exponent += negative ? -e : e;
    }
    // strip trailing zeros into the exponent, then require exponent >= 0
    while (digits.size() > 1 && digits.back() == '0' && exponent < 0) {
        digits.pop_back();
        ++exponent;
    }
    if (exponent < 0) {
        // remaining fractional digits must be zero
        for (std::int64_t k = 0; k < -exponent; ++k) {
            if (digits.empty() || digits.back() != '0') throw fail();
            digits.pop_back();
        }
        exponent = 0;
    }
    std::uint64_t value = 0;
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    for (char c : digits) {
        const std::uint64_t d = static_cast<std::uint64_t>(c - '0');
        if (value > (kMax - d) / 10) throw fail();
        value = value * 10 + d;
    }
    for (std::int64_t k = 0; k < exponent; ++k) {
        if (value == 0) break;
        if (value > kMax / 10) throw fail();
        value *= 10;
    }
    return value;
}

std::vector<std::uint64_t> parse_integer_list(std::string_view text) {
    std::vector<std::uint64_t> out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(parse_exact_integer(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig config;
    try {
        config = RunConfig::from_environment();
    } catch (const Error& e) {
        err << "ERROR " << e.code() << ": " << e.what() << '\n';
        return 2;
    }

    CLI::App app{"prime-lab: probabilistic models of primes and prime k-tuples"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "csv";
    std::string cache_dir = config.cache_dir.string();
    bool no_cache = false;
    bool absolute_tol = false;
    app.add_option("--budget", config.sieve_budget, "largest x the sieve may process")->capture_default_str();
    app.add_option("--tol", config.quadrature_tol, "quadrature tolerance")->capture_default_str();
    app.add_flag("--absolute-tol", absolute_tol, "treat --tol as absolute instead of relative");
    app.add_option("--cache-dir", cache_dir, "directory of counts.cache")->capture_default_str();
    app.add_flag("--no-cache", no_cache, "neither read nor write the count cache");
    app.add_option("--threads", config.threads, "worker threads, 0 = auto")->capture_default_str();
    app.add_option("--format", format, "table output format")->check(CLI::IsMember({"csv", "markdown"}));

    std::string x_text, pattern_text, kind_text, grid_text, xs_text, model_text, mode_text;
    int k = 1;
    int table_id = 1;
    bool show_error = false, exact_pi = false, no_reference = false, no_compare = false;
    std::uint64_t M = 0, M1 = 0, n = 0, trials = 0;
    std::optional<std::uint64_t> seed;

    auto* count = app.add_subcommand("count", "exact pi(x) or pattern count by sieving");
    count->add_option("--x", x_text, "limit (integer, scientific notation allowed)")->required();
    count->add_option("--pattern", pattern_text, "comma-joined offsets, e.g. 0,2");

    auto* li_cmd = app.add_subcommand("li", "Li_k(x) = integral from 2 to x of dt/ln^k t");
    li_cmd->add_option("--x", x_text, "upper limit")->required();
    li_cmd->add_option("--k", k, "power of the logarithm")->capture_default_str();
    li_cmd->add_flag("--show-error", show_error, "also print the error bound");

    auto* constant = app.add_subcommand("constant", "Hardy-Littlewood singular series");
    constant->add_option("--pattern", pattern_text, "comma-joined offsets")->required();

    auto* stats = app.add_subcommand("stats", "mean and sigma of a count model");
    stats->add_option("--model", model_text, "1, 2 or tuple")->required()->check(CLI::IsMember({"1", "2", "tuple"}));
    stats->add_option("--x", x_text, "limit")->required();
    stats->add_option("--pattern", pattern_text, "offsets (tuple model)");

    auto* density = app.add_subcommand("density", "sample a density as t,pdf,cdf");
    density->add_option("--kind", kind_text, "density kind")->required();
    density->add_option("--x", x_text, "limit")->required();
    density->add_option("--grid", grid_text, "lo:hi:steps (default: effective support, 200 steps)");
    density->add_option("--pattern", pattern_text, "offsets (tuple kinds)");

    auto* simulate = app.add_subcommand("simulate", "urn draws with or without replacement");
    simulate->add_option("--mode", mode_text, "with or without")->required()->check(CLI::IsMember({"with", "without"}));
    simulate->add_option("--M", M, "balls in the urn")->required();
    simulate->add_option("--M1", M1, "white balls")->required();
    simulate->add_option("--n", n, "balls drawn per trial")->required();
    simulate->add_option("--trials", trials, "number of trials")->required();
    simulate->add_option("--seed", seed, "64-bit seed");

    auto* table = app.add_subcommand("table", "reproduce one of the four comparison tables");
    table->add_option("--id", table_id, "1, 2, 3 or 4")->required()->check(CLI::Range(1, 4));
    table->add_option("--xs", xs_text, "comma-separated rows, e.g. 1e5,1e6");
    table->add_flag("--exact-pi", exact_pi, "evaluate the Riemann bound with exact pi instead of 3.14");
    table->add_flag("--no-reference", no_reference, "do not fall back to reference prime counts");
    table->add_flag("--no-compare", no_compare, "skip comparison flags against the printed tables");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "ERROR usage: " << e.what() << '\n';
        return 2;
    }

    try {
        if (absolute_tol) config.tol_mode = ToleranceMode::absolute;
        config.cache_dir = cache_dir;
        if (seed) config.seed = *seed;
        config.output_format = format == "markdown" ? OutputFormat::markdown : OutputFormat::csv;
        config.validate();

        CounterConfig counter_config;
        counter_config.budget = config.sieve_budget;
        if (!no_cache) counter_config.cache_dir = config.cache_dir;
        counter_config.sieve.threads = config.threads;

        if (count->parsed()) {
            PrimeCounter counter(counter_config);
            const auto pattern = optional_pattern(pattern_text).value_or(TuplePattern::primes());
            out << counter.tuple_count(pattern, parse_exact_integer(x_text)).count << '\n';
        } else if (li_cmd->parsed()) {
            double x = 0;
            try {
                x = std::stod(x_text);
            } catch (const std::exception&) {
                throw UsageError("--x must be a number, got '" + x_text + "'");
            }
            const auto v = li(x, k, config.quadrature_tol, config.tol_mode);
            out << format_real(v.value);
            if (show_error) out << ' ' << format_real(v.error_bound);
            out << '\n';
        } else if (constant->parsed()) {
            const auto c = singular_series(TuplePattern::parse(pattern_text));
            out << "pattern,value,tail_bound,prime_cutoff\n"
                << '"' << c.pattern.to_string() << "\"," << format_real(c.value) << ',' << format_real(c.tail_bound)
                << ',' << c.prime_cutoff << '\n';
        } else if (stats->parsed()) {
            const double x = static_cast<double>(parse_exact_integer(x_text));
            ModelStats s;
            if (model_text == "1") s = model1_stats(x);
            else if (model_text == "2") s = model2_stats(x);
            else s = tuple_stats(optional_pattern(pattern_text).value_or(TuplePattern::twins()), x);
            out << "model,x,mean,sigma,pattern\n"
                << to_string(s.model) << ',' << format_real(s.x) << ',' << format_real(s.mean) << ','
                << format_real(s.sigma) << ",\"" << (s.pattern ? s.pattern->to_string() : "") << "\"\n";
        } else if (density->parsed()) {
            const auto kind = parse_density_kind(kind_text);
            const double x = static_cast<double>(parse_exact_integer(x_text));
            const auto d = make_density(kind, x, optional_pattern(pattern_text));
            Grid g;
            if (grid_text.empty()) {
                g = {d.effective_lower(), d.effective_upper(), 200};
                if (kind == DensityKind::gap_Z || kind == DensityKind::tuple_gap_H)
                    g.hi = std::min(g.hi, d.nominal_center() + 12 * (g.hi - g.lo) / 40);
            } else {
                g = parse_grid(grid_text);
            }
            out << "t,pdf,cdf\n";
            for (std::uint64_t i = 0; i <= g.steps; ++i) {
                const double t = g.lo + (g.hi - g.lo) * static_cast<double>(i) / static_cast<double>(g.steps);
                out << format_real(t) << ',' << format_real(d.pdf(t)) << ',' << format_real(d.cdf(t)) << '\n';
            }
        } else if (simulate->parsed()) {
            const UrnSpec urn{M, M1, n};
            SimOptions options{config.threads};
            const auto r = mode_text == "with" ? simulate_with_replacement(urn, trials, config.seed, options)
                                               : simulate_without_replacement(urn, trials, config.seed, options);
            out << "n1,frequency,exact_pmf\n";
            for (std::size_t j = 0; j < r.histogram.size(); ++j)
                out << j << ',' << r.histogram[j] << ',' << format_real(exact_pmf(r, j)) << '\n';
        } else if (table->parsed()) {
            const auto id = table_id_from_int(table_id);
            const auto xs = xs_text.empty() ? default_table_xs(id) : parse_integer_list(xs_text);
            TableOptions options;
            if (exact_pi) options.riemann_pi = std::numbers::pi;
            options.use_reference_counts = !no_reference;
            options.compare_published = !no_compare;
            PrimeCounter counter(counter_config);
            const auto report = make_table(id, xs, counter, options);
            out << (config.output_format == OutputFormat::markdown ? to_markdown(report) : to_csv(report));
        }
    } catch (const UsageError& e) {
        err << "ERROR " << e.code() << ": " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "ERROR " << e.code() << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "ERROR internal: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace primelab::cli
