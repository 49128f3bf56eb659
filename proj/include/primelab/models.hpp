#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "primelab/errors.hpp"
#include "primelab/logint.hpp"
#include "primelab/pattern.hpp"
#include "primelab/singular.hpp"

namespace primelab {

enum class ModelKind { binomial_model1, cramer_model2, tuple_model };

inline const char* to_string(ModelKind m) {
    switch (m) {
        case ModelKind::binomial_model1: return "binomial_model1";
        case ModelKind::cramer_model2: return "cramer_model2";
        case ModelKind::tuple_model: return "tuple_model";
    }
    return "?";
}

/// Mean and standard deviation of a count-analog random variable.
struct ModelStats {
    double x = 0;
    ModelKind model = ModelKind::binomial_model1;
    double mean = 0;
    double sigma = 0;
    std::optional<TuplePattern> pattern;
};

/// Quadrature tolerance used by the model statistics (relative).
inline constexpr double kModelLiTolerance = 1e-12;
/// Singular-series tolerance used by tuple_stats.
inline constexpr double kModelSingularTolerance = 1e-7;

namespace detail {
inline void require_model_x(double x) {
    if (!(x >= 3)) throw DomainError("model statistics require x >= 3, got " + std::to_string(x));
}
}  // namespace detail

/// Draws with replacement: mean Li(x), variance Li(x) - Li(x)^2 / x.
inline ModelStats model1_stats(double x) {
    detail::require_model_x(x);
    const double L = li(x, 1, kModelLiTolerance).value;
    return {x, ModelKind::binomial_model1, L, std::sqrt(L - L * L / x), std::nullopt};
}

/// Cramer's independent indicators: mean Li(x), variance Li(x) - Li_2(x).
inline ModelStats model2_stats(double x) {
    detail::require_model_x(x);
    const double L = li(x, 1, kModelLiTolerance).value;
    const double L2 = li(x, 2, kModelLiTolerance).value;
    return {x, ModelKind::cramer_model2, L, std::sqrt(L - L2), std::nullopt};
}

/// Tuple count J(x): mean C Li_k(x), variance C Li_k(x) - C^2 Li_{2k}(x).
inline ModelStats tuple_stats(const TuplePattern& pattern, double x) {
    require_admissible(pattern);
    detail::require_model_x(x);
    const int k = static_cast<int>(pattern.k());
    const double C = singular_series(pattern, kModelSingularTolerance).value;
    const double Lk = li(x, k, kModelLiTolerance).value;
    const double L2k = li(x, 2 * k, kModelLiTolerance).value;
    const double mean = C * Lk;
    const double var = mean - C * C * L2k;
    if (!(var > 0)) throw DomainError("tuple model variance is not positive at x = " + std::to_string(x));
    return {x, ModelKind::tuple_model, mean, std::sqrt(var), pattern};
}

/// sigma_model1^2 - sigma_model2^2 = Li_2(x) - Li(x)^2 / x.
inline double variance_gap(double x) {
    detail::require_model_x(x);
    const double L = li(x, 1, kModelLiTolerance).value;
    const double L2 = li(x, 2, kModelLiTolerance).value;
    return L2 - L * L / x;
}

/// sqrt(x) ln(x) / (8 pi). The published Table 1 column was evaluated with
/// pi = 3.14, which is why `pi_value` is a parameter.
inline double riemann_bound(double x, double pi_value = std::numbers::pi) {
    if (!(x > 0)) throw DomainError("riemann_bound requires x > 0");
    return std::sqrt(x) * std::log(x) / (8.0 * pi_value);
}

/// Urn with M balls, M1 of them white; n balls drawn.
struct UrnSpec {
    std::uint64_t M = 0;
    std::uint64_t M1 = 0;
    std::uint64_t n = 0;

    [[nodiscard]] std::uint64_t M2() const noexcept { return M - M1; }
    [[nodiscard]] double white_fraction() const noexcept { return static_cast<double>(M1) / static_cast<double>(M); }

    /// Drawing with replacement may take more balls than the urn holds.
    void validate(bool with_replacement = false) const {
        if (M == 0) throw ValidationError("urn: M must be positive");
        if (M1 > M) throw ValidationError("urn: M1 exceeds M");
        if (n == 0) throw ValidationError("urn: n must be positive");
        if (!with_replacement && n > M) throw ValidationError("urn: cannot draw " + std::to_string(n) + " balls from " + std::to_string(M));
    }
};

namespace detail {
inline long double log_choose(std::uint64_t n, std::uint64_t k) {
    return std::lgamma(static_cast<long double>(n) + 1) - std::lgamma(static_cast<long double>(k) + 1) -
           std::lgamma(static_cast<long double>(n - k) + 1);
}
}  // namespace detail

/// P(n1 white among n) = C(M1, n1) C(M2, n - n1) / C(M, n). Impossible
/// configurations have probability 0.
inline double hypergeometric_pmf(const UrnSpec& urn, std::uint64_t n1) {
    urn.validate();
    if (n1 > urn.n) throw ValidationError("hypergeometric_pmf: n1 exceeds n");
    const std::uint64_t n2 = urn.n - n1;
    if (n1 > urn.M1 || n2 > urn.M2()) return 0.0;
    const long double lp =
        detail::log_choose(urn.M1, n1) + detail::log_choose(urn.M2(), n2) - detail::log_choose(urn.M, urn.n);
    return static_cast<double>(std::exp(lp));
}

inline double binomial_pmf(std::uint64_t n, double p, std::uint64_t n1) {
    if (!(p >= 0 && p <= 1)) throw DomainError("binomial_pmf: p outside [0, 1]");
    if (n1 > n) return 0.0;
    if (p == 0) return n1 == 0 ? 1.0 : 0.0;
    if (p == 1) return n1 == n ? 1.0 : 0.0;
    const long double lp = detail::log_choose(n, n1) + static_cast<long double>(n1) * std::log(static_cast<long double>(p)) +
                           static_cast<long double>(n - n1) * std::log1p(-static_cast<long double>(p));
    return static_cast<double>(std::exp(lp));
}

/// Total-variation distance between the hypergeometric law of the urn and
/// binomial(n, M1/M).
inline double hypergeometric_binomial_tv(const UrnSpec& urn) {
    urn.validate();
    const double p = urn.white_fraction();
    long double sum = 0;
    for (std::uint64_t j = 0; j <= urn.n; ++j)
        sum += std::fabs(static_cast<long double>(hypergeometric_pmf(urn, j)) - binomial_pmf(urn.n, p, j));
    return static_cast<double>(sum / 2);
}

}  // namespace primelab
