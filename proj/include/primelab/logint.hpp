#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>

#include "primelab/errors.hpp"
#include "primelab/quadrature.hpp"

namespace primelab {

/// Li_k(x) = integral over [2, x] of dt / ln^k(t), with an absolute error bound.
struct LiValue {
    double x = 2;
    int k = 1;
    double value = 0;
    double error_bound = 0;
};

enum class ToleranceMode { relative, absolute };

/// li(2) = 1.04516..., the offset between the standard logarithmic integral
/// (principal value from 0) and Li_1 as defined here.
inline constexpr double kLiOfTwo = 1.045163780117492784844588889194613136522615578151;

namespace detail {

struct LongLi {
    long double value = 0;
    long double error = 0;  // truncation estimate + rounding allowance, absolute
    bool converged = true;
};

inline void check_li_args(double x, int k) {
    if (!(x >= 2)) throw DomainError("Li_k(x) requires x >= 2, got x = " + std::to_string(x));
    if (k < 1) throw DomainError("Li_k(x) requires k >= 1, got k = " + std::to_string(k));
}

/// Works in u = ln t, where the integrand e^u / u^k is smooth on [ln 2, ln x].
/// Panels of width <= 1/2 in u are log-spaced in t.
inline LongLi li_long(double x, int k, long double abs_target) {
    check_li_args(x, k);
    LongLi out;
    if (x == 2) return out;
    const long double lo = std::log(2.0L);
    const long double hi = std::log(static_cast<long double>(x));
    const auto panels = static_cast<std::size_t>(std::ceil((hi - lo) / 0.5L)) + 1;
    auto integrand = [k](long double u) { return std::exp(u) / std::pow(u, static_cast<long double>(k)); };
    const auto r = quad::integrate<long double>(integrand, lo, hi, abs_target, panels);
    out.value = r.value;
    out.converged = r.converged;
    const long double rounding =
        std::fabs(r.value) * 64 * static_cast<long double>(r.panels) * std::numeric_limits<long double>::epsilon();
    out.error = r.error + rounding;
    return out;
}

}  // namespace detail

/// Li_k(x) to the requested tolerance (relative to the value by default).
/// Throws PrecisionError when the bound cannot be brought under `tol` at
/// working precision; the exception carries the best bound achieved.
inline LiValue li(double x, int k = 1, double tol = 1e-6, ToleranceMode mode = ToleranceMode::relative) {
    detail::check_li_args(x, k);
    if (!(tol > 0)) throw DomainError("tolerance must be positive");
    LiValue out{x, k, 0.0, 0.0};
    if (x == 2) return out;

    // Rough magnitude for the relative target; tightened by a factor so the
    // reported bound (truncation + rounding) still fits under tol.
    const auto rough = detail::li_long(x, k, 1e-3L * static_cast<long double>(x));
    const long double scale = mode == ToleranceMode::relative ? std::fabs(rough.value) : 1.0L;
    const long double target = static_cast<long double>(tol) * scale;
    const auto r = detail::li_long(x, k, target / 4);

    out.value = static_cast<double>(r.value);
    const long double to_double = std::fabs(r.value) * std::numeric_limits<double>::epsilon() / 2;
    const long double bound = r.error + to_double + std::fabs(static_cast<long double>(out.value) - r.value);
    out.error_bound = static_cast<double>(bound);
    if (bound > target) {
        throw PrecisionError("Li_" + std::to_string(k) + "(" + std::to_string(x) + "): tolerance " +
                                 std::to_string(tol) + " unreachable, best bound " + std::to_string(out.error_bound),
                             out.error_bound);
    }
    return out;
}

/// Li_k(x) - x/ln^k(x) - k Li_{k+1}(x). Integration by parts makes this the
/// constant -2/ln^k(2) for every x >= 2, so any drift measures quadrature error.
inline double ibp_identity_defect(double x, int k) {
    detail::check_li_args(x, k);
    const long double a = detail::li_long(x, k, 1e-13L).value;
    const long double b = detail::li_long(x, k + 1, 1e-13L).value;
    const long double lx = std::log(static_cast<long double>(x));
    return static_cast<double>(a - static_cast<long double>(x) / std::pow(lx, k) - k * b);
}

/// The constant that ibp_identity_defect(x, k) must equal.
inline double ibp_identity_constant(int k) { return -2.0 / std::pow(std::numbers::ln2, k); }

}  // namespace primelab
