#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

namespace primelab::quad {

/// Gauss-Legendre nodes and weights on [-1, 1], only the non-negative half
/// (the rule is symmetric). Computed once per order by Newton iteration on
/// P_n in long double.
struct GaussLegendreRule {
    std::vector<long double> nodes;
    std::vector<long double> weights;
};

inline GaussLegendreRule make_gauss_legendre(std::size_t n) {
    GaussLegendreRule rule;
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        long double z = std::cos(std::numbers::pi_v<long double> * (static_cast<long double>(i) + 0.75L) /
                                 (static_cast<long double>(n) + 0.5L));
        long double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            long double p1 = 1, p2 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                const long double p3 = p2;
                p2 = p1;
                p1 = ((2.0L * j - 1.0L) * z * p2 - (j - 1.0L) * p3) / static_cast<long double>(j);
            }
            dp = static_cast<long double>(n) * (z * p1 - p2) / (z * z - 1.0L);
            const long double dz = p1 / dp;
            z -= dz;
            if (std::fabs(dz) < 4 * std::numeric_limits<long double>::epsilon()) break;
        }
        rule.nodes.push_back(z);
        rule.weights.push_back(2.0L / ((1.0L - z * z) * dp * dp));
    }
    return rule;
}

inline const GaussLegendreRule& gauss_legendre_20() {
    static const GaussLegendreRule rule = make_gauss_legendre(20);
    return rule;
}

template <class Real, class F>
Real gauss_legendre_panel(const F& f, Real a, Real b, const GaussLegendreRule& rule) {
    const Real mid = (a + b) / 2;
    const Real half = (b - a) / 2;
    Real sum = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const Real dx = half * static_cast<Real>(rule.nodes[i]);
        const Real w = static_cast<Real>(rule.weights[i]);
        if (dx == 0)
            sum += w * f(mid);
        else
            sum += w * (f(mid - dx) + f(mid + dx));
    }
    return sum * half;
}

template <class Real>
struct QuadResult {
    Real value = 0;
    Real error = 0;          ///< summed |coarse - refined| over accepted panels
    std::size_t panels = 0;
    bool converged = true;   ///< false if some panel hit max_depth or the panel cap above its share of tol
};

/// Adaptive composite Gauss-Legendre (20 points per panel). [a, b] starts as
/// `initial_panels` equal pieces; a panel is accepted when the 20-point value
/// and the sum over its two halves agree to within its share of `abs_tol`.
/// The refined (two-half) value is what gets accumulated.
template <class Real, class F>
QuadResult<Real> integrate(const F& f, Real a, Real b, Real abs_tol, std::size_t initial_panels = 16,
                           int max_depth = 40, std::size_t max_panels = std::size_t{1} << 20) {
    QuadResult<Real> out;
    if (!(b > a)) return out;
    const auto& rule = gauss_legendre_20();
    const Real total_width = b - a;
    struct Panel {
        Real lo, hi, whole;
        int depth;
    };
    std::vector<Panel> stack;
    const Real step = total_width / static_cast<Real>(initial_panels);
    for (std::size_t i = initial_panels; i-- > 0;) {
        const Real lo = a + step * static_cast<Real>(i);
        const Real hi = (i + 1 == initial_panels) ? b : a + step * static_cast<Real>(i + 1);
        stack.push_back({lo, hi, gauss_legendre_panel(f, lo, hi, rule), 0});
    }
    // Compensated accumulation keeps rounding well below the truncation error.
    Real sum = 0, carry = 0;
    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        const Real mid = (p.lo + p.hi) / 2;
        const Real left = gauss_legendre_panel(f, p.lo, mid, rule);
        const Real right = gauss_legendre_panel(f, mid, p.hi, rule);
        const Real refined = left + right;
        const Real diff = std::fabs(refined - p.whole);
        const Real share = abs_tol * (p.hi - p.lo) / total_width;
        // Below this, refinement only reshuffles rounding error.
        const Real noise = 64 * std::numeric_limits<Real>::epsilon() * (std::fabs(left) + std::fabs(right));
        if (diff <= share || diff <= noise || p.depth >= max_depth || out.panels + stack.size() >= max_panels ||
            !(mid > p.lo && mid < p.hi)) {
            if (diff > share && diff > noise) out.converged = false;
            const Real y = refined - carry;
            const Real t = sum + y;
            carry = (t - sum) - y;
            sum = t;
            out.error += diff;
            ++out.panels;
            continue;
        }
        stack.push_back({mid, p.hi, right, p.depth + 1});
        stack.push_back({p.lo, mid, left, p.depth + 1});
    }
    out.value = sum;
    return out;
}

}  // namespace primelab::quad
