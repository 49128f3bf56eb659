#pragma once

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "primelab/errors.hpp"
#include "primelab/models.hpp"
#include "primelab/pattern.hpp"
#include "primelab/quadrature.hpp"

namespace primelab {

enum class DensityKind {
    count_normal,     ///< X1 ~ N(a, sigma)
    count_truncated,  ///< X2: normal folded onto (-inf, a], density doubled
    density_Y,        ///< Y = X2 / x
    gap_Z,            ///< Z = 1 / Y, support [c, inf) with c = x / Li(x)
    tuple_count_J,    ///< J ~ N(M_J, sigma_J)
    tuple_density_G,  ///< G = J / x
    tuple_gap_H,      ///< H = 1 / G
};

inline constexpr DensityKind kAllDensityKinds[] = {
    DensityKind::count_normal,  DensityKind::count_truncated, DensityKind::density_Y,  DensityKind::gap_Z,
    DensityKind::tuple_count_J, DensityKind::tuple_density_G, DensityKind::tuple_gap_H,
};

inline const char* to_string(DensityKind k) {
    switch (k) {
        case DensityKind::count_normal: return "count_normal";
        case DensityKind::count_truncated: return "count_truncated";
        case DensityKind::density_Y: return "density_Y";
        case DensityKind::gap_Z: return "gap_Z";
        case DensityKind::tuple_count_J: return "tuple_count_J";
        case DensityKind::tuple_density_G: return "tuple_density_G";
        case DensityKind::tuple_gap_H: return "tuple_gap_H";
    }
    return "?";
}

inline DensityKind parse_density_kind(std::string_view s) {
    for (auto k : kAllDensityKinds)
        if (s == to_string(k)) return k;
    throw ValidationError("unknown density kind '" + std::string(s) + "'");
}

inline bool is_tuple_kind(DensityKind k) {
    return k == DensityKind::tuple_count_J || k == DensityKind::tuple_density_G || k == DensityKind::tuple_gap_H;
}

inline bool is_gap_kind(DensityKind k) { return k == DensityKind::gap_Z || k == DensityKind::tuple_gap_H; }

/// log10 of the Skewes number x0 ~ 1.397e316 (too large for a double). Below
/// x0 the count variable is the truncated X2; at or above it, the plain normal.
inline constexpr double kSkewesLog10 = 316.14520;

inline bool below_skewes(double x) { return std::log10(x) < kSkewesLog10; }

namespace detail {
inline double std_normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }
inline double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }
inline double std_normal_quantile(double p) { return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p); }
}  // namespace detail

/// A closed-form density for one of the count, density or gap variables.
///
/// `location` and `scale` are those of the underlying normal law: (a, sigma)
/// for the count kinds, (b = a/x, sigma/x) for Y and Z, (M_J, sigma_J) for J
/// and (M_G, sigma_G) for G and H. Gap kinds are reciprocals of that law.
class GapDensity {
public:
    GapDensity(DensityKind kind, double location, double scale) : kind_(kind), location_(location), scale_(scale) {
        if (!(scale > 0) || !std::isfinite(scale)) throw ValidationError("density scale must be positive");
        if (is_gap_kind(kind) && !(location > 0)) throw ValidationError("gap density needs a positive location");
    }

    [[nodiscard]] DensityKind kind() const noexcept { return kind_; }
    [[nodiscard]] double location() const noexcept { return location_; }
    [[nodiscard]] double scale() const noexcept { return scale_; }

    /// Support [lower, upper]; infinities where unbounded.
    [[nodiscard]] double support_lower() const noexcept {
        switch (kind_) {
            case DensityKind::gap_Z: return 1.0 / location_;
            case DensityKind::tuple_gap_H: return 0.0;
            default: return -std::numeric_limits<double>::infinity();
        }
    }
    [[nodiscard]] double support_upper() const noexcept {
        if (truncated()) return location_;
        return std::numeric_limits<double>::infinity();
    }

    [[nodiscard]] double pdf(double t) const {
        switch (kind_) {
            case DensityKind::count_normal:
            case DensityKind::tuple_count_J:
            case DensityKind::tuple_density_G:
                return detail::std_normal_pdf(z(t)) / scale_;
            case DensityKind::count_truncated:
            case DensityKind::density_Y:
                return t <= location_ ? 2.0 * detail::std_normal_pdf(z(t)) / scale_ : 0.0;
            case DensityKind::gap_Z:
                if (!(t >= support_lower())) return 0.0;
                return 2.0 * detail::std_normal_pdf(z(1.0 / t)) / (t * t * scale_);
            case DensityKind::tuple_gap_H:
                if (!(t > 0)) return 0.0;
                return detail::std_normal_pdf(z(1.0 / t)) / (t * t * scale_);
        }
        return 0.0;
    }

    [[nodiscard]] double cdf(double t) const {
        switch (kind_) {
            case DensityKind::count_normal:
            case DensityKind::tuple_count_J:
            case DensityKind::tuple_density_G:
                return detail::std_normal_cdf(z(t));
            case DensityKind::count_truncated:
            case DensityKind::density_Y:
                return t <= location_ ? 2.0 * detail::std_normal_cdf(z(t)) : 1.0;
            case DensityKind::gap_Z:
                // P(1/t <= Y <= b)
                if (!(t >= support_lower())) return 0.0;
                if (std::isinf(t)) return 1.0 - 2.0 * detail::std_normal_cdf(-location_ / scale_);
                return 1.0 - 2.0 * detail::std_normal_cdf(z(1.0 / t));
            case DensityKind::tuple_gap_H:
                // P(G >= 1/t)
                if (!(t > 0)) return 0.0;
                if (std::isinf(t)) return detail::std_normal_cdf(location_ / scale_);
                return detail::std_normal_cdf(-z(1.0 / t));
        }
        return 0.0;
    }

    /// Inverse CDF for p in (0, 1).
    [[nodiscard]] double quantile(double p) const {
        if (!(p > 0 && p < 1)) throw DomainError("quantile requires p in (0, 1)");
        switch (kind_) {
            case DensityKind::count_normal:
            case DensityKind::tuple_count_J:
            case DensityKind::tuple_density_G:
                return location_ + scale_ * detail::std_normal_quantile(p);
            case DensityKind::count_truncated:
            case DensityKind::density_Y:
                return location_ + scale_ * detail::std_normal_quantile(p / 2.0);
            case DensityKind::gap_Z:
                return 1.0 / (location_ + scale_ * detail::std_normal_quantile((1.0 - p) / 2.0));
            case DensityKind::tuple_gap_H:
                return 1.0 / (location_ + scale_ * detail::std_normal_quantile(1.0 - p));
        }
        return 0.0;
    }

    /// Point of maximum density. For gap_Z the truncation pins it to c; for H
    /// it solves u^2 - M_G u - 2 sigma_G^2 = 0 in u = 1/h, which lies slightly
    /// below nominal_center().
    [[nodiscard]] double mode() const {
        switch (kind_) {
            case DensityKind::gap_Z: return 1.0 / location_;
            case DensityKind::tuple_gap_H: {
                const double m = location_, s = scale_;
                return 2.0 / (m + std::sqrt(m * m + 8.0 * s * s));
            }
            default: return location_;
        }
    }

    /// The model's point estimate: a, b, M_J, M_G, c = 1/b or M_H = 1/M_G.
    [[nodiscard]] double nominal_center() const noexcept {
        return is_gap_kind(kind_) ? 1.0 / location_ : location_;
    }

    /// Mean of the law; closed form for normal kinds. Gap kinds integrate
    /// 1/v against the underlying normal in the standardized variable (well
    /// conditioned, unlike t * pdf(t)), over the same effective support: the
    /// far tail near v = 0 carries mass ~ Phi(-location/scale) and would make
    /// the exact mean diverge.
    [[nodiscard]] double mean() const {
        switch (kind_) {
            case DensityKind::count_truncated:
            case DensityKind::density_Y:
                return location_ - scale_ * std::sqrt(2.0 / std::numbers::pi);
            case DensityKind::gap_Z:
            case DensityKind::tuple_gap_H: {
                const double zlo = -std::min(40.0, 0.5 * location_ / scale_);
                const double zhi = kind_ == DensityKind::gap_Z ? 0.0 : 40.0;
                const double weight = kind_ == DensityKind::gap_Z ? 2.0 : 1.0;
                auto f = [this, weight](double z) {
                    return weight * detail::std_normal_pdf(z) / (location_ + scale_ * z);
                };
                return quad::integrate<double>(f, zlo, zhi, 1e-13 * nominal_center(), 64).value;
            }
            default: return location_;
        }
    }

    /// Finite interval holding all but a negligible (< 1e-15) share of mass;
    /// used for quadrature and plotting.
    [[nodiscard]] double effective_lower() const {
        constexpr double w = 40.0;
        switch (kind_) {
            case DensityKind::gap_Z: return support_lower();
            case DensityKind::tuple_gap_H: return 1.0 / (location_ + w * scale_);
            default: return location_ - w * scale_;
        }
    }
    [[nodiscard]] double effective_upper() const {
        constexpr double w = 40.0;
        switch (kind_) {
            case DensityKind::gap_Z:
            case DensityKind::tuple_gap_H: {
                // keep the reciprocal finite when the law sits close to 0
                const double u = location_ - std::min(w, 0.5 * location_ / scale_) * scale_;
                return 1.0 / u;
            }
            case DensityKind::count_truncated:
            case DensityKind::density_Y: return location_;
            default: return location_ + w * scale_;
        }
    }

    /// Endpoints x/(mean + s sigma) and x/(mean - s sigma) of the gap variable,
    /// i.e. the image of the count variable's +-s sigma band.
    [[nodiscard]] std::pair<double, double> interval_endpoints(double s) const {
        if (!is_gap_kind(kind_)) throw ValidationError("interval endpoints need a gap density (gap_Z or tuple_gap_H)");
        if (!(s > 0)) throw DomainError("interval width s must be positive");
        if (s * scale_ >= location_) throw DomainError("degenerate interval: s * sigma >= mean");
        return {1.0 / (location_ + s * scale_), 1.0 / (location_ - s * scale_)};
    }

    /// Mass of the gap variable between the interval endpoints. Bijections
    /// preserve probability, so this equals the count variable's mass on
    /// [mean - s sigma, mean + s sigma], i.e. 2 Phi(s) - 1.
    [[nodiscard]] double interval_probability(double s) const {
        const auto [lo, hi] = interval_endpoints(s);
        return cdf(hi) - cdf(lo);
    }

    /// Scale of the density variable (sigma/x or sigma_G), which tends to 0 as
    /// x grows: Y and G converge in probability to their means.
    [[nodiscard]] double convergence_scale() const {
        if (kind_ == DensityKind::count_normal || kind_ == DensityKind::count_truncated ||
            kind_ == DensityKind::tuple_count_J)
            throw ValidationError("convergence_scale is defined for density and gap kinds");
        return scale_;
    }

private:
    [[nodiscard]] bool truncated() const noexcept {
        return kind_ == DensityKind::count_truncated || kind_ == DensityKind::density_Y;
    }
    [[nodiscard]] double z(double v) const noexcept { return (v - location_) / scale_; }

    DensityKind kind_;
    double location_;
    double scale_;
};

/// Builds the density of `kind` at x from the model statistics. Prime kinds
/// use the first (binomial) model; tuple kinds need a pattern (twins default).
inline GapDensity make_density(DensityKind kind, double x, const std::optional<TuplePattern>& pattern = std::nullopt) {
    if (is_tuple_kind(kind)) {
        const auto stats = tuple_stats(pattern.value_or(TuplePattern::twins()), x);
        switch (kind) {
            case DensityKind::tuple_count_J: return {kind, stats.mean, stats.sigma};
            default: return {kind, stats.mean / x, stats.sigma / x};
        }
    }
    const auto stats = model1_stats(x);
    switch (kind) {
        case DensityKind::count_normal:
        case DensityKind::count_truncated: return {kind, stats.mean, stats.sigma};
        default: return {kind, stats.mean / x, stats.sigma / x};
    }
}

/// The count variable applicable at x: truncated below the Skewes number.
inline GapDensity prime_count_density(double x) {
    return make_density(below_skewes(x) ? DensityKind::count_truncated : DensityKind::count_normal, x);
}

}  // namespace primelab
