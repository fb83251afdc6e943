#pragma once

#include <array>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace fuzzyclf {

/// Closed real interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    /// Throws DomainError unless lo <= hi and both are finite.
    Interval(double lo, double hi);

    double midpoint() const noexcept { return 0.5 * (lo + hi); }
    double width() const noexcept { return hi - lo; }
    bool contains(double t) const noexcept { return lo <= t && t <= hi; }
    bool contains(const Interval& other) const noexcept { return lo <= other.lo && other.hi <= hi; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

enum class FuzzyKind { triangular, trapezoidal, gaussian, crisp };

std::string_view to_string(FuzzyKind kind) noexcept;

/// Membership value below which a Gaussian fuzzy number is treated as zero
/// when a bounded support is needed.
inline constexpr double kGaussianSupportAlpha = 1e-6;

/// A fuzzy number characterized by a small parameter tuple.
///
///   triangular  (a1, b1, a2)       a1 <= b1 <= a2
///   trapezoidal (a1, b1, b2, a2)   a1 <= b1 <= b2 <= a2
///   gaussian    (c, delta)         delta > 0
///   crisp       (c)
///
/// Values are immutable; the factories reject parameter tuples that violate
/// the ordering constraints. Ties are allowed, so triangular(c, c, c) is a
/// legal (crisp-like) value.
class FuzzyNumber {
public:
    static FuzzyNumber triangular(double a1, double b1, double a2);
    static FuzzyNumber trapezoidal(double a1, double b1, double b2, double a2);
    static FuzzyNumber gaussian(double center, double spread);
    static FuzzyNumber crisp(double value);

    /// Builds a number of the given kind from its parameter tuple, in the
    /// order listed above. Throws DomainError on a wrong count or ordering.
    static FuzzyNumber from_params(FuzzyKind kind, std::span<const double> params);

    /// Number of characterizing parameters for a kind (3, 4, 2, 1).
    static std::size_t param_count(FuzzyKind kind) noexcept;

    FuzzyKind kind() const noexcept { return kind_; }

    /// The characterizing parameters in canonical order.
    std::vector<double> params() const;

    /// Trapezoid view (a1, b1, b2, a2) for triangular, trapezoidal and crisp
    /// values. Only meaningful for those kinds.
    double a1() const noexcept { return p_[0]; }
    double b1() const noexcept { return p_[1]; }
    double b2() const noexcept { return p_[2]; }
    double a2() const noexcept { return p_[3]; }

    /// Center of a Gaussian or crisp value.
    double center() const noexcept { return p_[0]; }
    /// Spread (delta) of a Gaussian value.
    double spread() const noexcept { return p_[1]; }

    /// True for the piecewise-linear kinds (triangular, trapezoidal, crisp).
    bool is_piecewise_linear() const noexcept { return kind_ != FuzzyKind::gaussian; }

    /// The value shifted by `offset`.
    FuzzyNumber translated(double offset) const;
    /// The value scaled by `factor` > 0 about the origin.
    FuzzyNumber scaled(double factor) const;

    friend bool operator==(const FuzzyNumber&, const FuzzyNumber&) = default;

private:
    FuzzyNumber(FuzzyKind kind, std::array<double, 4> p) : kind_(kind), p_(p) {}

    FuzzyKind kind_ = FuzzyKind::crisp;
    // Piecewise-linear kinds store the trapezoid (a1, b1, b2, a2); triangular
    // keeps b2 == b1 and crisp keeps all four equal. Gaussian stores (c, delta, 0, 0).
    std::array<double, 4> p_{};
};

using FuzzyVector = std::vector<FuzzyNumber>;

/// One observed feature: a fuzzy number, or a raw interval awaiting
/// conversion (or midpoint defuzzification).
using Feature = std::variant<FuzzyNumber, Interval>;

/// Degree of membership of t, in [0, 1].
double membership(const FuzzyNumber& fz, double t) noexcept;

/// The alpha-cut {t : membership(t) >= alpha}. Throws DomainError unless
/// 0 < alpha <= 1.
Interval alpha_cut(const FuzzyNumber& fz, double alpha);

/// Closure of the set where membership is positive. Gaussian values are
/// truncated at the alpha-cut of kGaussianSupportAlpha.
Interval support(const FuzzyNumber& fz);

}  // namespace fuzzyclf
