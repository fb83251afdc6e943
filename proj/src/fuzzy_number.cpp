#include "fuzzyclf/fuzzy_number.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fuzzyclf/errors.hpp"

namespace fuzzyclf {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

}  // namespace

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    require_finite(lo, "interval bound");
    require_finite(hi, "interval bound");
    if (lo > hi) {
        throw DomainError("interval requires lo <= hi, got [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
    }
}

std::string_view to_string(FuzzyKind kind) noexcept {
    switch (kind) {
        case FuzzyKind::triangular: return "triangular";
        case FuzzyKind::trapezoidal: return "trapezoidal";
        case FuzzyKind::gaussian: return "gaussian";
        case FuzzyKind::crisp: return "crisp";
    }
    return "unknown";
}

FuzzyNumber FuzzyNumber::triangular(double a1, double b1, double a2) {
    require_finite(a1, "a1");
    require_finite(b1, "b1");
    require_finite(a2, "a2");
    if (!(a1 <= b1 && b1 <= a2)) {
        throw DomainError("triangular fuzzy number requires a1 <= b1 <= a2, got (" +
                          std::to_string(a1) + ", " + std::to_string(b1) + ", " +
                          std::to_string(a2) + ")");
    }
    return FuzzyNumber(FuzzyKind::triangular, {a1, b1, b1, a2});
}

FuzzyNumber FuzzyNumber::trapezoidal(double a1, double b1, double b2, double a2) {
    require_finite(a1, "a1");
    require_finite(b1, "b1");
    require_finite(b2, "b2");
    require_finite(a2, "a2");
    if (!(a1 <= b1 && b1 <= b2 && b2 <= a2)) {
        throw DomainError("trapezoidal fuzzy number requires a1 <= b1 <= b2 <= a2, got (" +
                          std::to_string(a1) + ", " + std::to_string(b1) + ", " +
                          std::to_string(b2) + ", " + std::to_string(a2) + ")");
    }
    return FuzzyNumber(FuzzyKind::trapezoidal, {a1, b1, b2, a2});
}

FuzzyNumber FuzzyNumber::gaussian(double center, double spread) {
    require_finite(center, "gaussian center");
    require_finite(spread, "gaussian spread");
    if (!(spread > 0.0)) {
        throw DomainError("gaussian fuzzy number requires spread > 0, got " + std::to_string(spread));
    }
    return FuzzyNumber(FuzzyKind::gaussian, {center, spread, 0.0, 0.0});
}

FuzzyNumber FuzzyNumber::crisp(double value) {
    require_finite(value, "crisp value");
    return FuzzyNumber(FuzzyKind::crisp, {value, value, value, value});
}

std::size_t FuzzyNumber::param_count(FuzzyKind kind) noexcept {
    switch (kind) {
        case FuzzyKind::triangular: return 3;
        case FuzzyKind::trapezoidal: return 4;
        case FuzzyKind::gaussian: return 2;
        case FuzzyKind::crisp: return 1;
    }
    return 0;
}

FuzzyNumber FuzzyNumber::from_params(FuzzyKind kind, std::span<const double> params) {
    if (params.size() != param_count(kind)) {
        throw DomainError(std::string(to_string(kind)) + " fuzzy number needs " +
                          std::to_string(param_count(kind)) + " parameters, got " +
                          std::to_string(params.size()));
    }
    switch (kind) {
        case FuzzyKind::triangular: return triangular(params[0], params[1], params[2]);
        case FuzzyKind::trapezoidal: return trapezoidal(params[0], params[1], params[2], params[3]);
        case FuzzyKind::gaussian: return gaussian(params[0], params[1]);
        case FuzzyKind::crisp: return crisp(params[0]);
    }
    throw DomainError("unknown fuzzy kind");
}

std::vector<double> FuzzyNumber::params() const {
    switch (kind_) {
        case FuzzyKind::triangular: return {p_[0], p_[1], p_[3]};
        case FuzzyKind::trapezoidal: return {p_[0], p_[1], p_[2], p_[3]};
        case FuzzyKind::gaussian: return {p_[0], p_[1]};
        case FuzzyKind::crisp: return {p_[0]};
    }
    return {};
}

FuzzyNumber FuzzyNumber::translated(double offset) const {
    switch (kind_) {
        case FuzzyKind::triangular: return triangular(p_[0] + offset, p_[1] + offset, p_[3] + offset);
        case FuzzyKind::trapezoidal:
            return trapezoidal(p_[0] + offset, p_[1] + offset, p_[2] + offset, p_[3] + offset);
        case FuzzyKind::gaussian: return gaussian(p_[0] + offset, p_[1]);
        case FuzzyKind::crisp: return crisp(p_[0] + offset);
    }
    return *this;
}

FuzzyNumber FuzzyNumber::scaled(double factor) const {
    if (!(factor > 0.0)) throw DomainError("scale factor must be positive");
    switch (kind_) {
        case FuzzyKind::triangular: return triangular(p_[0] * factor, p_[1] * factor, p_[3] * factor);
        case FuzzyKind::trapezoidal:
            return trapezoidal(p_[0] * factor, p_[1] * factor, p_[2] * factor, p_[3] * factor);
        case FuzzyKind::gaussian: return gaussian(p_[0] * factor, p_[1] * factor);
        case FuzzyKind::crisp: return crisp(p_[0] * factor);
    }
    return *this;
}

double membership(const FuzzyNumber& fz, double t) noexcept {
    if (fz.kind() == FuzzyKind::gaussian) {
        const double z = (t - fz.center()) / fz.spread();
        return std::exp(-0.5 * z * z);
    }
    const double a1 = fz.a1(), b1 = fz.b1(), b2 = fz.b2(), a2 = fz.a2();
    if (t < a1 || t > a2) return 0.0;
    if (t >= b1 && t <= b2) return 1.0;
    // The plateau test above catches degenerate ramps, so the divisions are safe.
    if (t < b1) return (t - a1) / (b1 - a1);
    return (a2 - t) / (a2 - b2);
}

Interval alpha_cut(const FuzzyNumber& fz, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw DomainError("alpha must lie in (0, 1], got " + std::to_string(alpha));
    }
    if (fz.kind() == FuzzyKind::gaussian) {
        const double half = fz.spread() * std::sqrt(-2.0 * std::log(alpha));
        return {fz.center() - half, fz.center() + half};
    }
    const double lo = fz.a1() + alpha * (fz.b1() - fz.a1());
    const double hi = fz.a2() - alpha * (fz.a2() - fz.b2());
    // Rounding can push lo past b1 (or hi below b2) by one ulp at alpha == 1.
    return {std::min(lo, fz.b1()), std::max(hi, fz.b2())};
}

Interval support(const FuzzyNumber& fz) {
    if (fz.kind() == FuzzyKind::gaussian) return alpha_cut(fz, kGaussianSupportAlpha);
    return {fz.a1(), fz.a2()};
}

}  // namespace fuzzyclf
