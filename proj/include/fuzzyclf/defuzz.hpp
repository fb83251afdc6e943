#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzyclf/fuzzy_number.hpp"

namespace fuzzyclf {

/// Defuzzification operators.
///
///   mom  mean of the maximizers of the membership function
///   cog  centre of gravity, integral of t*mu(t) over integral of mu(t)
///   alc  flat average of alpha-cut midpoints, 1/2 * int_0^1 (L + U) dalpha
///   val  alpha-weighted average, int_0^1 alpha * (L + U) dalpha
///   m1   mean of the four trapezoid parameters (baseline for fuzzy data)
///   m2   interval midpoint (baseline for interval data)
enum class DefuzzMethod { mom, cog, alc, val, m1, m2 };

std::string_view to_string(DefuzzMethod method) noexcept;
/// Parses the lowercase names above. Throws DomainError on anything else.
DefuzzMethod parse_defuzz_method(std::string_view name);

inline constexpr int kDefaultResolution = 1001;

/// A defuzzifier together with the number of quadrature levels used by the
/// integral forms when no closed form applies.
struct DefuzzSpec {
    DefuzzMethod method = DefuzzMethod::val;
    int resolution = kDefaultResolution;

    DefuzzSpec() = default;
    /// Throws DomainError when resolution < 2.
    DefuzzSpec(DefuzzMethod method, int resolution = kDefaultResolution);
};

double mom(const FuzzyNumber& fz);
double cog(const FuzzyNumber& fz, int resolution = kDefaultResolution);
double alc(const FuzzyNumber& fz, int resolution = kDefaultResolution);
double val(const FuzzyNumber& fz, int resolution = kDefaultResolution);
/// Throws UnsupportedKindError for Gaussian input.
double m1(const FuzzyNumber& fz);
double m2(const Interval& iv) noexcept;

/// Centre of gravity by composite trapezoid quadrature over support(fz) with
/// `resolution` sample points. Used for kinds without a closed form.
double cog_quadrature(const FuzzyNumber& fz, int resolution);
/// int_0^1 w(alpha) * (L(alpha) + U(alpha)) dalpha by composite trapezoid
/// quadrature, with w = 1/2 (alc) or w = alpha (val). The alpha = 0 endpoint
/// uses the support.
double alc_quadrature(const FuzzyNumber& fz, int resolution);
double val_quadrature(const FuzzyNumber& fz, int resolution);

/// Applies one defuzzifier to a fuzzy number. m2 is rejected here since it
/// is defined on intervals only.
double defuzzify(const FuzzyNumber& fz, const DefuzzSpec& spec);

/// Applies one defuzzifier to a feature. Intervals accept only m2; every
/// other method needs the interval converted to a fuzzy number first.
double defuzzify(const Feature& feature, const DefuzzSpec& spec);

/// Componentwise defuzzification. Errors carry the offending feature index.
std::vector<double> defuzzify_vector(std::span<const FuzzyNumber> fv, const DefuzzSpec& spec);
std::vector<double> defuzzify_vector(std::span<const Feature> fv, const DefuzzSpec& spec);

}  // namespace fuzzyclf
