#include "fuzzyclf/defuzz.hpp"

#include <cmath>
#include <string>
#include <variant>

#include "fuzzyclf/errors.hpp"

namespace fuzzyclf {

std::string_view to_string(DefuzzMethod method) noexcept {
    switch (method) {
        case DefuzzMethod::mom: return "mom";
        case DefuzzMethod::cog: return "cog";
        case DefuzzMethod::alc: return "alc";
        case DefuzzMethod::val: return "val";
        case DefuzzMethod::m1: return "m1";
        case DefuzzMethod::m2: return "m2";
    }
    return "unknown";
}

DefuzzMethod parse_defuzz_method(std::string_view name) {
    for (auto m : {DefuzzMethod::mom, DefuzzMethod::cog, DefuzzMethod::alc, DefuzzMethod::val,
                   DefuzzMethod::m1, DefuzzMethod::m2}) {
        if (name == to_string(m)) return m;
    }
    throw DomainError("unknown defuzzification method '" + std::string(name) +
                      "' (expected mom, cog, alc, val, m1 or m2)");
}

DefuzzSpec::DefuzzSpec(DefuzzMethod method_, int resolution_) : method(method_), resolution(resolution_) {
    if (resolution < 2) {
        throw DomainError("defuzzification resolution must be >= 2, got " + std::to_string(resolution));
    }
}

double mom(const FuzzyNumber& fz) {
    if (fz.kind() == FuzzyKind::gaussian) return fz.center();
    return 0.5 * (fz.b1() + fz.b2());
}

double cog(const FuzzyNumber& fz, int resolution) {
    switch (fz.kind()) {
        case FuzzyKind::crisp: return fz.center();
        case FuzzyKind::gaussian: return cog_quadrature(fz, resolution);
        case FuzzyKind::triangular:
            if (fz.a1() == fz.a2()) return fz.a1();
            return (fz.a1() + fz.b1() + fz.a2()) / 3.0;
        case FuzzyKind::trapezoidal: break;
    }
    const double a1 = fz.a1(), b1 = fz.b1(), b2 = fz.b2(), a2 = fz.a2();
    const double area = 0.5 * ((a2 - a1) + (b2 - b1));
    if (area == 0.0) return a1;
    // Left ramp, plateau and right ramp moments.
    const double moment = (b1 - a1) * (a1 + 2.0 * b1) / 6.0 + 0.5 * (b2 - b1) * (b2 + b1) +
                          (a2 - b2) * (a2 + 2.0 * b2) / 6.0;
    return moment / area;
}

double alc(const FuzzyNumber& fz, int /*resolution*/) {
    if (fz.kind() == FuzzyKind::gaussian || fz.kind() == FuzzyKind::crisp) return fz.center();
    return 0.25 * (fz.a1() + fz.b1() + fz.b2() + fz.a2());
}

double val(const FuzzyNumber& fz, int /*resolution*/) {
    if (fz.kind() == FuzzyKind::gaussian || fz.kind() == FuzzyKind::crisp) return fz.center();
    return (fz.a1() + 2.0 * fz.b1() + 2.0 * fz.b2() + fz.a2()) / 6.0;
}

double m1(const FuzzyNumber& fz) {
    if (fz.kind() == FuzzyKind::gaussian) {
        throw UnsupportedKindError("m1 is defined for trapezoidal, triangular and crisp values only");
    }
    if (fz.kind() == FuzzyKind::crisp) return fz.center();
    return 0.25 * (fz.a1() + fz.a2() + fz.b1() + fz.b2());
}

double m2(const Interval& iv) noexcept { return iv.midpoint(); }

double cog_quadrature(const FuzzyNumber& fz, int resolution) {
    if (resolution < 2) throw DomainError("quadrature resolution must be >= 2");
    const Interval s = support(fz);
    if (s.width() == 0.0) return s.lo;
    const double h = s.width() / (resolution - 1);
    double num = 0.0;
    double den = 0.0;
    for (int i = 0; i < resolution; ++i) {
        const double t = (i == resolution - 1) ? s.hi : s.lo + i * h;
        const double w = (i == 0 || i == resolution - 1) ? 0.5 : 1.0;
        const double mu = membership(fz, t);
        num += w * t * mu;
        den += w * mu;
    }
    if (den <= 0.0) throw NumericError("centre of gravity over zero membership mass", 0);
    return num / den;
}

namespace {

template <typename Weight>
double alpha_quadrature(const FuzzyNumber& fz, int resolution, Weight weight) {
    if (resolution < 2) throw DomainError("quadrature resolution must be >= 2");
    const double h = 1.0 / (resolution - 1);
    double sum = 0.0;
    for (int i = 0; i < resolution; ++i) {
        const double alpha = (i == resolution - 1) ? 1.0 : i * h;
        const Interval cut = (i == 0) ? support(fz) : alpha_cut(fz, alpha);
        const double w = (i == 0 || i == resolution - 1) ? 0.5 : 1.0;
        sum += w * weight(alpha) * (cut.lo + cut.hi);
    }
    return sum * h;
}

}  // namespace

double alc_quadrature(const FuzzyNumber& fz, int resolution) {
    return alpha_quadrature(fz, resolution, [](double) { return 0.5; });
}

double val_quadrature(const FuzzyNumber& fz, int resolution) {
    return alpha_quadrature(fz, resolution, [](double a) { return a; });
}

double defuzzify(const FuzzyNumber& fz, const DefuzzSpec& spec) {
    switch (spec.method) {
        case DefuzzMethod::mom: return mom(fz);
        case DefuzzMethod::cog: return cog(fz, spec.resolution);
        case DefuzzMethod::alc: return alc(fz, spec.resolution);
        case DefuzzMethod::val: return val(fz, spec.resolution);
        case DefuzzMethod::m1: return m1(fz);
        case DefuzzMethod::m2:
            throw UnsupportedKindError("m2 applies to interval features, got a " +
                                       std::string(to_string(fz.kind())) + " fuzzy number");
    }
    throw DomainError("unknown defuzzification method");
}

double defuzzify(const Feature& feature, const DefuzzSpec& spec) {
    if (const auto* fz = std::get_if<FuzzyNumber>(&feature)) return defuzzify(*fz, spec);
    if (spec.method != DefuzzMethod::m2) {
        throw UnsupportedKindError(std::string(to_string(spec.method)) +
                                   " needs fuzzy input; convert interval features first or use m2");
    }
    return m2(std::get<Interval>(feature));
}

namespace {

template <typename T>
std::vector<double> defuzzify_each(std::span<const T> fv, const DefuzzSpec& spec) {
    std::vector<double> out;
    out.reserve(fv.size());
    for (std::size_t j = 0; j < fv.size(); ++j) {
        try {
            out.push_back(defuzzify(fv[j], spec));
        } catch (const UnsupportedKindError& e) {
            throw UnsupportedKindError("feature " + std::to_string(j) + ": " + e.what());
        } catch (const Error& e) {
            throw Error("feature " + std::to_string(j) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace

std::vector<double> defuzzify_vector(std::span<const FuzzyNumber> fv, const DefuzzSpec& spec) {
    return defuzzify_each(fv, spec);
}

std::vector<double> defuzzify_vector(std::span<const Feature> fv, const DefuzzSpec& spec) {
    return defuzzify_each(fv, spec);
}

}  // namespace fuzzyclf
