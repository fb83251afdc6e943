#include <doctest.h>

#include <cmath>
#include <random>

#include "fuzzyclf/defuzz.hpp"
#include "fuzzyclf/errors.hpp"
#include "oracles.hpp"

using namespace fuzzyclf;

namespace {

constexpr DefuzzMethod kFuzzyMethods[] = {DefuzzMethod::mom, DefuzzMethod::cog, DefuzzMethod::alc,
                                          DefuzzMethod::val, DefuzzMethod::m1};

}  // namespace

TEST_CASE("listed values") {
    const auto t012 = FuzzyNumber::triangular(0, 1, 2);
    const auto t014 = FuzzyNumber::triangular(0, 1, 4);
    const auto z0134 = FuzzyNumber::trapezoidal(0, 1, 3, 4);
    CHECK(mom(t014) == 1.0);
    CHECK(mom(z0134) == 2.0);
    CHECK(mom(FuzzyNumber::gaussian(2.5, 0.3)) == 2.5);
    CHECK(cog(t012) == doctest::Approx(1.0));
    CHECK(cog(t014) == doctest::Approx(5.0 / 3.0));
    CHECK(cog(FuzzyNumber::trapezoidal(0, 1, 2, 3)) == doctest::Approx(1.5));
    CHECK(alc(t012) == doctest::Approx(1.0));
    CHECK(alc(t014) == doctest::Approx(1.5));
    CHECK(alc(z0134) == doctest::Approx(2.0));
    CHECK(val(t012) == doctest::Approx(1.0));
    CHECK(val(t014) == doctest::Approx(4.0 / 3.0));
    CHECK(val(FuzzyNumber::crisp(7)) == 7.0);
    CHECK(m1(z0134) == 2.0);
    CHECK(m1(t014) == 1.5);
    CHECK(m1(FuzzyNumber::crisp(5)) == 5.0);
    CHECK(m2(Interval(0, 2)) == 1.0);
    CHECK(m2(Interval(3, 3)) == 3.0);
    CHECK(m2(Interval(-1, 4)) == 1.5);
}

TEST_CASE("listed values agree with the quadrature oracles") {
    const auto t014 = FuzzyNumber::triangular(0, 1, 4);
    CHECK(std::abs(oracle::cog(t014) - 5.0 / 3.0) < 1e-9);
    const auto a = oracle::alpha_integrals(t014);
    CHECK(std::abs(a.alc - 1.5) < 1e-9);
    CHECK(std::abs(a.val - 4.0 / 3.0) < 1e-9);
    const auto l = oracle::level_set_integrals(t014, 1.0);
    CHECK(std::abs(l.alc - 1.5) < 1e-9);
    CHECK(std::abs(l.val - 4.0 / 3.0) < 1e-9);
}

TEST_CASE("m1 rejects gaussian input") {
    CHECK_THROWS_AS(m1(FuzzyNumber::gaussian(0, 1)), UnsupportedKindError);
    CHECK_THROWS_AS(defuzzify(FuzzyNumber::gaussian(0, 1), DefuzzSpec(DefuzzMethod::m1)), UnsupportedKindError);
}

TEST_CASE("intervals accept only m2 and fuzzy numbers reject it") {
    const Feature iv = Interval(0, 2);
    CHECK(defuzzify(iv, DefuzzSpec(DefuzzMethod::m2)) == 1.0);
    CHECK_THROWS_AS(defuzzify(iv, DefuzzSpec(DefuzzMethod::val)), UnsupportedKindError);
    CHECK_THROWS_AS(defuzzify(FuzzyNumber::crisp(1), DefuzzSpec(DefuzzMethod::m2)), UnsupportedKindError);
}

TEST_CASE("resolution below 2 is rejected") {
    CHECK_THROWS_AS(DefuzzSpec(DefuzzMethod::cog, 1), DomainError);
    CHECK_NOTHROW(DefuzzSpec(DefuzzMethod::cog, 2));
}

TEST_CASE("vector defuzzification") {
    const FuzzyVector v{FuzzyNumber::triangular(0, 1, 2), FuzzyNumber::crisp(3)};
    const auto out = defuzzify_vector(v, DefuzzSpec(DefuzzMethod::val));
    REQUIRE(out.size() == 2);
    CHECK(out[0] == doctest::Approx(1.0));
    CHECK(out[1] == 3.0);
    const FuzzyVector one{FuzzyNumber::triangular(0, 1, 4)};
    CHECK(defuzzify_vector(one, DefuzzSpec(DefuzzMethod::cog))[0] == doctest::Approx(5.0 / 3.0));
    const FuzzyVector plateau{FuzzyNumber::trapezoidal(0, 1, 3, 4)};
    CHECK(defuzzify_vector(plateau, DefuzzSpec(DefuzzMethod::mom))[0] == 2.0);
    const FuzzyVector bad{FuzzyNumber::crisp(0), FuzzyNumber::gaussian(0, 1)};
    try {
        defuzzify_vector(bad, DefuzzSpec(DefuzzMethod::m1));
        FAIL("expected an error");
    } catch (const UnsupportedKindError& e) {
        CHECK(std::string(e.what()).find("feature 1") != std::string::npos);
    }
}

TEST_CASE("crisp fixed point is exact for every method") {
    for (double c : {-3.25, 0.0, 1e-7, 17.5}) {
        const auto fz = FuzzyNumber::crisp(c);
        for (auto m : kFuzzyMethods) CHECK(defuzzify(fz, DefuzzSpec(m)) == c);
    }
}

TEST_CASE("symmetric shapes return the axis of symmetry") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> loc(-20, 20), w(0.01, 5);
    for (int i = 0; i < 200; ++i) {
        const double c = loc(rng), l = w(rng), p = w(rng);
        const auto tri = FuzzyNumber::triangular(c - l, c, c + l);
        const auto trap = FuzzyNumber::trapezoidal(c - l - p, c - p, c + p, c + l + p);
        for (auto m : kFuzzyMethods) {
            CHECK(defuzzify(tri, DefuzzSpec(m)) == doctest::Approx(c).epsilon(1e-12));
            CHECK(defuzzify(trap, DefuzzSpec(m)) == doctest::Approx(c).epsilon(1e-12));
        }
        const auto g = FuzzyNumber::gaussian(c, l);
        for (auto m : {DefuzzMethod::mom, DefuzzMethod::cog, DefuzzMethod::alc, DefuzzMethod::val}) {
            CHECK(std::abs(defuzzify(g, DefuzzSpec(m)) - c) < 1e-9 * (1 + std::abs(c)));
        }
    }
}

TEST_CASE("defuzzified values lie within the support") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 1500; ++i) {
        const auto fz = i % 3 == 0   ? oracle::random_triangular(rng)
                        : i % 3 == 1 ? oracle::random_trapezoidal(rng)
                                     : oracle::random_gaussian(rng);
        const auto s = support(fz);
        for (auto m : kFuzzyMethods) {
            if (m == DefuzzMethod::m1 && !fz.is_piecewise_linear()) continue;
            const double v = defuzzify(fz, DefuzzSpec(m));
            REQUIRE(v >= s.lo - 1e-12);
            REQUIRE(v <= s.hi + 1e-12);
        }
    }
}

TEST_CASE("translation and positive scaling equivariance") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> shift(-100, 100), scale(0.01, 20);
    for (int i = 0; i < 1000; ++i) {
        const auto fz = i % 3 == 0   ? oracle::random_triangular(rng)
                        : i % 3 == 1 ? oracle::random_trapezoidal(rng)
                                     : oracle::random_gaussian(rng);
        const double t = shift(rng), s = scale(rng);
        for (auto m : kFuzzyMethods) {
            if (m == DefuzzMethod::m1 && !fz.is_piecewise_linear()) continue;
            const DefuzzSpec spec(m);
            const double base = defuzzify(fz, spec);
            REQUIRE(std::abs(defuzzify(fz.translated(t), spec) - (base + t)) <= 1e-9 * (1 + std::abs(base + t)));
            REQUIRE(std::abs(defuzzify(fz.scaled(s), spec) - s * base) <= 1e-9 * (1 + std::abs(s * base)));
        }
    }
}

TEST_CASE("closed forms match high-resolution quadrature") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 40; ++i) {
        const auto fz = i % 2 == 0 ? oracle::random_triangular(rng) : oracle::random_trapezoidal(rng);
        REQUIRE(std::abs(cog(fz) - oracle::cog(fz)) < 1e-6);
        const auto a = oracle::alpha_integrals(fz);
        REQUIRE(std::abs(alc(fz) - a.alc) < 1e-6);
        REQUIRE(std::abs(val(fz) - a.val) < 1e-6);
        const auto l = oracle::level_set_integrals(fz, fz.b1());
        REQUIRE(std::abs(alc(fz) - l.alc) < 1e-6);
        REQUIRE(std::abs(val(fz) - l.val) < 1e-6);
        REQUIRE(std::abs(mom(fz) - oracle::mom_grid(fz)) < 1e-6);
    }
}

TEST_CASE("library quadrature forms converge to the closed forms") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 50; ++i) {
        const auto fz = i % 2 == 0 ? oracle::random_triangular(rng) : oracle::random_trapezoidal(rng);
        const double w = support(fz).width() + 1.0;
        CHECK(std::abs(cog_quadrature(fz, 20001) - cog(fz)) < 1e-5 * w);
        CHECK(std::abs(alc_quadrature(fz, 2001) - alc(fz)) < 1e-9 * w);
        CHECK(std::abs(val_quadrature(fz, 2001) - val(fz)) < 1e-6 * w);
    }
}

TEST_CASE("gaussian centre of gravity by quadrature stays at the centre") {
    const auto g = FuzzyNumber::gaussian(3, 0.5);
    CHECK(cog(g) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(std::abs(oracle::cog(g) - 3.0) < 1e-9);
}

TEST_CASE("method names round trip") {
    for (auto m : {DefuzzMethod::mom, DefuzzMethod::cog, DefuzzMethod::alc, DefuzzMethod::val, DefuzzMethod::m1,
                   DefuzzMethod::m2}) {
        CHECK(parse_defuzz_method(to_string(m)) == m);
    }
    CHECK_THROWS_AS(parse_defuzz_method("median"), DomainError);
}
