#include <doctest.h>

#include <cmath>

#include "fuzzyclf/dataset.hpp"
#include "fuzzyclf/errors.hpp"
#include "fuzzyclf/theory.hpp"

using namespace fuzzyclf;

namespace {

GramMatrix identity(std::size_t m) {
    std::vector<double> v(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) v[i * m + i] = 1.0;
    return GramMatrix(m, std::move(v));
}

GramMatrix synthetic_gram(std::size_t m, KernelKind kind, std::uint64_t seed) {
    SyntheticConfig cfg;
    cfg.n = m;
    cfg.num_features = 10;
    cfg.seed = seed;
    const auto X = defuzzify_dataset(generate_synthetic(cfg), DefuzzSpec(DefuzzMethod::val));
    KernelSpec k;
    k.kind = kind;
    return GramMatrix(k.resolved(10), X);
}

}  // namespace

TEST_CASE("single point gives Lambda r on every draw") {
    const GramMatrix g(1, {4.0});
    const auto est = empirical_kernel_rademacher(g, 1.5, 1, 50, 3);
    CHECK(est.mean == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(est.std_error == doctest::Approx(0.0));
}

TEST_CASE("identity gram gives Lambda / sqrt(m) exactly") {
    for (std::size_t m : {1u, 4u, 25u, 100u}) {
        const auto est = empirical_kernel_rademacher(identity(m), 2.0, 1, 20, 1);
        CHECK(est.mean == doctest::Approx(2.0 / std::sqrt(static_cast<double>(m))).epsilon(1e-14));
    }
}

TEST_CASE("estimate shrinks with m on RBF grams") {
    const auto small = empirical_kernel_rademacher(synthetic_gram(200, KernelKind::rbf, 1), 1.0, 1, 100, 2);
    const auto large = empirical_kernel_rademacher(synthetic_gram(800, KernelKind::rbf, 1), 1.0, 1, 100, 2);
    CHECK(large.mean < small.mean);
}

TEST_CASE("estimate stays below the bound and grows with Lambda and K") {
    for (auto kind : {KernelKind::rbf, KernelKind::linear}) {
        const auto g = synthetic_gram(150, kind, 4);
        const double r = kernel_radius(g);
        double prev = 0.0;
        for (double lambda : {0.5, 1.0, 2.0}) {
            const auto est = empirical_kernel_rademacher(g, lambda, 3, 200, 9);
            CHECK(est.mean <= lemma1_bound(r, lambda, 3, 150) + 3 * est.std_error);
            CHECK(est.mean >= prev);
            prev = est.mean;
        }
        const auto k1 = empirical_kernel_rademacher(g, 1.0, 1, 200, 9);
        const auto k4 = empirical_kernel_rademacher(g, 1.0, 4, 200, 9);
        CHECK(k4.mean >= k1.mean);
    }
}

TEST_CASE("estimates are reproducible from the seed") {
    const auto g = synthetic_gram(60, KernelKind::rbf, 2);
    CHECK(empirical_kernel_rademacher(g, 1, 2, 30, 5).mean == empirical_kernel_rademacher(g, 1, 2, 30, 5).mean);
}

TEST_CASE("invalid gram matrices") {
    CHECK_THROWS_AS(empirical_kernel_rademacher(GramMatrix(2, {1, 0.5, 0.4, 1}), 1, 1, 10, 0), MatrixError);
    CHECK_THROWS_AS(empirical_kernel_rademacher(GramMatrix(2, {1, 2, 2, 1}), 1, 1, 200, 0), MatrixError);
    CHECK_THROWS_AS(empirical_kernel_rademacher(identity(3), 0, 1, 10, 0), DomainError);
    CHECK_THROWS_AS(empirical_kernel_rademacher(identity(3), 1, 0, 10, 0), DomainError);
}

TEST_CASE("lemma bound") {
    CHECK(lemma1_bound(1, 1, 1, 1) == 1.0);
    CHECK(lemma1_bound(2, 3, 5, 100) == doctest::Approx(3.0));
    CHECK(lemma1_bound(1.3, 0.7, 2, 400) == doctest::Approx(lemma1_bound(1.3, 0.7, 2, 100) / 2));
    CHECK_THROWS_AS(lemma1_bound(0, 1, 1, 1), DomainError);
}

TEST_CASE("generalization gap bound") {
    CHECK(theorem3_gap_bound(1, 1, 1, 1, 1, std::exp(-1.0), 2) == doctest::Approx(3.0));
    const double a = theorem3_gap_bound(3, 2, 1.5, 0.5, 4, 1.0, 50);
    CHECK(a == doctest::Approx(2 * 3 * 2 * std::sqrt(2 * 1.5 * 1.5 * 0.25 / 50)));
    CHECK(theorem3_gap_bound(3, 2, 1.5, 0.5, 4, 0.05, 400) ==
          doctest::Approx(theorem3_gap_bound(3, 2, 1.5, 0.5, 4, 0.05, 100) / 2));
    CHECK_THROWS_AS(theorem3_gap_bound(1, 1, 1, 1, 1, 0.0, 2), DomainError);
    CHECK_THROWS_AS(theorem3_gap_bound(1, 1, 1, 1, 1, 1.5, 2), DomainError);
}
