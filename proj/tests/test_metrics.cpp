#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "fuzzyclf/errors.hpp"
#include "fuzzyclf/metrics.hpp"
#include "oracles.hpp"

using namespace fuzzyclf;

TEST_CASE("accuracy") {
    const std::vector<int> seven{0, 1, 2, 3, 4, 0, 1};
    CHECK(accuracy(seven, seven) == 1.0);
    CHECK(accuracy(std::vector<int>{0, 1, 2}, std::vector<int>{0, 1, 1}) == doctest::Approx(2.0 / 3.0));
    CHECK(accuracy(std::vector<int>{1, 0}, std::vector<int>{0, 1}) == 0.0);
    CHECK_THROWS_AS(accuracy(std::vector<int>{}, std::vector<int>{}), DomainError);
    CHECK_THROWS_AS(accuracy(std::vector<int>{1}, std::vector<int>{1, 2}), DomainError);
}

TEST_CASE("balanced accuracy") {
    const std::vector<int> t{0, 1, 2, 2};
    CHECK(balanced_accuracy(t, t, 3) == 1.0);
    CHECK(balanced_accuracy(std::vector<int>{0, 0, 0, 0}, std::vector<int>{0, 0, 1, 1}, 2) == 0.5);
    CHECK_THROWS_AS(balanced_accuracy(std::vector<int>{0, 0}, std::vector<int>{0, 0}, 2), DomainError);
}

TEST_CASE("AUC") {
    // perfectly ordered
    const std::vector<std::vector<double>> perfect{{0.9, 0.1}, {0.8, 0.2}, {0.3, 0.7}, {0.1, 0.95}};
    const std::vector<int> truths{0, 0, 1, 1};
    CHECK(macro_auc(perfect, truths, 2) == 1.0);
    // all ties
    const std::vector<std::vector<double>> flat(4, std::vector<double>{0.5, 0.5});
    CHECK(macro_auc(flat, truths, 2) == 0.5);
    // single pair
    CHECK(binary_auc(std::vector<double>{0.2, 0.9}, {false, true}) == 1.0);
    CHECK_THROWS_AS(binary_auc(std::vector<double>{0.2, 0.9}, {true, true}), DomainError);
}

TEST_CASE("AUC against pair counting") {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> coarse(0, 5);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> s;
        std::vector<bool> pos;
        for (int i = 0; i < 12; ++i) {
            s.push_back(coarse(rng));
            pos.push_back(i % 3 == 0);
        }
        double wins = 0, pairs = 0;
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j) {
                if (!pos[i] || pos[j]) continue;
                pairs += 1;
                wins += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
            }
        REQUIRE(binary_auc(s, pos) == doctest::Approx(wins / pairs).epsilon(1e-12));
    }
}

TEST_CASE("macro AUC is invariant under increasing transforms") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> n(0, 1);
    std::vector<std::vector<double>> scores(40, std::vector<double>(3));
    std::vector<int> truths(40);
    for (int i = 0; i < 40; ++i) {
        truths[i] = i % 3;
        for (auto& v : scores[i]) v = n(rng) + (&v - scores[i].data() == truths[i] ? 1.0 : 0.0);
    }
    auto transformed = scores;
    for (auto& row : transformed)
        for (auto& v : row) v = std::exp(3 * v) + 5;
    CHECK(macro_auc(scores, truths, 3) == macro_auc(transformed, truths, 3));
}

TEST_CASE("two-class macro AUC with complementary scores equals binary AUC") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<std::vector<double>> scores;
    std::vector<int> truths;
    std::vector<double> s1;
    std::vector<bool> pos;
    for (int i = 0; i < 30; ++i) {
        const double p = u(rng);
        scores.push_back({1 - p, p});
        truths.push_back(i % 2);
        s1.push_back(p);
        pos.push_back(i % 2 == 1);
    }
    CHECK(macro_auc(scores, truths, 2) == doctest::Approx(binary_auc(s1, pos)).epsilon(1e-15));
}

TEST_CASE("Wilcoxon rank-sum") {
    const std::vector<double> a{1, 2}, b{3, 4};
    const auto r = wilcoxon_rank_sum(a, b);
    CHECK(r.statistic == 3.0);
    const double exact = oracle::exact_rank_sum_p(2, 2, 3.0);
    CHECK(exact == doctest::Approx(1.0 / 3.0));
    CHECK(std::abs(r.p_two_sided - exact) <= 0.15);
    CHECK(wilcoxon_rank_sum(b, a).p_two_sided == r.p_two_sided);

    const std::vector<double> same{0.9, 0.95, 0.97, 0.99};
    CHECK(wilcoxon_rank_sum(same, same).p_two_sided >= 0.95);
    CHECK(wilcoxon_rank_sum(std::vector<double>{1, 1}, std::vector<double>{1, 1}).p_two_sided == 1.0);
}

TEST_CASE("Wilcoxon p lies in (0, 1] and is symmetric") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> n(0, 1);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> a(3 + trial % 17), b(2 + trial % 11);
        for (auto& v : a) v = n(rng) + (trial % 5);
        for (auto& v : b) v = n(rng);
        const double p = wilcoxon_rank_sum(a, b).p_two_sided;
        REQUIRE(p > 0.0);
        REQUIRE(p <= 1.0);
        REQUIRE(p == wilcoxon_rank_sum(b, a).p_two_sided);
    }
    std::vector<double> lo(500), hi(500);
    std::iota(lo.begin(), lo.end(), 0.0);
    std::iota(hi.begin(), hi.end(), 1000.0);
    CHECK(wilcoxon_rank_sum(lo, hi).p_two_sided > 0.0);
}

TEST_CASE("normal approximation tracks the exact distribution") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> pool(12);
        std::iota(pool.begin(), pool.end(), 1.0);
        std::shuffle(pool.begin(), pool.end(), rng);
        const std::vector<double> a(pool.begin(), pool.begin() + 6), b(pool.begin() + 6, pool.end());
        const auto r = wilcoxon_rank_sum(a, b);
        CHECK(std::abs(r.p_two_sided - oracle::exact_rank_sum_p(6, 6, r.statistic)) <= 0.05);
    }
}

TEST_CASE("report identities on random predictions") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const int K = 2 + trial % 4;
        std::uniform_int_distribution<int> lab(0, K - 1);
        std::vector<int> truths, preds;
        for (int i = 0; i < K; ++i) truths.push_back(i);
        for (int i = 0; i < 30; ++i) truths.push_back(lab(rng));
        for (std::size_t i = 0; i < truths.size(); ++i) preds.push_back(lab(rng));
        const auto r = evaluate_predictions(preds, truths, K);
        std::size_t total = 0, diag = 0;
        for (int k = 0; k < K; ++k) {
            std::size_t row = 0, col = 0;
            for (int j = 0; j < K; ++j) {
                row += r.confusion[k][j];
                col += r.confusion[j][k];
            }
            REQUIRE(row == static_cast<std::size_t>(std::count(truths.begin(), truths.end(), k)));
            REQUIRE(col == static_cast<std::size_t>(std::count(preds.begin(), preds.end(), k)));
            REQUIRE(r.recalls[k] == static_cast<double>(r.confusion[k][k]) / static_cast<double>(row));
            total += row;
            diag += r.confusion[k][k];
        }
        REQUIRE(total == truths.size());
        REQUIRE(r.accuracy == static_cast<double>(diag) / static_cast<double>(total));
        REQUIRE(r.balanced_accuracy ==
                doctest::Approx(std::accumulate(r.recalls.begin(), r.recalls.end(), 0.0) / K).epsilon(1e-15));
        REQUIRE(r.balanced_accuracy == doctest::Approx(balanced_accuracy(preds, truths, K)).epsilon(1e-15));
    }
}

TEST_CASE("report with an absent class") {
    const auto r = evaluate_predictions(std::vector<int>{0, 1, 1}, std::vector<int>{0, 0, 1}, 3);
    CHECK(std::isnan(r.recalls[2]));
    CHECK(r.balanced_accuracy == doctest::Approx(0.75));
    std::ostringstream os;
    r.print(os);
    CHECK(os.str().find("balanced_accuracy") != std::string::npos);
}
