#include "fuzzyclf/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fuzzyclf/errors.hpp"
#include "fuzzyclf/rng.hpp"

namespace fuzzyclf {

namespace {

constexpr double kPsdTolerance = 1e-8;

double quadratic_form(const GramMatrix& gram, const std::vector<double>& s) {
    const std::size_t m = gram.size();
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto row = gram.row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < m; ++j) acc += row[j] * s[j];
        total += s[i] * acc;
    }
    return total;
}

}  // namespace

RademacherEstimate empirical_kernel_rademacher(const GramMatrix& gram, double lambda, int num_outputs, int draws,
                                               std::uint64_t seed) {
    if (!(lambda > 0.0)) throw DomainError("Lambda must be > 0");
    if (num_outputs < 1) throw DomainError("K must be >= 1");
    if (draws < 1) throw DomainError("the number of draws must be >= 1");
    const std::size_t m = gram.size();
    if (m == 0) throw DomainError("gram matrix is empty");
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (std::abs(gram(i, j) - gram(j, i)) > kPsdTolerance) {
                throw MatrixError("gram matrix is not symmetric at (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ")");
            }
        }
    }

    std::vector<double> values(static_cast<std::size_t>(draws));
    std::vector<double> sigma(m);
    for (int t = 0; t < draws; ++t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        std::bernoulli_distribution coin(0.5);
        double sum = 0.0;
        for (int k = 0; k < num_outputs; ++k) {
            for (auto& s : sigma) s = coin(rng) ? 1.0 : -1.0;
            const double q = quadratic_form(gram, sigma);
            if (q < -kPsdTolerance) {
                throw MatrixError("gram matrix is not positive semidefinite (quadratic form " + std::to_string(q) +
                                  ")");
            }
            sum += std::sqrt(std::max(q, 0.0));
        }
        values[static_cast<std::size_t>(t)] = lambda * sum / static_cast<double>(m);
    }

    RademacherEstimate est;
    est.draws = draws;
    est.lambda = lambda;
    est.num_outputs = num_outputs;
    est.m = m;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= draws;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    est.mean = mean;
    est.std_error = draws > 1 ? std::sqrt(ss / (draws - 1) / draws) : 0.0;
    return est;
}

double lemma1_bound(double r, double lambda, int num_outputs, std::size_t m) {
    if (!(r > 0.0) || !(lambda > 0.0)) throw DomainError("r and Lambda must be > 0");
    if (num_outputs < 1 || m < 1) throw DomainError("K and m must be >= 1");
    return num_outputs * std::sqrt(r * r * lambda * lambda / static_cast<double>(m));
}

double theorem3_gap_bound(int num_outputs, double lipschitz, double r, double lambda, double loss_bound,
                          double delta, std::size_t m) {
    if (num_outputs < 1 || m < 1) throw DomainError("K and m must be >= 1");
    if (!(lipschitz > 0.0) || !(r > 0.0) || !(lambda > 0.0) || !(loss_bound > 0.0)) {
        throw DomainError("L_l, r, Lambda and C_l must be > 0");
    }
    if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("delta must lie in (0, 1]");
    const auto md = static_cast<double>(m);
    return 2.0 * num_outputs * lipschitz * std::sqrt(2.0 * r * r * lambda * lambda / md) +
           loss_bound * std::sqrt(2.0 * std::log(1.0 / delta) / md);
}

double kernel_radius(const GramMatrix& gram) {
    double mx = 0.0;
    for (std::size_t i = 0; i < gram.size(); ++i) mx = std::max(mx, gram(i, i));
    return std::sqrt(mx);
}

}  // namespace fuzzyclf
