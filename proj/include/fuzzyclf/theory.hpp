#pragma once

#include <cstdint>

#include "fuzzyclf/svm.hpp"

namespace fuzzyclf {

/// Monte Carlo estimate of the empirical Rademacher complexity of the
/// K-output kernel class {x -> (<w_k, Phi(x)>)_k : |w_k| <= Lambda}.
struct RademacherEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    int draws = 0;
    double lambda = 0.0;
    int num_outputs = 0;
    std::size_t m = 0;
};

inline constexpr int kDefaultRademacherDraws = 200;

/// For each of `draws` independent sign matrices sigma in {+-1}^{m x K}
/// evaluates (Lambda / m) * sum_k sqrt(sigma_k' G sigma_k), the closed-form
/// supremum over the class, and returns the mean and its standard error.
/// Draw t uses a seed derived from (seed, t), so results do not depend on
/// evaluation order. Throws MatrixError when G is not symmetric within 1e-8
/// or a quadratic form falls below -1e-8.
RademacherEstimate empirical_kernel_rademacher(const GramMatrix& gram, double lambda, int num_outputs, int draws,
                                               std::uint64_t seed);

/// K * sqrt(r^2 Lambda^2 / m).
double lemma1_bound(double r, double lambda, int num_outputs, std::size_t m);

/// 2 K L sqrt(2 r^2 Lambda^2 / m) + C_l sqrt(2 log(1/delta) / m).
double theorem3_gap_bound(int num_outputs, double lipschitz, double r, double lambda, double loss_bound,
                          double delta, std::size_t m);

/// sqrt(max_i G_ii), the smallest r with K(x, x) <= r^2 over the sample.
double kernel_radius(const GramMatrix& gram);

}  // namespace fuzzyclf
