#pragma once

// Dual feasibility and KKT checks on trained SVMs, shared by the unit and
// acceptance tests. Each returns an empty string when every condition holds,
// otherwise a description of the first violation.

#include <cmath>
#include <string>

#include "fuzzyclf/svm.hpp"

namespace svm_checks {

inline std::string check_binary(const fuzzyclf::GramMatrix& gram, const std::vector<int>& y,
                                const std::vector<double>& alpha, double bias, double C, double tol) {
    const std::size_t m = gram.size();
    double balance = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (!(alpha[i] >= 0.0 && alpha[i] <= C)) return "alpha[" + std::to_string(i) + "] outside [0, C]";
        balance += alpha[i] * y[i];
    }
    if (std::abs(balance) > 1e-8) return "sum alpha_i y_i = " + std::to_string(balance);
    const double slack = tol + 1e-9;
    for (std::size_t i = 0; i < m; ++i) {
        double f = bias;
        for (std::size_t j = 0; j < m; ++j) f += alpha[j] * y[j] * gram(i, j);
        const double margin = y[i] * f;
        const bool ok = alpha[i] == 0.0   ? margin >= 1.0 - slack
                        : alpha[i] == C   ? margin <= 1.0 + slack
                                          : std::abs(margin - 1.0) <= slack;
        if (!ok) return "KKT fails at " + std::to_string(i) + ": y f = " + std::to_string(margin);
    }
    return {};
}

inline std::string check_model(const fuzzyclf::SvmModel& model) {
    const fuzzyclf::GramMatrix gram(model.kernel(), model.inputs());
    for (int l = 0; l < model.num_classes(); ++l) {
        const auto& cls = model.classes()[l];
        auto err = check_binary(gram, model.binary_labels(l), cls.alpha, cls.bias, model.C(), cls.violation);
        if (!err.empty()) return "class " + std::to_string(l) + ": " + err;
    }
    return {};
}

}  // namespace svm_checks
