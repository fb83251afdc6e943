#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "fuzzyclf/kv_format.hpp"

namespace fuzzyclf {

/// Fraction of positions where preds and truths agree. Throws DomainError on
/// empty or mismatched input.
double accuracy(std::span<const int> preds, std::span<const int> truths);

/// Mean per-class recall TP / (TP + FN) over classes 0..K-1. Throws
/// DomainError when a class never appears in truths.
double balanced_accuracy(std::span<const int> preds, std::span<const int> truths, int num_classes);

/// K x K counts, rows indexed by truth, columns by prediction.
std::vector<std::vector<std::size_t>> confusion_matrix(std::span<const int> preds, std::span<const int> truths,
                                                       int num_classes);

/// Binary ROC AUC through the Mann-Whitney statistic, ties counted as 1/2.
/// `positive[i]` marks the positive instances. Throws DomainError when
/// either group is empty.
double binary_auc(std::span<const double> scores, const std::vector<bool>& positive);

/// Mean over classes of the one-vs-rest AUC of score column k. `scores` is
/// row-major m x K.
double macro_auc(const std::vector<std::vector<double>>& scores, std::span<const int> truths, int num_classes);

struct RankSumResult {
    /// Sum of the mid-ranks of sample_a in the pooled sample.
    double statistic = 0.0;
    double z = 0.0;
    double p_two_sided = 1.0;
};

/// Wilcoxon rank-sum test, normal approximation with tie and continuity
/// corrections.
RankSumResult wilcoxon_rank_sum(std::span<const double> sample_a, std::span<const double> sample_b);

struct MetricsReport {
    double accuracy = 0.0;
    double balanced_accuracy = 0.0;
    std::optional<double> macro_auc;
    std::vector<double> recalls;
    std::vector<std::vector<std::size_t>> confusion;

    KvDocument to_kv() const;
    void print(std::ostream& out) const;
};

/// Builds the full report. Balanced accuracy uses only classes present in
/// `truths` when some are absent. AUC is computed when `scores` is given
/// and every class appears.
MetricsReport evaluate_predictions(std::span<const int> preds, std::span<const int> truths, int num_classes,
                                   const std::vector<std::vector<double>>* scores = nullptr);

}  // namespace fuzzyclf
