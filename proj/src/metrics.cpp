#include "fuzzyclf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>

#include "fuzzyclf/errors.hpp"

namespace fuzzyclf {

namespace {

void check_pair(std::span<const int> preds, std::span<const int> truths) {
    if (preds.size() != truths.size()) {
        throw DomainError("predictions and truths differ in length (" + std::to_string(preds.size()) + " vs " +
                          std::to_string(truths.size()) + ")");
    }
    if (preds.empty()) throw DomainError("metrics need at least one prediction");
}

void check_labels(std::span<const int> labels, int num_classes) {
    for (int v : labels) {
        if (v < 0 || v >= num_classes) {
            throw DomainError("label " + std::to_string(v) + " outside [0, " + std::to_string(num_classes) + ")");
        }
    }
}

// 1-based mid-ranks of `values` in ascending order.
std::vector<double> mid_ranks(std::span<const double> values, double& tie_term) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    tie_term = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        const auto t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

double accuracy(std::span<const int> preds, std::span<const int> truths) {
    check_pair(preds, truths);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < preds.size(); ++i) hits += preds[i] == truths[i] ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(preds.size());
}

std::vector<std::vector<std::size_t>> confusion_matrix(std::span<const int> preds, std::span<const int> truths,
                                                       int num_classes) {
    check_pair(preds, truths);
    if (num_classes < 1) throw DomainError("need at least one class");
    check_labels(preds, num_classes);
    check_labels(truths, num_classes);
    const auto K = static_cast<std::size_t>(num_classes);
    std::vector<std::vector<std::size_t>> cm(K, std::vector<std::size_t>(K, 0));
    for (std::size_t i = 0; i < preds.size(); ++i) {
        ++cm[static_cast<std::size_t>(truths[i])][static_cast<std::size_t>(preds[i])];
    }
    return cm;
}

double balanced_accuracy(std::span<const int> preds, std::span<const int> truths, int num_classes) {
    const auto cm = confusion_matrix(preds, truths, num_classes);
    double sum = 0.0;
    for (std::size_t k = 0; k < cm.size(); ++k) {
        const auto total = std::accumulate(cm[k].begin(), cm[k].end(), std::size_t{0});
        if (total == 0) {
            throw DomainError("class " + std::to_string(k) + " never occurs in truths; its recall is undefined");
        }
        sum += static_cast<double>(cm[k][k]) / static_cast<double>(total);
    }
    return sum / static_cast<double>(cm.size());
}

double binary_auc(std::span<const double> scores, const std::vector<bool>& positive) {
    if (scores.size() != positive.size()) throw DomainError("scores and labels differ in length");
    for (double s : scores) {
        if (!std::isfinite(s)) throw DomainError("AUC scores must be finite");
    }
    double tie_term = 0.0;
    const auto ranks = mid_ranks(scores, tie_term);
    double rank_sum = 0.0;
    double n_pos = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (positive[i]) {
            rank_sum += ranks[i];
            n_pos += 1.0;
        }
    }
    const double n_neg = static_cast<double>(scores.size()) - n_pos;
    if (n_pos == 0.0 || n_neg == 0.0) throw DomainError("AUC needs both positive and negative instances");
    return (rank_sum - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

double macro_auc(const std::vector<std::vector<double>>& scores, std::span<const int> truths, int num_classes) {
    if (scores.size() != truths.size()) throw DomainError("score rows and truths differ in length");
    if (truths.empty()) throw DomainError("AUC needs at least one instance");
    check_labels(truths, num_classes);
    const auto K = static_cast<std::size_t>(num_classes);
    std::vector<double> column(scores.size());
    std::vector<bool> positive(scores.size());
    double sum = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        for (std::size_t i = 0; i < scores.size(); ++i) {
            if (scores[i].size() != K) throw DomainError("score rows must have one entry per class");
            column[i] = scores[i][k];
            positive[i] = truths[i] == static_cast<int>(k);
        }
        if (std::find(positive.begin(), positive.end(), true) == positive.end()) {
            throw DomainError("class " + std::to_string(k) + " never occurs in truths; its AUC is undefined");
        }
        sum += binary_auc(column, positive);
    }
    return sum / static_cast<double>(K);
}

RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw DomainError("rank-sum test needs two nonempty samples");
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    double tie_term = 0.0;
    const auto ranks = mid_ranks(pooled, tie_term);

    const auto n1 = static_cast<double>(a.size());
    const auto n2 = static_cast<double>(b.size());
    const double N = n1 + n2;
    RankSumResult out;
    out.statistic = std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(a.size()), 0.0);
    const double mean = n1 * (N + 1.0) / 2.0;
    const double var = n1 * n2 / 12.0 * ((N + 1.0) - tie_term / (N * (N - 1.0)));
    if (!(var > 0.0)) {
        out.z = 0.0;
        out.p_two_sided = 1.0;
        return out;
    }
    const double dev = std::max(0.0, std::abs(out.statistic - mean) - 0.5);
    out.z = dev / std::sqrt(var);
    const double p = std::erfc(out.z / std::sqrt(2.0));
    out.p_two_sided = std::clamp(p, std::numeric_limits<double>::min(), 1.0);
    return out;
}

MetricsReport evaluate_predictions(std::span<const int> preds, std::span<const int> truths, int num_classes,
                                   const std::vector<std::vector<double>>* scores) {
    MetricsReport r;
    r.accuracy = accuracy(preds, truths);
    r.confusion = confusion_matrix(preds, truths, num_classes);
    double sum = 0.0;
    std::size_t present = 0;
    for (std::size_t k = 0; k < r.confusion.size(); ++k) {
        const auto total = std::accumulate(r.confusion[k].begin(), r.confusion[k].end(), std::size_t{0});
        if (total == 0) {
            r.recalls.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        const double recall = static_cast<double>(r.confusion[k][k]) / static_cast<double>(total);
        r.recalls.push_back(recall);
        sum += recall;
        ++present;
    }
    r.balanced_accuracy = sum / static_cast<double>(present);
    if (scores != nullptr && present == r.confusion.size()) r.macro_auc = macro_auc(*scores, truths, num_classes);
    return r;
}

KvDocument MetricsReport::to_kv() const {
    KvDocument doc("metrics_report");
    doc.set("accuracy", accuracy);
    doc.set("balanced_accuracy", balanced_accuracy);
    if (macro_auc) doc.set("macro_auc", *macro_auc);
    doc.set("num_classes", recalls.size());
    doc.set("recall", recalls);
    for (std::size_t k = 0; k < confusion.size(); ++k) {
        std::vector<int> row(confusion[k].begin(), confusion[k].end());
        doc.set("confusion." + std::to_string(k), row);
    }
    return doc;
}

void MetricsReport::print(std::ostream& out) const {
    const auto flags = out.flags();
    out << std::fixed << std::setprecision(4);
    out << "accuracy           " << accuracy << '\n';
    out << "balanced_accuracy  " << balanced_accuracy << '\n';
    if (macro_auc) out << "macro_auc          " << *macro_auc << '\n';
    out << "\nclass  recall    predicted ->\n";
    for (std::size_t k = 0; k < confusion.size(); ++k) {
        out << std::setw(5) << k << "  " << std::setw(6) << recalls[k] << "  ";
        for (auto c : confusion[k]) out << ' ' << std::setw(6) << c;
        out << '\n';
    }
    out.flags(flags);
}

}  // namespace fuzzyclf
