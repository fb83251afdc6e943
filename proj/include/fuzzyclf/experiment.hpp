#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fuzzyclf/dataset.hpp"
#include "fuzzyclf/metrics.hpp"
#include "fuzzyclf/mlp.hpp"
#include "fuzzyclf/svm.hpp"

namespace fuzzyclf {

enum class ModelKind { svm, mlp };
std::string_view to_string(ModelKind kind) noexcept;
ModelKind parse_model_kind(std::string_view name);

struct ModelConfig {
    ModelKind kind = ModelKind::svm;
    SvmTrainConfig svm;
    MlpTrainConfig mlp;

    const DefuzzSpec& defuzz() const noexcept;
    void set_defuzz(const DefuzzSpec& spec);
    void set_seed(std::uint64_t seed);
};

using TrainedModel = std::variant<SvmModel, MlpModel>;

TrainedModel train_model(const FuzzyDataset& train, const ModelConfig& cfg);

/// Per-class scores (SVM decision values or MLP probabilities) and argmax
/// predictions for every instance.
struct Predictions {
    std::vector<int> labels;
    std::vector<std::vector<double>> scores;
};
Predictions predict_all(const TrainedModel& model, const FuzzyDataset& ds);

MetricsReport evaluate_model(const TrainedModel& model, const FuzzyDataset& ds);

KvDocument model_to_kv(const TrainedModel& model);
/// Dispatches on the document kind (svm_model or mlp_model).
TrainedModel model_from_kv(const KvDocument& doc);

struct RunOutcome {
    MetricsReport test;
    /// C picked on the validation split, when a grid was searched.
    std::optional<double> selected_c;
    double validation_accuracy = 0.0;
};

/// Trains on split.train and reports on split.test. For SVMs with a
/// nonempty `c_grid`, one model is trained per C and the one with the best
/// validation accuracy is kept, ties going to the earliest grid entry.
RunOutcome train_and_evaluate(const DatasetSplit& split, const ModelConfig& cfg,
                              const std::vector<double>& c_grid);

enum class SweepParam { m, beta, defuzz };
std::string_view to_string(SweepParam p) noexcept;
SweepParam parse_sweep_param(std::string_view name);

/// Repeated train/evaluate runs over one varied parameter.
///
/// Repeat r of every value uses data seed derive_seed(seed, r) and model
/// seed derive_seed(seed, r + 2^32), so values are compared on identical
/// draws. Without an input dataset the data come from `data`:
///   m       synthetic set sized so the training split holds m instances
///   beta    synthetic intervals converted with the given beta
///   defuzz  synthetic fuzzy set, model defuzzifier replaced by the value
/// With an input dataset, m truncates the training split to m instances
/// and beta requires interval columns.
struct SweepConfig {
    SweepParam param = SweepParam::m;
    std::vector<std::string> values;
    int repeats = 10;
    std::uint64_t seed = 0;
    ModelConfig model;
    SyntheticConfig data;
    SplitSpec split;
    std::vector<double> c_grid;
    const FuzzyDataset* input = nullptr;
    /// Worker threads; 0 means hardware concurrency.
    unsigned threads = 0;

    void validate() const;
};

struct SweepRow {
    std::string param;
    int repeat = 0;
    double accuracy = 0.0;
    double balanced_accuracy = 0.0;
    std::optional<double> auc;
    std::optional<double> selected_c;
};

struct SweepSummaryRow {
    std::string param;
    int runs = 0;
    double accuracy_mean = 0.0, accuracy_sd = 0.0;
    double balanced_mean = 0.0, balanced_sd = 0.0;
    std::optional<double> auc_mean, auc_sd;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<SweepSummaryRow> summary;
};

SweepResult run_sweep(const SweepConfig& cfg);

/// Builds the train/val/test split for one (value, repeat) pair of a sweep.
DatasetSplit sweep_split(const SweepConfig& cfg, std::string_view value, int repeat);

/// Sample mean and standard deviation (n - 1 denominator; 0 for one value).
std::pair<double, double> mean_sd(const std::vector<double>& xs);

/// "0.9824±0.0052".
std::string format_mean_sd(double mean, double sd, int precision = 4);

/// Header `param,repeat,accuracy,balanced_accuracy,auc[,selected_c]`.
void write_sweep_rows(const std::vector<SweepRow>& rows, std::ostream& out);
/// Header `param,runs,accuracy,balanced_accuracy,auc` with mean±sd cells.
void write_sweep_summary(const std::vector<SweepSummaryRow>& rows, std::ostream& out);

/// Reads one numeric column (by header name) from a CSV file.
std::vector<double> read_csv_column(std::istream& in, std::string_view column);

}  // namespace fuzzyclf
