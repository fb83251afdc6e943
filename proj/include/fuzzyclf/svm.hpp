#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzyclf/argmax.hpp"
#include "fuzzyclf/dataset.hpp"
#include "fuzzyclf/defuzz.hpp"
#include "fuzzyclf/kv_format.hpp"

namespace fuzzyclf {

enum class KernelKind { linear, poly, rbf };

std::string_view to_string(KernelKind kind) noexcept;
KernelKind parse_kernel_kind(std::string_view name);

/// linear <x,z>; poly (gamma <x,z> + coef0)^degree; rbf exp(-gamma |x-z|^2).
/// gamma == 0 means "1 / number of features", resolved when training.
struct KernelSpec {
    KernelKind kind = KernelKind::rbf;
    double gamma = 0.0;
    int degree = 3;
    double coef0 = 0.0;

    void validate() const;
    /// Copy with the automatic gamma replaced by 1/p.
    KernelSpec resolved(std::size_t num_features) const;
};

/// Throws SchemaError on length mismatch.
double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> z);

/// Dense symmetric kernel matrix over a set of points.
class GramMatrix {
public:
    GramMatrix(const KernelSpec& spec, const std::vector<std::vector<double>>& points);
    /// Wraps an explicit matrix, row-major m x m.
    GramMatrix(std::size_t m, std::vector<double> values);

    std::size_t size() const noexcept { return m_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * m_ + j]; }
    std::span<const double> row(std::size_t i) const noexcept { return {values_.data() + i * m_, m_}; }

private:
    std::size_t m_ = 0;
    std::vector<double> values_;
};

struct SmoOptions {
    double C = 1.0;
    /// Stop once the maximal KKT violation (m(alpha) - M(alpha)) is <= tol.
    double tol = 1e-3;
    /// Number of consecutive sweeps (m updates each) without a new best
    /// violation after which the solver gives up.
    int max_passes = 100;
    /// Seeds the index order used to break ties in working-set selection.
    std::uint64_t seed = 0;
    /// Record the dual objective after every update.
    bool record_objective = false;
};

/// Solution of one binary C-SVM dual
///   min 1/2 sum_ij a_i a_j y_i y_j K_ij - sum_i a_i,  sum_i a_i y_i = 0,  0 <= a_i <= C.
struct BinarySvmSolution {
    std::vector<double> alpha;
    double bias = 0.0;
    std::size_t iterations = 0;
    /// Final maximal KKT violation.
    double violation = 0.0;
    double objective = 0.0;
    /// Dual objective after each update, when requested.
    std::vector<double> objective_trace;
};

/// SMO with maximal-violating first index and second-order choice of the
/// partner index. Labels must be +1 / -1. The bias is the mean of
/// y_j - sum_i a_i y_i K_ij over free support vectors (0 < a_j < C), or the
/// midpoint of the feasible range when there are none. Throws
/// ConvergenceError when the violation stays above tol.
BinarySvmSolution solve_binary_svm(const GramMatrix& gram, std::span<const int> y, const SmoOptions& options);

/// Dual objective value of `alpha` for the given problem.
double dual_objective(const GramMatrix& gram, std::span<const int> y, std::span<const double> alpha);

struct SvmTrainConfig {
    DefuzzSpec defuzz;
    KernelSpec kernel;
    double C = 1.0;
    double tol = 1e-3;
    int max_passes = 100;
    std::uint64_t seed = 0;
    bool record_objective = false;

    void validate() const;
};

/// One-vs-rest DF-SVM: K binary sub-models over shared, defuzzified
/// training inputs.
class SvmModel {
public:
    struct ClassModel {
        std::vector<double> alpha;
        double bias = 0.0;
        std::size_t iterations = 0;
        double violation = 0.0;
        std::vector<double> objective_trace;
    };

    int num_classes() const noexcept { return static_cast<int>(classes_.size()); }
    std::size_t num_features() const noexcept { return schema_.size(); }
    const KernelSpec& kernel() const noexcept { return kernel_; }
    const DefuzzSpec& defuzz() const noexcept { return defuzz_; }
    double C() const noexcept { return C_; }
    const std::vector<FeatureKind>& schema() const noexcept { return schema_; }
    const std::vector<std::vector<double>>& inputs() const noexcept { return inputs_; }
    const std::vector<int>& labels() const noexcept { return labels_; }
    const std::vector<ClassModel>& classes() const noexcept { return classes_; }
    /// Non-fatal training notes, e.g. a class with a single instance.
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    /// +1 / -1 labels of sub-problem `cls`.
    std::vector<int> binary_labels(int cls) const;

    /// Per-class decision values on an already defuzzified input.
    std::vector<double> decision_values(std::span<const double> x) const;
    /// Per-class scores f_l(M(x)). Throws SchemaError on a schema mismatch.
    std::vector<double> scores(const std::vector<Feature>& x) const;
    std::vector<double> scores(const FuzzyVector& x) const;
    int predict(const std::vector<Feature>& x) const;
    int predict(const FuzzyVector& x) const;

    KvDocument to_kv() const;
    static SvmModel from_kv(const KvDocument& doc);

    friend SvmModel train_df_svm(const FuzzyDataset& train, const SvmTrainConfig& cfg);

private:
    KernelSpec kernel_;
    DefuzzSpec defuzz_;
    double C_ = 1.0;
    std::vector<FeatureKind> schema_;
    std::vector<std::vector<double>> inputs_;
    std::vector<int> labels_;
    std::vector<ClassModel> classes_;
    std::vector<std::string> warnings_;
};

/// Defuzzifies the training set once, then solves the K one-vs-rest duals.
/// Throws DomainError if the set is empty or a class has no instances.
SvmModel train_df_svm(const FuzzyDataset& train, const SvmTrainConfig& cfg);

}  // namespace fuzzyclf
