#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fuzzyclf/dataset.hpp"
#include "fuzzyclf/defuzz.hpp"
#include "fuzzyclf/kv_format.hpp"

namespace fuzzyclf {

enum class Activation { relu, tanh };

std::string_view to_string(Activation a) noexcept;
Activation parse_activation(std::string_view name);

inline constexpr double kProbabilityFloor = 1e-12;

/// Weights of the two-hidden-layer perceptron
///   O(x) = phi(phi(x W1 + b1) W2 + b2) W0 + b0
/// Matrices are row-major: W1 is p x h1, W2 is h1 x h2, W0 is h2 x K.
/// The same layout doubles as a gradient container.
struct MlpParams {
    std::size_t inputs = 0, hidden1 = 0, hidden2 = 0, outputs = 0;
    Activation activation = Activation::relu;
    std::vector<double> W1, b1, W2, b2, W0, b0;

    /// All-zero parameters of the given shape.
    static MlpParams zeros(std::size_t p, std::size_t h1, std::size_t h2, std::size_t K,
                           Activation act = Activation::relu);
    /// Weights uniform in +-sqrt(6 / (fan_in + fan_out)), biases zero.
    static MlpParams glorot(std::size_t p, std::size_t h1, std::size_t h2, std::size_t K, Activation act,
                            std::uint64_t seed);

    /// The six tensors in a fixed order (W1, b1, W2, b2, W0, b0).
    std::vector<std::vector<double>*> tensors();
    std::vector<const std::vector<double>*> tensors() const;
    /// True for the weight tensors (indices 0, 2, 4 of tensors()).
    static bool is_weight(std::size_t tensor_index) noexcept { return tensor_index % 2 == 0; }

    /// Throws SchemaError on inconsistent shapes, NumericError on non-finite entries.
    void validate() const;

    friend bool operator==(const MlpParams&, const MlpParams&) = default;
};

struct ForwardResult {
    std::vector<double> logits;
    std::vector<double> probs;
};

/// Max-subtracted softmax.
std::vector<double> softmax(std::span<const double> logits);

/// Forward pass on a defuzzified input. Throws NumericError carrying the
/// layer index (1, 2 hidden; 3 output) on a non-finite value.
ForwardResult forward(const MlpParams& params, std::span<const double> x);

/// -log(max(probs[y], floor)). Throws DomainError when probs is not a
/// distribution or y is out of range.
double cross_entropy(std::span<const double> probs, int y);

/// Mean cross-entropy over `batch` (indices into X / y) and its gradient
/// with respect to every parameter.
double loss_and_gradient(const MlpParams& params, const std::vector<std::vector<double>>& X,
                         std::span<const int> y, std::span<const std::size_t> batch, MlpParams& grad);

/// Mean cross-entropy over all rows.
double mean_loss(const MlpParams& params, const std::vector<std::vector<double>>& X, std::span<const int> y);

struct AdamConfig {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    /// Decoupled decay, applied to weights only.
    double weight_decay = 1e-4;
};

/// Bias-corrected Adam update of one tensor, `step` counting from 1.
/// With decay: theta -= lr * (m_hat / (sqrt(v_hat) + eps) + weight_decay * theta).
void adam_update(std::span<double> params, std::span<const double> grads, std::span<double> m,
                 std::span<double> v, long step, const AdamConfig& cfg, bool decay);

struct AdamState {
    MlpParams m;
    MlpParams v;
    long step = 0;

    explicit AdamState(const MlpParams& shape);
};

/// One Adam step over all tensors; weight decay on W1, W2, W0 only.
void adam_step(MlpParams& params, const MlpParams& grads, AdamState& state, const AdamConfig& cfg);

struct MlpTrainConfig {
    std::size_t hidden1 = 100;
    std::size_t hidden2 = 100;
    Activation activation = Activation::relu;
    AdamConfig adam;
    int epochs = 200;
    std::size_t batch_size = 32;
    std::uint64_t seed = 0;
    DefuzzSpec defuzz;

    void validate() const;
};

class MlpModel {
public:
    MlpModel() = default;
    MlpModel(MlpParams params, DefuzzSpec defuzz, std::vector<FeatureKind> schema);

    const MlpParams& params() const noexcept { return params_; }
    const DefuzzSpec& defuzz() const noexcept { return defuzz_; }
    const std::vector<FeatureKind>& schema() const noexcept { return schema_; }
    int num_classes() const noexcept { return static_cast<int>(params_.outputs); }
    /// Mean training loss of each epoch.
    const std::vector<double>& loss_trace() const noexcept { return loss_trace_; }
    void set_loss_trace(std::vector<double> trace) { loss_trace_ = std::move(trace); }

    ForwardResult forward(const std::vector<Feature>& x) const;
    std::vector<double> probabilities(const std::vector<Feature>& x) const;
    int predict(const std::vector<Feature>& x) const;
    int predict(const FuzzyVector& x) const;

    KvDocument to_kv() const;
    static MlpModel from_kv(const KvDocument& doc);

private:
    MlpParams params_;
    DefuzzSpec defuzz_;
    std::vector<FeatureKind> schema_;
    std::vector<double> loss_trace_;
};

/// Glorot-initialised weights, then `epochs` passes of seeded-shuffled
/// mini-batches with Adam on mean cross-entropy. Throws NumericError with
/// the epoch index if the loss becomes non-finite.
MlpModel train_df_mlp(const FuzzyDataset& train, const MlpTrainConfig& cfg);

}  // namespace fuzzyclf
