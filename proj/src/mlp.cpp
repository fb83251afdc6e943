#include "fuzzyclf/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fuzzyclf/argmax.hpp"
#include "fuzzyclf/errors.hpp"
#include "fuzzyclf/numeric_text.hpp"
#include "fuzzyclf/rng.hpp"

namespace fuzzyclf {

std::string_view to_string(Activation a) noexcept {
    return a == Activation::relu ? "relu" : "tanh";
}

Activation parse_activation(std::string_view name) {
    if (name == "relu") return Activation::relu;
    if (name == "tanh") return Activation::tanh;
    throw DomainError("unknown activation '" + std::string(name) + "' (expected relu or tanh)");
}

MlpParams MlpParams::zeros(std::size_t p, std::size_t h1, std::size_t h2, std::size_t K, Activation act) {
    MlpParams out;
    out.inputs = p;
    out.hidden1 = h1;
    out.hidden2 = h2;
    out.outputs = K;
    out.activation = act;
    out.W1.assign(p * h1, 0.0);
    out.b1.assign(h1, 0.0);
    out.W2.assign(h1 * h2, 0.0);
    out.b2.assign(h2, 0.0);
    out.W0.assign(h2 * K, 0.0);
    out.b0.assign(K, 0.0);
    return out;
}

MlpParams MlpParams::glorot(std::size_t p, std::size_t h1, std::size_t h2, std::size_t K, Activation act,
                            std::uint64_t seed) {
    MlpParams out = zeros(p, h1, h2, K, act);
    Rng rng(seed);
    auto fill = [&](std::vector<double>& w, std::size_t fan_in, std::size_t fan_out) {
        const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        std::uniform_real_distribution<double> dist(-limit, limit);
        for (auto& x : w) x = dist(rng);
    };
    fill(out.W1, p, h1);
    fill(out.W2, h1, h2);
    fill(out.W0, h2, K);
    return out;
}

std::vector<std::vector<double>*> MlpParams::tensors() { return {&W1, &b1, &W2, &b2, &W0, &b0}; }

std::vector<const std::vector<double>*> MlpParams::tensors() const { return {&W1, &b1, &W2, &b2, &W0, &b0}; }

void MlpParams::validate() const {
    if (inputs == 0 || hidden1 == 0 || hidden2 == 0 || outputs == 0) throw SchemaError("MLP layer sizes must be > 0");
    if (W1.size() != inputs * hidden1 || b1.size() != hidden1 || W2.size() != hidden1 * hidden2 ||
        b2.size() != hidden2 || W0.size() != hidden2 * outputs || b0.size() != outputs) {
        throw SchemaError("MLP tensor shapes are inconsistent with the layer sizes");
    }
    int idx = 0;
    for (const auto* t : tensors()) {
        for (double x : *t) {
            if (!std::isfinite(x)) throw NumericError("non-finite MLP parameter", idx);
        }
        ++idx;
    }
}

std::vector<double> softmax(std::span<const double> logits) {
    std::vector<double> out(logits.size());
    if (logits.empty()) return out;
    const double mx = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (std::size_t k = 0; k < logits.size(); ++k) {
        out[k] = std::exp(logits[k] - mx);
        sum += out[k];
    }
    for (auto& p : out) p /= sum;
    return out;
}

namespace {

double activate(Activation a, double z) { return a == Activation::relu ? (z > 0.0 ? z : 0.0) : std::tanh(z); }

// Derivative expressed through the pre-activation z and activation value h.
double activate_grad(Activation a, double z, double h) {
    return a == Activation::relu ? (z > 0.0 ? 1.0 : 0.0) : 1.0 - h * h;
}

// out[j] = b[j] + sum_i in[i] * W[i * cols + j]
void affine(std::span<const double> in, const std::vector<double>& W, const std::vector<double>& b,
            std::vector<double>& out) {
    const std::size_t cols = b.size();
    out.assign(b.begin(), b.end());
    for (std::size_t i = 0; i < in.size(); ++i) {
        const double xi = in[i];
        if (xi == 0.0) continue;
        const double* row = W.data() + i * cols;
        for (std::size_t j = 0; j < cols; ++j) out[j] += xi * row[j];
    }
}

void check_finite(const std::vector<double>& v, int layer) {
    for (double x : v) {
        if (!std::isfinite(x)) throw NumericError("non-finite activation in MLP forward pass", layer);
    }
}

struct Activations {
    std::vector<double> z1, h1, z2, h2, logits;
};

void forward_into(const MlpParams& P, std::span<const double> x, Activations& a) {
    affine(x, P.W1, P.b1, a.z1);
    a.h1.resize(a.z1.size());
    for (std::size_t j = 0; j < a.z1.size(); ++j) a.h1[j] = activate(P.activation, a.z1[j]);
    check_finite(a.h1, 1);
    affine(a.h1, P.W2, P.b2, a.z2);
    a.h2.resize(a.z2.size());
    for (std::size_t j = 0; j < a.z2.size(); ++j) a.h2[j] = activate(P.activation, a.z2[j]);
    check_finite(a.h2, 2);
    affine(a.h2, P.W0, P.b0, a.logits);
    check_finite(a.logits, 3);
}

}  // namespace

ForwardResult forward(const MlpParams& params, std::span<const double> x) {
    if (x.size() != params.inputs) {
        throw SchemaError("MLP expects " + std::to_string(params.inputs) + " inputs, got " +
                          std::to_string(x.size()));
    }
    Activations a;
    forward_into(params, x, a);
    ForwardResult out;
    out.probs = softmax(a.logits);
    out.logits = std::move(a.logits);
    return out;
}

double cross_entropy(std::span<const double> probs, int y) {
    if (y < 0 || static_cast<std::size_t>(y) >= probs.size()) throw DomainError("label outside the distribution");
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probabilities must lie in [0, 1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw DomainError("probabilities must sum to 1");
    return -std::log(std::max(probs[static_cast<std::size_t>(y)], kProbabilityFloor));
}

double loss_and_gradient(const MlpParams& P, const std::vector<std::vector<double>>& X, std::span<const int> y,
                         std::span<const std::size_t> batch, MlpParams& G) {
    G = MlpParams::zeros(P.inputs, P.hidden1, P.hidden2, P.outputs, P.activation);
    if (batch.empty()) return 0.0;
    const double inv = 1.0 / static_cast<double>(batch.size());
    const std::size_t h1 = P.hidden1, h2 = P.hidden2, K = P.outputs;
    Activations a;
    std::vector<double> d_out(K), d_h2(h2), d_z2(h2), d_h1(h1), d_z1(h1);
    double loss = 0.0;
    for (auto idx : batch) {
        const auto& x = X[idx];
        forward_into(P, x, a);
        const auto probs = softmax(a.logits);
        const auto label = static_cast<std::size_t>(y[idx]);
        loss += -std::log(std::max(probs[label], kProbabilityFloor));

        for (std::size_t k = 0; k < K; ++k) d_out[k] = (probs[k] - (k == label ? 1.0 : 0.0)) * inv;

        std::fill(d_h2.begin(), d_h2.end(), 0.0);
        for (std::size_t i = 0; i < h2; ++i) {
            const double* w = P.W0.data() + i * K;
            double* g = G.W0.data() + i * K;
            for (std::size_t k = 0; k < K; ++k) {
                g[k] += a.h2[i] * d_out[k];
                d_h2[i] += w[k] * d_out[k];
            }
        }
        for (std::size_t k = 0; k < K; ++k) G.b0[k] += d_out[k];

        for (std::size_t i = 0; i < h2; ++i) d_z2[i] = d_h2[i] * activate_grad(P.activation, a.z2[i], a.h2[i]);
        std::fill(d_h1.begin(), d_h1.end(), 0.0);
        for (std::size_t i = 0; i < h1; ++i) {
            const double* w = P.W2.data() + i * h2;
            double* g = G.W2.data() + i * h2;
            const double hi = a.h1[i];
            double acc = 0.0;
            for (std::size_t j = 0; j < h2; ++j) {
                g[j] += hi * d_z2[j];
                acc += w[j] * d_z2[j];
            }
            d_h1[i] = acc;
        }
        for (std::size_t j = 0; j < h2; ++j) G.b2[j] += d_z2[j];

        for (std::size_t i = 0; i < h1; ++i) d_z1[i] = d_h1[i] * activate_grad(P.activation, a.z1[i], a.h1[i]);
        for (std::size_t i = 0; i < P.inputs; ++i) {
            double* g = G.W1.data() + i * h1;
            const double xi = x[i];
            for (std::size_t j = 0; j < h1; ++j) g[j] += xi * d_z1[j];
        }
        for (std::size_t j = 0; j < h1; ++j) G.b1[j] += d_z1[j];
    }
    return loss * inv;
}

double mean_loss(const MlpParams& params, const std::vector<std::vector<double>>& X, std::span<const int> y) {
    if (X.empty()) return 0.0;
    double loss = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        const auto r = forward(params, X[i]);
        loss += -std::log(std::max(r.probs[static_cast<std::size_t>(y[i])], kProbabilityFloor));
    }
    return loss / static_cast<double>(X.size());
}

void adam_update(std::span<double> params, std::span<const double> grads, std::span<double> m,
                 std::span<double> v, long step, const AdamConfig& cfg, bool decay) {
    if (params.size() != grads.size() || params.size() != m.size() || params.size() != v.size()) {
        throw SchemaError("Adam state and gradient shapes differ");
    }
    if (step < 1) throw DomainError("Adam step counts from 1");
    const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
    const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
    for (std::size_t i = 0; i < params.size(); ++i) {
        m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * grads[i];
        v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * grads[i] * grads[i];
        const double m_hat = m[i] / c1;
        const double v_hat = v[i] / c2;
        double update = m_hat / (std::sqrt(v_hat) + cfg.epsilon);
        if (decay) update += cfg.weight_decay * params[i];
        params[i] -= cfg.learning_rate * update;
    }
}

AdamState::AdamState(const MlpParams& shape)
    : m(MlpParams::zeros(shape.inputs, shape.hidden1, shape.hidden2, shape.outputs, shape.activation)),
      v(m) {}

void adam_step(MlpParams& params, const MlpParams& grads, AdamState& state, const AdamConfig& cfg) {
    ++state.step;
    auto P = params.tensors();
    auto G = grads.tensors();
    auto M = state.m.tensors();
    auto V = state.v.tensors();
    for (std::size_t t = 0; t < P.size(); ++t) {
        adam_update(*P[t], *G[t], *M[t], *V[t], state.step, cfg, MlpParams::is_weight(t));
    }
}

void MlpTrainConfig::validate() const {
    if (hidden1 < 1 || hidden2 < 1) throw DomainError("hidden layer sizes must be >= 1");
    if (!(adam.learning_rate > 0.0)) throw DomainError("learning rate must be > 0");
    if (epochs < 1) throw DomainError("epochs must be >= 1");
    if (batch_size < 1) throw DomainError("batch size must be >= 1");
    if (!(adam.beta1 >= 0.0 && adam.beta1 < 1.0) || !(adam.beta2 >= 0.0 && adam.beta2 < 1.0)) {
        throw DomainError("Adam betas must lie in [0, 1)");
    }
    if (!(adam.epsilon > 0.0)) throw DomainError("Adam epsilon must be > 0");
    if (!(adam.weight_decay >= 0.0)) throw DomainError("weight decay must be >= 0");
}

MlpModel::MlpModel(MlpParams params, DefuzzSpec defuzz, std::vector<FeatureKind> schema)
    : params_(std::move(params)), defuzz_(defuzz), schema_(std::move(schema)) {
    params_.validate();
    if (schema_.size() != params_.inputs) throw SchemaError("schema width differs from MLP input size");
}

ForwardResult MlpModel::forward(const std::vector<Feature>& x) const {
    check_schema(schema_, x);
    return fuzzyclf::forward(params_, defuzzify_vector(x, defuzz_));
}

std::vector<double> MlpModel::probabilities(const std::vector<Feature>& x) const { return forward(x).probs; }

int MlpModel::predict(const std::vector<Feature>& x) const { return argmax_lowest(forward(x).probs); }

int MlpModel::predict(const FuzzyVector& x) const { return predict(std::vector<Feature>(x.begin(), x.end())); }

MlpModel train_df_mlp(const FuzzyDataset& train, const MlpTrainConfig& cfg) {
    cfg.validate();
    if (train.empty()) throw DomainError("training set is empty");
    const auto counts = train.class_counts();
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] == 0) throw DomainError("class " + std::to_string(k) + " has no training instances");
    }
    const auto X = defuzzify_dataset(train, cfg.defuzz);
    const auto y = train.labels();
    const auto K = static_cast<std::size_t>(train.num_classes());

    MlpParams params = MlpParams::glorot(train.num_features(), cfg.hidden1, cfg.hidden2, K, cfg.activation,
                                         derive_seed(cfg.seed, 0));
    AdamState state(params);
    MlpParams grad;
    Rng shuffle_rng(derive_seed(cfg.seed, 1));
    std::vector<std::size_t> order(X.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> trace;
    trace.reserve(static_cast<std::size_t>(cfg.epochs));

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), shuffle_rng);
        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const std::size_t end = std::min(order.size(), start + cfg.batch_size);
            const std::span<const std::size_t> batch(order.data() + start, end - start);
            double loss = 0.0;
            try {
                loss = loss_and_gradient(params, X, y, batch, grad);
            } catch (const NumericError&) {
                throw NumericError("MLP training diverged", epoch);
            }
            if (!std::isfinite(loss)) throw NumericError("MLP training diverged", epoch);
            epoch_loss += loss * static_cast<double>(batch.size());
            adam_step(params, grad, state, cfg.adam);
        }
        trace.push_back(epoch_loss / static_cast<double>(order.size()));
    }
    MlpModel model(std::move(params), cfg.defuzz, train.schema());
    model.set_loss_trace(std::move(trace));
    return model;
}

KvDocument MlpModel::to_kv() const {
    KvDocument doc("mlp_model");
    doc.set("defuzz", std::string(to_string(defuzz_.method)));
    doc.set("defuzz_resolution", defuzz_.resolution);
    doc.set("activation", std::string(to_string(params_.activation)));
    doc.set("inputs", params_.inputs);
    doc.set("hidden1", params_.hidden1);
    doc.set("hidden2", params_.hidden2);
    doc.set("outputs", params_.outputs);
    std::string schema;
    for (std::size_t j = 0; j < schema_.size(); ++j) {
        if (j) schema += ' ';
        schema += to_string(schema_[j]);
    }
    doc.set("schema", schema);
    doc.set("W1", params_.W1);
    doc.set("b1", params_.b1);
    doc.set("W2", params_.W2);
    doc.set("b2", params_.b2);
    doc.set("W0", params_.W0);
    doc.set("b0", params_.b0);
    return doc;
}

MlpModel MlpModel::from_kv(const KvDocument& doc) {
    doc.expect_kind("mlp_model");
    MlpParams p;
    p.activation = parse_activation(doc.get("activation"));
    p.inputs = static_cast<std::size_t>(doc.get_int("inputs"));
    p.hidden1 = static_cast<std::size_t>(doc.get_int("hidden1"));
    p.hidden2 = static_cast<std::size_t>(doc.get_int("hidden2"));
    p.outputs = static_cast<std::size_t>(doc.get_int("outputs"));
    p.W1 = doc.get_doubles("W1");
    p.b1 = doc.get_doubles("b1");
    p.W2 = doc.get_doubles("W2");
    p.b2 = doc.get_doubles("b2");
    p.W0 = doc.get_doubles("W0");
    p.b0 = doc.get_doubles("b0");
    std::vector<FeatureKind> schema;
    for (auto tok : split_view(doc.get("schema"), ' ')) {
        if (!tok.empty()) schema.push_back(parse_feature_kind(tok));
    }
    const DefuzzSpec defuzz(parse_defuzz_method(doc.get("defuzz")),
                            static_cast<int>(doc.get_int("defuzz_resolution")));
    return MlpModel(std::move(p), defuzz, std::move(schema));
}

}  // namespace fuzzyclf
