#include "fuzzyclf/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fuzzyclf/errors.hpp"
#include "fuzzyclf/numeric_text.hpp"
#include "fuzzyclf/rng.hpp"

namespace fuzzyclf {

std::string_view to_string(KernelKind kind) noexcept {
    switch (kind) {
        case KernelKind::linear: return "linear";
        case KernelKind::poly: return "poly";
        case KernelKind::rbf: return "rbf";
    }
    return "unknown";
}

KernelKind parse_kernel_kind(std::string_view name) {
    for (auto k : {KernelKind::linear, KernelKind::poly, KernelKind::rbf}) {
        if (name == to_string(k)) return k;
    }
    throw DomainError("unknown kernel '" + std::string(name) + "' (expected linear, poly or rbf)");
}

void KernelSpec::validate() const {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError("kernel gamma must be > 0 (or 0 for 1/p)");
    if (kind == KernelKind::poly) {
        if (degree < 1) throw DomainError("poly kernel degree must be >= 1");
        if (!(coef0 >= 0.0) || !std::isfinite(coef0)) throw DomainError("poly kernel offset must be >= 0");
    }
}

KernelSpec KernelSpec::resolved(std::size_t num_features) const {
    validate();
    KernelSpec out = *this;
    if (out.gamma == 0.0) out.gamma = 1.0 / static_cast<double>(std::max<std::size_t>(num_features, 1));
    return out;
}

double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> z) {
    if (x.size() != z.size()) {
        throw SchemaError("kernel inputs differ in length (" + std::to_string(x.size()) + " vs " +
                          std::to_string(z.size()) + ")");
    }
    const double gamma = spec.gamma == 0.0 ? 1.0 / static_cast<double>(std::max<std::size_t>(x.size(), 1))
                                           : spec.gamma;
    switch (spec.kind) {
        case KernelKind::linear: return std::inner_product(x.begin(), x.end(), z.begin(), 0.0);
        case KernelKind::poly: {
            const double base = gamma * std::inner_product(x.begin(), x.end(), z.begin(), 0.0) + spec.coef0;
            double out = 1.0;
            for (int d = 0; d < spec.degree; ++d) out *= base;
            return out;
        }
        case KernelKind::rbf: {
            double d2 = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double d = x[i] - z[i];
                d2 += d * d;
            }
            return std::exp(-gamma * d2);
        }
    }
    return 0.0;
}

GramMatrix::GramMatrix(const KernelSpec& spec, const std::vector<std::vector<double>>& points)
    : m_(points.size()), values_(points.size() * points.size()) {
    for (std::size_t i = 0; i < m_; ++i) {
        for (std::size_t j = i; j < m_; ++j) {
            const double k = kernel_eval(spec, points[i], points[j]);
            values_[i * m_ + j] = k;
            values_[j * m_ + i] = k;
        }
    }
}

GramMatrix::GramMatrix(std::size_t m, std::vector<double> values) : m_(m), values_(std::move(values)) {
    if (values_.size() != m * m) throw SchemaError("gram matrix needs m*m entries");
}

// --- SMO --------------------------------------------------------------------------

double dual_objective(const GramMatrix& gram, std::span<const int> y, std::span<const double> alpha) {
    const std::size_t m = gram.size();
    double quad = 0.0;
    double lin = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (alpha[i] == 0.0) continue;
        lin += alpha[i];
        for (std::size_t j = 0; j < m; ++j) {
            if (alpha[j] == 0.0) continue;
            quad += alpha[i] * alpha[j] * y[i] * y[j] * gram(i, j);
        }
    }
    return 0.5 * quad - lin;
}

namespace {

constexpr double kTau = 1e-12;

class SmoSolver {
public:
    SmoSolver(const GramMatrix& gram, std::span<const int> y, const SmoOptions& opt)
        : K_(gram), y_(y), opt_(opt), m_(gram.size()), alpha_(m_, 0.0), grad_(m_, -1.0), order_(m_) {
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        Rng rng(opt.seed);
        std::shuffle(order_.begin(), order_.end(), rng);
    }

    BinarySvmSolution run() {
        BinarySvmSolution sol;
        const std::size_t sweep = std::max<std::size_t>(m_, 1);
        const std::size_t hard_cap = std::max<std::size_t>(10'000'000, 100 * m_);
        double best = std::numeric_limits<double>::infinity();
        int stagnant = 0;
        std::size_t iter = 0;
        double violation = 0.0;
        while (true) {
            std::size_t i = 0, j = 0;
            violation = select(i, j);
            if (violation <= opt_.tol) break;
            update(i, j);
            ++iter;
            if (opt_.record_objective) sol.objective_trace.push_back(objective());
            if (iter % sweep == 0) {
                if (violation < best) {
                    best = violation;
                    stagnant = 0;
                } else if (++stagnant >= opt_.max_passes) {
                    throw ConvergenceError("SMO made no progress for " + std::to_string(opt_.max_passes) +
                                               " sweeps",
                                           violation);
                }
            }
            if (iter >= hard_cap) throw ConvergenceError("SMO hit its iteration cap", violation);
        }
        sol.iterations = iter;
        sol.violation = std::max(violation, 0.0);
        sol.bias = bias();
        sol.objective = objective();
        sol.alpha = std::move(alpha_);
        return sol;
    }

private:
    bool in_up(std::size_t t) const { return y_[t] > 0 ? alpha_[t] < opt_.C : alpha_[t] > 0.0; }
    bool in_low(std::size_t t) const { return y_[t] > 0 ? alpha_[t] > 0.0 : alpha_[t] < opt_.C; }

    // Returns m(alpha) - M(alpha); sets the working pair when positive.
    double select(std::size_t& out_i, std::size_t& out_j) const {
        double gmax = -std::numeric_limits<double>::infinity();
        std::ptrdiff_t i = -1;
        for (auto t : order_) {
            if (!in_up(t)) continue;
            const double s = -y_[t] * grad_[t];
            if (s >= gmax) {
                gmax = s;
                i = static_cast<std::ptrdiff_t>(t);
            }
        }
        double gmin = std::numeric_limits<double>::infinity();
        double best_gain = std::numeric_limits<double>::infinity();
        std::ptrdiff_t j = -1;
        if (i >= 0) {
            const auto ii = static_cast<std::size_t>(i);
            const auto Ki = K_.row(ii);
            for (auto t : order_) {
                if (!in_low(t)) continue;
                const double s = -y_[t] * grad_[t];
                gmin = std::min(gmin, s);
                const double b = gmax - s;
                if (b <= 0.0) continue;
                double a = K_(ii, ii) + K_(t, t) - 2.0 * Ki[t];
                if (a <= 0.0) a = kTau;
                const double gain = -(b * b) / a;
                if (gain <= best_gain) {
                    best_gain = gain;
                    j = static_cast<std::ptrdiff_t>(t);
                }
            }
        }
        if (i < 0 || j < 0) return 0.0;
        out_i = static_cast<std::size_t>(i);
        out_j = static_cast<std::size_t>(j);
        return gmax - gmin;
    }

    void update(std::size_t i, std::size_t j) {
        const double C = opt_.C;
        const double Kij = K_(i, j);
        const double Qij = y_[i] * y_[j] * Kij;
        const double old_i = alpha_[i];
        const double old_j = alpha_[j];
        double& ai = alpha_[i];
        double& aj = alpha_[j];
        if (y_[i] != y_[j]) {
            double quad = K_(i, i) + K_(j, j) + 2.0 * Qij;
            if (quad <= 0.0) quad = kTau;
            const double delta = (-grad_[i] - grad_[j]) / quad;
            const double diff = ai - aj;
            ai += delta;
            aj += delta;
            if (diff > 0.0) {
                if (aj < 0.0) { aj = 0.0; ai = diff; }
            } else {
                if (ai < 0.0) { ai = 0.0; aj = -diff; }
            }
            if (diff > 0.0) {
                if (ai > C) { ai = C; aj = C - diff; }
            } else {
                if (aj > C) { aj = C; ai = C + diff; }
            }
        } else {
            double quad = K_(i, i) + K_(j, j) - 2.0 * Qij;
            if (quad <= 0.0) quad = kTau;
            const double delta = (grad_[i] - grad_[j]) / quad;
            const double sum = ai + aj;
            ai -= delta;
            aj += delta;
            if (sum > C) {
                if (ai > C) { ai = C; aj = sum - C; }
            } else {
                if (aj < 0.0) { aj = 0.0; ai = sum; }
            }
            if (sum > C) {
                if (aj > C) { aj = C; ai = sum - C; }
            } else {
                if (ai < 0.0) { ai = 0.0; aj = sum; }
            }
        }
        const double di = ai - old_i;
        const double dj = aj - old_j;
        const auto Ki = K_.row(i);
        const auto Kj = K_.row(j);
        const double yi_di = y_[i] * di;
        const double yj_dj = y_[j] * dj;
        for (std::size_t t = 0; t < m_; ++t) grad_[t] += y_[t] * (Ki[t] * yi_di + Kj[t] * yj_dj);
    }

    double objective() const {
        // With grad = Q alpha - 1: 1/2 a'Qa - sum a = 1/2 sum a_t (grad_t - 1).
        double s = 0.0;
        for (std::size_t t = 0; t < m_; ++t) s += alpha_[t] * (grad_[t] - 1.0);
        return 0.5 * s;
    }

    double bias() const {
        double sum = 0.0;
        std::size_t free = 0;
        double ub = std::numeric_limits<double>::infinity();
        double lb = -std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < m_; ++t) {
            const double s = -y_[t] * grad_[t];
            if (alpha_[t] > 0.0 && alpha_[t] < opt_.C) {
                sum += s;
                ++free;
            } else {
                // Bound variables constrain b from one side.
                if (in_up(t)) lb = std::max(lb, s);
                if (in_low(t)) ub = std::min(ub, s);
            }
        }
        if (free > 0) return sum / static_cast<double>(free);
        if (std::isinf(ub) && std::isinf(lb)) return 0.0;
        if (std::isinf(ub)) return lb;
        if (std::isinf(lb)) return ub;
        return 0.5 * (ub + lb);
    }

    const GramMatrix& K_;
    std::span<const int> y_;
    SmoOptions opt_;
    std::size_t m_;
    std::vector<double> alpha_;
    std::vector<double> grad_;
    std::vector<std::size_t> order_;
};

}  // namespace

BinarySvmSolution solve_binary_svm(const GramMatrix& gram, std::span<const int> y, const SmoOptions& options) {
    if (y.size() != gram.size()) throw SchemaError("label count does not match gram size");
    if (!(options.C > 0.0) || !std::isfinite(options.C)) throw DomainError("C must be > 0");
    if (!(options.tol > 0.0)) throw DomainError("tol must be > 0");
    if (options.max_passes < 1) throw DomainError("max_passes must be >= 1");
    for (int v : y) {
        if (v != 1 && v != -1) throw DomainError("binary labels must be +1 or -1");
    }
    return SmoSolver(gram, y, options).run();
}

// --- multi-class model -----------------------------------------------------------------

void SvmTrainConfig::validate() const {
    kernel.validate();
    if (!(C > 0.0) || !std::isfinite(C)) throw DomainError("C must be > 0");
    if (!(tol > 0.0)) throw DomainError("tol must be > 0");
    if (max_passes < 1) throw DomainError("max_passes must be >= 1");
    if (defuzz.resolution < 2) throw DomainError("defuzzification resolution must be >= 2");
}

std::vector<int> SvmModel::binary_labels(int cls) const {
    std::vector<int> y(labels_.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = labels_[i] == cls ? 1 : -1;
    return y;
}

std::vector<double> SvmModel::decision_values(std::span<const double> x) const {
    if (x.size() != schema_.size()) {
        throw SchemaError("input has " + std::to_string(x.size()) + " features, model expects " +
                          std::to_string(schema_.size()));
    }
    const std::size_t K = classes_.size();
    std::vector<double> out(K, 0.0);
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
        bool used = false;
        for (const auto& c : classes_) used = used || c.alpha[i] != 0.0;
        if (!used) continue;
        const double k = kernel_eval(kernel_, x, inputs_[i]);
        for (std::size_t l = 0; l < K; ++l) {
            const double a = classes_[l].alpha[i];
            if (a == 0.0) continue;
            out[l] += (labels_[i] == static_cast<int>(l) ? a : -a) * k;
        }
    }
    for (std::size_t l = 0; l < K; ++l) out[l] += classes_[l].bias;
    return out;
}

std::vector<double> SvmModel::scores(const std::vector<Feature>& x) const {
    check_schema(schema_, x);
    return decision_values(defuzzify_vector(x, defuzz_));
}

std::vector<double> SvmModel::scores(const FuzzyVector& x) const {
    return scores(std::vector<Feature>(x.begin(), x.end()));
}

int SvmModel::predict(const std::vector<Feature>& x) const { return argmax_lowest(scores(x)); }

int SvmModel::predict(const FuzzyVector& x) const { return argmax_lowest(scores(x)); }

SvmModel train_df_svm(const FuzzyDataset& train, const SvmTrainConfig& cfg) {
    cfg.validate();
    if (train.empty()) throw DomainError("training set is empty");
    const auto counts = train.class_counts();
    SvmModel model;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] == 0) throw DomainError("class " + std::to_string(k) + " has no training instances");
        if (counts[k] == 1) {
            model.warnings_.push_back("class " + std::to_string(k) +
                                      " has a single training instance; its sub-problem is degenerate");
        }
    }
    model.kernel_ = cfg.kernel.resolved(train.num_features());
    model.defuzz_ = cfg.defuzz;
    model.C_ = cfg.C;
    model.schema_ = train.schema();
    model.inputs_ = defuzzify_dataset(train, cfg.defuzz);
    model.labels_ = train.labels();

    const GramMatrix gram(model.kernel_, model.inputs_);
    for (int l = 0; l < train.num_classes(); ++l) {
        const auto y = model.binary_labels(l);
        SmoOptions opt;
        opt.C = cfg.C;
        opt.tol = cfg.tol;
        opt.max_passes = cfg.max_passes;
        opt.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(l));
        opt.record_objective = cfg.record_objective;
        auto sol = solve_binary_svm(gram, y, opt);
        model.classes_.push_back({std::move(sol.alpha), sol.bias, sol.iterations, sol.violation,
                                  std::move(sol.objective_trace)});
    }
    return model;
}

// --- persistence --------------------------------------------------------------------

KvDocument SvmModel::to_kv() const {
    KvDocument doc("svm_model");
    doc.set("defuzz", std::string(to_string(defuzz_.method)));
    doc.set("defuzz_resolution", defuzz_.resolution);
    doc.set("kernel", std::string(to_string(kernel_.kind)));
    doc.set("gamma", kernel_.gamma);
    doc.set("degree", kernel_.degree);
    doc.set("coef0", kernel_.coef0);
    doc.set("C", C_);
    std::string schema;
    for (std::size_t j = 0; j < schema_.size(); ++j) {
        if (j) schema += ' ';
        schema += to_string(schema_[j]);
    }
    doc.set("schema", schema);
    doc.set("num_classes", num_classes());
    doc.set("num_inputs", inputs_.size());
    doc.set("labels", labels_);
    for (std::size_t i = 0; i < inputs_.size(); ++i) doc.set("input." + std::to_string(i), inputs_[i]);
    for (std::size_t l = 0; l < classes_.size(); ++l) {
        const std::string prefix = "class." + std::to_string(l) + ".";
        doc.set(prefix + "bias", classes_[l].bias);
        doc.set(prefix + "alpha", classes_[l].alpha);
    }
    return doc;
}

SvmModel SvmModel::from_kv(const KvDocument& doc) {
    doc.expect_kind("svm_model");
    SvmModel model;
    model.defuzz_ = DefuzzSpec(parse_defuzz_method(doc.get("defuzz")),
                               static_cast<int>(doc.get_int("defuzz_resolution")));
    model.kernel_.kind = parse_kernel_kind(doc.get("kernel"));
    model.kernel_.gamma = doc.get_double("gamma");
    model.kernel_.degree = static_cast<int>(doc.get_int("degree"));
    model.kernel_.coef0 = doc.get_double("coef0");
    model.kernel_.validate();
    model.C_ = doc.get_double("C");
    for (auto tok : split_view(doc.get("schema"), ' ')) {
        if (!tok.empty()) model.schema_.push_back(parse_feature_kind(tok));
    }
    const auto K = doc.get_int("num_classes");
    const auto m = doc.get_int("num_inputs");
    if (K < 1 || m < 0) throw ParseError("invalid class or input count", 0, 0);
    model.labels_ = doc.get_ints("labels");
    if (model.labels_.size() != static_cast<std::size_t>(m)) throw ParseError("label count mismatch", 0, 0);
    for (long long i = 0; i < m; ++i) {
        auto row = doc.get_doubles("input." + std::to_string(i));
        if (row.size() != model.schema_.size()) throw ParseError("input row width mismatch", 0, 0);
        model.inputs_.push_back(std::move(row));
    }
    for (long long l = 0; l < K; ++l) {
        const std::string prefix = "class." + std::to_string(l) + ".";
        ClassModel c;
        c.bias = doc.get_double(prefix + "bias");
        c.alpha = doc.get_doubles(prefix + "alpha");
        if (c.alpha.size() != static_cast<std::size_t>(m)) throw ParseError("alpha length mismatch", 0, 0);
        model.classes_.push_back(std::move(c));
    }
    return model;
}

}  // namespace fuzzyclf
