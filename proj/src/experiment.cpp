#include "fuzzyclf/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "fuzzyclf/errors.hpp"
#include "fuzzyclf/numeric_text.hpp"
#include "fuzzyclf/rng.hpp"

namespace fuzzyclf {

std::string_view to_string(ModelKind kind) noexcept { return kind == ModelKind::svm ? "svm" : "mlp"; }

ModelKind parse_model_kind(std::string_view name) {
    if (name == "svm") return ModelKind::svm;
    if (name == "mlp") return ModelKind::mlp;
    throw DomainError("unknown model '" + std::string(name) + "' (expected svm or mlp)");
}

const DefuzzSpec& ModelConfig::defuzz() const noexcept { return kind == ModelKind::svm ? svm.defuzz : mlp.defuzz; }

void ModelConfig::set_defuzz(const DefuzzSpec& spec) {
    svm.defuzz = spec;
    mlp.defuzz = spec;
}

void ModelConfig::set_seed(std::uint64_t seed) {
    svm.seed = seed;
    mlp.seed = seed;
}

TrainedModel train_model(const FuzzyDataset& train, const ModelConfig& cfg) {
    if (cfg.kind == ModelKind::svm) return train_df_svm(train, cfg.svm);
    return train_df_mlp(train, cfg.mlp);
}

Predictions predict_all(const TrainedModel& model, const FuzzyDataset& ds) {
    Predictions out;
    out.labels.reserve(ds.size());
    out.scores.reserve(ds.size());
    for (const auto& inst : ds.instances()) {
        auto s = std::visit(
            [&](const auto& m) {
                if constexpr (std::is_same_v<std::decay_t<decltype(m)>, SvmModel>) {
                    return m.scores(inst.features);
                } else {
                    return m.probabilities(inst.features);
                }
            },
            model);
        out.labels.push_back(static_cast<int>(argmax_lowest(s)));
        out.scores.push_back(std::move(s));
    }
    return out;
}

MetricsReport evaluate_model(const TrainedModel& model, const FuzzyDataset& ds) {
    const int K = std::visit([](const auto& m) { return m.num_classes(); }, model);
    if (ds.num_classes() > K) {
        throw SchemaError("dataset has " + std::to_string(ds.num_classes()) + " classes but the model knows " +
                          std::to_string(K));
    }
    const auto preds = predict_all(model, ds);
    const auto truths = ds.labels();
    return evaluate_predictions(preds.labels, truths, K, &preds.scores);
}

KvDocument model_to_kv(const TrainedModel& model) {
    return std::visit([](const auto& m) { return m.to_kv(); }, model);
}

TrainedModel model_from_kv(const KvDocument& doc) {
    const auto& kind = doc.get("kind");
    if (kind == "svm_model") return SvmModel::from_kv(doc);
    if (kind == "mlp_model") return MlpModel::from_kv(doc);
    throw ParseError("unknown model kind '" + kind + "'", 0, 0);
}

RunOutcome train_and_evaluate(const DatasetSplit& split, const ModelConfig& cfg, const std::vector<double>& c_grid) {
    RunOutcome out;
    if (cfg.kind != ModelKind::svm || c_grid.empty()) {
        const auto model = train_model(split.train, cfg);
        if (!split.val.empty()) out.validation_accuracy = evaluate_model(model, split.val).accuracy;
        out.test = evaluate_model(model, split.test);
        return out;
    }
    std::optional<TrainedModel> best;
    double best_acc = -1.0;
    for (double C : c_grid) {
        ModelConfig trial = cfg;
        trial.svm.C = C;
        auto model = train_model(split.train, trial);
        const double acc = evaluate_model(model, split.val).accuracy;
        if (acc > best_acc) {
            best_acc = acc;
            best = std::move(model);
            out.selected_c = C;
        }
    }
    out.validation_accuracy = best_acc;
    out.test = evaluate_model(*best, split.test);
    return out;
}

std::string_view to_string(SweepParam p) noexcept {
    switch (p) {
        case SweepParam::m: return "m";
        case SweepParam::beta: return "beta";
        case SweepParam::defuzz: return "defuzz";
    }
    return "?";
}

SweepParam parse_sweep_param(std::string_view name) {
    if (name == "m") return SweepParam::m;
    if (name == "beta") return SweepParam::beta;
    if (name == "defuzz") return SweepParam::defuzz;
    throw DomainError("unknown sweep parameter '" + std::string(name) + "' (expected m, beta or defuzz)");
}

namespace {

std::size_t parse_m_value(std::string_view text) {
    long long v = 0;
    if (!parse_int(text, v) || v < 1) throw DomainError("m values must be positive integers, got '" + std::string(text) + "'");
    return static_cast<std::size_t>(v);
}

double parse_beta_value(std::string_view text) {
    double v = 0.0;
    if (!parse_double(text, v) || !(v >= 0.0 && v <= 1.0)) {
        throw DomainError("beta values must lie in [0, 1], got '" + std::string(text) + "'");
    }
    return v;
}

// Smallest n whose training split holds exactly m instances.
std::size_t total_for_training_size(std::size_t m, const SplitSpec& spec) {
    auto n = static_cast<std::size_t>(std::floor(static_cast<double>(m) / spec.train));
    n = std::max<std::size_t>(n, m);
    for (;; ++n) {
        const std::size_t val = static_cast<std::size_t>(std::llround(static_cast<double>(n) * spec.val));
        const std::size_t test = static_cast<std::size_t>(std::llround(static_cast<double>(n) * spec.test));
        if (val + test <= n && n - val - test >= m) return n;
    }
}

constexpr std::uint64_t kModelStream = std::uint64_t{1} << 32;

}  // namespace

void SweepConfig::validate() const {
    if (values.empty()) throw DomainError("sweep needs at least one value");
    if (repeats < 1) throw DomainError("repeats must be >= 1");
    split.validate();
    if (input == nullptr) data.validate();
    for (const auto& v : values) {
        switch (param) {
            case SweepParam::m: parse_m_value(v); break;
            case SweepParam::beta: parse_beta_value(v); break;
            case SweepParam::defuzz: parse_defuzz_method(v); break;
        }
    }
    if (param == SweepParam::beta && input != nullptr && !input->has_interval_features()) {
        throw SchemaError("a beta sweep needs a dataset with interval columns");
    }
    for (double c : c_grid) {
        if (!(c > 0.0)) throw DomainError("C grid values must be > 0");
    }
    if (model.kind == ModelKind::svm) model.svm.validate();
    else model.mlp.validate();
}

DatasetSplit sweep_split(const SweepConfig& cfg, std::string_view value, int repeat) {
    const std::uint64_t data_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(repeat));
    SplitSpec spec = cfg.split;
    spec.seed = derive_seed(data_seed, 1);
    SyntheticConfig gen = cfg.data;
    gen.seed = data_seed;

    if (cfg.param == SweepParam::m) {
        const std::size_t m = parse_m_value(value);
        if (cfg.input == nullptr) {
            gen.n = total_for_training_size(m, spec);
            auto parts = split(generate_synthetic(gen), spec);
            if (parts.train.size() > m) {
                std::vector<std::size_t> keep(m);
                for (std::size_t i = 0; i < m; ++i) keep[i] = i;
                parts.train = parts.train.subset(keep);
            }
            return parts;
        }
        auto parts = split(*cfg.input, spec);
        if (m > parts.train.size()) {
            throw DomainError("m = " + std::to_string(m) + " exceeds the training split (" +
                              std::to_string(parts.train.size()) + " instances)");
        }
        std::vector<std::size_t> keep(m);
        for (std::size_t i = 0; i < m; ++i) keep[i] = i;
        parts.train = parts.train.subset(keep);
        return parts;
    }
    if (cfg.param == SweepParam::beta) {
        const double beta = parse_beta_value(value);
        const FuzzyDataset raw = cfg.input != nullptr ? *cfg.input : generate_synthetic_intervals(gen);
        return split(convert_intervals(raw, beta), spec);
    }
    return split(cfg.input != nullptr ? *cfg.input : generate_synthetic(gen), spec);
}

std::pair<double, double> mean_sd(const std::vector<double>& xs) {
    if (xs.empty()) return {0.0, 0.0};
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    if (xs.size() == 1) return {mean, 0.0};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

std::string format_mean_sd(double mean, double sd, int precision) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision) << mean << "±" << sd;
    return os.str();
}

SweepResult run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    struct Task {
        std::size_t value;
        int repeat;
    };
    std::vector<Task> tasks;
    for (std::size_t v = 0; v < cfg.values.size(); ++v) {
        for (int r = 0; r < cfg.repeats; ++r) tasks.push_back({v, r});
    }
    std::vector<SweepRow> rows(tasks.size());

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= tasks.size()) return;
            try {
                const auto& task = tasks[t];
                const auto& value = cfg.values[task.value];
                ModelConfig model = cfg.model;
                model.set_seed(derive_seed(cfg.seed, kModelStream + static_cast<std::uint64_t>(task.repeat)));
                if (cfg.param == SweepParam::defuzz) {
                    model.set_defuzz(DefuzzSpec(parse_defuzz_method(value), model.defuzz().resolution));
                }
                const auto parts = sweep_split(cfg, value, task.repeat);
                const auto outcome = train_and_evaluate(parts, model, cfg.c_grid);
                SweepRow& row = rows[t];
                row.param = value;
                row.repeat = task.repeat;
                row.accuracy = outcome.test.accuracy;
                row.balanced_accuracy = outcome.test.balanced_accuracy;
                row.auc = outcome.test.macro_auc;
                row.selected_c = outcome.selected_c;
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(tasks.size());
                return;
            }
        }
    };
    unsigned threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, tasks.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    SweepResult result;
    result.rows = rows;
    for (std::size_t v = 0; v < cfg.values.size(); ++v) {
        std::vector<double> acc, bal, auc;
        for (const auto& row : rows) {
            if (row.param != cfg.values[v]) continue;
            acc.push_back(row.accuracy);
            bal.push_back(row.balanced_accuracy);
            if (row.auc) auc.push_back(*row.auc);
        }
        SweepSummaryRow s;
        s.param = cfg.values[v];
        s.runs = static_cast<int>(acc.size());
        std::tie(s.accuracy_mean, s.accuracy_sd) = mean_sd(acc);
        std::tie(s.balanced_mean, s.balanced_sd) = mean_sd(bal);
        if (auc.size() == acc.size()) {
            const auto [m, sd] = mean_sd(auc);
            s.auc_mean = m;
            s.auc_sd = sd;
        }
        result.summary.push_back(s);
    }
    return result;
}

void write_sweep_rows(const std::vector<SweepRow>& rows, std::ostream& out) {
    const bool with_c = std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.selected_c.has_value(); });
    out << "param,repeat,accuracy,balanced_accuracy,auc" << (with_c ? ",selected_c" : "") << '\n';
    for (const auto& r : rows) {
        out << r.param << ',' << r.repeat << ',' << format_double(r.accuracy) << ','
            << format_double(r.balanced_accuracy) << ',' << (r.auc ? format_double(*r.auc) : "");
        if (with_c) out << ',' << (r.selected_c ? format_double(*r.selected_c) : "");
        out << '\n';
    }
}

void write_sweep_summary(const std::vector<SweepSummaryRow>& rows, std::ostream& out) {
    out << "param,runs,accuracy,balanced_accuracy,auc\n";
    for (const auto& r : rows) {
        out << r.param << ',' << r.runs << ',' << format_mean_sd(r.accuracy_mean, r.accuracy_sd) << ','
            << format_mean_sd(r.balanced_mean, r.balanced_sd) << ','
            << (r.auc_mean ? format_mean_sd(*r.auc_mean, *r.auc_sd) : "") << '\n';
    }
}

std::vector<double> read_csv_column(std::istream& in, std::string_view column) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty CSV file", 1, 0);
    const auto header = split_view(line, ',');
    std::size_t col = header.size();
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (trim(header[j]) == column) col = j;
    }
    if (col == header.size()) throw ParseError("no column named '" + std::string(column) + "'", 1, 0);
    std::vector<double> values;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto cells = split_view(line, ',');
        double v = 0.0;
        if (col >= cells.size() || !parse_double(cells[col], v)) {
            throw ParseError("bad value in column '" + std::string(column) + "'", row, col + 1);
        }
        values.push_back(v);
    }
    return values;
}

}  // namespace fuzzyclf
