// fuzzyclf command-line tool: data generation, conversion, training,
// evaluation, sweeps and Rademacher estimates over fuzzy-feature datasets.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fuzzyclf/dataset.hpp"
#include "fuzzyclf/errors.hpp"
#include "fuzzyclf/experiment.hpp"
#include "fuzzyclf/kv_format.hpp"
#include "fuzzyclf/metrics.hpp"
#include "fuzzyclf/numeric_text.hpp"
#include "fuzzyclf/rng.hpp"
#include "fuzzyclf/theory.hpp"

namespace fs = std::filesystem;
using namespace fuzzyclf;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::uint64_t seed = 0;
    bool quiet = false;
};

struct GenFlags {
    std::size_t n = 2000;
    std::size_t p = 20;
    int k = 5;
    double spread = 10.0;
    double sigma = 1.0;
};

struct ModelFlags {
    std::string model = "svm";
    std::string defuzz = "val";
    int resolution = kDefaultResolution;
    std::string kernel = "rbf";
    double c = 1.0;
    double gamma = 0.0;
    int degree = 3;
    double coef0 = 0.0;
    double tol = 1e-3;
    int max_passes = 100;
    std::size_t h1 = 100;
    std::size_t h2 = 100;
    std::string activation = "relu";
    double lr = 1e-3;
    int epochs = 200;
    std::size_t batch = 32;
    double weight_decay = 1e-4;
};

void add_gen_flags(CLI::App* app, GenFlags& f) {
    app->add_option("--n", f.n, "Number of instances")->capture_default_str();
    app->add_option("--p", f.p, "Number of features")->capture_default_str();
    app->add_option("--k", f.k, "Number of classes")->capture_default_str();
    app->add_option("--spread", f.spread, "Class centers drawn from U[0, spread]")->capture_default_str();
    app->add_option("--sigma", f.sigma, "Within-class standard deviation")->capture_default_str();
}

void add_model_flags(CLI::App* app, ModelFlags& f) {
    app->add_option("--model", f.model, "svm or mlp")->capture_default_str();
    app->add_option("--defuzz", f.defuzz, "mom, cog, alc, val, m1 or m2")->capture_default_str();
    app->add_option("--resolution", f.resolution, "Quadrature levels for kinds without a closed form")
        ->capture_default_str();
    app->add_option("--kernel", f.kernel, "linear, poly or rbf")->capture_default_str();
    app->add_option("--c", f.c, "SVM box constraint")->capture_default_str();
    app->add_option("--gamma", f.gamma, "Kernel gamma; 0 means 1/p")->capture_default_str();
    app->add_option("--degree", f.degree, "Polynomial degree")->capture_default_str();
    app->add_option("--coef0", f.coef0, "Polynomial offset")->capture_default_str();
    app->add_option("--tol", f.tol, "SMO stopping tolerance")->capture_default_str();
    app->add_option("--max-passes", f.max_passes, "SMO stagnation limit in sweeps")->capture_default_str();
    app->add_option("--h1", f.h1, "First hidden layer width")->capture_default_str();
    app->add_option("--h2", f.h2, "Second hidden layer width")->capture_default_str();
    app->add_option("--activation", f.activation, "relu or tanh")->capture_default_str();
    app->add_option("--lr", f.lr, "Adam learning rate")->capture_default_str();
    app->add_option("--epochs", f.epochs, "Training epochs")->capture_default_str();
    app->add_option("--batch", f.batch, "Mini-batch size")->capture_default_str();
    app->add_option("--weight-decay", f.weight_decay, "Decoupled weight decay")->capture_default_str();
}

SyntheticConfig make_synthetic(const GenFlags& f, std::uint64_t seed) {
    SyntheticConfig cfg;
    cfg.n = f.n;
    cfg.num_features = f.p;
    cfg.num_classes = f.k;
    cfg.center_spread = f.spread;
    cfg.within_sigma = f.sigma;
    cfg.seed = seed;
    cfg.validate();
    return cfg;
}

ModelConfig make_model(const ModelFlags& f, std::uint64_t seed) {
    ModelConfig cfg;
    cfg.kind = parse_model_kind(f.model);
    const DefuzzSpec defuzz(parse_defuzz_method(f.defuzz), f.resolution);
    cfg.svm.defuzz = defuzz;
    cfg.svm.kernel.kind = parse_kernel_kind(f.kernel);
    cfg.svm.kernel.gamma = f.gamma;
    cfg.svm.kernel.degree = f.degree;
    cfg.svm.kernel.coef0 = f.coef0;
    cfg.svm.C = f.c;
    cfg.svm.tol = f.tol;
    cfg.svm.max_passes = f.max_passes;
    cfg.mlp.defuzz = defuzz;
    cfg.mlp.hidden1 = f.h1;
    cfg.mlp.hidden2 = f.h2;
    cfg.mlp.activation = parse_activation(f.activation);
    cfg.mlp.adam.learning_rate = f.lr;
    cfg.mlp.adam.weight_decay = f.weight_decay;
    cfg.mlp.epochs = f.epochs;
    cfg.mlp.batch_size = f.batch;
    cfg.set_seed(seed);
    if (cfg.kind == ModelKind::svm) cfg.svm.validate();
    else cfg.mlp.validate();
    return cfg;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> out;
    for (auto cell : split_view(text, ',')) {
        double v = 0.0;
        if (!parse_double(cell, v)) throw DomainError(std::string(what) + ": '" + std::string(cell) + "' is not a number");
        out.push_back(v);
    }
    return out;
}

std::vector<std::string> parse_string_list(const std::string& text) {
    std::vector<std::string> out;
    for (auto cell : split_view(text, ',')) {
        auto t = trim(cell);
        if (!t.empty()) out.emplace_back(t);
    }
    return out;
}

SplitSpec parse_fractions(const std::string& text, std::uint64_t seed) {
    const auto f = parse_double_list(text, "--fractions");
    if (f.size() != 3) throw DomainError("--fractions needs three comma-separated values (train,val,test)");
    SplitSpec spec{f[0], f[1], f[2], seed};
    spec.validate();
    return spec;
}

void require_readable(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read '" + path + "'");
}

// Runs `fn`, turning library validation errors into usage errors.
template <class F>
auto validated(F&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
}

class Manifest {
public:
    Manifest(const CLI::App* sub, const Globals& g) : doc_("run_manifest") {
        doc_.set("subcommand", sub->get_name());
        doc_.set("seed", std::to_string(g.seed));
        for (const auto* opt : sub->get_options()) {
            const auto name = opt->get_single_name();
            if (name.empty() || name == "help") continue;
            std::string value;
            if (opt->count() > 0) {
                for (const auto& r : opt->results()) value += (value.empty() ? "" : " ") + r;
            } else {
                value = opt->get_default_str();
            }
            doc_.set("flag." + name, value.empty() ? std::string("-") : value);
        }
    }

    void write_for(const std::string& output) const { doc_.save(output + ".manifest"); }

private:
    KvDocument doc_;
};

void say(const Globals& g, const std::string& msg) {
    if (!g.quiet) std::cout << msg << '\n';
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classification with fuzzy-feature observations"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Base random seed")->capture_default_str();
    app.add_flag("--quiet", g.quiet, "Suppress progress output");

    std::function<void()> action;

    // gen
    GenFlags gen;
    std::string gen_out;
    bool gen_intervals = false;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic fuzzy dataset");
    add_gen_flags(gen_cmd, gen);
    gen_cmd->add_flag("--intervals", gen_intervals, "Emit interval features instead of triangular ones");
    gen_cmd->add_option("--out", gen_out, "Output CSV")->required();
    gen_cmd->callback([&] {
        const auto cfg = validated([&] { return make_synthetic(gen, g.seed); });
        action = [&, cfg] {
            const auto ds = gen_intervals ? generate_synthetic_intervals(cfg) : generate_synthetic(cfg);
            write_fuzzy_csv(ds, fs::path(gen_out));
            Manifest(gen_cmd, g).write_for(gen_out);
            say(g, "wrote " + std::to_string(ds.size()) + " instances to " + gen_out);
        };
    });

    // convert
    std::string conv_in, conv_out;
    double conv_beta = 0.5;
    auto* conv_cmd = app.add_subcommand("convert", "Convert interval columns to triangular fuzzy numbers");
    conv_cmd->add_option("--in", conv_in, "Input CSV")->required();
    conv_cmd->add_option("--out", conv_out, "Output CSV")->required();
    conv_cmd->add_option("--beta", conv_beta, "Apex = beta*A + (1-beta)*B")->capture_default_str();
    conv_cmd->callback([&] {
        if (!(conv_beta >= 0.0 && conv_beta <= 1.0)) throw UsageError("--beta must lie in [0, 1]");
        require_readable(conv_in);
        action = [&] {
            const auto ds = read_fuzzy_csv(fs::path(conv_in));
            if (!ds.has_interval_features()) throw SchemaError(conv_in + " has no interval columns to convert");
            write_fuzzy_csv(convert_intervals(ds, conv_beta), fs::path(conv_out));
            Manifest(conv_cmd, g).write_for(conv_out);
            say(g, "wrote " + conv_out);
        };
    });

    // oversample
    std::string os_in, os_out;
    std::size_t os_target = 30, os_k = 5;
    auto* os_cmd = app.add_subcommand("oversample", "Grow small classes by fuzzy SMOTE");
    os_cmd->add_option("--in", os_in, "Input CSV")->required();
    os_cmd->add_option("--out", os_out, "Output CSV")->required();
    os_cmd->add_option("--target", os_target, "Instances per class after oversampling")->capture_default_str();
    os_cmd->add_option("--k-neighbors", os_k, "Neighbours considered per seed instance")->capture_default_str();
    os_cmd->callback([&] {
        if (os_target < 1 || os_k < 1) throw UsageError("--target and --k-neighbors must be >= 1");
        require_readable(os_in);
        action = [&] {
            const auto ds = read_fuzzy_csv(fs::path(os_in));
            const auto out = smote_oversample(ds, os_target, os_k, g.seed);
            write_fuzzy_csv(out, fs::path(os_out));
            Manifest(os_cmd, g).write_for(os_out);
            say(g, "wrote " + std::to_string(out.size()) + " instances to " + os_out);
        };
    });

    // split
    std::string sp_in, sp_train, sp_val, sp_test, sp_fractions = "0.6,0.2,0.2";
    auto* sp_cmd = app.add_subcommand("split", "Random train/validation/test split");
    sp_cmd->add_option("--in", sp_in, "Input CSV")->required();
    sp_cmd->add_option("--fractions", sp_fractions, "train,val,test fractions")->capture_default_str();
    sp_cmd->add_option("--out-train", sp_train, "Training CSV")->required();
    sp_cmd->add_option("--out-val", sp_val, "Validation CSV")->required();
    sp_cmd->add_option("--out-test", sp_test, "Test CSV")->required();
    sp_cmd->callback([&] {
        const auto spec = validated([&] { return parse_fractions(sp_fractions, g.seed); });
        require_readable(sp_in);
        action = [&, spec] {
            const auto parts = split(read_fuzzy_csv(fs::path(sp_in)), spec);
            const Manifest manifest(sp_cmd, g);
            for (const auto& [ds, path] : {std::pair{&parts.train, &sp_train}, std::pair{&parts.val, &sp_val},
                                           std::pair{&parts.test, &sp_test}}) {
                write_fuzzy_csv(*ds, fs::path(*path));
                manifest.write_for(*path);
            }
            say(g, "split " + std::to_string(parts.train.size()) + "/" + std::to_string(parts.val.size()) + "/" +
                       std::to_string(parts.test.size()));
        };
    });

    // train
    ModelFlags tr;
    std::string tr_in, tr_out, tr_trace;
    auto* tr_cmd = app.add_subcommand("train", "Train a DF-SVM or DF-MLP");
    tr_cmd->add_option("--in", tr_in, "Training CSV")->required();
    tr_cmd->add_option("--out", tr_out, "Model file")->required();
    tr_cmd->add_option("--loss-trace", tr_trace, "MLP per-epoch loss CSV");
    add_model_flags(tr_cmd, tr);
    tr_cmd->callback([&] {
        const auto cfg = validated([&] { return make_model(tr, g.seed); });
        require_readable(tr_in);
        action = [&, cfg] {
            const auto ds = read_fuzzy_csv(fs::path(tr_in));
            const auto model = train_model(ds, cfg);
            model_to_kv(model).save(tr_out);
            const Manifest manifest(tr_cmd, g);
            manifest.write_for(tr_out);
            if (const auto* svm = std::get_if<SvmModel>(&model)) {
                for (const auto& w : svm->warnings()) std::cerr << "warning: " << w << '\n';
            }
            if (const auto* mlp = std::get_if<MlpModel>(&model); mlp != nullptr && !tr_trace.empty()) {
                auto out = open_out(tr_trace);
                out << "epoch,loss\n";
                for (std::size_t e = 0; e < mlp->loss_trace().size(); ++e) {
                    out << e + 1 << ',' << format_double(mlp->loss_trace()[e]) << '\n';
                }
                manifest.write_for(tr_trace);
            }
            say(g, "trained " + tr.model + " on " + std::to_string(ds.size()) + " instances; wrote " + tr_out);
        };
    });

    // eval
    std::string ev_model, ev_in, ev_out, ev_metrics = "accuracy,balanced,auc";
    auto* ev_cmd = app.add_subcommand("eval", "Evaluate a trained model");
    ev_cmd->add_option("--model", ev_model, "Model file")->required();
    ev_cmd->add_option("--in", ev_in, "Evaluation CSV")->required();
    ev_cmd->add_option("--metrics", ev_metrics, "Subset of accuracy,balanced,auc")->capture_default_str();
    ev_cmd->add_option("--out", ev_out, "Report file (key-value)");
    ev_cmd->callback([&] {
        for (const auto& m : parse_string_list(ev_metrics)) {
            if (m != "accuracy" && m != "balanced" && m != "auc") throw UsageError("unknown metric '" + m + "'");
        }
        require_readable(ev_model);
        require_readable(ev_in);
        action = [&] {
            const auto model = model_from_kv(KvDocument::load(ev_model));
            const int K = std::visit([](const auto& m) { return m.num_classes(); }, model);
            const auto ds = read_fuzzy_csv(fs::path(ev_in), K);
            const auto report = evaluate_model(model, ds);
            const auto wanted = parse_string_list(ev_metrics);
            auto want = [&](const char* m) { return std::find(wanted.begin(), wanted.end(), m) != wanted.end(); };
            KvDocument doc("metrics_report");
            std::ostringstream text;
            text.setf(std::ios::fixed);
            text.precision(4);
            if (want("accuracy")) {
                doc.set("accuracy", report.accuracy);
                text << "accuracy           " << report.accuracy << '\n';
            }
            if (want("balanced")) {
                doc.set("balanced_accuracy", report.balanced_accuracy);
                text << "balanced_accuracy  " << report.balanced_accuracy << '\n';
            }
            if (want("auc") && report.macro_auc) {
                doc.set("macro_auc", *report.macro_auc);
                text << "macro_auc          " << *report.macro_auc << '\n';
            }
            const auto full = report.to_kv();
            for (const auto& [k, v] : full.entries()) {
                if (k.rfind("confusion.", 0) == 0 || k == "recall") doc.set(k, v);
            }
            if (!g.quiet) std::cout << text.str();
            if (!ev_out.empty()) {
                doc.save(ev_out);
                Manifest(ev_cmd, g).write_for(ev_out);
            }
        };
    });

    // sweep
    ModelFlags sw_model;
    GenFlags sw_gen;
    std::string sw_param = "m", sw_values, sw_in, sw_out, sw_summary, sw_select = "none", sw_grid,
                sw_fractions = "0.6,0.2,0.2";
    int sw_repeats = 10;
    unsigned sw_threads = 0;
    auto* sw_cmd = app.add_subcommand("sweep", "Repeated train/evaluate runs over one parameter");
    sw_cmd->add_option("--param", sw_param, "m, beta or defuzz")->capture_default_str();
    sw_cmd->add_option("--values", sw_values, "Comma-separated parameter values")->required();
    sw_cmd->add_option("--repeats", sw_repeats, "Repetitions per value")->capture_default_str();
    sw_cmd->add_option("--select-on", sw_select, "val to pick C on the validation split, or none")
        ->capture_default_str();
    sw_cmd->add_option("--c-grid", sw_grid, "Comma-separated C candidates for --select-on val");
    sw_cmd->add_option("--in", sw_in, "Dataset to sweep over instead of synthetic data");
    sw_cmd->add_option("--fractions", sw_fractions, "train,val,test fractions")->capture_default_str();
    sw_cmd->add_option("--threads", sw_threads, "Worker threads, 0 for all cores")->capture_default_str();
    sw_cmd->add_option("--out", sw_out, "Per-run CSV")->required();
    sw_cmd->add_option("--summary", sw_summary, "Mean±sd summary CSV");
    add_model_flags(sw_cmd, sw_model);
    add_gen_flags(sw_cmd, sw_gen);
    sw_cmd->callback([&] {
        auto cfg = validated([&] {
            SweepConfig c;
            c.param = parse_sweep_param(sw_param);
            c.values = parse_string_list(sw_values);
            c.repeats = sw_repeats;
            c.seed = g.seed;
            c.model = make_model(sw_model, g.seed);
            c.data = make_synthetic(sw_gen, g.seed);
            c.split = parse_fractions(sw_fractions, g.seed);
            c.threads = sw_threads;
            if (sw_select == "val") {
                if (sw_grid.empty()) throw DomainError("--select-on val needs --c-grid");
                c.c_grid = parse_double_list(sw_grid, "--c-grid");
            } else if (sw_select != "none") {
                throw DomainError("--select-on must be val or none");
            }
            return c;
        });
        if (!sw_in.empty()) require_readable(sw_in);
        action = [&, cfg]() mutable {
            FuzzyDataset input;
            if (!sw_in.empty()) {
                input = read_fuzzy_csv(fs::path(sw_in));
                cfg.input = &input;
            }
            validated([&] {
                cfg.validate();
                return 0;
            });
            const auto result = run_sweep(cfg);
            const Manifest manifest(sw_cmd, g);
            {
                auto out = open_out(sw_out);
                write_sweep_rows(result.rows, out);
            }
            manifest.write_for(sw_out);
            if (!sw_summary.empty()) {
                auto out = open_out(sw_summary);
                write_sweep_summary(result.summary, out);
                manifest.write_for(sw_summary);
            }
            if (!g.quiet) write_sweep_summary(result.summary, std::cout);
        };
    });

    // rademacher
    GenFlags rd_gen;
    rd_gen.n = 400;
    std::string rd_in, rd_out, rd_kernel = "rbf", rd_defuzz = "val";
    double rd_lambda = 1.0, rd_gamma = 0.0, rd_coef0 = 0.0;
    int rd_draws = kDefaultRademacherDraws, rd_degree = 3, rd_outputs = 0;
    auto* rd_cmd = app.add_subcommand("rademacher", "Monte Carlo Rademacher estimate against its bound");
    rd_cmd->add_option("--in", rd_in, "Dataset; synthetic data when omitted");
    rd_cmd->add_option("--lambda", rd_lambda, "Norm bound on each class weight")->capture_default_str();
    rd_cmd->add_option("--draws", rd_draws, "Number of Rademacher draws")->capture_default_str();
    rd_cmd->add_option("--kernel", rd_kernel, "linear, poly or rbf")->capture_default_str();
    rd_cmd->add_option("--gamma", rd_gamma, "Kernel gamma; 0 means 1/p")->capture_default_str();
    rd_cmd->add_option("--degree", rd_degree, "Polynomial degree")->capture_default_str();
    rd_cmd->add_option("--coef0", rd_coef0, "Polynomial offset")->capture_default_str();
    rd_cmd->add_option("--defuzz", rd_defuzz, "Defuzzifier applied before the kernel")->capture_default_str();
    rd_cmd->add_option("--outputs", rd_outputs, "Number of outputs K; 0 uses the class count")
        ->capture_default_str();
    rd_cmd->add_option("--out", rd_out, "Result file (key-value)");
    add_gen_flags(rd_cmd, rd_gen);
    rd_cmd->callback([&] {
        auto setup = validated([&] {
            KernelSpec k;
            k.kind = parse_kernel_kind(rd_kernel);
            k.gamma = rd_gamma;
            k.degree = rd_degree;
            k.coef0 = rd_coef0;
            k.validate();
            if (!(rd_lambda > 0.0)) throw DomainError("--lambda must be > 0");
            if (rd_draws < 1) throw DomainError("--draws must be >= 1");
            if (rd_outputs < 0) throw DomainError("--outputs must be >= 0");
            return std::pair{k, DefuzzSpec(parse_defuzz_method(rd_defuzz))};
        });
        if (rd_in.empty()) validated([&] { return make_synthetic(rd_gen, g.seed); });
        else require_readable(rd_in);
        action = [&, setup] {
            const auto ds = rd_in.empty() ? generate_synthetic(make_synthetic(rd_gen, g.seed))
                                          : read_fuzzy_csv(fs::path(rd_in));
            const auto X = defuzzify_dataset(ds, setup.second);
            const GramMatrix gram(setup.first.resolved(ds.num_features()), X);
            const int K = rd_outputs > 0 ? rd_outputs : ds.num_classes();
            const auto est = empirical_kernel_rademacher(gram, rd_lambda, K, rd_draws, g.seed);
            const double r = kernel_radius(gram);
            const double bound = lemma1_bound(r, rd_lambda, K, ds.size());
            KvDocument doc("rademacher_estimate");
            doc.set("m", ds.size());
            doc.set("outputs", K);
            doc.set("lambda", rd_lambda);
            doc.set("draws", rd_draws);
            doc.set("estimate", est.mean);
            doc.set("std_error", est.std_error);
            doc.set("radius", r);
            doc.set("bound", bound);
            if (!g.quiet) doc.write(std::cout);
            if (!rd_out.empty()) {
                doc.save(rd_out);
                Manifest(rd_cmd, g).write_for(rd_out);
            }
        };
    });

    // compare
    std::string cmp_a, cmp_b, cmp_column = "accuracy", cmp_out;
    auto* cmp_cmd = app.add_subcommand("compare", "Wilcoxon rank-sum test on two result CSVs");
    cmp_cmd->add_option("--a", cmp_a, "First per-run CSV")->required();
    cmp_cmd->add_option("--b", cmp_b, "Second per-run CSV")->required();
    cmp_cmd->add_option("--column", cmp_column, "Column to compare")->capture_default_str();
    cmp_cmd->add_option("--out", cmp_out, "Result file (key-value)");
    cmp_cmd->callback([&] {
        require_readable(cmp_a);
        require_readable(cmp_b);
        action = [&] {
            std::ifstream fa(cmp_a), fb(cmp_b);
            const auto a = read_csv_column(fa, cmp_column);
            const auto b = read_csv_column(fb, cmp_column);
            const auto res = wilcoxon_rank_sum(a, b);
            const auto [ma, sa] = mean_sd(a);
            const auto [mb, sb] = mean_sd(b);
            KvDocument doc("rank_sum_test");
            doc.set("column", cmp_column);
            doc.set("n_a", a.size());
            doc.set("n_b", b.size());
            doc.set("mean_sd_a", format_mean_sd(ma, sa));
            doc.set("mean_sd_b", format_mean_sd(mb, sb));
            doc.set("statistic", res.statistic);
            doc.set("z", res.z);
            doc.set("p_two_sided", res.p_two_sided);
            if (!g.quiet) doc.write(std::cout);
            if (!cmp_out.empty()) {
                doc.save(cmp_out);
                Manifest(cmp_cmd, g).write_for(cmp_out);
            }
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    try {
        if (action) action();
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
