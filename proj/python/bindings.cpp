#include <pybind11/pybind11.h>
#include <pybind11/operators.h>

#include <optional>
#include <sstream>

#include "fuzzyclf/dataset.hpp"
#include "fuzzyclf/defuzz.hpp"
#include "fuzzyclf/errors.hpp"
#include "fuzzyclf/experiment.hpp"
#include "fuzzyclf/metrics.hpp"
#include "fuzzyclf/mlp.hpp"
#include "fuzzyclf/svm.hpp"
#include "fuzzyclf/theory.hpp"

// FuzzyNumber has no default constructor, so the generic variant caster
// cannot hold a Feature; this one converts through either alternative.
namespace pybind11::detail {

template <>
struct type_caster<fuzzyclf::Feature> {
    std::optional<fuzzyclf::Feature> value;

    static constexpr auto name = const_name("FuzzyNumber | Interval");

    bool load(handle src, bool convert) {
        make_caster<fuzzyclf::FuzzyNumber> fz;
        if (fz.load(src, convert)) {
            value.emplace(cast_op<fuzzyclf::FuzzyNumber&>(fz));
            return true;
        }
        make_caster<fuzzyclf::Interval> iv;
        if (iv.load(src, convert)) {
            value.emplace(cast_op<fuzzyclf::Interval&>(iv));
            return true;
        }
        return false;
    }

    static handle cast(const fuzzyclf::Feature& f, return_value_policy, handle parent) {
        return std::visit(
            [&](const auto& v) {
                return make_caster<std::decay_t<decltype(v)>>::cast(v, return_value_policy::copy, parent);
            },
            f);
    }

    operator fuzzyclf::Feature*() { return &*value; }
    operator fuzzyclf::Feature&() { return *value; }
    operator fuzzyclf::Feature&&() && { return std::move(*value); }
    template <typename T>
    using cast_op_type = movable_cast_op_type<T>;
};

}  // namespace pybind11::detail

#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace fuzzyclf;

namespace {

DefuzzSpec defuzz_spec(const std::string& method, int resolution) {
    return DefuzzSpec(parse_defuzz_method(method), resolution);
}

KernelSpec kernel_spec(const std::string& kind, double gamma, int degree, double coef0) {
    KernelSpec k;
    k.kind = parse_kernel_kind(kind);
    k.gamma = gamma;
    k.degree = degree;
    k.coef0 = coef0;
    k.validate();
    return k;
}

py::dict report_dict(const MetricsReport& r) {
    py::dict d;
    d["accuracy"] = r.accuracy;
    d["balanced_accuracy"] = r.balanced_accuracy;
    d["macro_auc"] = r.macro_auc ? py::cast(*r.macro_auc) : py::none();
    d["recalls"] = r.recalls;
    d["confusion"] = r.confusion;
    return d;
}

std::string repr(const FuzzyNumber& fz) {
    std::ostringstream os;
    os << "FuzzyNumber." << to_string(fz.kind()) << "(";
    const auto p = fz.params();
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
    os << ")";
    return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Classification with fuzzy-number features";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", error);
    py::register_exception<UnsupportedKindError>(m, "UnsupportedKindError", error);
    py::register_exception<SchemaError>(m, "SchemaError", error);
    py::register_exception<MatrixError>(m, "MatrixError", error);
    py::register_exception<ParseError>(m, "ParseError", error);
    py::register_exception<PartitionError>(m, "PartitionError", error);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", error);
    py::register_exception<NumericError>(m, "NumericError", error);

    py::class_<Interval>(m, "Interval")
        .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
        .def_readonly("lo", &Interval::lo)
        .def_readonly("hi", &Interval::hi)
        .def_property_readonly("midpoint", &Interval::midpoint)
        .def_property_readonly("width", &Interval::width)
        .def(py::self == py::self)
        .def("__repr__", [](const Interval& iv) {
            std::ostringstream os;
            os << "Interval(" << iv.lo << ", " << iv.hi << ")";
            return os.str();
        });

    py::class_<FuzzyNumber>(m, "FuzzyNumber")
        .def_static("triangular", &FuzzyNumber::triangular, py::arg("a1"), py::arg("b1"), py::arg("a2"))
        .def_static("trapezoidal", &FuzzyNumber::trapezoidal, py::arg("a1"), py::arg("b1"), py::arg("b2"),
                    py::arg("a2"))
        .def_static("gaussian", &FuzzyNumber::gaussian, py::arg("center"), py::arg("spread"))
        .def_static("crisp", &FuzzyNumber::crisp, py::arg("value"))
        .def_property_readonly("kind", [](const FuzzyNumber& fz) { return std::string(to_string(fz.kind())); })
        .def_property_readonly("params", &FuzzyNumber::params)
        .def("membership", [](const FuzzyNumber& fz, double t) { return membership(fz, t); }, py::arg("t"))
        .def("alpha_cut", [](const FuzzyNumber& fz, double a) { return alpha_cut(fz, a); }, py::arg("alpha"))
        .def("support", [](const FuzzyNumber& fz) { return support(fz); })
        .def("translated", &FuzzyNumber::translated, py::arg("offset"))
        .def("scaled", &FuzzyNumber::scaled, py::arg("factor"))
        .def(py::self == py::self)
        .def("__repr__", &repr);

    m.def(
        "defuzzify",
        [](const Feature& f, const std::string& method, int resolution) {
            return defuzzify(f, defuzz_spec(method, resolution));
        },
        py::arg("value"), py::arg("method") = "val", py::arg("resolution") = kDefaultResolution);
    m.def("interval_to_fuzzy", &interval_to_fuzzy, py::arg("interval"), py::arg("beta"));

    py::class_<FuzzyDataset>(m, "FuzzyDataset")
        .def("__len__", &FuzzyDataset::size)
        .def_property_readonly("num_features", &FuzzyDataset::num_features)
        .def_property_readonly("num_classes", &FuzzyDataset::num_classes)
        .def_property_readonly("names", &FuzzyDataset::names)
        .def_property_readonly("schema",
                               [](const FuzzyDataset& ds) {
                                   std::vector<std::string> out;
                                   for (auto k : ds.schema()) out.emplace_back(to_string(k));
                                   return out;
                               })
        .def("labels", &FuzzyDataset::labels)
        .def("class_counts", &FuzzyDataset::class_counts)
        .def("features", [](const FuzzyDataset& ds, std::size_t i) { return ds.instances().at(i).features; })
        .def("defuzzified",
             [](const FuzzyDataset& ds, const std::string& method, int resolution) {
                 return defuzzify_dataset(ds, defuzz_spec(method, resolution));
             },
             py::arg("method") = "val", py::arg("resolution") = kDefaultResolution)
        .def(py::self == py::self);

    auto synthetic = [](std::size_t n, std::size_t p, int k, std::uint64_t seed, double spread, double sigma) {
        SyntheticConfig cfg;
        cfg.n = n;
        cfg.num_features = p;
        cfg.num_classes = k;
        cfg.seed = seed;
        cfg.center_spread = spread;
        cfg.within_sigma = sigma;
        return cfg;
    };
    m.def(
        "generate_synthetic",
        [synthetic](std::size_t n, std::size_t p, int k, std::uint64_t seed, double spread, double sigma) {
            return generate_synthetic(synthetic(n, p, k, seed, spread, sigma));
        },
        py::arg("n") = 2000, py::arg("num_features") = 20, py::arg("num_classes") = 5, py::arg("seed") = 0,
        py::arg("center_spread") = 10.0, py::arg("within_sigma") = 1.0);
    m.def(
        "generate_synthetic_intervals",
        [synthetic](std::size_t n, std::size_t p, int k, std::uint64_t seed, double spread, double sigma) {
            return generate_synthetic_intervals(synthetic(n, p, k, seed, spread, sigma));
        },
        py::arg("n") = 2000, py::arg("num_features") = 20, py::arg("num_classes") = 5, py::arg("seed") = 0,
        py::arg("center_spread") = 10.0, py::arg("within_sigma") = 1.0);
    m.def("convert_intervals", &convert_intervals, py::arg("dataset"), py::arg("beta"));
    m.def("smote_oversample", &smote_oversample, py::arg("dataset"), py::arg("target_per_class"),
          py::arg("k_neighbors") = 5, py::arg("seed") = 0);
    m.def(
        "split",
        [](const FuzzyDataset& ds, double train, double val, double test, std::uint64_t seed) {
            auto parts = split(ds, SplitSpec{train, val, test, seed});
            return py::make_tuple(std::move(parts.train), std::move(parts.val), std::move(parts.test));
        },
        py::arg("dataset"), py::arg("train") = 0.6, py::arg("val") = 0.2, py::arg("test") = 0.2,
        py::arg("seed") = 0);
    m.def(
        "read_csv", [](const std::filesystem::path& p, int min_classes) { return read_fuzzy_csv(p, min_classes); },
        py::arg("path"), py::arg("min_classes") = 0);
    m.def(
        "write_csv", [](const FuzzyDataset& ds, const std::filesystem::path& p) { write_fuzzy_csv(ds, p); },
        py::arg("dataset"), py::arg("path"));

    py::class_<SvmModel>(m, "SvmModel")
        .def_property_readonly("num_classes", &SvmModel::num_classes)
        .def_property_readonly("C", &SvmModel::C)
        .def_property_readonly("warnings", &SvmModel::warnings)
        .def("alpha", [](const SvmModel& s, int l) { return s.classes().at(l).alpha; }, py::arg("cls"))
        .def("bias", [](const SvmModel& s, int l) { return s.classes().at(l).bias; }, py::arg("cls"))
        .def("scores", py::overload_cast<const std::vector<Feature>&>(&SvmModel::scores, py::const_),
             py::arg("features"))
        .def("predict", py::overload_cast<const std::vector<Feature>&>(&SvmModel::predict, py::const_),
             py::arg("features"));

    py::class_<MlpModel>(m, "MlpModel")
        .def_property_readonly("num_classes", &MlpModel::num_classes)
        .def_property_readonly("loss_trace", &MlpModel::loss_trace)
        .def("probabilities", &MlpModel::probabilities, py::arg("features"))
        .def("predict", py::overload_cast<const std::vector<Feature>&>(&MlpModel::predict, py::const_),
             py::arg("features"));

    m.def(
        "train_svm",
        [](const FuzzyDataset& ds, const std::string& defuzz, const std::string& kernel, double C, double gamma,
           int degree, double coef0, double tol, int max_passes, std::uint64_t seed, int resolution) {
            SvmTrainConfig cfg;
            cfg.defuzz = defuzz_spec(defuzz, resolution);
            cfg.kernel = kernel_spec(kernel, gamma, degree, coef0);
            cfg.C = C;
            cfg.tol = tol;
            cfg.max_passes = max_passes;
            cfg.seed = seed;
            py::gil_scoped_release release;
            return train_df_svm(ds, cfg);
        },
        py::arg("dataset"), py::arg("defuzz") = "val", py::arg("kernel") = "rbf", py::arg("C") = 1.0,
        py::arg("gamma") = 0.0, py::arg("degree") = 3, py::arg("coef0") = 0.0, py::arg("tol") = 1e-3,
        py::arg("max_passes") = 100, py::arg("seed") = 0, py::arg("resolution") = kDefaultResolution);

    m.def(
        "train_mlp",
        [](const FuzzyDataset& ds, const std::string& defuzz, std::size_t hidden1, std::size_t hidden2,
           const std::string& activation, double learning_rate, int epochs, std::size_t batch_size,
           double weight_decay, std::uint64_t seed, int resolution) {
            MlpTrainConfig cfg;
            cfg.defuzz = defuzz_spec(defuzz, resolution);
            cfg.hidden1 = hidden1;
            cfg.hidden2 = hidden2;
            cfg.activation = parse_activation(activation);
            cfg.adam.learning_rate = learning_rate;
            cfg.adam.weight_decay = weight_decay;
            cfg.epochs = epochs;
            cfg.batch_size = batch_size;
            cfg.seed = seed;
            py::gil_scoped_release release;
            return train_df_mlp(ds, cfg);
        },
        py::arg("dataset"), py::arg("defuzz") = "val", py::arg("hidden1") = 100, py::arg("hidden2") = 100,
        py::arg("activation") = "relu", py::arg("learning_rate") = 1e-3, py::arg("epochs") = 200,
        py::arg("batch_size") = 32, py::arg("weight_decay") = 1e-4, py::arg("seed") = 0,
        py::arg("resolution") = kDefaultResolution);

    m.def(
        "evaluate", [](const TrainedModel& model, const FuzzyDataset& ds) { return report_dict(evaluate_model(model, ds)); },
        py::arg("model"), py::arg("dataset"));
    m.def(
        "predict",
        [](const TrainedModel& model, const FuzzyDataset& ds) {
            auto p = predict_all(model, ds);
            return py::make_tuple(std::move(p.labels), std::move(p.scores));
        },
        py::arg("model"), py::arg("dataset"));
    m.def(
        "save_model", [](const TrainedModel& model, const std::filesystem::path& p) { model_to_kv(model).save(p); },
        py::arg("model"), py::arg("path"));
    m.def(
        "load_model", [](const std::filesystem::path& p) { return model_from_kv(KvDocument::load(p)); },
        py::arg("path"));

    m.def(
        "accuracy", [](const std::vector<int>& p, const std::vector<int>& t) { return accuracy(p, t); },
        py::arg("preds"), py::arg("truths"));
    m.def(
        "balanced_accuracy",
        [](const std::vector<int>& p, const std::vector<int>& t, int k) { return balanced_accuracy(p, t, k); },
        py::arg("preds"), py::arg("truths"), py::arg("num_classes"));
    m.def(
        "macro_auc",
        [](const std::vector<std::vector<double>>& s, const std::vector<int>& t, int k) { return macro_auc(s, t, k); },
        py::arg("scores"), py::arg("truths"), py::arg("num_classes"));
    m.def(
        "wilcoxon_rank_sum",
        [](const std::vector<double>& a, const std::vector<double>& b) {
            const auto r = wilcoxon_rank_sum(a, b);
            return py::make_tuple(r.statistic, r.p_two_sided);
        },
        py::arg("sample_a"), py::arg("sample_b"));

    m.def(
        "rademacher",
        [](const std::vector<std::vector<double>>& points, const std::string& kernel, double gamma, int degree,
           double coef0, double lambda, int num_outputs, int draws, std::uint64_t seed) {
            if (points.empty()) throw DomainError("no points");
            const GramMatrix gram(kernel_spec(kernel, gamma, degree, coef0).resolved(points.front().size()), points);
            const auto est = empirical_kernel_rademacher(gram, lambda, num_outputs, draws, seed);
            const double r = kernel_radius(gram);
            py::dict d;
            d["estimate"] = est.mean;
            d["std_error"] = est.std_error;
            d["radius"] = r;
            d["bound"] = lemma1_bound(r, lambda, num_outputs, points.size());
            return d;
        },
        py::arg("points"), py::arg("kernel") = "rbf", py::arg("gamma") = 0.0, py::arg("degree") = 3,
        py::arg("coef0") = 0.0, py::arg("lambda_") = 1.0, py::arg("num_outputs") = 1,
        py::arg("draws") = kDefaultRademacherDraws, py::arg("seed") = 0);
    m.def("lemma1_bound", &lemma1_bound, py::arg("r"), py::arg("lambda_"), py::arg("num_outputs"), py::arg("m"));
    m.def("theorem3_gap_bound", &theorem3_gap_bound, py::arg("num_outputs"), py::arg("lipschitz"), py::arg("r"),
          py::arg("lambda_"), py::arg("loss_bound"), py::arg("delta"), py::arg("m"));
}
