#include <doctest.h>

#include <sstream>

#include "fuzzyclf/errors.hpp"
#include "fuzzyclf/experiment.hpp"

using namespace fuzzyclf;

namespace {

SweepConfig small_sweep(SweepParam param, std::vector<std::string> values) {
    SweepConfig cfg;
    cfg.param = param;
    cfg.values = std::move(values);
    cfg.repeats = 3;
    cfg.seed = 5;
    cfg.data.n = 120;
    cfg.data.num_features = 4;
    cfg.data.num_classes = 3;
    cfg.data.center_spread = 3;
    cfg.model.mlp.hidden1 = cfg.model.mlp.hidden2 = 8;
    cfg.model.mlp.epochs = 5;
    return cfg;
}

}  // namespace

TEST_CASE("C selection keeps the best validation model") {
    SyntheticConfig gen;
    gen.n = 150;
    gen.num_features = 5;
    gen.num_classes = 3;
    gen.center_spread = 2;
    const auto parts = split(generate_synthetic(gen), SplitSpec{});
    ModelConfig cfg;
    const auto out = train_and_evaluate(parts, cfg, {0.01, 1, 100});
    REQUIRE(out.selected_c.has_value());
    for (double c : {0.01, 1.0, 100.0}) {
        ModelConfig one = cfg;
        one.svm.C = c;
        CHECK(evaluate_model(train_model(parts.train, one), parts.val).accuracy <= out.validation_accuracy);
    }
}

TEST_CASE("m sweep sizes the training split exactly") {
    auto cfg = small_sweep(SweepParam::m, {"30", "77"});
    for (const auto& v : cfg.values) {
        const auto parts = sweep_split(cfg, v, 0);
        CHECK(parts.train.size() == std::stoul(v));
        CHECK_FALSE(parts.val.empty());
        CHECK_FALSE(parts.test.empty());
    }
}

TEST_CASE("sweeps are reproducible and independent of thread count") {
    auto cfg = small_sweep(SweepParam::defuzz, {"val", "mom"});
    cfg.threads = 1;
    const auto a = run_sweep(cfg);
    cfg.threads = 4;
    const auto b = run_sweep(cfg);
    REQUIRE(a.rows.size() == 6);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].param == b.rows[i].param);
        CHECK(a.rows[i].accuracy == b.rows[i].accuracy);
        CHECK(a.rows[i].auc == b.rows[i].auc);
    }
    REQUIRE(a.summary.size() == 2);
    CHECK(a.summary[0].runs == 3);
    std::ostringstream rows, summary;
    write_sweep_rows(a.rows, rows);
    write_sweep_summary(a.summary, summary);
    CHECK(rows.str().rfind("param,repeat,accuracy,balanced_accuracy,auc\n", 0) == 0);
    CHECK(summary.str().find("±") != std::string::npos);
}

TEST_CASE("beta sweep trains MLPs on converted intervals") {
    auto cfg = small_sweep(SweepParam::beta, {"0", "0.5", "1"});
    cfg.model.kind = ModelKind::mlp;
    cfg.repeats = 2;
    const auto res = run_sweep(cfg);
    CHECK(res.rows.size() == 6);
    const auto parts = sweep_split(cfg, "0.5", 1);
    CHECK(parts.train.schema()[0] == FeatureKind::tri);
}

TEST_CASE("sweep validation") {
    auto cfg = small_sweep(SweepParam::beta, {"2"});
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = small_sweep(SweepParam::m, {"-3"});
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = small_sweep(SweepParam::defuzz, {"nope"});
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = small_sweep(SweepParam::m, {"10"});
    cfg.repeats = 0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("mean and sd formatting") {
    const auto [m, s] = mean_sd({1.0, 2.0, 3.0});
    CHECK(m == 2.0);
    CHECK(s == 1.0);
    CHECK(format_mean_sd(0.98241, 0.0052) == "0.9824±0.0052");
    CHECK(mean_sd({4.0}).second == 0.0);
}

TEST_CASE("reading one CSV column") {
    std::istringstream in("param,repeat,accuracy\nval,0,0.9\nval,1,0.8\n");
    CHECK(read_csv_column(in, "accuracy") == std::vector<double>{0.9, 0.8});
    std::istringstream bad("a,b\n1,2\n");
    CHECK_THROWS_AS(read_csv_column(bad, "accuracy"), ParseError);
}

TEST_CASE("model documents dispatch on kind") {
    SyntheticConfig gen;
    gen.n = 30;
    gen.num_features = 2;
    gen.num_classes = 2;
    const auto ds = generate_synthetic(gen);
    ModelConfig cfg;
    cfg.kind = ModelKind::mlp;
    cfg.mlp.hidden1 = cfg.mlp.hidden2 = 3;
    cfg.mlp.epochs = 2;
    const auto model = train_model(ds, cfg);
    const auto back = model_from_kv(model_to_kv(model));
    CHECK(std::holds_alternative<MlpModel>(back));
    KvDocument junk("something_else");
    CHECK_THROWS_AS(model_from_kv(junk), ParseError);
}
