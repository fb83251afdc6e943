#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "fuzzyclf/dataset.hpp"
#include "fuzzyclf/errors.hpp"

using namespace fuzzyclf;

namespace {

FuzzyDataset skewed(std::size_t small, std::size_t large, std::uint64_t seed) {
    SyntheticConfig cfg;
    cfg.n = 2 * large;
    cfg.num_features = 4;
    cfg.num_classes = 2;
    cfg.seed = seed;
    const auto full = generate_synthetic(cfg);
    std::vector<std::size_t> keep;
    std::size_t n0 = 0;
    for (std::size_t i = 0; i < full.size(); ++i) {
        if (full[i].label == 0 && n0 < small) {
            keep.push_back(i);
            ++n0;
        } else if (full[i].label == 1) {
            keep.push_back(i);
        }
    }
    return full.subset(keep);
}

bool ordered(const Feature& f) {
    if (const auto* iv = std::get_if<Interval>(&f)) return iv->lo <= iv->hi;
    const auto& fz = std::get<FuzzyNumber>(f);
    if (!fz.is_piecewise_linear()) return fz.spread() > 0;
    return fz.a1() <= fz.b1() && fz.b1() <= fz.b2() && fz.b2() <= fz.a2();
}

}  // namespace

TEST_CASE("synthetic generator counts, ordering and determinism") {
    SyntheticConfig cfg;
    cfg.n = 200;
    cfg.seed = 42;
    const auto ds = generate_synthetic(cfg);
    CHECK(ds.size() == 200);
    CHECK(ds.num_features() == 20);
    CHECK(ds.num_classes() == 5);
    for (auto c : ds.class_counts()) CHECK(c == 40);
    for (const auto& inst : ds.instances()) {
        for (const auto& f : inst.features) {
            const auto& fz = std::get<FuzzyNumber>(f);
            REQUIRE(fz.kind() == FuzzyKind::triangular);
            REQUIRE(fz.a1() <= fz.b1());
            REQUIRE(fz.b1() <= fz.a2());
        }
    }
    CHECK(generate_synthetic(cfg) == ds);
    cfg.seed = 43;
    CHECK_FALSE(generate_synthetic(cfg) == ds);
}

TEST_CASE("generator configuration is validated") {
    SyntheticConfig cfg;
    cfg.n = 3;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = SyntheticConfig{};
    cfg.within_sigma = 0;
    CHECK_THROWS_AS(generate_synthetic(cfg), DomainError);
}

TEST_CASE("interval generator yields interval columns") {
    SyntheticConfig cfg;
    cfg.n = 50;
    cfg.num_features = 3;
    const auto ds = generate_synthetic_intervals(cfg);
    CHECK(ds.has_interval_features());
    for (auto k : ds.schema()) CHECK(k == FeatureKind::interval);
}

TEST_CASE("interval to fuzzy conversion") {
    CHECK(interval_to_fuzzy(Interval(0, 2), 0.5) == FuzzyNumber::triangular(0, 1, 2));
    CHECK(interval_to_fuzzy(Interval(0, 2), 0.0) == FuzzyNumber::triangular(0, 2, 2));
    for (double b : {0.0, 0.3, 1.0}) CHECK(interval_to_fuzzy(Interval(3, 3), b) == FuzzyNumber::triangular(3, 3, 3));
    CHECK_THROWS_AS(interval_to_fuzzy(Interval(0, 1), 1.5), DomainError);
    CHECK_THROWS_AS(interval_to_fuzzy(Interval(0, 1), -0.1), DomainError);
    // apex moves linearly from B toward A as beta grows
    const Interval iv(-1.7, 5.3);
    double prev = interval_to_fuzzy(iv, 0.0).b1();
    CHECK(prev == iv.hi);
    for (int i = 1; i <= 20; ++i) {
        const double beta = i / 20.0;
        const double apex = interval_to_fuzzy(iv, beta).b1();
        CHECK(apex <= prev);
        CHECK(apex == doctest::Approx(beta * iv.lo + (1 - beta) * iv.hi));
        prev = apex;
    }
    CHECK(prev == iv.lo);
    // midpoint exactly at beta = 1/2
    for (auto [a, b] : {std::pair{0.1, 0.7}, std::pair{-3.3, 12.9}, std::pair{1e-3, 1e3}}) {
        CHECK(interval_to_fuzzy(Interval(a, b), 0.5).b1() == m2(Interval(a, b)));
    }
}

TEST_CASE("convert_intervals converts interval columns only") {
    FuzzyDataset ds({FeatureKind::interval, FeatureKind::crisp}, 2);
    ds.add({{Interval(0, 2), FuzzyNumber::crisp(1)}, 0});
    ds.add({{Interval(1, 5), FuzzyNumber::crisp(2)}, 1});
    const auto out = convert_intervals(ds, 0.5);
    CHECK(out.schema() == std::vector<FeatureKind>{FeatureKind::tri, FeatureKind::crisp});
    CHECK(std::get<FuzzyNumber>(out[1].features[0]) == FuzzyNumber::triangular(1, 3, 5));
    CHECK(std::get<FuzzyNumber>(out[1].features[1]) == FuzzyNumber::crisp(2));
}

TEST_CASE("interpolation stays ordered") {
    const Feature u = FuzzyNumber::triangular(0, 1, 2), v = FuzzyNumber::triangular(2, 3, 4);
    CHECK(std::get<FuzzyNumber>(interpolate(u, v, 0.5)) == FuzzyNumber::triangular(1, 2, 3));
    CHECK_THROWS_AS(interpolate(u, Feature(Interval(0, 1)), 0.5), SchemaError);
}

TEST_CASE("oversampling reaches exact targets") {
    const auto ds = skewed(5, 30, 8);
    REQUIRE(ds.class_counts() == std::vector<std::size_t>{5, 30});
    const auto out = smote_oversample(ds, 30, 5, 99);
    CHECK(out.class_counts() == std::vector<std::size_t>{30, 30});
    for (std::size_t i = 0; i < ds.size(); ++i) CHECK(out[i] == ds[i]);

    // every synthetic parameter lies between the class-wise extremes of its parents' class
    std::vector<std::vector<double>> lo(ds.num_features(), std::vector<double>(3, 1e300)),
        hi(ds.num_features(), std::vector<double>(3, -1e300));
    for (const auto& inst : ds.instances()) {
        if (inst.label != 0) continue;
        for (std::size_t j = 0; j < ds.num_features(); ++j) {
            const auto p = std::get<FuzzyNumber>(inst.features[j]).params();
            for (std::size_t q = 0; q < 3; ++q) {
                lo[j][q] = std::min(lo[j][q], p[q]);
                hi[j][q] = std::max(hi[j][q], p[q]);
            }
        }
    }
    for (std::size_t i = ds.size(); i < out.size(); ++i) {
        CHECK(out[i].label == 0);
        for (std::size_t j = 0; j < ds.num_features(); ++j) {
            REQUIRE(ordered(out[i].features[j]));
            const auto p = std::get<FuzzyNumber>(out[i].features[j]).params();
            for (std::size_t q = 0; q < 3; ++q) {
                CHECK(p[q] >= lo[j][q] - 1e-12);
                CHECK(p[q] <= hi[j][q] + 1e-12);
            }
        }
    }
    CHECK(smote_oversample(ds, 30, 5, 99) == out);
}

TEST_CASE("oversampling is a no-op when every class already meets the target") {
    const auto ds = skewed(10, 12, 1);
    CHECK(smote_oversample(ds, 10, 3, 5) == ds);
}

TEST_CASE("oversampling a singleton class fails") {
    const auto ds = skewed(1, 10, 2);
    CHECK_THROWS_AS(smote_oversample(ds, 10, 3, 5), DomainError);
}

TEST_CASE("split sizes") {
    const SplitSpec spec;
    auto s = split_sizes(10, spec);
    CHECK(s.train == 6);
    CHECK(s.val == 2);
    CHECK(s.test == 2);
    s = split_sizes(11, spec);
    CHECK(s.train == 7);
    CHECK(s.val == 2);
    CHECK(s.test == 2);
    CHECK_THROWS_AS(split_sizes(2, spec), PartitionError);
    SplitSpec bad{0.5, 0.5, 0.5, 0};
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("split partitions are disjoint, exhaustive and seeded") {
    SyntheticConfig cfg;
    cfg.n = 103;
    cfg.num_features = 2;
    const auto ds = generate_synthetic(cfg);
    SplitSpec spec;
    spec.seed = 17;
    const auto perm = split_permutation(ds.size(), spec.seed);
    CHECK(std::set<std::size_t>(perm.begin(), perm.end()).size() == ds.size());
    const auto parts = split(ds, spec);
    CHECK(parts.train.size() + parts.val.size() + parts.test.size() == ds.size());
    const auto sizes = split_sizes(ds.size(), spec);
    CHECK(parts.train.size() == sizes.train);
    for (std::size_t i = 0; i < parts.train.size(); ++i) CHECK(parts.train[i] == ds[perm[i]]);
    for (std::size_t i = 0; i < parts.test.size(); ++i) CHECK(parts.test[i] == ds[perm[sizes.train + sizes.val + i]]);
    const auto again = split(ds, spec);
    CHECK(again.train == parts.train);
    CHECK(again.val == parts.val);
    CHECK(again.test == parts.test);
}

TEST_CASE("csv reading of the documented format") {
    std::istringstream in("f1:tri,label\n0,1,2,3\n");
    const auto ds = read_fuzzy_csv(in);
    REQUIRE(ds.size() == 1);
    CHECK(std::get<FuzzyNumber>(ds[0].features[0]) == FuzzyNumber::triangular(0, 1, 2));
    CHECK(ds[0].label == 3);
    CHECK(ds.num_classes() == 4);

    std::istringstream iv("w:interval,label\n1,2,0\n3.5,4,1\n");
    const auto ids = read_fuzzy_csv(iv);
    CHECK(ids.has_interval_features());
    CHECK(std::get<Interval>(ids[1].features[0]) == Interval(3.5, 4));

    std::istringstream mixed("label,a:crisp,b:gauss,c:trap\n0,5,1,0.5,0,1,2,3\n");
    const auto mds = read_fuzzy_csv(mixed);
    CHECK(std::get<FuzzyNumber>(mds[0].features[1]) == FuzzyNumber::gaussian(1, 0.5));
}

TEST_CASE("csv errors carry row and column") {
    std::istringstream disordered("f1:tri,label\n0,1,2,0\n2,1,0,0\n");
    try {
        read_fuzzy_csv(disordered);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.row() == 3);
        CHECK(e.column() == 1);
    }
    std::istringstream nan_cell("f1:crisp,label\nabc,0\n");
    try {
        read_fuzzy_csv(nan_cell);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.row() == 2);
        CHECK(e.column() == 1);
    }
    std::istringstream no_label("f1:crisp\n1\n");
    CHECK_THROWS_AS(read_fuzzy_csv(no_label), ParseError);
    std::istringstream bad_kind("f1:blob,label\n1,0\n");
    CHECK_THROWS_AS(read_fuzzy_csv(bad_kind), ParseError);
    std::istringstream short_row("f1:tri,label\n0,1,0\n");
    CHECK_THROWS_AS(read_fuzzy_csv(short_row), ParseError);
    std::istringstream neg_label("f1:crisp,label\n1,-1\n");
    CHECK_THROWS_AS(read_fuzzy_csv(neg_label), ParseError);
}

TEST_CASE("csv round trip is lossless") {
    SyntheticConfig cfg;
    cfg.n = 100;
    cfg.seed = 5;
    const auto ds = generate_synthetic(cfg);
    std::stringstream buf;
    write_fuzzy_csv(ds, buf);
    CHECK(read_fuzzy_csv(buf) == ds);

    FuzzyDataset mixed({FeatureKind::gauss, FeatureKind::trap, FeatureKind::crisp, FeatureKind::interval}, 3,
                       {"g", "t", "c", "i"});
    mixed.add({{FuzzyNumber::gaussian(0.1, 0.3), FuzzyNumber::trapezoidal(1.0 / 3, 0.5, 0.7, 2e-308 + 1),
                FuzzyNumber::crisp(-0.0), Interval(-1e300, 1e300)},
               2});
    std::stringstream buf2;
    write_fuzzy_csv(mixed, buf2);
    CHECK(read_fuzzy_csv(buf2, 3) == mixed);
}

TEST_CASE("schema is enforced on add") {
    FuzzyDataset ds({FeatureKind::tri}, 2);
    CHECK_THROWS_AS(ds.add({{FuzzyNumber::crisp(1)}, 0}), SchemaError);
    CHECK_THROWS_AS(ds.add({{FuzzyNumber::triangular(0, 1, 2)}, 2}), SchemaError);
    CHECK_THROWS_AS(ds.add({{}, 0}), SchemaError);
    CHECK_NOTHROW(ds.add({{FuzzyNumber::triangular(0, 1, 2)}, 1}));
}
