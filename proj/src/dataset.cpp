#include "fuzzyclf/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <variant>

#include "fuzzyclf/errors.hpp"
#include "fuzzyclf/numeric_text.hpp"
#include "fuzzyclf/rng.hpp"

namespace fuzzyclf {

std::string_view to_string(FeatureKind kind) noexcept {
    switch (kind) {
        case FeatureKind::tri: return "tri";
        case FeatureKind::trap: return "trap";
        case FeatureKind::gauss: return "gauss";
        case FeatureKind::crisp: return "crisp";
        case FeatureKind::interval: return "interval";
    }
    return "unknown";
}

FeatureKind parse_feature_kind(std::string_view tag) {
    for (auto k : {FeatureKind::tri, FeatureKind::trap, FeatureKind::gauss, FeatureKind::crisp,
                   FeatureKind::interval}) {
        if (tag == to_string(k)) return k;
    }
    throw DomainError("unknown feature kind '" + std::string(tag) +
                      "' (expected tri, trap, gauss, crisp or interval)");
}

std::size_t cell_count(FeatureKind kind) noexcept {
    switch (kind) {
        case FeatureKind::tri: return 3;
        case FeatureKind::trap: return 4;
        case FeatureKind::gauss: return 2;
        case FeatureKind::crisp: return 1;
        case FeatureKind::interval: return 2;
    }
    return 0;
}

namespace {

FeatureKind feature_kind_of(FuzzyKind k) noexcept {
    switch (k) {
        case FuzzyKind::triangular: return FeatureKind::tri;
        case FuzzyKind::trapezoidal: return FeatureKind::trap;
        case FuzzyKind::gaussian: return FeatureKind::gauss;
        case FuzzyKind::crisp: return FeatureKind::crisp;
    }
    return FeatureKind::crisp;
}

FuzzyKind fuzzy_kind_of(FeatureKind k) {
    switch (k) {
        case FeatureKind::tri: return FuzzyKind::triangular;
        case FeatureKind::trap: return FuzzyKind::trapezoidal;
        case FeatureKind::gauss: return FuzzyKind::gaussian;
        case FeatureKind::crisp: return FuzzyKind::crisp;
        case FeatureKind::interval: break;
    }
    throw DomainError("interval columns have no fuzzy kind");
}

std::vector<double> feature_params(const Feature& f) {
    if (const auto* fz = std::get_if<FuzzyNumber>(&f)) return fz->params();
    const auto& iv = std::get<Interval>(f);
    return {iv.lo, iv.hi};
}

Feature feature_from_params(FeatureKind kind, std::span<const double> params) {
    if (kind == FeatureKind::interval) return Interval(params[0], params[1]);
    return FuzzyNumber::from_params(fuzzy_kind_of(kind), params);
}

}  // namespace

FeatureKind feature_kind_of(const Feature& f) noexcept {
    if (const auto* fz = std::get_if<FuzzyNumber>(&f)) return feature_kind_of(fz->kind());
    return FeatureKind::interval;
}

void check_schema(const std::vector<FeatureKind>& schema, const std::vector<Feature>& features) {
    if (features.size() != schema.size()) {
        throw SchemaError("expected " + std::to_string(schema.size()) + " features, got " +
                          std::to_string(features.size()));
    }
    for (std::size_t j = 0; j < schema.size(); ++j) {
        if (feature_kind_of(features[j]) != schema[j]) {
            throw SchemaError("feature " + std::to_string(j) + " has kind " +
                              std::string(to_string(feature_kind_of(features[j]))) + ", schema says " +
                              std::string(to_string(schema[j])));
        }
    }
}

FuzzyDataset::FuzzyDataset(std::vector<FeatureKind> schema, int num_classes, std::vector<std::string> names)
    : schema_(std::move(schema)), names_(std::move(names)), num_classes_(num_classes) {
    if (num_classes_ < 1) throw DomainError("a dataset needs at least one class");
    if (names_.empty()) {
        for (std::size_t j = 0; j < schema_.size(); ++j) names_.push_back("f" + std::to_string(j + 1));
    }
    if (names_.size() != schema_.size()) throw SchemaError("feature names and schema differ in length");
}

void FuzzyDataset::add(Instance instance) {
    check_schema(schema_, instance.features);
    if (instance.label < 0 || instance.label >= num_classes_) {
        throw SchemaError("label " + std::to_string(instance.label) + " outside [0, " +
                          std::to_string(num_classes_) + ")");
    }
    instances_.push_back(std::move(instance));
}

std::vector<int> FuzzyDataset::labels() const {
    std::vector<int> out;
    out.reserve(instances_.size());
    for (const auto& inst : instances_) out.push_back(inst.label);
    return out;
}

std::vector<std::size_t> FuzzyDataset::class_counts() const {
    std::vector<std::size_t> counts(static_cast<std::size_t>(num_classes_), 0);
    for (const auto& inst : instances_) ++counts[static_cast<std::size_t>(inst.label)];
    return counts;
}

bool FuzzyDataset::has_interval_features() const noexcept {
    return std::find(schema_.begin(), schema_.end(), FeatureKind::interval) != schema_.end();
}

FuzzyDataset FuzzyDataset::subset(const std::vector<std::size_t>& indices) const {
    FuzzyDataset out = empty_like();
    out.instances_.reserve(indices.size());
    for (auto i : indices) out.instances_.push_back(instances_.at(i));
    return out;
}

FuzzyDataset FuzzyDataset::empty_like() const {
    FuzzyDataset out;
    out.schema_ = schema_;
    out.names_ = names_;
    out.num_classes_ = num_classes_;
    return out;
}

std::vector<std::vector<double>> defuzzify_dataset(const FuzzyDataset& ds, const DefuzzSpec& spec) {
    std::vector<std::vector<double>> rows;
    rows.reserve(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        try {
            rows.push_back(defuzzify_vector(ds[i].features, spec));
        } catch (const UnsupportedKindError& e) {
            throw UnsupportedKindError("instance " + std::to_string(i) + ", " + e.what());
        }
    }
    return rows;
}

// --- synthetic --------------------------------------------------------------

void SyntheticConfig::validate() const {
    if (num_classes < 1) throw DomainError("synthetic data needs at least one class");
    if (n < static_cast<std::size_t>(num_classes)) {
        throw DomainError("synthetic data needs n >= K (n=" + std::to_string(n) +
                          ", K=" + std::to_string(num_classes) + ")");
    }
    if (num_features < 1) throw DomainError("synthetic data needs at least one feature");
    if (!(center_spread >= 0.0) || !std::isfinite(center_spread)) {
        throw DomainError("center spread must be finite and >= 0");
    }
    if (!(within_sigma > 0.0) || !std::isfinite(within_sigma)) {
        throw DomainError("within-class sigma must be finite and > 0");
    }
}

namespace {

template <typename MakeFeature>
FuzzyDataset generate(const SyntheticConfig& cfg, FeatureKind kind, MakeFeature make) {
    cfg.validate();
    Rng rng(cfg.seed);
    const auto K = static_cast<std::size_t>(cfg.num_classes);
    const std::size_t p = cfg.num_features;

    std::uniform_real_distribution<double> center_dist(0.0, cfg.center_spread);
    std::vector<double> centers(K * p);
    for (auto& c : centers) c = center_dist(rng);

    std::normal_distribution<double> noise(0.0, cfg.within_sigma);
    std::uniform_real_distribution<double> ua(1.5, 3.0), ub(-0.5, 0.5), uc(2.0, 4.0);

    FuzzyDataset ds(std::vector<FeatureKind>(p, kind), cfg.num_classes);
    for (std::size_t i = 0; i < cfg.n; ++i) {
        const std::size_t label = i % K;
        Instance inst;
        inst.label = static_cast<int>(label);
        inst.features.reserve(p);
        for (std::size_t j = 0; j < p; ++j) {
            const double x = centers[label * p + j] + noise(rng);
            const double a = ua(rng), b = ub(rng), c = uc(rng);
            inst.features.push_back(make(x, a, b, c));
        }
        ds.add(std::move(inst));
    }
    return ds;
}

}  // namespace

FuzzyDataset generate_synthetic(const SyntheticConfig& cfg) {
    return generate(cfg, FeatureKind::tri, [](double x, double a, double b, double c) -> Feature {
        return FuzzyNumber::triangular(x - a, x + b, x + c);
    });
}

FuzzyDataset generate_synthetic_intervals(const SyntheticConfig& cfg) {
    return generate(cfg, FeatureKind::interval, [](double x, double a, double /*b*/, double c) -> Feature {
        return Interval(x - a, x + c);
    });
}

// --- interval conversion ------------------------------------------------------

FuzzyNumber interval_to_fuzzy(const Interval& iv, double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw DomainError("beta must lie in [0, 1], got " + std::to_string(beta));
    }
    double apex = beta * iv.lo + (1.0 - beta) * iv.hi;
    // Keep the apex inside [lo, hi] despite rounding.
    apex = std::clamp(apex, iv.lo, iv.hi);
    return FuzzyNumber::triangular(iv.lo, apex, iv.hi);
}

FuzzyDataset convert_intervals(const FuzzyDataset& ds, double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw DomainError("beta must lie in [0, 1], got " + std::to_string(beta));
    }
    auto schema = ds.schema();
    for (auto& k : schema) {
        if (k == FeatureKind::interval) k = FeatureKind::tri;
    }
    FuzzyDataset out(schema, ds.num_classes(), ds.names());
    for (const auto& inst : ds.instances()) {
        Instance converted{{}, inst.label};
        converted.features.reserve(inst.features.size());
        for (const auto& f : inst.features) {
            if (const auto* iv = std::get_if<Interval>(&f)) {
                converted.features.emplace_back(interval_to_fuzzy(*iv, beta));
            } else {
                converted.features.push_back(f);
            }
        }
        out.add(std::move(converted));
    }
    return out;
}

// --- oversampling ---------------------------------------------------------------

Feature interpolate(const Feature& u, const Feature& v, double lambda) {
    const FeatureKind kind = feature_kind_of(u);
    if (kind != feature_kind_of(v)) throw SchemaError("cannot interpolate features of different kinds");
    const auto pu = feature_params(u);
    const auto pv = feature_params(v);
    std::vector<double> mixed(pu.size());
    for (std::size_t i = 0; i < pu.size(); ++i) mixed[i] = lambda * pu[i] + (1.0 - lambda) * pv[i];
    return feature_from_params(kind, mixed);
}

namespace {

double distance_key(const Feature& f) {
    if (const auto* fz = std::get_if<FuzzyNumber>(&f)) return val(*fz);
    return m2(std::get<Interval>(f));
}

}  // namespace

FuzzyDataset smote_oversample(const FuzzyDataset& ds, std::size_t target_per_class,
                              std::size_t k_neighbors, std::uint64_t seed) {
    if (k_neighbors < 1) throw DomainError("k_neighbors must be >= 1");
    const auto K = static_cast<std::size_t>(ds.num_classes());

    std::vector<std::vector<std::size_t>> members(K);
    for (std::size_t i = 0; i < ds.size(); ++i) members[static_cast<std::size_t>(ds[i].label)].push_back(i);
    for (std::size_t k = 0; k < K; ++k) {
        if (members[k].size() < target_per_class && members[k].size() < 2) {
            throw DomainError("class " + std::to_string(k) + " has " + std::to_string(members[k].size()) +
                              " instance(s); oversampling needs at least 2 to interpolate");
        }
    }

    std::vector<std::vector<double>> keys;
    keys.reserve(ds.size());
    for (const auto& inst : ds.instances()) {
        std::vector<double> row;
        row.reserve(inst.features.size());
        for (const auto& f : inst.features) row.push_back(distance_key(f));
        keys.push_back(std::move(row));
    }
    auto dist2 = [&](std::size_t a, std::size_t b) {
        double s = 0.0;
        for (std::size_t j = 0; j < keys[a].size(); ++j) {
            const double d = keys[a][j] - keys[b][j];
            s += d * d;
        }
        return s;
    };

    FuzzyDataset out = ds;
    Rng rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t k = 0; k < K; ++k) {
        const auto& cls = members[k];
        if (cls.size() >= target_per_class) continue;
        const std::size_t kk = std::min(k_neighbors, cls.size() - 1);

        // Nearest neighbours of each member within its class, ties by index.
        std::vector<std::vector<std::size_t>> neighbours(cls.size());
        for (std::size_t a = 0; a < cls.size(); ++a) {
            std::vector<std::size_t> others;
            for (std::size_t b = 0; b < cls.size(); ++b) {
                if (b != a) others.push_back(b);
            }
            std::stable_sort(others.begin(), others.end(), [&](std::size_t x, std::size_t y) {
                return dist2(cls[a], cls[x]) < dist2(cls[a], cls[y]);
            });
            others.resize(kk);
            neighbours[a] = std::move(others);
        }

        std::uniform_int_distribution<std::size_t> pick_base(0, cls.size() - 1);
        std::uniform_int_distribution<std::size_t> pick_nb(0, kk - 1);
        for (std::size_t n = cls.size(); n < target_per_class; ++n) {
            const std::size_t a = pick_base(rng);
            const std::size_t b = neighbours[a][pick_nb(rng)];
            const double lambda = unit(rng);
            const auto& u = ds[cls[a]];
            const auto& v = ds[cls[b]];
            Instance synth{{}, static_cast<int>(k)};
            synth.features.reserve(u.features.size());
            for (std::size_t j = 0; j < u.features.size(); ++j) {
                synth.features.push_back(interpolate(u.features[j], v.features[j], lambda));
            }
            out.add(std::move(synth));
        }
    }
    return out;
}

// --- splitting ------------------------------------------------------------------

void SplitSpec::validate() const {
    if (!(train > 0.0 && val > 0.0 && test > 0.0)) throw DomainError("split fractions must all be > 0");
    if (std::abs(train + val + test - 1.0) > 1e-12) throw DomainError("split fractions must sum to 1");
}

SplitSizes split_sizes(std::size_t m, const SplitSpec& spec) {
    spec.validate();
    const auto n_val = static_cast<std::size_t>(std::llround(static_cast<double>(m) * spec.val));
    const auto n_test = static_cast<std::size_t>(std::llround(static_cast<double>(m) * spec.test));
    if (n_val + n_test >= m || n_val == 0 || n_test == 0) {
        throw PartitionError("splitting " + std::to_string(m) + " instances would leave a partition empty");
    }
    return {m - n_val - n_test, n_val, n_test};
}

std::vector<std::size_t> split_permutation(std::size_t m, std::uint64_t seed) {
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng(seed);
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

DatasetSplit split(const FuzzyDataset& ds, const SplitSpec& spec) {
    if (ds.size() < 3) throw PartitionError("splitting needs at least 3 instances");
    const SplitSizes sizes = split_sizes(ds.size(), spec);
    const auto perm = split_permutation(ds.size(), spec.seed);
    const auto slice = [&](std::size_t from, std::size_t count) {
        return ds.subset(std::vector<std::size_t>(perm.begin() + static_cast<std::ptrdiff_t>(from),
                                                  perm.begin() + static_cast<std::ptrdiff_t>(from + count)));
    };
    return {slice(0, sizes.train), slice(sizes.train, sizes.val), slice(sizes.train + sizes.val, sizes.test)};
}

// --- CSV --------------------------------------------------------------------------

FuzzyDataset read_fuzzy_csv(std::istream& in, int min_classes) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw ParseError("empty file, expected a header row", 1, 0);
    ++line_no;
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

    std::vector<FeatureKind> schema;
    std::vector<std::string> names;
    std::size_t label_col = 0;
    bool have_label = false;
    const auto header = split_view(line, ',');
    for (std::size_t c = 0; c < header.size(); ++c) {
        const auto cell = trim(header[c]);
        if (cell == "label") {
            if (have_label) throw ParseError("duplicate label column", line_no, c + 1);
            have_label = true;
            label_col = c;
            continue;
        }
        const auto colon = cell.rfind(':');
        if (colon == std::string_view::npos || colon == 0) {
            throw ParseError("header cell '" + std::string(cell) + "' is not of the form name:kind", line_no, c + 1);
        }
        try {
            schema.push_back(parse_feature_kind(cell.substr(colon + 1)));
        } catch (const DomainError& e) {
            throw ParseError(e.what(), line_no, c + 1);
        }
        names.emplace_back(cell.substr(0, colon));
    }
    if (!have_label) throw ParseError("header has no label column", line_no, 0);

    struct Row {
        std::vector<Feature> features;
        int label;
    };
    std::vector<Row> rows;
    int max_label = -1;
    std::size_t expected_cells = 1;
    for (auto k : schema) expected_cells += cell_count(k);

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split_view(line, ',');
        if (cells.size() != expected_cells) {
            throw ParseError("expected " + std::to_string(expected_cells) + " cells, got " +
                                 std::to_string(cells.size()),
                             line_no, 0);
        }
        Row row;
        row.features.reserve(schema.size());
        // Walk the header columns; cell index advances by each feature's width.
        std::size_t cell = 0;
        std::size_t feature = 0;
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (c == label_col) {
                long long label = 0;
                if (!parse_int(cells[cell], label) || label < 0 || label > 1'000'000) {
                    throw ParseError("label '" + std::string(trim(cells[cell])) +
                                         "' is not a non-negative integer",
                                     line_no, cell + 1);
                }
                row.label = static_cast<int>(label);
                max_label = std::max(max_label, row.label);
                ++cell;
                continue;
            }
            const FeatureKind kind = schema[feature];
            std::vector<double> params(cell_count(kind));
            for (std::size_t q = 0; q < params.size(); ++q) {
                if (!parse_double(cells[cell + q], params[q])) {
                    throw ParseError("'" + std::string(trim(cells[cell + q])) + "' is not a number",
                                     line_no, cell + q + 1);
                }
            }
            try {
                row.features.push_back(feature_from_params(kind, params));
            } catch (const DomainError& e) {
                throw ParseError(std::string(names[feature]) + ": " + e.what(), line_no, cell + 1);
            }
            cell += params.size();
            ++feature;
        }
        rows.push_back(std::move(row));
    }

    FuzzyDataset ds(schema, std::max(max_label + 1, std::max(min_classes, 1)), names);
    for (auto& r : rows) ds.add(Instance{std::move(r.features), r.label});
    return ds;
}

FuzzyDataset read_fuzzy_csv(const std::filesystem::path& path, int min_classes) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path.string() + "' for reading");
    return read_fuzzy_csv(in, min_classes);
}

void write_fuzzy_csv(const FuzzyDataset& ds, std::ostream& out) {
    for (std::size_t j = 0; j < ds.num_features(); ++j) {
        out << ds.names()[j] << ':' << to_string(ds.schema()[j]) << ',';
    }
    out << "label\n";
    for (const auto& inst : ds.instances()) {
        for (const auto& f : inst.features) {
            for (double v : feature_params(f)) out << format_double(v) << ',';
        }
        out << inst.label << '\n';
    }
}

void write_fuzzy_csv(const FuzzyDataset& ds, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    write_fuzzy_csv(ds, out);
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace fuzzyclf
