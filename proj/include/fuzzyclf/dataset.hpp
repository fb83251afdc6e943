#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzyclf/defuzz.hpp"
#include "fuzzyclf/fuzzy_number.hpp"

namespace fuzzyclf {

/// Column kind tags of the fuzzy CSV format.
enum class FeatureKind { tri, trap, gauss, crisp, interval };

std::string_view to_string(FeatureKind kind) noexcept;
FeatureKind parse_feature_kind(std::string_view tag);
/// Number of numeric CSV cells a feature of this kind occupies.
std::size_t cell_count(FeatureKind kind) noexcept;
FeatureKind feature_kind_of(const Feature& f) noexcept;

struct Instance {
    std::vector<Feature> features;
    int label = 0;

    friend bool operator==(const Instance&, const Instance&) = default;
};

/// A labeled sample of fuzzy-feature observations.
///
/// Every instance has one feature per schema column, of the column's kind,
/// and a label in [0, num_classes).
class FuzzyDataset {
public:
    FuzzyDataset() = default;
    /// Feature names default to f1..fp when `names` is empty.
    FuzzyDataset(std::vector<FeatureKind> schema, int num_classes,
                 std::vector<std::string> names = {});

    /// Appends an instance after checking it against the schema.
    void add(Instance instance);

    const std::vector<FeatureKind>& schema() const noexcept { return schema_; }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::vector<Instance>& instances() const noexcept { return instances_; }
    const Instance& operator[](std::size_t i) const { return instances_[i]; }

    std::size_t size() const noexcept { return instances_.size(); }
    bool empty() const noexcept { return instances_.empty(); }
    std::size_t num_features() const noexcept { return schema_.size(); }
    int num_classes() const noexcept { return num_classes_; }

    std::vector<int> labels() const;
    std::vector<std::size_t> class_counts() const;
    bool has_interval_features() const noexcept;

    /// Dataset with the same schema holding the instances at `indices`.
    FuzzyDataset subset(const std::vector<std::size_t>& indices) const;
    /// Empty dataset sharing this schema.
    FuzzyDataset empty_like() const;

    friend bool operator==(const FuzzyDataset&, const FuzzyDataset&) = default;

private:
    std::vector<FeatureKind> schema_;
    std::vector<std::string> names_;
    std::vector<Instance> instances_;
    int num_classes_ = 0;
};

/// Throws SchemaError when `features` does not match `schema`.
void check_schema(const std::vector<FeatureKind>& schema, const std::vector<Feature>& features);

/// Defuzzified design matrix, one row per instance.
std::vector<std::vector<double>> defuzzify_dataset(const FuzzyDataset& ds, const DefuzzSpec& spec);

// --- synthetic data -------------------------------------------------------

struct SyntheticConfig {
    std::size_t n = 2000;
    std::size_t num_features = 20;
    int num_classes = 5;
    std::uint64_t seed = 0;
    /// Class centers have components ~ U[0, center_spread].
    double center_spread = 10.0;
    /// True values are drawn as Normal(center, within_sigma^2).
    double within_sigma = 1.0;

    /// Throws DomainError on n < K, nonpositive sizes or spreads.
    void validate() const;
};

/// Balanced triangular-feature data. Each true value x becomes the
/// triangular observation (x - a, x + b, x + c) with a ~ U[1.5, 3],
/// b ~ U[-0.5, 0.5], c ~ U[2, 4]. Labels cycle 0, 1, ..., K-1 so class sizes
/// differ by at most one. Deterministic for a given seed.
FuzzyDataset generate_synthetic(const SyntheticConfig& cfg);

/// Same generator, but each true value becomes the interval [x - a, x + c].
FuzzyDataset generate_synthetic_intervals(const SyntheticConfig& cfg);

// --- interval conversion --------------------------------------------------

/// Maps [A, B] to the triangular number (A, beta*A + (1 - beta)*B, B).
FuzzyNumber interval_to_fuzzy(const Interval& iv, double beta);

/// Converts every interval column to a `tri` column with the given beta.
FuzzyDataset convert_intervals(const FuzzyDataset& ds, double beta);

// --- oversampling ---------------------------------------------------------

/// SMOTE-style balancing in parameter space. Every class with fewer than
/// `target_per_class` instances is grown to exactly that size by adding
/// points lambda*u + (1 - lambda)*v, componentwise over the characterizing
/// parameters, where u is a random member of the class, v one of u's
/// `k_neighbors` nearest same-class neighbours (Euclidean distance on
/// VAL-defuzzified features, interval midpoints for interval columns) and
/// lambda ~ U[0, 1]. Originals are kept, in order, ahead of the synthetic
/// instances. Throws DomainError when a class that must grow has fewer than
/// two members.
FuzzyDataset smote_oversample(const FuzzyDataset& ds, std::size_t target_per_class,
                              std::size_t k_neighbors, std::uint64_t seed);

/// Componentwise convex combination lambda*u + (1 - lambda)*v of two features
/// of the same kind.
Feature interpolate(const Feature& u, const Feature& v, double lambda);

// --- splitting --------------------------------------------------------------

struct SplitSpec {
    double train = 0.6;
    double val = 0.2;
    double test = 0.2;
    std::uint64_t seed = 0;

    void validate() const;
};

struct SplitSizes {
    std::size_t train = 0;
    std::size_t val = 0;
    std::size_t test = 0;
};

/// Validation and test sizes are round(m * f); train takes the remainder.
SplitSizes split_sizes(std::size_t m, const SplitSpec& spec);

struct DatasetSplit {
    FuzzyDataset train;
    FuzzyDataset val;
    FuzzyDataset test;
};

/// Random permutation by seed, then contiguous train/val/test slices.
/// Throws PartitionError if any slice would be empty.
DatasetSplit split(const FuzzyDataset& ds, const SplitSpec& spec);

/// The permutation `split` uses, exposed for reproducibility checks.
std::vector<std::size_t> split_permutation(std::size_t m, std::uint64_t seed);

// --- CSV --------------------------------------------------------------------

/// Header cells are `name:kind` (kind in tri, trap, gauss, crisp, interval)
/// plus exactly one `label` column. Each feature expands to its kind's cells.
/// The class count is one more than the largest label, or `min_classes` if
/// that is larger.
FuzzyDataset read_fuzzy_csv(std::istream& in, int min_classes = 0);
FuzzyDataset read_fuzzy_csv(const std::filesystem::path& path, int min_classes = 0);

void write_fuzzy_csv(const FuzzyDataset& ds, std::ostream& out);
void write_fuzzy_csv(const FuzzyDataset& ds, const std::filesystem::path& path);

}  // namespace fuzzyclf
