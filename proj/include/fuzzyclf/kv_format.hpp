#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fuzzyclf {

inline constexpr int kKvFormatVersion = 1;

/// Ordered key-value text document.
///
/// One `key = value` entry per line; `#` starts a comment line. Keys are
/// unique and contain no whitespace or '='. List values are space
/// separated. Every document written by this library starts with
/// `format_version = 1` and a `kind` entry naming what it holds.
///
///     # fuzzyclf svm model
///     format_version = 1
///     kind = svm_model
///     kernel = rbf
///     class.0.alpha = 0 0.5 10 ...
class KvDocument {
public:
    KvDocument() = default;
    /// Starts a document with format_version and kind entries.
    explicit KvDocument(std::string_view kind);

    void set(std::string_view key, std::string value);
    void set(std::string_view key, double value);
    void set(std::string_view key, long long value);
    void set(std::string_view key, int value) { set(key, static_cast<long long>(value)); }
    void set(std::string_view key, std::size_t value) { set(key, static_cast<long long>(value)); }
    void set(std::string_view key, const std::vector<double>& values);
    void set(std::string_view key, const std::vector<int>& values);

    bool contains(std::string_view key) const noexcept;
    /// Throws ParseError naming the key when it is absent or malformed.
    const std::string& get(std::string_view key) const;
    double get_double(std::string_view key) const;
    long long get_int(std::string_view key) const;
    std::vector<double> get_doubles(std::string_view key) const;
    std::vector<int> get_ints(std::string_view key) const;

    /// Checks format_version and kind. Throws ParseError on mismatch.
    void expect_kind(std::string_view kind) const;

    const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }

    void write(std::ostream& out) const;
    void save(const std::filesystem::path& path) const;
    static KvDocument read(std::istream& in);
    static KvDocument load(const std::filesystem::path& path);

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace fuzzyclf
