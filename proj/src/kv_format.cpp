#include "fuzzyclf/kv_format.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "fuzzyclf/errors.hpp"
#include "fuzzyclf/numeric_text.hpp"

namespace fuzzyclf {

KvDocument::KvDocument(std::string_view kind) {
    set("format_version", static_cast<long long>(kKvFormatVersion));
    set("kind", std::string(kind));
}

void KvDocument::set(std::string_view key, std::string value) {
    if (key.empty() || key.find_first_of(" \t=\n#") != std::string_view::npos) {
        throw DomainError("invalid key '" + std::string(key) + "'");
    }
    if (value.find('\n') != std::string::npos) throw DomainError("value for '" + std::string(key) + "' spans lines");
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    entries_.emplace_back(std::string(key), std::move(value));
}

void KvDocument::set(std::string_view key, double value) { set(key, format_double(value)); }

void KvDocument::set(std::string_view key, long long value) { set(key, std::to_string(value)); }

void KvDocument::set(std::string_view key, const std::vector<double>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ' ';
        s += format_double(values[i]);
    }
    set(key, std::move(s));
}

void KvDocument::set(std::string_view key, const std::vector<int>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(values[i]);
    }
    set(key, std::move(s));
}

bool KvDocument::contains(std::string_view key) const noexcept {
    return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == key; });
}

const std::string& KvDocument::get(std::string_view key) const {
    for (const auto& [k, v] : entries_) {
        if (k == key) return v;
    }
    throw ParseError("missing key '" + std::string(key) + "'", 0, 0);
}

double KvDocument::get_double(std::string_view key) const {
    double v = 0.0;
    if (!parse_double(get(key), v)) throw ParseError("key '" + std::string(key) + "' is not a number", 0, 0);
    return v;
}

long long KvDocument::get_int(std::string_view key) const {
    long long v = 0;
    if (!parse_int(get(key), v)) throw ParseError("key '" + std::string(key) + "' is not an integer", 0, 0);
    return v;
}

namespace {

std::vector<std::string_view> tokens(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && s[i] == ' ') ++i;
        const std::size_t start = i;
        while (i < s.size() && s[i] != ' ') ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

}  // namespace

std::vector<double> KvDocument::get_doubles(std::string_view key) const {
    std::vector<double> out;
    for (auto tok : tokens(get(key))) {
        double v = 0.0;
        if (!parse_double(tok, v)) throw ParseError("key '" + std::string(key) + "' holds a non-number", 0, 0);
        out.push_back(v);
    }
    return out;
}

std::vector<int> KvDocument::get_ints(std::string_view key) const {
    std::vector<int> out;
    for (auto tok : tokens(get(key))) {
        long long v = 0;
        if (!parse_int(tok, v)) throw ParseError("key '" + std::string(key) + "' holds a non-integer", 0, 0);
        out.push_back(static_cast<int>(v));
    }
    return out;
}

void KvDocument::expect_kind(std::string_view kind) const {
    if (!contains("format_version")) throw ParseError("missing format_version", 0, 0);
    const auto version = get_int("format_version");
    if (version != kKvFormatVersion) {
        throw ParseError("unsupported format_version " + std::to_string(version), 0, 0);
    }
    if (get("kind") != kind) {
        throw ParseError("expected a '" + std::string(kind) + "' document, found '" + get("kind") + "'", 0, 0);
    }
}

void KvDocument::write(std::ostream& out) const {
    for (const auto& [k, v] : entries_) out << k << " = " << v << '\n';
}

void KvDocument::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    write(out);
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

KvDocument KvDocument::read(std::istream& in) {
    KvDocument doc;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no, 0);
        const auto key = trim(t.substr(0, eq));
        if (key.empty()) throw ParseError("empty key", line_no, 0);
        if (doc.contains(key)) throw ParseError("duplicate key '" + std::string(key) + "'", line_no, 0);
        doc.entries_.emplace_back(std::string(key), std::string(trim(t.substr(eq + 1))));
    }
    return doc;
}

KvDocument KvDocument::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path.string() + "' for reading");
    return read(in);
}

}  // namespace fuzzyclf
