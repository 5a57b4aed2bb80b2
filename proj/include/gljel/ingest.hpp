#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gljel/distributions.hpp"
#include "gljel/sample.hpp"

namespace gljel {

struct IngestSpec {
    std::string path;
    std::string column = "0"; // 0-based index, or a name resolved via the header
    char delimiter = ',';
    bool has_header = false;
    std::optional<double> min_value;
    bool log_transform = false;
};

struct LoadResult {
    Sample sample;
    std::size_t total_rows = 0;        // data rows seen (header excluded)
    std::size_t retained = 0;          // rows that made it into the sample
    std::size_t dropped_non_numeric = 0;
    std::size_t dropped_min_value = 0;

    std::size_t dropped() const { return dropped_non_numeric + dropped_min_value; }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = line.find(delim, start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

inline bool parse_double(const std::string& field, double& out) {
    std::string s = trim(field);
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

inline bool is_index(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

} // namespace detail

/// Reads one numeric column from a delimited text file. Rows whose selected
/// field does not parse as a finite number are dropped and counted, never
/// silently ignored. The min_value filter runs before the log transform.
inline LoadResult load_sample(const IngestSpec& spec) {
    std::ifstream in(spec.path);
    if (!in) {
        throw std::runtime_error("cannot open file: " + spec.path);
    }

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty()) continue;
        lines.push_back(line);
    }

    std::size_t col = 0;
    std::size_t first_data = 0;
    if (spec.has_header) {
        if (lines.empty()) throw std::runtime_error("no rows in " + spec.path);
        first_data = 1;
        if (detail::is_index(spec.column)) {
            col = std::stoul(spec.column);
        }
        else {
            auto header = detail::split(lines[0], spec.delimiter);
            auto it = std::find_if(header.begin(), header.end(), [&](const std::string& h) {
                return detail::trim(h) == spec.column;
            });
            if (it == header.end()) {
                throw std::runtime_error("column not found in header: " + spec.column);
            }
            col = static_cast<std::size_t>(it - header.begin());
        }
    }
    else {
        if (!detail::is_index(spec.column)) {
            throw std::runtime_error("column name '" + spec.column + "' requires a header row");
        }
        col = std::stoul(spec.column);
    }

    std::vector<double> values;
    std::size_t total_rows = 0, dropped_non_numeric = 0, dropped_min_value = 0, nonpositive = 0;
    for (std::size_t i = first_data; i < lines.size(); ++i) {
        ++total_rows;
        auto fields = detail::split(lines[i], spec.delimiter);
        double v = 0.0;
        if (col >= fields.size() || !detail::parse_double(fields[col], v)) {
            ++dropped_non_numeric;
            continue;
        }
        if (spec.min_value && v < *spec.min_value) {
            ++dropped_min_value;
            continue;
        }
        if (spec.log_transform && v <= 0.0) ++nonpositive;
        values.push_back(v);
    }

    if (spec.log_transform && nonpositive > 0) {
        throw std::domain_error("log transform requires positive values: " +
                                std::to_string(nonpositive) + " nonpositive row(s) in " + spec.path);
    }
    if (values.empty()) {
        throw std::runtime_error("no numeric rows in " + spec.path);
    }
    if (spec.log_transform) {
        for (double& v : values) v = std::log(v);
    }
    LoadResult result{Sample(std::move(values))};
    result.total_rows = total_rows;
    result.retained = result.sample.size();
    result.dropped_non_numeric = dropped_non_numeric;
    result.dropped_min_value = dropped_min_value;
    return result;
}

/// Draw n observations without replacement (partial Fisher-Yates under the
/// given stream). n equal to the sample size yields a permutation.
inline Sample subsample(const Sample& s, std::size_t n, SeededStream stream) {
    if (n == 0) throw std::invalid_argument("empty sample");
    if (n > s.size()) {
        throw std::runtime_error("subsample size exceeds sample size");
    }
    Rng rng(stream);
    std::vector<double> pool = s.values();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.bounded(pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(n);
    return Sample(std::move(pool));
}

} // namespace gljel
