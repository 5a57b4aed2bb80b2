#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>

#include "gljel/ingest.hpp"

using namespace gljel;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

namespace {

std::string write_file(const std::string& name, const std::string& content) {
    std::filesystem::path p = std::filesystem::temp_directory_path() / name;
    std::ofstream out(p);
    out << content;
    out.close();
    return p.string();
}

} // namespace

TEST_CASE("plain single-column load") {
    IngestSpec spec;
    spec.path = write_file("gljel_plain.csv", "100\n200\n300\n");
    LoadResult r = load_sample(spec);
    REQUIRE(r.sample.values() == std::vector<double>{100.0, 200.0, 300.0});
    REQUIRE(r.total_rows == 3);
    REQUIRE(r.retained == 3);
    REQUIRE(r.dropped() == 0);
}

TEST_CASE("log transform") {
    IngestSpec spec;
    spec.path = write_file("gljel_log.csv", "100\n200\n300\n");
    spec.log_transform = true;
    LoadResult r = load_sample(spec);
    REQUIRE(r.sample.size() == 3);
    REQUIRE_THAT(r.sample.values()[0], WithinRel(4.6051701859880913680, 1e-15));
    REQUIRE_THAT(r.sample.values()[1], WithinRel(5.2983173665480363344, 1e-15));
    REQUIRE_THAT(r.sample.values()[2], WithinRel(5.7037824746562008805, 1e-15));
}

TEST_CASE("log transform rejects nonpositive values naming the row count") {
    IngestSpec spec;
    spec.path = write_file("gljel_log0.csv", "5\n0\n7\n-2\n");
    spec.log_transform = true;
    REQUIRE_THROWS_WITH(load_sample(spec),
                        ContainsSubstring("log transform requires positive values") &&
                            ContainsSubstring("2 nonpositive row(s)"));
}

TEST_CASE("min-value filter runs before the log transform") {
    IngestSpec spec;
    spec.path = write_file("gljel_minlog.csv", "0\n100\n200\n");
    spec.min_value = 50.0;
    spec.log_transform = true;
    LoadResult r = load_sample(spec);
    REQUIRE(r.sample.size() == 2);
    REQUIRE(r.dropped_min_value == 1);
    REQUIRE_THAT(r.sample.values()[0], WithinRel(4.6051701859880913680, 1e-15));

    // The threshold itself is kept.
    IngestSpec eq;
    eq.path = write_file("gljel_mineq.csv", "100\n99.999\n");
    eq.min_value = 100.0;
    REQUIRE(load_sample(eq).sample.values() == std::vector<double>{100.0});
}

TEST_CASE("header rows and named columns") {
    std::string path =
        write_file("gljel_header.csv", "salary,dept\n100,sales\n200,eng\n300,eng\n");
    IngestSpec by_name;
    by_name.path = path;
    by_name.has_header = true;
    by_name.column = "salary";
    LoadResult r = load_sample(by_name);
    REQUIRE(r.sample.size() == 3);
    REQUIRE(r.total_rows == 3); // header not counted

    IngestSpec by_index;
    by_index.path = path;
    by_index.has_header = true;
    by_index.column = "0";
    REQUIRE(load_sample(by_index).sample.values() == r.sample.values());

    IngestSpec missing;
    missing.path = path;
    missing.has_header = true;
    missing.column = "wage";
    REQUIRE_THROWS_WITH(load_sample(missing), "column not found in header: wage");

    IngestSpec nameless;
    nameless.path = path;
    nameless.column = "salary";
    REQUIRE_THROWS_WITH(load_sample(nameless), "column name 'salary' requires a header row");

    IngestSpec text_col;
    text_col.path = path;
    text_col.has_header = true;
    text_col.column = "dept";
    REQUIRE_THROWS_WITH(load_sample(text_col), ContainsSubstring("no numeric rows"));
}

TEST_CASE("malformed rows are dropped and counted, order preserved") {
    IngestSpec spec;
    spec.path = write_file("gljel_mixed.csv", "abc\n1.5\n2e3\n-7\n\n   \nnan\n");
    LoadResult r = load_sample(spec);
    REQUIRE(r.sample.values() == std::vector<double>{1.5, 2000.0, -7.0});
    REQUIRE(r.total_rows == 5); // blank lines skipped entirely
    REQUIRE(r.dropped_non_numeric == 2);
    REQUIRE(r.retained + r.dropped() == r.total_rows);
}

TEST_CASE("alternate delimiter and CR line endings") {
    IngestSpec spec;
    spec.path = write_file("gljel_semi.csv", "a;7.5\r\nb;2.25\r\n");
    spec.delimiter = ';';
    spec.column = "1";
    LoadResult r = load_sample(spec);
    REQUIRE(r.sample.values() == std::vector<double>{7.5, 2.25});
}

TEST_CASE("short rows count as non-numeric") {
    IngestSpec spec;
    spec.path = write_file("gljel_short.csv", "1,2\n3\n4,5\n");
    spec.column = "1";
    LoadResult r = load_sample(spec);
    REQUIRE(r.sample.values() == std::vector<double>{2.0, 5.0});
    REQUIRE(r.dropped_non_numeric == 1);
}

TEST_CASE("ingest failure modes") {
    IngestSpec gone;
    gone.path = "/nonexistent/gljel-no-such-file.csv";
    REQUIRE_THROWS_WITH(load_sample(gone), ContainsSubstring("cannot open file"));

    IngestSpec empty;
    empty.path = write_file("gljel_empty.csv", "");
    REQUIRE_THROWS_WITH(load_sample(empty), ContainsSubstring("no numeric rows"));

    IngestSpec empty_header;
    empty_header.path = empty.path;
    empty_header.has_header = true;
    REQUIRE_THROWS_WITH(load_sample(empty_header), ContainsSubstring("no rows in"));
}

TEST_CASE("subsampling") {
    Sample s({10, 20, 30, 40, 50, 60, 70});

    Sample a = subsample(s, 3, {5, 1});
    Sample b = subsample(s, 3, {5, 1});
    REQUIRE(a.values() == b.values());
    Sample c = subsample(s, 3, {5, 2});
    REQUIRE(a.values() != c.values()); // overwhelmingly likely under a new stream

    for (double v : a.values()) {
        REQUIRE(std::count(s.values().begin(), s.values().end(), v) == 1);
    }

    Sample full = subsample(s, s.size(), {9, 9});
    REQUIRE(full.sorted() == s.sorted()); // a permutation

    Sample one = subsample(s, 1, {2, 2});
    REQUIRE(std::count(s.values().begin(), s.values().end(), one.values()[0]) == 1);

    REQUIRE_THROWS_WITH(subsample(s, 0, {1, 1}), "empty sample");
    REQUIRE_THROWS_WITH(subsample(s, 8, {1, 1}), "subsample size exceeds sample size");
}
