#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gljel/io.hpp"

#include "schema_check.hpp"

using namespace gljel;
using json = nlohmann::json;

namespace {

void check_schema(const std::string& schema_name, const std::string& payload) {
    INFO(payload);
    std::string err = schema_check::check(schema_name, payload);
    INFO(err);
    REQUIRE(err.empty());
}

std::vector<TestResult> sample_results() {
    TestResult a;
    a.method = Method::jel;
    a.t = 0.5;
    a.statistic = 1.25;
    a.p_value = 0.2636;
    a.reject = false;
    a.alpha = 0.05;
    a.n1 = 10;
    a.n2 = 12;
    TestResult b = a;
    b.method = Method::ajel;
    b.t = 1.0;
    b.statistic = std::numeric_limits<double>::infinity();
    b.p_value = 0.0;
    b.reject = true;
    b.hull_ok = false;
    return {a, b};
}

SimTable sample_table() {
    SimTable t;
    t.reps = 100;
    t.alpha = 0.05;
    t.seed = 7;
    t.rows.push_back({Method::jel, 0.1, 20, 30, 0.054, standard_error(0.054, 100), 0.0});
    t.rows.push_back({Method::ajel, 0.2, 20, 30, 0.061, standard_error(0.061, 100), 0.01});
    return t;
}

const Meta kMeta = {{"version", "0.1.0"}, {"seed", "7"}};

} // namespace

TEST_CASE("test-result csv") {
    std::string csv = test_results_csv(sample_results(), kMeta);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    REQUIRE(line == "# version=0.1.0");
    std::getline(lines, line);
    REQUIRE(line == "# seed=7");
    std::getline(lines, line);
    REQUIRE(line == "method,t,n1,n2,statistic,p_value,reject,alpha,hull_ok,degenerate");
    std::getline(lines, line);
    REQUIRE(line == "JEL,0.5,10,12,1.25,0.2636,false,0.05,true,false");
    std::getline(lines, line);
    REQUIRE(line == "AJEL,1,10,12,inf,0,true,0.05,false,false");
}

TEST_CASE("test-result json round-trips and validates") {
    std::string out = test_results_json(sample_results(), kMeta);
    json j = json::parse(out);
    REQUIRE(j["provenance"]["version"] == "0.1.0");
    REQUIRE(j["results"].size() == 2);
    REQUIRE(j["results"][0]["statistic"].get<double>() == 1.25);
    REQUIRE(j["results"][0]["p_value"].get<double>() == 0.2636);
    REQUIRE(j["results"][1]["statistic"].is_null()); // +inf has no JSON number
    REQUIRE(j["results"][1]["reject"] == true);
    check_schema("test_result.schema.json", out);
}

TEST_CASE("test-result plain format") {
    std::string plain = test_results_plain(sample_results(), kMeta);
    REQUIRE(plain.find("version = 0.1.0") != std::string::npos);
    REQUIRE(plain.find("method") != std::string::npos);
    REQUIRE(plain.find("JEL") != std::string::npos);
    REQUIRE(plain.find("AJEL") != std::string::npos);
}

TEST_CASE("curve outputs") {
    std::vector<CurveRow> rows = {{0.5, 1.0 / 3.0, 0.5}, {1.0, 1.0, 1.5}};

    std::string bare = curve_csv(rows, {}, kMeta);
    REQUIRE(bare.find("t,lorenz,gl\n") != std::string::npos);
    REQUIRE(bare.find("analytic") == std::string::npos);

    std::string with = curve_csv(rows, {0.15342640972002735, 1.0}, kMeta);
    REQUIRE(with.find("t,lorenz,gl,analytic_gl\n") != std::string::npos);
    REQUIRE(with.find(",0.1534264097\n") != std::string::npos);

    std::string j1 = curve_json(rows, {}, kMeta);
    json parsed = json::parse(j1);
    REQUIRE(parsed["curve"].size() == 2);
    REQUIRE_FALSE(parsed["curve"][0].contains("analytic_gl"));
    check_schema("curve.schema.json", j1);

    std::string j2 = curve_json(rows, {0.15342640972002735, 1.0}, kMeta);
    json parsed2 = json::parse(j2);
    REQUIRE(parsed2["curve"][0]["analytic_gl"].get<double>() == 0.15342640972002735);
    check_schema("curve.schema.json", j2);

    std::string plain = curve_plain(rows, {}, kMeta);
    REQUIRE(plain.find("lorenz") != std::string::npos);
}

TEST_CASE("simulation table outputs") {
    SimTable t = sample_table();

    std::string csv = simtable_csv(t, kMeta);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line); // # version
    std::getline(lines, line); // # seed
    std::getline(lines, line);
    REQUIRE(line == "method,t,n1,n2,rate,se,hull_fail_rate");
    std::getline(lines, line);
    REQUIRE(line == "JEL,0.1,20,30,0.054000,0.022602,0.000000");
    std::getline(lines, line);
    REQUIRE(line == "AJEL,0.2,20,30,0.061000,0.023933,0.010000");

    std::string out = simtable_json(t, kMeta);
    json j = json::parse(out);
    REQUIRE(j["failures"] == 0);
    REQUIRE(j["rows"].size() == 2);
    REQUIRE(j["rows"][0]["rate"].get<double>() == 0.054);
    check_schema("simtable.schema.json", out);

    std::string plain = simtable_plain(t, kMeta);
    REQUIRE(plain.find("hull_fail_rate") != std::string::npos);
    REQUIRE(plain.find("non-convergences") == std::string::npos);
    t.failures = 3;
    REQUIRE(simtable_plain(t, kMeta).find("solver non-convergences: 3") != std::string::npos);
}

TEST_CASE("quantile mode names") {
    REQUIRE(quantile_mode_name(QuantileMode::per_sample) == std::string("per_sample"));
    REQUIRE(quantile_mode_name(QuantileMode::pooled) == std::string("pooled"));
    REQUIRE(quantile_mode_name(QuantileMode::true_quantile) == std::string("true_quantile"));
}
