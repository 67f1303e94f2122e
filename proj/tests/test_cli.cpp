#include "gregory/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

using namespace gregory::cli;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "gregory");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> result;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) result.push_back(line);
    return result;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) fields.push_back(field);
    if (!line.empty() && line.back() == sep) fields.emplace_back();
    return fields;
}

}  // namespace

TEST_CASE("compute series csv") {
    const auto r = run_cli({"compute", "--n-max", "5", "--method", "series", "--format", "csv"});
    CHECK(r.code == kSuccess);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 7);
    CHECK(rows[0] == "n,exact,numeric,method,error_estimate");
    CHECK(rows[1].rfind("0,1/1,1,series,", 0) == 0);
    CHECK(rows[6].rfind("5,3/160,", 0) == 0);
    CHECK(rows[6].find(",series,") != std::string::npos);
}

TEST_CASE("compute integral json") {
    const auto r = run_cli({"compute", "--n-max", "3", "--method", "integral", "--format", "json"});
    CHECK(r.code == kSuccess);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.size() == 4);
    CHECK(j[0]["method"] == "series");  // b_0 has no integral form
    CHECK(j[3]["n"] == 3);
    CHECK(j[3]["exact"].is_null());
    CHECK(j[3]["method"] == "integral");
    CHECK(j[3]["numeric"].get<double>() == doctest::Approx(1.0 / 24).epsilon(1e-10));
    CHECK(j[3]["error_estimate"].get<double>() <= 1e-10);
    CHECK(j[3]["converged"] == true);
}

TEST_CASE("compute n-max 0 with all methods") {
    const auto r = run_cli({"compute", "--n-max", "0", "--method", "all"});
    CHECK(r.code == kSuccess);
    CHECK(r.out.find("1/1") != std::string::npos);
    CHECK(r.out.find("n/a") != std::string::npos);
}

TEST_CASE("csv and json carry the same values") {
    const auto csv = run_cli({"compute", "--n-max", "12", "--method", "all", "--format", "csv"});
    const auto json = run_cli({"compute", "--n-max", "12", "--method", "all", "--format", "json"});
    CHECK(csv.code == kSuccess);
    CHECK(json.code == kSuccess);
    const auto rows = lines(csv.out);
    const auto arr = nlohmann::json::parse(json.out);
    REQUIRE(rows.size() == arr.size() + 1);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto fields = split(rows[i + 1], ',');
        REQUIRE(fields.size() == 5);
        CHECK(std::stol(fields[0]) == arr[i]["n"].get<long>());
        CHECK(fields[3] == arr[i]["method"].get<std::string>());
        if (arr[i]["exact"].is_null()) {
            CHECK(fields[1].empty());
        } else {
            CHECK(fields[1] == arr[i]["exact"].get<std::string>());
        }
        CHECK(std::stod(fields[2]) == arr[i]["numeric"].get<double>());
        if (!arr[i]["error_estimate"].is_null()) {
            CHECK(std::stod(fields[4]) == arr[i]["error_estimate"].get<double>());
        }
    }
    CHECK(csv.err.find("max cross-method deviation") != std::string::npos);
}

TEST_CASE("cross-method deviation stays small") {
    for (const char* n : {"1", "7", "20"}) {
        const auto r = run_cli({"compute", "--n-max", n, "--method", "all"});
        CHECK(r.code == kSuccess);
        const auto pos = r.out.find("max cross-method deviation: ");
        REQUIRE(pos != std::string::npos);
        const double dev = std::stod(r.out.substr(pos + 28));
        CHECK(dev <= 1e-9);
    }
}

TEST_CASE("compute explicit labels small n as series") {
    const auto r = run_cli({"compute", "--n-max", "3", "--method", "explicit", "--format", "csv"});
    CHECK(r.code == kSuccess);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[2].find(",series,") != std::string::npos);
    CHECK(rows[3] == "2,-1/12,-0.08333333333333333,explicit,");
}

TEST_CASE("verify suites") {
    const auto hankel = run_cli({"verify", "--suite", "hankel", "--n-max", "12"});
    CHECK(hankel.code == kSuccess);
    const auto j = nlohmann::json::parse(lines(hankel.out).at(0));
    CHECK(j["suite"] == "hankel");
    CHECK(j["passed"] == true);

    const auto all = run_cli({"verify", "--suite", "all", "--n-max", "30"});
    CHECK(all.code == kSuccess);
    const auto reports = lines(all.out);
    CHECK(reports.size() == 8);
    bool saw_inconclusive = false;
    for (const auto& line : reports) {
        const auto report = nlohmann::json::parse(line);
        if (report["suite"] == "minimality") {
            saw_inconclusive = report["status"] == "inconclusive";
        } else {
            CHECK_MESSAGE(report["status"] == "passed", line);
        }
    }
    CHECK(saw_inconclusive);

    CHECK(run_cli({"verify", "--suite", "log-convexity", "--n-max", "2"}).code == kUsage);
    CHECK(run_cli({"verify", "--suite", "nope"}).code == kUsage);
}

TEST_CASE("run_suites exit status") {
    const Suite failing{"synthetic", [] {
                            gregory::properties::CmReport r;
                            r.suite = "synthetic";
                            r.passed = false;
                            r.first_violation = gregory::properties::Violation{0, 0, "-1/1"};
                            return r;
                        }};
    std::ostringstream out;
    CHECK(run_suites({failing}, out) == kFailure);
    CHECK(out.str().find("\"status\":\"failed\"") != std::string::npos);

    Suite soft = failing;
    soft.inconclusive_allowed = true;
    std::ostringstream soft_out;
    CHECK(run_suites({soft}, soft_out) == kSuccess);
    CHECK(soft_out.str().find("\"status\":\"inconclusive\"") != std::string::npos);
}

TEST_CASE("eval") {
    auto value_of = [](const std::string& text) {
        for (const auto& line : lines(text)) {
            if (line.rfind("value: ", 0) == 0) return std::stod(line.substr(7));
        }
        FAIL("no value line");
        return 0.0;
    };
    const auto gen = run_cli({"eval", "--function", "genfun", "--x", "1"});
    CHECK(gen.code == kSuccess);
    CHECK(value_of(gen.out) == doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-12));
    CHECK(gen.out.find("converged: true") != std::string::npos);

    const auto der = run_cli({"eval", "--function", "derivative", "--x", "0", "--k", "1"});
    CHECK(der.code == kSuccess);
    CHECK(value_of(der.out) == doctest::Approx(0.5).epsilon(1e-12));

    const auto rl = run_cli({"eval", "--function", "recip-log", "--x", "2"});
    CHECK(value_of(rl.out) == doctest::Approx(1.0 / std::log(3.0)).epsilon(1e-12));

    const auto bi = run_cli({"eval", "--function", "bernstein-identity", "--x", "3"});
    CHECK(value_of(bi.out) == doctest::Approx(3.0 / std::log(4.0)).epsilon(1e-12));

    CHECK(run_cli({"eval", "--function", "recip-log", "--x", "-1"}).code == kUsage);
    CHECK(run_cli({"eval", "--function", "derivative", "--x", "1", "--k", "0"}).code == kUsage);
    CHECK(run_cli({"eval", "--function", "unknown", "--x", "1"}).code == kUsage);
}

TEST_CASE("argument errors") {
    CHECK(run_cli({}).code == kUsage);
    CHECK(run_cli({"compute", "--n-max", "-3"}).code == kUsage);
    CHECK(run_cli({"compute", "--method", "magic"}).code == kUsage);
    CHECK(run_cli({"compute", "--format", "xml"}).code == kUsage);
    CHECK(run_cli({"compute", "--tol", "0"}).code == kUsage);
    CHECK(run_cli({"eval", "--function", "genfun"}).code == kUsage);
    CHECK(run_cli({"--help"}).code == kSuccess);
}
