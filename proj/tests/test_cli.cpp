#include "doctest.h"

#include "rext/cli.hpp"
#include "rext/spectralmodel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rext;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("number formatting round-trips doubles") {
    CHECK(cli::format_number(2.5) == "2.5");
    CHECK(cli::format_number(0.1) == "0.10000000000000001");
    CHECK(cli::format_number(1.0 / 0.0) == "null");
    for (double v : {1.0 / 3, -2.718281828459045e-300, 6.02214076e23}) CHECK(std::stod(cli::format_number(v)) == v);
}

TEST_CASE("option text parsing") {
    const auto g = cli::parse_grid("0.5:4:8");
    CHECK(g.lo == 0.5);
    CHECK(g.hi == 4.0);
    CHECK(g.n == 8);
    CHECK_THROWS_AS(cli::parse_grid("0.5:4"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_grid("4:0.5:8"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_grid("0.5:4:8x"), cli::UsageError);
    CHECK(cli::parse_time("0.6,-0.25") == Complex(0.6, -0.25));
    CHECK_THROWS_AS(cli::parse_time("0.6,0.25"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_time("0.6"), cli::UsageError);
}

TEST_CASE("validate") {
    auto r = run({"validate", "--sigma", "1,6,7"});
    CHECK(r.code == 0);
    auto doc = json::parse(r.out);
    CHECK(doc["pass"] == true);
    CHECK(doc["l_number"] == 1);
    CHECK(doc["wells"] == 2);
    CHECK(doc["spectrum_head"][0] == 3.5);

    r = run({"validate", "--sigma", "2"});
    CHECK(r.code == 1);
    doc = json::parse(r.out);
    CHECK(doc["structure"]["valid"] == false);
    CHECK(doc["structure"]["reason"].get<std::string>().find("partner") != std::string::npos);

    r = run({"validate", "--sigma", "1,3"});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["l_number"] == 2);

    r = run({"validate", "--sigma", "1,4"});
    CHECK(r.code == 1);
    CHECK(json::parse(r.out)["certificate"]["positive_roots"] == 1);

    CHECK(run({"validate", "--sigma", "1,x"}).code == 2);
    CHECK(run({"validate", "--sigma", "3,1"}).code == 2);
    CHECK(run({"validate"}).code == 2);
    CHECK(run({"frobnicate", "--sigma", "1"}).code == 2);
    CHECK(run({}).code == 2);
}

TEST_CASE("potential grid") {
    auto r = run({"potential", "--sigma", "1", "--grid", "2:2:1", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out == "x,V\n2,2.5\n");
    r = run({"potential", "--sigma", "1"});
    const auto doc = json::parse(r.out);
    CHECK(doc["denominator"] == json({"0/1", "0/1", "1/1"}));
    CHECK(doc["singular_coeff"] == 2);
    CHECK(doc["rows"].size() == 40);
    CHECK(run({"potential", "--sigma", "1", "--grid", "0:1:5"}).code == 2);
    CHECK(run({"potential", "--sigma", "2"}).code == 1);
}

TEST_CASE("spectrum and eigenfunction") {
    auto doc = json::parse(run({"spectrum", "--sigma", "1,8,9", "--terms", "5"}).out);
    CHECK(doc["rows"][3] == json({3, 11, 11.5}));
    CHECK(doc["gaps"] == json({2.0, 2.0, 4.0, 2.0}));
    auto r = run({"eigenfunction", "--sigma", "1", "--n", "3", "--grid", "1:1:1"});
    CHECK(r.code == 0);
    doc = json::parse(r.out);
    CHECK(doc["energy"] == 3.5);
    const double psi = doc["rows"][0][1];
    CHECK(psi == doctest::Approx(eigenfunction(build_potential(GapSequence::parse("1")), 3)(1.0)).epsilon(1e-16));
    r = run({"eigenfunction", "--sigma", "1,6,7", "--n", "2"});
    CHECK(r.code == 1);
    CHECK(r.err.find("spectralmodel") != std::string::npos);
}

TEST_CASE("propagator grid") {
    auto r = run({"propagator", "--sigma", "1,6,7", "--grid", "0.5:2:4", "--time", "0.6,-0.25"});
    CHECK(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["columns"] == json({"x", "y", "re", "im", "abs2"}));
    REQUIRE(doc["rows"].size() == 16);
    const PropagatorModel k(GapSequence::parse("1,6,7"));
    for (const auto& row : doc["rows"]) {
        const Complex v = k(row[0].get<double>(), row[1].get<double>(), ComplexTime(0.6, -0.25));
        CHECK(row[2].get<double>() == v.real());
        CHECK(row[3].get<double>() == v.imag());
        CHECK(row[4].get<double>() == std::norm(v));
    }
    CHECK(run({"propagator", "--sigma", "1", "--time", "0,0"}).code == 1);
    CHECK(run({"propagator", "--sigma", "1", "--time", "0.5,0.1"}).code == 2);
    CHECK(run({"propagator", "--sigma", "1", "--time", "3.5,-0.1"}).code == 1);
}

TEST_CASE("field output") {
    auto r = run({"field", "--sigma", "1,6,7", "--grid", "0:50:3", "--ereg", "0,1,10"});
    CHECK(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["origin"][0]["bz_exact"] == "10/9");
    CHECK(doc["origin"][1]["bz_exact"] == "16/9");
    CHECK(doc["origin"][2]["bz_exact"] == "70/9");
    CHECK(doc["singularity"]["matches"] == true);
    CHECK(doc["rows"][0][3].get<double>() == doctest::Approx(10.0 / 9).epsilon(1e-15));
    CHECK(run({"field", "--sigma", "1", "--ereg", "-3"}).code == 1);
    CHECK(run({"field", "--sigma", "1", "--ereg", "abc"}).code == 2);
    const auto off = json::parse(run({"field", "--sigma", "1,3", "--mu", "0.3", "--l", "1"}).out);
    CHECK(off["singularity"]["residual"] == "-114/25");
}

TEST_CASE("csv and json encode identical values") {
    const std::vector<std::vector<std::string>> commands = {
        {"potential", "--sigma", "1,6,7", "--grid", "0.1:5:23"},
        {"propagator", "--sigma", "1,6,7", "--grid", "0.3:3:6", "--time", "0.9,-0.1"},
        {"field", "--sigma", "1,6,7", "--grid", "0:10:7", "--ereg", "0,2.5"},
        {"eigenfunction", "--sigma", "1,8,9", "--n", "7", "--grid", "0.2:6:9"},
    };
    for (auto args : commands) {
        const auto j = json::parse(run(args).out);
        args.insert(args.end(), {"--format", "csv"});
        const auto rows = csv_rows(run(args).out);
        REQUIRE(rows.size() == j["rows"].size() + 1);
        for (std::size_t k = 0; k < j["columns"].size(); ++k) CHECK(rows[0][k] == j["columns"][k]);
        for (std::size_t i = 0; i < j["rows"].size(); ++i)
            for (std::size_t k = 0; k < j["rows"][i].size(); ++k)
                CHECK(std::stod(rows[i + 1][k]) == j["rows"][i][k].get<double>());
    }
}

TEST_CASE("identical configurations give identical bytes") {
    const std::vector<std::string> args{"propagator", "--sigma", "1,6,7", "--grid", "0.2:3:7", "--time", "1.1,-0.05"};
    CHECK(run(args).out == run(args).out);
    const auto path = std::filesystem::temp_directory_path() / "rext_cli_out.json";
    auto with_out = args;
    with_out.insert(with_out.end(), {"--out", path.string()});
    const auto r = run(with_out);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path, std::ios::binary);
    const std::string written((std::istreambuf_iterator<char>(in)), {});
    CHECK(written == run(args).out);
    std::filesystem::remove(path);
}

TEST_CASE("verify") {
    auto r = run({"verify", "--sigma", "1", "--suite", "fast"});
    CHECK(r.code == 0);
    auto doc = json::parse(r.out);
    CHECK(doc["pass"] == true);
    for (const auto& c : doc["checks"]) {
        CHECK(c.contains("name"));
        CHECK(c.contains("value"));
        CHECK(c.contains("tolerance"));
        CHECK(c["pass"] == true);
    }

    r = run({"verify", "--sigma", "1,6,7", "--suite", "full"});
    CHECK(r.code == 0);
    doc = json::parse(r.out);
    std::vector<std::string> names;
    for (const auto& c : doc["checks"]) names.push_back(c["name"]);
    for (const char* expect : {"spectral_agreement", "evolution_n3", "schrodinger_order_ratio", "wells", "field_roundtrip"})
        CHECK(std::find(names.begin(), names.end(), expect) != names.end());

    CHECK(run({"verify", "--sigma", "1,4"}).code == 1);
    CHECK(run({"verify", "--sigma", "1", "--tol", "gram=1e-30"}).code == 1);
    CHECK(run({"verify", "--sigma", "1", "--tol", "bogus=1"}).code == 2);
    CHECK(run({"verify", "--sigma", "1", "--suite", "medium"}).code == 2);
}
