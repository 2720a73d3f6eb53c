#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "lifeinfo/cli.hpp"

using namespace lifeinfo;
using namespace lifeinfo::cli;
using Catch::Matchers::WithinAbs;
using nlohmann::json;

namespace {

json base_config() {
    return json{
        {"model", {{"family", "triangle"}, {"params", {{"alpha", 1.0}, {"beta", 1.0}}}}},
        {"measure", "residual-mi"},
        {"grid",
         {{"s", {{"min", 0.05}, {"max", 0.25}, {"steps", 3}}},
          {"t", {{"min", 0.05}, {"max", 0.25}, {"steps", 3}}}}},
    };
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

} // namespace

TEST_CASE("config parsing") {
    SECTION("valid config") {
        RunConfig c = parse_config(base_config());
        CHECK(c.measure == "residual-mi");
        CHECK(c.axis_a.steps == 3);
        CHECK(c.format == "csv");
    }
    SECTION("missing pieces are rejected") {
        json j = base_config();
        j.erase("measure");
        CHECK_THROWS_AS(parse_config(j), ConfigError);
        j = base_config();
        j.erase("model");
        CHECK_THROWS_AS(parse_config(j), ConfigError);
        j = base_config();
        j.erase("grid");
        CHECK_THROWS_AS(parse_config(j), ConfigError);
    }
    SECTION("unknown measure / format / model family") {
        json j = base_config();
        j["measure"] = "entropy-of-everything";
        CHECK_THROWS_AS(parse_config(j), ConfigError);
        j = base_config();
        j["format"] = "xml";
        CHECK_THROWS_AS(parse_config(j), ConfigError);
        CHECK_THROWS_AS(build_model(json{{"family", "cauchy"}}), ConfigError);
    }
    SECTION("quantile measures need a (p,q) grid") {
        json j = base_config();
        j["measure"] = "copula-past-mi";
        CHECK_THROWS_AS(parse_config(j), ConfigError);
        j["grid"] = {{"p", {{"min", 0.2}, {"max", 0.8}, {"steps", 3}}},
                     {"q", {{"min", 0.2}, {"max", 0.8}, {"steps", 3}}}};
        j["model"] = {{"family", "copula"}, {"params", {{"copula", "clayton-special"}}}};
        RunConfig c = parse_config(j);
        CHECK(c.axis_a.min == 0.2);
    }
    SECTION("quadrature overrides validate") {
        json j = base_config();
        j["quadrature"] = {{"rel_tol", 1e-6}, {"transform", "log"}};
        RunConfig c = parse_config(j);
        CHECK(c.quadrature.rel_tol == 1e-6);
        CHECK(c.quadrature.transform == Transform::log_map);
        j["quadrature"]["transform"] = "sinh";
        CHECK_THROWS_AS(parse_config(j), ConfigError);
    }
}

TEST_CASE("sweeps") {
    SECTION("triangle residual-mi sweep is the paper constant everywhere") {
        RunConfig c = parse_config(base_config());
        ModelHandle h = build_model(c.model);
        std::vector<GridRow> rows = run_sweep(h, c);
        REQUIRE(rows.size() == 9);
        for (const GridRow& r : rows) {
            CHECK(r.converged);
            CHECK_THAT(r.value, WithinAbs(0.30685281944005469, 1e-4));
        }
    }
    SECTION("inadmissible grid points become nan sentinels and exit code 2") {
        json j = base_config();
        j["grid"]["s"] = {{"min", 0.2}, {"max", 0.8}, {"steps", 2}}; // 0.8+0.25 beyond wedge
        j["grid"]["t"] = {{"min", 0.25}, {"max", 0.25}, {"steps", 1}};
        j["output"] = "cli_nan_test.csv";
        RunConfig c = parse_config(j);
        CHECK(cli::run(c) == 2);
        std::ifstream in("cli_nan_test.csv");
        std::stringstream buf;
        buf << in.rdbuf();
        auto rows = parse_csv(buf.str());
        REQUIRE(rows.size() == 3);
        CHECK(rows[2][2] == "nan");
        CHECK(rows[2][4] == "false");
        std::remove("cli_nan_test.csv");
    }
    SECTION("os-mi sweep filters p < q") {
        json j = {{"model", {{"family", "os"}, {"params", {{"n", 3}}}}},
                  {"measure", "os-mi"},
                  {"grid",
                   {{"p", {{"min", 0.25}, {"max", 0.75}, {"steps", 2}}},
                    {"q", {{"min", 0.25}, {"max", 0.75}, {"steps", 2}}}}}};
        RunConfig c = parse_config(j);
        ModelHandle h = build_model(c.model);
        std::vector<GridRow> rows = run_sweep(h, c);
        REQUIRE(rows.size() == 4);
        int valid = 0;
        for (const GridRow& r : rows)
            if (r.converged) {
                ++valid;
                CHECK(r.a < r.b);
                CHECK(r.value >= -1e-12);
            } else {
                CHECK(std::isnan(r.value));
            }
        CHECK(valid == 1); // only (0.25, 0.75)
    }
    SECTION("measure/model mismatch is a config error") {
        json j = base_config();
        j["model"] = {{"family", "os"}, {"params", {{"n", 3}}}};
        RunConfig c = parse_config(j);
        ModelHandle h = build_model(c.model);
        CHECK_THROWS_AS(run_sweep(h, c), ConfigError);
    }
    SECTION("decomposition-check and bounds and mc-validate run end to end") {
        json j = base_config();
        j["model"] = {{"family", "linear"}};
        j["grid"] = {{"s", {{"min", 0.5}, {"max", 0.5}, {"steps", 1}}},
                     {"t", {{"min", 0.5}, {"max", 0.5}, {"steps", 1}}}};
        for (const std::string measure : {"decomposition-check", "bounds", "mc-validate"}) {
            j["measure"] = measure;
            j["mc_samples"] = 5000;
            RunConfig c = parse_config(j);
            ModelHandle h = build_model(c.model);
            std::vector<GridRow> rows = run_sweep(h, c);
            REQUIRE(rows.size() == 1);
            INFO(measure);
            CHECK(rows[0].converged);
        }
    }
}

TEST_CASE("output rendering") {
    RunConfig c = parse_config(base_config());
    ModelHandle h = build_model(c.model);
    std::vector<GridRow> rows = run_sweep(h, c);
    SECTION("CSV header and full-precision round trip") {
        const std::string text = render_csv(rows, false);
        auto parsed = parse_csv(text);
        REQUIRE(parsed.size() == rows.size() + 1);
        CHECK(parsed[0] == std::vector<std::string>{"s", "t", "value", "error", "converged"});
        for (size_t i = 0; i < rows.size(); ++i) {
            CHECK(std::strtod(parsed[i + 1][0].c_str(), nullptr) == rows[i].a);
            CHECK(std::strtod(parsed[i + 1][2].c_str(), nullptr) == rows[i].value);
            CHECK(std::strtod(parsed[i + 1][3].c_str(), nullptr) == rows[i].error);
        }
    }
    SECTION("JSON mirrors the records, nan as string sentinel") {
        std::vector<GridRow> mixed = rows;
        GridRow bad;
        bad.a = 0.9;
        bad.b = 0.9;
        mixed.push_back(bad);
        json arr = json::parse(render_json(mixed, false));
        REQUIRE(arr.size() == mixed.size());
        CHECK(arr[0]["s"].get<double>() == rows[0].a);
        CHECK(arr[0]["value"].get<double>() == rows[0].value);
        CHECK(arr.back()["value"].get<std::string>() == "nan");
        CHECK(arr.back()["converged"].get<bool>() == false);
    }
    SECTION("deterministic output for a fixed config") {
        std::vector<GridRow> again = run_sweep(h, c);
        CHECK(render_csv(rows, false) == render_csv(again, false));
    }
}

TEST_CASE("catalog text") {
    const std::string models = list_models_text();
    for (const char* name :
         {"linear", "triangle", "gumbel", "lomax-tte", "truncated-tte", "freund", "copula", "os"})
        CHECK(models.find(name) != std::string::npos);
    const std::string measures = list_measures_text();
    for (const std::string& name : measure_names())
        CHECK(measures.find(name) != std::string::npos);
}
