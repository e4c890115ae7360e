#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "staticlab/catalog.hpp"
#include "staticlab/curvature.hpp"
#include "staticlab/model_io.hpp"

using namespace staticlab;

TEST_SUITE("config") {

TEST_CASE("registry references resolve") {
    StaticModel m = load_model_json(R"({"schema": "staticlab-model/1", "ref": "s1xs2"})");
    CHECK(m.name == "s1xs2");
    CHECK(m.dim() == 3);
}

TEST_CASE("declarative warped construction") {
    const char* cfg = R"({
        "schema": "staticlab-model/1",
        "name": "cfg-s1xs2",
        "kind": "vacuum-static",
        "R": 2.0,
        "base": {"lo": 0.0, "hi": 6.283185307179586, "periodic": true},
        "blocks": [{"warp": {"kind": "constant", "value": 1.0},
                    "fiber": {"kind": "sphere", "dim": 2, "radius": 1.0}}],
        "f": {"kind": "sin"}
    })";
    StaticModel m = load_model_json(cfg);
    auto pts = sample_points(m.metric.chart(), 6, 51u, 0.05);
    for (const auto& x : pts)
        CHECK(vacuum_static_residual(m.metric, m.f, x).max_abs() < 1e-10);
}

TEST_CASE("ode-manufactured constructions from config") {
    const char* cfg = R"({
        "schema": "staticlab-model/1",
        "name": "cfg-manufactured",
        "base": {"lo": 0.0, "hi": 4.6},
        "blocks": [{"warp": {"kind": "sinusoid", "c0": 2.0, "amp": 0.3},
                    "fiber": {"kind": "sphere", "dim": 2, "radius": 1.0}},
                   {"warp": {"kind": "constant", "value": 1.0},
                    "fiber": {"kind": "sphere", "dim": 2, "radius": 1.0}}],
        "f": {"kind": "ode", "f0": 0.35, "df0": 0.5, "b0": 2.0, "db0": 0.0}
    })";
    StaticModel m = load_model_json(cfg);
    CHECK(m.dim() == 5);
    Point x = {1.9, 1.2, 0.7, 0.9, 1.4};
    CHECK(unified_residual(m, x).max_abs() < 1e-6);
}

TEST_CASE("save and reload round-trips to 1e-10") {
    namespace fs = std::filesystem;
    for (auto name : {"s1xs2", "warped5"}) {
        StaticModel m = build_model(name);
        fs::path path = fs::temp_directory_path() / (std::string("staticlab-roundtrip-") +
                                                     name + ".json");
        save_model_file(m, path.string());
        StaticModel r = load_model_file(path.string());
        auto pts = sample_points(m.metric.chart(), 10, 61u, m.metric.sample_margin_frac());
        double fdev = 0.0, gdev = 0.0;
        for (const auto& x : pts) {
            fdev = std::max(fdev, std::fabs(m.f(x) - r.f(x)));
            Matrix a = m.metric.value(x), b = r.metric.value(x);
            for (int i = 0; i < m.dim(); ++i)
                for (int j = 0; j < m.dim(); ++j)
                    gdev = std::max(gdev, std::fabs(a(i, j) - b(i, j)));
        }
        CAPTURE(name);
        CHECK(fdev < 1e-10);
        CHECK(gdev < 1e-10);
        fs::remove(path);
    }
}

TEST_CASE("malformed configs are rejected") {
    CHECK_THROWS_AS(load_model_json(R"({"schema": "other/9", "ref": "s3"})"), ConfigError);
    CHECK_THROWS_AS(load_model_json(R"({"schema": "staticlab-model/1", "ref": "nope"})"),
                    ConfigError);
    CHECK_THROWS(load_model_json("{not json"));
    CHECK_THROWS_AS(load_model_file("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("every registry model builds") {
    for (const auto& name : model_names()) {
        CAPTURE(name);
        CHECK_NOTHROW(build_model(name));
    }
}

} // TEST_SUITE
