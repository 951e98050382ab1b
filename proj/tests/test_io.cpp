#include <doctest.h>

#include "fluxlab/errors.hpp"
#include "fluxlab/io.hpp"
#include "fluxlab/numerics.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace fluxlab;

TEST_CASE("curve json round trip preserves geometry") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Complex> v;
        int n = 3 + int(rng() % 12);
        for (int i = 0; i < n; ++i) v.emplace_back(u(rng), u(rng));
        bool closed = rng() % 2;
        Curve c;
        try {
            c = make_polyline(v, closed);
        } catch (const ValidationError&) {
            continue;  // random degenerate draw
        }
        Curve back = curve_from_json(curve_to_json(c));
        REQUIRE(back.vertices.size() == c.vertices.size());
        CHECK(back.closed == c.closed);
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(back.vertices[i] == c.vertices[i]);
    }
    CHECK_THROWS_AS(curve_from_json("{\"closed\":true}"), ValidationError);
    CHECK_THROWS_AS(curve_from_json("not json"), ValidationError);
}

TEST_CASE("curve csv import with and without header") {
    std::istringstream with_header("re,im\n0,0\n1,0\n1,1\n");
    Curve a = curve_from_csv(with_header, false);
    CHECK(a.vertices.size() == 3);

    std::istringstream bare("0,0\n2.5,0\n");
    Curve b = curve_from_csv(bare, false);
    CHECK(b.vertices[1] == Complex(2.5, 0.0));

    std::istringstream bad("0,0\nx,y\n1,1\n");
    CHECK_THROWS_AS(curve_from_csv(bad, false), ValidationError);
}

TEST_CASE("point config csv carries provenance header") {
    PointConfig cfg;
    cfg.model_label = "ginibre";
    cfg.window_radius = 2.0;
    cfg.seed = 42;
    cfg.points = {{0.5, -0.25}, {1.0, 1.0}};
    std::ostringstream out;
    write_point_config_csv(out, cfg);
    std::string s = out.str();
    CHECK(s.find("\"model\":\"ginibre\"") != std::string::npos);
    CHECK(s.find("\"seed\":42") != std::string::npos);
    CHECK(s.find("0.5,-0.25") != std::string::npos);
}

TEST_CASE("tabulated ingestion: csv plus sidecar") {
    std::istringstream csv("t,k\n0,-1\n0.5,-0.6\n1.0,-0.2\n2.0,0\n");
    TabulatedData d = load_tabulated_csv(csv, "{\"name\":\"demo\",\"intensity\":0.25}");
    CHECK(d.t.size() == 4);
    CHECK(d.intensity == 0.25);
    CHECK(d.name == "demo");

    std::istringstream csv2("0,-1\n1,0\n");
    CHECK_THROWS_AS(load_tabulated_csv(csv2, "{\"name\":\"x\"}"), ValidationError);
}

TEST_CASE("csv writer prefixes config header") {
    std::ostringstream out;
    CsvWriter w(out, "tool 1.0", "{\"seed\":5}");
    w.header_row({"a", "b"});
    w.row({1.0, 2.5});
    std::string s = out.str();
    CHECK(s.find("# tool 1.0\n") == 0);
    CHECK(s.find("# config: {\"seed\":5}") != std::string::npos);
    CHECK(s.find("a,b\n1,2.5\n") != std::string::npos);
}

TEST_CASE("svg emitter produces a well-formed plot") {
    std::ostringstream out;
    write_svg_plot(out, "demo", "x", "y", {1, 2, 3}, {2, 4, 6}, true, 2.0, 0.0);
    std::string s = out.str();
    CHECK(s.find("<svg") == 0);
    CHECK(s.find("</svg>") != std::string::npos);
    CHECK(s.find("circle") != std::string::npos);
    CHECK_THROWS_AS(write_svg_plot(out, "t", "x", "y", {}, {}, false, 0, 0), ValidationError);
}
