#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rydpol/common.hpp"
#include "rydpol/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

using namespace rydpol;

namespace {
std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}
} // namespace

TEST_CASE("config parsing") {
    const Config cfg = Config::parse_string("# comment\n"
                                            "[dimensionless]\n"
                                            "alpha = 1.0   # trailing comment\n"
                                            "lambda = 0.1\n"
                                            "[grid]\n"
                                            "n = 255\n"
                                            "box_l = 40\n");
    CHECK(cfg.get_double("dimensionless", "alpha", -1) == 1.0);
    CHECK(cfg.get_int("grid", "n", 0) == 255);
    CHECK(cfg.get_double("grid", "missing", 7.5) == 7.5);
    CHECK(cfg.has_section("grid"));
    CHECK(!cfg.has_section("physical"));
    const DerivedParams d = cfg.resolve_params();
    CHECK(d.alpha == 1.0);
    CHECK(d.lambda == 0.1);
}

TEST_CASE("config rejects malformed input") {
    CHECK_THROWS_AS(Config::parse_string("[grid\nn = 3\n"), ValidationError);
    CHECK_THROWS_AS(Config::parse_string("just words\n"), ValidationError);
    CHECK_THROWS_AS(Config::parse_string("[grid]\nn =\n"), ValidationError);
    const Config bad = Config::parse_string("[grid]\nn = abc\n");
    CHECK_THROWS_AS(bad.get_int("grid", "n", 0), ValidationError);
}

TEST_CASE("physical and dimensionless blocks are mutually exclusive") {
    CHECK_THROWS_AS(
        Config::parse_string("[physical]\nomega = 1\n[dimensionless]\nalpha = 1\nlambda = 1\n")
            .resolve_params(),
        ValidationError);
    CHECK_THROWS_AS(Config::parse_string("[grid]\nn = 10\n").resolve_params(), ValidationError);
    const Config phys = Config::parse_string("[physical]\n"
                                             "omega = 1\ndelta = 12\ngamma = 0\n"
                                             "g = 3\nc6 = -40\nc = 250\n");
    const DerivedParams d = phys.resolve_params();
    CHECK(d.has_physical);
    CHECK(d.alpha == doctest::Approx(0.9));
}

TEST_CASE("g17 formatting round-trips exactly") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int t = 0; t < 2000; ++t) {
        const double x = uni(rng) * std::pow(10.0, (t % 61) - 30);
        const std::string s = format_g17(x);
        CHECK(std::stod(s) == x);
    }
}

TEST_CASE("csv output is byte-identical across runs") {
    const std::string p1 = "/tmp/rydpol_io_a.csv", p2 = "/tmp/rydpol_io_b.csv";
    for (const std::string& p : {p1, p2}) {
        CsvWriter w(p, {"x", "y"});
        for (int i = 0; i < 50; ++i)
            w.row({std::sqrt(2.0) * i, std::exp(-0.1 * i)});
    }
    const std::string a = slurp(p1), b = slurp(p2);
    CHECK(!a.empty());
    CHECK(a == b);
    CHECK(a.find("\r") == std::string::npos);
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}

TEST_CASE("csv row width is enforced") {
    CsvWriter w("/tmp/rydpol_io_c.csv", {"a", "b"});
    CHECK_THROWS_AS(w.row({1.0}), ValidationError);
    std::remove("/tmp/rydpol_io_c.csv");
}

TEST_CASE("svg and json writers produce files") {
    const Grid2D g = Grid2D::make(2.0, 17);
    Field f(17, 17);
    for (int i = 0; i < 17; ++i)
        for (int j = 0; j < 17; ++j) f(i, j) = g.x(i) * g.x(j);
    svg_heatmap("/tmp/rydpol_io.svg", f, g, "test field", true);
    const std::string svg = slurp("/tmp/rydpol_io.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    std::remove("/tmp/rydpol_io.svg");

    nlohmann::json j;
    j["alpha"] = 1.0;
    write_json_file("/tmp/rydpol_io.json", j);
    CHECK(slurp("/tmp/rydpol_io.json").find("alpha") != std::string::npos);
    std::remove("/tmp/rydpol_io.json");
}
