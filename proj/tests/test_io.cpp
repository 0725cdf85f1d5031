#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

#include "wradon/io.hpp"
#include "wradon/radon.hpp"
#include "wradon/weights.hpp"

using namespace wradon;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("wradon_io_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("volume files round-trip bit for bit") {
    TempDir tmp;
    auto u = make_uniform_grid(12, 0.7);
    std::mt19937 rng(3);
    std::normal_distribution<double> nd;
    for (auto& v : u.values) v = cplx(nd(rng), nd(rng));

    write_volume(tmp.file("u.vol"), u);
    auto back = read_volume(tmp.file("u.vol"));
    CHECK(back.geom == u.geom);
    REQUIRE(back.values.size() == u.values.size());
    for (std::size_t i = 0; i < u.values.size(); ++i) CHECK(back.values[i] == u.values[i]);

    std::ifstream side(tmp.file("u.vol") + ".json");
    nlohmann::json j;
    side >> j;
    CHECK(j.at("dims").size() == 3);
    CHECK(j.at("spacing").get<double>() == u.geom.spacing);
    CHECK(j.at("complex").get<bool>());

    CHECK_THROWS_AS(read_volume(tmp.file("missing.vol")), std::runtime_error);
}

TEST_CASE("mask files round-trip") {
    TempDir tmp;
    auto g = make_uniform_grid(10, 1.0);
    auto mask = make_ball_mask(g.geom, 0.6);
    write_mask(tmp.file("d.mask"), mask);
    auto back = read_mask(tmp.file("d.mask"));
    CHECK(back.geom == mask.geom);
    for (std::size_t i = 0; i < mask.in.size(); ++i) CHECK(back.in[i] == mask.in[i]);
}

TEST_CASE("sinogram files round-trip bit for bit") {
    TempDir tmp;
    auto f = make_uniform_grid(12, 1.0);
    auto m = make_ball_mask(f.geom);
    f = make_phantom(PhantomKind::SmoothBumps, f.geom, {{Vec3{0.1, 0.0, 0.0}, 0.4, 1.0}}, m);
    auto q = forward_radon(f, make_sphere_grid(4, 8), 24);

    write_sinogram(tmp.file("q.sino"), q);
    auto back = read_sinogram(tmp.file("q.sino"));
    CHECK(back.n_s == q.n_s);
    CHECK(back.s_max == q.s_max);
    CHECK(back.sphere.n_gamma == q.sphere.n_gamma);
    CHECK(back.sphere.n_phi == q.sphere.n_phi);
    for (std::size_t i = 0; i < q.values.size(); ++i) CHECK(back.values[i] == q.values[i]);
}

TEST_CASE("coefficient bundles round-trip, absent entries read back as zero") {
    TempDir tmp;
    auto g = make_uniform_grid(8, 1.0);
    HarmonicCoefficients c(g.geom, 3);
    std::mt19937 rng(11);
    std::normal_distribution<double> nd;
    for (auto& v : c.entry(0, 0).values) v = cplx(nd(rng), 0.0);
    for (auto& v : c.entry(2, 1).values) v = cplx(nd(rng), nd(rng));
    for (auto& v : c.entry(3, -3).values) v = cplx(nd(rng), nd(rng));

    write_coefficients(tmp.file("w.json"), c);
    auto back = read_coefficients(tmp.file("w.json"));
    CHECK(back.k_max() == 3);
    for (int k = 0; k <= 3; ++k)
        for (int n = -k; n <= k; ++n)
            for (std::size_t i = 0; i < c.entry(k, n).values.size(); ++i)
                CHECK(back.entry(k, n).values[i] == c.entry(k, n).values[i]);
}

TEST_CASE("solver reports serialize to json and csv") {
    TempDir tmp;
    SolveReport rep;
    rep.sigma_paper = 0.05;
    rep.sigma_measured = 0.5;
    rep.c_lower = 1.0;
    rep.m = 1;
    rep.iterations = 3;
    rep.converged = true;
    rep.tol = 1e-8;
    rep.fixed_point_residual = 2e-9;
    rep.residual_history = {0.5, 0.25, 0.125};
    rep.error_bound = 0.031;
    rep.ratio_tail_l2 = 0.4;
    rep.note = "ok";

    write_report_json(tmp.file("rep.json"), rep);
    write_residuals_csv(tmp.file("res.csv"), rep);

    std::ifstream in(tmp.file("rep.json"));
    nlohmann::json j;
    in >> j;
    CHECK(j.at("sigma_measured").get<double>() == 0.5);
    CHECK(j.at("iterations").get<int>() == 3);
    CHECK(j.at("error_bound").get<double>() == 0.031);
    CHECK(j.at("residual_history").size() == 3);

    std::ifstream csv(tmp.file("res.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "iteration,relative_update");
    int rows = 0;
    while (std::getline(csv, line) && !line.empty()) ++rows;
    CHECK(rows == 3);
}

TEST_CASE("pgm slices carry the documented scaling") {
    TempDir tmp;
    auto u = make_uniform_grid(8, 1.0);
    for (int k = 0; k < 8; ++k)
        for (int j = 0; j < 8; ++j)
            for (int i = 0; i < 8; ++i) u.at(i, j, k) = i + 10.0 * j;

    write_pgm_slice(tmp.file("slice.pgm"), u, 4);

    std::ifstream in(tmp.file("slice.pgm"), std::ios::binary);
    std::string magic;
    int w, h, maxval;
    in >> magic >> w >> h >> maxval;
    CHECK(magic == "P5");
    CHECK(w == 8);
    CHECK(h == 8);
    CHECK(maxval == 65535);
    in.get();  // single whitespace before the raster
    std::vector<unsigned char> raster(8 * 8 * 2);
    in.read(reinterpret_cast<char*>(raster.data()), static_cast<std::streamsize>(raster.size()));
    CHECK(in.gcount() == static_cast<std::streamsize>(raster.size()));
    // most significant byte first: min maps to 0, max to 65535
    const unsigned first = (static_cast<unsigned>(raster[0]) << 8) | raster[1];
    const unsigned last = (static_cast<unsigned>(raster[126]) << 8) | raster[127];
    CHECK(first == 0);
    CHECK(last == 65535);

    std::ifstream side(tmp.file("slice.pgm") + ".json");
    nlohmann::json j;
    side >> j;
    CHECK(j.at("min").get<double>() == 0.0);
    CHECK(j.at("max").get<double>() == 77.0);

    CHECK_THROWS_AS(write_pgm_slice(tmp.file("bad.pgm"), u, 99), std::invalid_argument);
}
