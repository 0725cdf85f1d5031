#include "wradon/io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace wradon {

using nlohmann::json;

namespace {

void write_doubles(std::ofstream& out, const double* data, std::size_t count) {
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(count * sizeof(double)));
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    return in;
}

json read_json(const std::string& path) {
    auto in = open_in(path);
    json j;
    in >> j;
    return j;
}

void write_json(const std::string& path, const json& j) {
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

json geometry_to_json(const GridGeometry& g, bool complex_flag) {
    return json{{"dims", {g.dims[0], g.dims[1], g.dims[2]}},
                {"spacing", g.spacing},
                {"origin", {g.origin.x, g.origin.y, g.origin.z}},
                {"complex", complex_flag}};
}

GridGeometry geometry_from_json(const json& j) {
    GridGeometry g;
    g.dims = {j.at("dims").at(0).get<int>(), j.at("dims").at(1).get<int>(),
              j.at("dims").at(2).get<int>()};
    g.spacing = j.at("spacing").get<double>();
    g.origin = {j.at("origin").at(0).get<double>(), j.at("origin").at(1).get<double>(),
                j.at("origin").at(2).get<double>()};
    return g;
}

void write_pairs(const std::string& path, const std::vector<cplx>& values) {
    auto out = open_out(path);
    // raw little-endian IEEE-754 float64 (re, im) pairs; std::complex<double>
    // is layout-compatible with double[2]
    write_doubles(out, reinterpret_cast<const double*>(values.data()), values.size() * 2);
    if (!out) throw IoError("short write: " + path);
}

void read_pairs(const std::string& path, std::vector<cplx>& values) {
    auto in = open_in(path);
    in.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(cplx)));
    if (in.gcount() != static_cast<std::streamsize>(values.size() * sizeof(cplx)))
        throw IoError("short read: " + path);
}

} // namespace

void write_volume(const std::string& path, const ScalarField3D& u, bool mark_complex) {
    write_pairs(path, u.values);
    write_json(path + ".json", geometry_to_json(u.geom, mark_complex));
}

ScalarField3D read_volume(const std::string& path) {
    const json j = read_json(path + ".json");
    ScalarField3D u(geometry_from_json(j));
    read_pairs(path, u.values);
    return u;
}

void write_mask(const std::string& path, const DomainMask& mask) {
    ScalarField3D tmp(mask.geom);
    for (std::size_t i = 0; i < tmp.values.size(); ++i)
        tmp.values[i] = mask.in[i] ? 1.0 : 0.0;
    write_volume(path, tmp, false);
}

DomainMask read_mask(const std::string& path) {
    const ScalarField3D tmp = read_volume(path);
    DomainMask mask(tmp.geom);
    for (std::size_t i = 0; i < tmp.values.size(); ++i)
        mask.in[i] = tmp.values[i].real() != 0.0 ? 1 : 0;
    return mask;
}

void write_sinogram(const std::string& path, const Sinogram& q, bool mark_complex) {
    write_pairs(path, q.values);
    write_json(path + ".json", json{{"n_gamma", q.sphere.n_gamma},
                                    {"n_phi", q.sphere.n_phi},
                                    {"n_s", q.n_s},
                                    {"s_max", q.s_max},
                                    {"complex", mark_complex}});
}

Sinogram read_sinogram(const std::string& path) {
    const json j = read_json(path + ".json");
    Sinogram q;
    q.sphere = make_sphere_grid(j.at("n_gamma").get<int>(), j.at("n_phi").get<int>());
    q.n_s = j.at("n_s").get<int>();
    q.s_max = j.at("s_max").get<double>();
    q.values.assign(static_cast<std::size_t>(q.sphere.n_directions()) * q.n_s, cplx(0.0, 0.0));
    read_pairs(path, q.values);
    return q;
}

void write_coefficients(const std::string& manifest_path, const HarmonicCoefficients& coeffs) {
    namespace fs = std::filesystem;
    const fs::path mpath(manifest_path);
    const fs::path dir = mpath.parent_path();
    const std::string stem = mpath.stem().string();

    json entries = json::array();
    for (int k = 0; k <= coeffs.k_max(); ++k)
        for (int n = -k; n <= k; ++n) {
            const auto& f = coeffs.entry(k, n);
            const bool any = std::any_of(f.values.begin(), f.values.end(),
                                         [](const cplx& v) { return v != cplx(0.0, 0.0); });
            if (!any && !(k == 0 && n == 0)) continue;  // zero entries implied by absence
            const std::string fname =
                stem + "_k" + std::to_string(k) + "_n" + std::to_string(n) + ".vol";
            write_volume((dir / fname).string(), f);
            entries.push_back({{"k", k}, {"n", n}, {"file", fname}});
        }
    write_json(manifest_path, json{{"k_max", coeffs.k_max()}, {"entries", entries}});
}

HarmonicCoefficients read_coefficients(const std::string& manifest_path) {
    namespace fs = std::filesystem;
    const json j = read_json(manifest_path);
    const fs::path dir = fs::path(manifest_path).parent_path();
    const int k_max = j.at("k_max").get<int>();
    GridGeometry geom;
    bool have_geom = false;
    HarmonicCoefficients coeffs;
    for (const auto& e : j.at("entries")) {
        const int k = e.at("k").get<int>();
        const int n = e.at("n").get<int>();
        ScalarField3D f = read_volume((dir / e.at("file").get<std::string>()).string());
        if (!have_geom) {
            geom = f.geom;
            coeffs = HarmonicCoefficients(geom, k_max);
            have_geom = true;
        }
        require_compatible(geom, f.geom, "read_coefficients");
        coeffs.entry(k, n) = std::move(f);
    }
    if (!have_geom) throw IoError("read_coefficients: empty manifest");
    return coeffs;
}

void write_report_json(const std::string& path, const SolveReport& report) {
    json j{{"sigma_paper", report.sigma_paper},
           {"sigma_measured", report.sigma_measured},
           {"c_lower", report.c_lower},
           {"m", report.m},
           {"iterations", report.iterations},
           {"converged", report.converged},
           {"tol", report.tol},
           {"fixed_point_residual", report.fixed_point_residual},
           {"residual_history", report.residual_history},
           {"ratio_tail_l2", report.ratio_tail_l2},
           {"note", report.note}};
    if (report.error_bound)
        j["error_bound"] = *report.error_bound;
    else
        j["error_bound"] = nullptr;
    write_json(path, j);
}

void write_residuals_csv(const std::string& path, const SolveReport& report) {
    auto out = open_out(path);
    out << "iteration,relative_update\n";
    for (std::size_t i = 0; i < report.residual_history.size(); ++i)
        out << (i + 1) << "," << report.residual_history[i] << "\n";
}

void write_pgm_slice(const std::string& path, const ScalarField3D& u, int k_slice) {
    const auto& g = u.geom;
    if (k_slice < 0 || k_slice >= g.dims[2])
        throw std::invalid_argument("write_pgm_slice: slice out of range");
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int j = 0; j < g.dims[1]; ++j)
        for (int i = 0; i < g.dims[0]; ++i) {
            const double v = u.at(i, j, k_slice).real();
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    const double scale = hi > lo ? 65535.0 / (hi - lo) : 0.0;

    auto out = open_out(path);
    out << "P5\n" << g.dims[0] << " " << g.dims[1] << "\n65535\n";
    for (int j = 0; j < g.dims[1]; ++j)
        for (int i = 0; i < g.dims[0]; ++i) {
            const double v = u.at(i, j, k_slice).real();
            const auto q = static_cast<unsigned>(std::lround((v - lo) * scale));
            // 16-bit samples, most significant byte first per the PGM spec
            out.put(static_cast<char>((q >> 8) & 0xff));
            out.put(static_cast<char>(q & 0xff));
        }
    write_json(path + ".json",
               json{{"slice", k_slice}, {"min", lo}, {"max", hi}, {"scale", scale}});
}

} // namespace wradon
