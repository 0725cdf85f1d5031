// wradon: forward/inverse weighted hyperplane transforms on cube grids.
// Subcommands: phantom, forward, sigma, invert, selftest.
// Exit codes: 0 ok, 1 usage/spec error, 2 numerical gate, 3 I/O error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>

#include "wradon/io.hpp"
#include "wradon/kernels.hpp"
#include "wradon/legendre.hpp"
#include "wradon/operators.hpp"
#include "wradon/parallel.hpp"
#include "wradon/radon.hpp"
#include "wradon/weights.hpp"

using namespace wradon;
using nlohmann::json;

namespace {

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);
    json j;
    in >> j;
    return j;
}

cplx value_from_json(const json& v) {
    if (v.is_number()) return cplx(v.get<double>(), 0.0);
    return cplx(v.at(0).get<double>(), v.at(1).get<double>());
}

struct WeightSetup {
    WeightFunction weight;
    HarmonicCoefficients coeffs;  // resolved coefficient fields
    std::string family;
};

/// Builds the weight named by a spec file on the given grid and resolves
/// its coefficient fields (directly for series families, by projection
/// otherwise).
WeightSetup load_weight(const std::string& spec_path, const GridGeometry& geom,
                        const DomainMask& mask, int k_max, const SphereGrid& analysis_sphere) {
    const json spec = load_json_file(spec_path);
    const std::string family = spec.at("family").get<std::string>();

    if (family == "constant") {
        const cplx c = value_from_json(spec.at("value"));
        auto w = constant_weight(c);
        HarmonicCoefficients coeffs(geom, 0);
        for (auto& v : coeffs.entry(0, 0).values) v = c;
        return {std::move(w), std::move(coeffs), family};
    }

    if (family == "finite-series") {
        HarmonicCoefficients coeffs;
        if (spec.contains("bundle")) {
            namespace fs = std::filesystem;
            const fs::path base = fs::path(spec_path).parent_path();
            coeffs = read_coefficients((base / spec.at("bundle").get<std::string>()).string());
            require_compatible(coeffs.geom(), geom, "weight bundle vs run grid");
        } else {
            const int km = spec.at("k_max").get<int>();
            coeffs = HarmonicCoefficients(geom, km);
            for (const auto& t : spec.at("terms")) {
                const cplx v = value_from_json(t.at("value"));
                auto& e = coeffs.entry(t.at("k").get<int>(), t.at("n").get<int>());
                for (auto& x : e.values) x = v;
            }
        }
        auto w = finite_series_weight(coeffs, mask);
        return {std::move(w), std::move(coeffs), family};
    }

    if (family == "perturbed") {
        const double c = spec.at("c").get<double>();
        struct Term {
            int k, n;
            double amplitude;
            std::string profile;
        };
        std::vector<Term> terms;
        for (const auto& t : spec.at("terms"))
            terms.push_back({t.at("k").get<int>(), t.at("n").get<int>(),
                             t.at("amplitude").get<double>(),
                             t.value("profile", std::string("const"))});
        const double L = geom.half_extent();
        auto v_eval = [terms, L](const Vec3& p, double gamma, double phi) {
            cplx acc = 0.0;
            for (const auto& t : terms) {
                double prof = 1.0;
                if (t.profile == "sin-x1") {
                    prof = std::sin(p.x);
                } else if (t.profile == "bump") {
                    const double u = p.norm() / (0.8 * L);
                    prof = u < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u * u)) : 0.0;
                }
                acc += t.amplitude * prof * ylm(t.k, t.n, gamma, phi);
            }
            return acc;
        };
        // bound check sampled on a decimated grid
        GridGeometry coarse = geom;
        coarse.dims = {16, 16, 16};
        coarse.spacing = 2.0 * L / 16;
        coarse.origin = {-L + coarse.spacing / 2, -L + coarse.spacing / 2, -L + coarse.spacing / 2};
        auto w = perturbed_weight(c, v_eval, coarse, make_sphere_grid(8, 16));
        auto coeffs = analyze_weight(w, geom, analysis_sphere, k_max);
        return {std::move(w), std::move(coeffs), family};
    }

    if (family == "attenuation") {
        namespace fs = std::filesystem;
        const fs::path base = fs::path(spec_path).parent_path();
        auto a = read_volume((base / spec.at("volume").get<std::string>()).string());
        auto w = attenuation_weight(a);
        auto coeffs = analyze_weight(w, geom, analysis_sphere, k_max);
        return {std::move(w), std::move(coeffs), family};
    }

    throw std::invalid_argument("unknown weight family: " + family);
}

GridGeometry grid_from_flags(int n, double half_extent) {
    return make_uniform_grid(n, half_extent).geom;
}

// ---------------------------------------------------------------- phantom

int cmd_phantom(const std::string& kind, int n, double half_extent,
                const std::vector<std::string>& ball_specs, int n_random, unsigned seed,
                double g_sigma, double g_amp, const std::string& out) {
    auto grid = make_uniform_grid(n, half_extent);
    auto mask = make_ball_mask(grid.geom);

    if (kind == "gaussian") {
        grid = gaussian_field(grid.geom, Vec3{}, g_sigma, g_amp);
        write_volume(out, grid, false);
        std::cout << "wrote " << out << " (gaussian, sigma=" << g_sigma << ")\n";
        return 0;
    }

    std::vector<PhantomBall> balls;
    for (const auto& s : ball_specs) {
        PhantomBall b;
        if (std::sscanf(s.c_str(), "%lf,%lf,%lf,%lf,%lf", &b.center.x, &b.center.y, &b.center.z,
                        &b.radius, &b.amplitude) != 5)
            throw std::invalid_argument("--ball expects cx,cy,cz,r,amp");
        balls.push_back(b);
    }
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uc(-0.4 * half_extent, 0.4 * half_extent);
    std::uniform_real_distribution<double> ur(0.08 * half_extent, 0.22 * half_extent);
    std::uniform_real_distribution<double> ua(0.5, 1.5);
    for (int i = 0; i < n_random; ++i)
        balls.push_back({{uc(rng), uc(rng), uc(rng)}, ur(rng), ua(rng)});
    if (balls.empty()) balls.push_back({{0, 0, 0}, 0.4 * half_extent, 1.0});

    const auto pk = kind == "balls" ? PhantomKind::Balls : PhantomKind::SmoothBumps;
    auto f = make_phantom(pk, grid.geom, balls, mask);
    write_volume(out, f, false);

    double mass = 0.0;
    for (const auto& v : f.values) mass += v.real();
    mass *= grid.geom.voxel_volume();
    std::cout << "wrote " << out << " (" << kind << ", " << balls.size()
              << " components, mass=" << mass << ")\n";
    return 0;
}

// ---------------------------------------------------------------- forward

int cmd_forward(const std::string& volume_path, const std::string& weight_path, int n_gamma,
                int n_phi, int n_s, const std::string& out) {
    auto f = read_volume(volume_path);
    auto sphere = make_sphere_grid(n_gamma, n_phi);
    auto mask = make_ball_mask(f.geom);

    Sinogram q;
    if (weight_path.empty()) {
        q = forward_radon(f, sphere, n_s);
    } else {
        auto setup = load_weight(weight_path, f.geom, mask, 8, sphere);
        q = forward_weighted_radon(f, setup.weight, sphere, n_s);
    }
    write_sinogram(out, q);

    // mass bookkeeping on a handful of directions: the s-integral of each
    // row must equal the weighted volume integral
    double worst = 0.0;
    const int probe = std::max(1, sphere.n_directions() / 8);
    for (int d = 0; d < sphere.n_directions(); d += probe) {
        cplx row = 0.0;
        for (int i = 0; i < q.n_s; ++i) row += q.at(d, i);
        row *= q.ds();
        cplx direct = 0.0;
        if (weight_path.empty()) {
            for (const auto& v : f.values) direct += v;
            direct *= f.geom.voxel_volume();
        } else {
            auto setup = load_weight(weight_path, f.geom, mask, 8, sphere);
            auto w = setup.weight.at_direction(sphere.gamma[d / sphere.n_phi],
                                               sphere.phi[d % sphere.n_phi]);
            for (int kz = 0; kz < f.geom.dims[2]; ++kz)
                for (int jy = 0; jy < f.geom.dims[1]; ++jy)
                    for (int ix = 0; ix < f.geom.dims[0]; ++ix) {
                        const cplx fv = f.at(ix, jy, kz);
                        if (fv != cplx(0.0, 0.0)) direct += fv * w(f.geom.point(ix, jy, kz));
                    }
            direct *= f.geom.voxel_volume();
        }
        const double den = std::max(1e-300, std::abs(direct));
        worst = std::max(worst, std::abs(row - direct) / den);
    }
    std::cout << "wrote " << out << " (" << sphere.n_directions() << " directions x " << q.n_s
              << " bins); mass-conservation deviation " << worst << "\n";
    return 0;
}

// ---------------------------------------------------------------- sigma

int cmd_sigma(const std::string& weight_path, int n, double half_extent, int k_max, int n_gamma,
              int n_phi, const std::string& json_out) {
    auto geom = grid_from_flags(n, half_extent);
    auto mask = make_ball_mask(geom);
    auto sphere = make_sphere_grid(n_gamma, n_phi);
    auto setup = load_weight(weight_path, geom, mask, k_max, sphere);

    const int k_half = setup.coeffs.k_max() / 2;
    std::cout << "family: " << setup.family << ", resolved degree " << setup.coeffs.k_max()
              << ", c_lower(domain) reported " << setup.weight.c_lower() << "\n";
    if (setup.coeffs.truncation_residual > 0.0)
        std::cout << "expansion residual (worst voxel, L2 over directions): "
                  << setup.coeffs.truncation_residual << "\n";
    std::cout << "  m   sigma_paper   sigma_measured\n";
    json rows = json::array();
    int best = 0;
    for (int m = 0; m <= k_half; ++m) {
        auto [sp, sm] = sigma(setup.coeffs, mask, m);
        std::printf("%3d   %11.6f   %14.6f\n", m, sp, sm);
        rows.push_back({{"m", m}, {"sigma_paper", sp}, {"sigma_measured", sm}});
        if (sm < 1.0) best = m;
    }
    std::cout << "largest order with sigma_measured < 1: m = " << best << "\n";
    if (!json_out.empty()) {
        std::ofstream out(json_out);
        if (!out) throw IoError("cannot open for writing: " + json_out);
        out << json{{"rows", rows}, {"recommended_m", best}}.dump(2) << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------- invert

int cmd_invert(const std::string& sino_path, const std::string& weight_path,
               const std::string& mode, int m, int n, double half_extent, double tol,
               int max_iter, bool force, int n_slices, const std::string& out) {
    auto q = read_sinogram(sino_path);
    auto geom = grid_from_flags(n, half_extent);
    auto mask = make_ball_mask(geom);
    auto setup = load_weight(weight_path, geom, mask, 8, q.sphere);

    InversionOptions opt;
    opt.tol = tol;
    opt.max_iter = max_iter;
    opt.allow_divergent = force;

    ScalarField3D rec;
    SolveReport rep;
    if (mode == "exact") {
        std::tie(rec, rep) = invert_exact(q, setup.coeffs, mask, opt);
    } else {
        const int order = mode == "chang" ? 0 : m;
        std::tie(rec, rep) = invert_approx(q, setup.coeffs, mask, order, opt);
    }

    write_volume(out, rec);
    write_report_json(out + ".report.json", rep);
    write_residuals_csv(out + ".residuals.csv", rep);
    const int nz = geom.dims[2];
    for (int s = 1; s <= n_slices; ++s) {
        const int kz = nz * s / (n_slices + 1);
        write_pgm_slice(out + ".slice" + std::to_string(kz) + ".pgm", rec, kz);
    }
    std::cout << "wrote " << out << " (mode " << mode << ", m=" << rep.m
              << ", iterations=" << rep.iterations << ", converged=" << rep.converged
              << ", sigma_measured=" << rep.sigma_measured << ")\n";
    if (!rep.note.empty()) std::cout << "note: " << rep.note << "\n";
    return 0;
}

// ---------------------------------------------------------------- selftest

struct Check {
    std::string name;
    double value;
    double bound;
    bool pass;
};

int cmd_selftest(bool quick, unsigned seed, double fault) {
    if (fault != 0.0) set_kernel_fault_for_tests(fault);
    std::vector<Check> checks;
    auto record = [&](const std::string& name, double value, double bound) {
        checks.push_back({name, value, bound, value <= bound});
    };

    // quadrature
    {
        auto s = make_sphere_grid(16, 32);
        double sum = 0.0;
        for (double w : s.weights) sum += w;
        record("sphere-weight-normalization", std::abs(sum - 4.0 * M_PI), 1e-12);

        double worst = 0.0;
        for (int k = 0; k <= 6; ++k)
            for (int kp = k; kp <= 6; kp += 2) {
                std::complex<double> g = 0.0;
                for (int d = 0; d < s.n_directions(); ++d) {
                    const int i = d / s.n_phi, j = d % s.n_phi;
                    g += ylm(k, 0, s.gamma[i], s.phi[j]) *
                         std::conj(ylm(kp, 0, s.gamma[i], s.phi[j])) * s.weights[d];
                }
                const double want = k == kp ? 4.0 * M_PI / (2.0 * k + 1.0) : 0.0;
                worst = std::max(worst, std::abs(g - want));
            }
        record("harmonic-orthogonality", worst, 1e-10);
    }

    // kernel constants and multiplier bound
    {
        const double want = std::sqrt(2.0) * std::exp(std::lgamma(2.5)) / M_PI;
        record("kernel-constant-k1",
               std::abs(d2kn_closed_form(1, 0, 1.0, 0.0, 0.0).real() + want), 1e-12);
        auto m10 = kernel_multiplier(1, 0, {16, 16, 16});
        double seen = 0.0;
        for (const auto& v : m10) seen = std::max(seen, std::abs(v));
        record("multiplier-max-k1", std::abs(seen - 1.0 / (2.0 * M_PI)), 1e-6);
        record("dimension-constant-consistency",
               std::abs(gamma_constant(1, 3) - want), 1e-12);
    }

    // geometry + transforms at 32^3
    auto grid = make_uniform_grid(32, 1.0);
    auto mask = make_ball_mask(grid.geom);
    auto sphere = make_sphere_grid(12, 24);

    {
        auto f = make_phantom(PhantomKind::SmoothBumps, grid.geom,
                              {{Vec3{0.1, -0.05, 0.05}, 0.4, 1.0}}, mask);
        auto q = forward_radon(f, sphere, 64);
        double total = 0.0;
        for (const auto& v : f.values) total += v.real();
        total *= grid.geom.voxel_volume();
        double worst = 0.0;
        for (int d = 0; d < sphere.n_directions(); d += 23) {
            cplx acc = 0.0;
            for (int i = 0; i < q.n_s; ++i) acc += q.at(d, i);
            worst = std::max(worst, std::abs(acc.real() * q.ds() - total) / total);
        }
        record("projection-mass-conservation", worst, 1e-12);

        auto sym = symmetrize_sinogram(q);
        double dev = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < q.values.size(); ++i) {
            dev = std::max(dev, std::abs(q.values[i] - sym.values[i]));
            scale = std::max(scale, std::abs(q.values[i]));
        }
        record("projection-evenness", dev / scale, 1e-10);
    }

    if (!quick) {
        auto f = gaussian_field(grid.geom, Vec3{0.08, -0.03, 0.05}, 0.2);
        auto q = forward_radon(f, sphere, 64);
        auto fbp = inverse_radon_fbp(q, grid.geom);
        ScalarField3D diff(grid.geom);
        for (std::size_t i = 0; i < diff.values.size(); ++i)
            diff.values[i] = fbp.values[i] - f.values[i];
        record("classical-round-trip", field_norm_l2(diff, mask) / field_norm_l2(f, mask), 0.08);

        auto fourier = inverse_radon_fourier(q, grid.geom);
        for (std::size_t i = 0; i < diff.values.size(); ++i)
            diff.values[i] = fourier.values[i] - fbp.values[i];
        record("inversion-route-agreement", field_norm_l2(diff, mask) / field_norm_l2(fbp, mask),
               0.10);
    }

    // weighted machinery
    {
        HarmonicCoefficients coeffs(grid.geom, 2);
        for (auto& v : coeffs.entry(0, 0).values) v = 1.0;
        for (auto& v : coeffs.entry(2, 0).values) v = 0.5;
        auto [sp, sm] = sigma(coeffs, mask, 1);
        record("sigma-arithmetic",
               std::abs(sp - 0.5 / (2.0 * M_PI * std::sqrt(2.0))) + std::abs(sm - 0.5), 1e-8);

        auto g = make_phantom(PhantomKind::SmoothBumps, grid.geom,
                              {{Vec3{0.0, 0.1, -0.05}, 0.4, 1.0}}, mask);
        auto [u, rep] = neumann_solve(g, coeffs, mask, 1, 1e-9, 50);
        double worst_ratio = 0.0;
        for (std::size_t j = 0; j + 1 < rep.residual_history.size(); ++j)
            worst_ratio = std::max(worst_ratio,
                                   rep.residual_history[j + 1] / rep.residual_history[j]);
        record("contraction-rate", worst_ratio, rep.sigma_measured + 0.05);
        record("fixed-point-residual", rep.fixed_point_residual, 2.0 * 1e-9);

        if (!quick) {
            auto w = finite_series_weight(coeffs, mask);
            auto f = make_phantom(PhantomKind::SmoothBumps, grid.geom,
                                  {{Vec3{0.1, -0.1, 0.05}, 0.42, 1.0}}, mask);
            auto q = forward_weighted_radon(f, w, sphere, 64);
            auto [rec, rep2] = invert_exact(q, coeffs, mask);
            ScalarField3D diff(grid.geom);
            for (std::size_t i = 0; i < diff.values.size(); ++i)
                diff.values[i] = rec.values[i] - f.values[i];
            const double err = field_norm_l2(diff, mask) / field_norm_l2(f, mask);
            record("weighted-round-trip", err, 0.12);

            auto [chang, rep0] = invert_approx(q, coeffs, mask, 0);
            for (std::size_t i = 0; i < diff.values.size(); ++i)
                diff.values[i] = chang.values[i] - f.values[i];
            const double err0 = field_norm_l2(diff, mask) / field_norm_l2(f, mask);
            record("refinement-beats-zeroth-order", err, err0);
        }
    }

    if (!quick) {
        // attenuation generators
        auto g64 = make_uniform_grid(64, 1.0);
        auto m64 = make_ball_mask(g64.geom);
        const double mu = 0.8, rho = 0.5;
        auto a = make_phantom(PhantomKind::Balls, g64.geom, {{Vec3{}, rho, mu}}, m64);
        auto w = attenuation_weight(a);
        const double got = w(Vec3{}, 1.1, 0.7).real();
        record("attenuation-chord", std::abs(got - std::exp(-mu * rho)) / std::exp(-mu * rho),
               0.01);

        auto f = make_phantom(PhantomKind::Balls, g64.geom, {{Vec3{}, rho, 1.0}}, m64);
        auto vals = ray_transform(f, constant_weight(1.0), {{Vec3{}, Vec3{0, 0, 1}}});
        record("ray-chord", std::abs(vals[0].real() - 2.0 * rho) / (2.0 * rho), 0.01);
    }

    int failures = 0;
    for (const auto& c : checks) {
        std::printf("%s %-34s %.3e (bound %.3e)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                    c.value, c.bound);
        if (!c.pass) ++failures;
    }
    std::printf("%d/%zu checks passed\n", static_cast<int>(checks.size()) - failures,
                checks.size());
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted hyperplane transforms: phantoms, projection, diagnosis, inversion"};
    app.require_subcommand(1);

    int threads = 0;
    if (const char* env = std::getenv("WRADON_THREADS")) threads = std::atoi(env);
    app.add_option("--threads", threads, "worker thread cap (0 = hardware)");

    // phantom
    auto* ph = app.add_subcommand("phantom", "write a test volume");
    std::string ph_kind = "balls", ph_out;
    int ph_n = 64, ph_random = 0;
    double ph_L = 1.0, ph_sigma = 0.2, ph_amp = 1.0;
    unsigned ph_seed = 1;
    std::vector<std::string> ph_balls;
    ph->add_option("--kind", ph_kind)->check(CLI::IsMember({"balls", "bumps", "gaussian"}));
    ph->add_option("--n", ph_n, "voxels per axis")->check(CLI::Range(8, 1024));
    ph->add_option("--half-extent", ph_L)->check(CLI::PositiveNumber);
    ph->add_option("--ball", ph_balls, "cx,cy,cz,r,amp (repeatable)");
    ph->add_option("--random", ph_random, "add this many random components");
    ph->add_option("--seed", ph_seed);
    ph->add_option("--sigma", ph_sigma, "gaussian width");
    ph->add_option("--amp", ph_amp, "gaussian amplitude");
    ph->add_option("--out", ph_out)->required();

    // forward
    auto* fw = app.add_subcommand("forward", "project a volume");
    std::string fw_vol, fw_weight, fw_out;
    int fw_ng = 16, fw_np = 32, fw_ns = 64;
    fw->add_option("--volume", fw_vol)->required();
    fw->add_option("--weight", fw_weight, "weight spec json (omit for the classical transform)");
    fw->add_option("--n-gamma", fw_ng)->check(CLI::Range(2, 256));
    fw->add_option("--n-phi", fw_np)->check(CLI::Range(4, 512));
    fw->add_option("--n-s", fw_ns)->check(CLI::Range(8, 4096));
    fw->add_option("--out", fw_out)->required();

    // sigma
    auto* sg = app.add_subcommand("sigma", "contraction diagnosis of a weight");
    std::string sg_weight, sg_json;
    int sg_n = 32, sg_kmax = 8, sg_ng = 16, sg_np = 32;
    double sg_L = 1.0;
    sg->add_option("--weight", sg_weight)->required();
    sg->add_option("--n", sg_n)->check(CLI::Range(8, 1024));
    sg->add_option("--half-extent", sg_L)->check(CLI::PositiveNumber);
    sg->add_option("--k-max", sg_kmax)->check(CLI::Range(0, 16));
    sg->add_option("--n-gamma", sg_ng);
    sg->add_option("--n-phi", sg_np);
    sg->add_option("--json", sg_json, "also write the table as json");

    // invert
    auto* iv = app.add_subcommand("invert", "reconstruct from a sinogram");
    std::string iv_sino, iv_weight, iv_mode = "exact", iv_out;
    int iv_m = 1, iv_n = 64, iv_iter = 50, iv_slices = 3;
    double iv_L = 1.0, iv_tol = 1e-8;
    bool iv_force = false;
    iv->add_option("--sino", iv_sino)->required();
    iv->add_option("--weight", iv_weight)->required();
    iv->add_option("--mode", iv_mode)->check(CLI::IsMember({"exact", "approx", "chang"}));
    iv->add_option("--m", iv_m, "truncation order for approx mode");
    iv->add_option("--n", iv_n)->check(CLI::Range(8, 1024));
    iv->add_option("--half-extent", iv_L)->check(CLI::PositiveNumber);
    iv->add_option("--tol", iv_tol)->check(CLI::PositiveNumber);
    iv->add_option("--max-iter", iv_iter)->check(CLI::Range(1, 10000));
    iv->add_flag("--force", iv_force, "iterate even when the contraction gate fails");
    iv->add_option("--slices", iv_slices, "axial preview slices")->check(CLI::Range(0, 64));
    iv->add_option("--out", iv_out)->required();

    // selftest
    auto* st = app.add_subcommand("selftest", "run the built-in diagnostic suite");
    bool st_quick = false;
    unsigned st_seed = 1;
    double st_fault = 0.0;
    st->add_flag("--quick", st_quick, "fast subset");
    st->add_option("--seed", st_seed);
    st->add_option("--corrupt-multiplier", st_fault,
                   "fault-injection hook: scale the spectral symbols by 1+eps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    set_thread_count(threads);

    try {
        if (*ph)
            return cmd_phantom(ph_kind, ph_n, ph_L, ph_balls, ph_random, ph_seed, ph_sigma,
                               ph_amp, ph_out);
        if (*fw) return cmd_forward(fw_vol, fw_weight, fw_ng, fw_np, fw_ns, fw_out);
        if (*sg) return cmd_sigma(sg_weight, sg_n, sg_L, sg_kmax, sg_ng, sg_np, sg_json);
        if (*iv)
            return cmd_invert(iv_sino, iv_weight, iv_mode, iv_m, iv_n, iv_L, iv_tol, iv_iter,
                              iv_force, iv_slices, iv_out);
        if (*st) return cmd_selftest(st_quick, st_seed, st_fault);
    } catch (const GateError& e) {
        std::cerr << "numerical gate: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
