#include "wradon/radon.hpp"

#include <cmath>
#include <stdexcept>

#include "wradon/fft.hpp"
#include "wradon/parallel.hpp"

namespace wradon {

namespace {

Sinogram make_output(const ScalarField3D& f, const SphereGrid& sphere, int n_s) {
    if (n_s < 8) throw std::invalid_argument("forward_radon: n_s >= 8 required");
    Sinogram q;
    q.sphere = sphere;
    q.n_s = n_s;
    // circumscribed-ball radius of the grid cube
    q.s_max = std::sqrt(3.0) * f.geom.half_extent();
    q.values.assign(static_cast<std::size_t>(sphere.n_directions()) * n_s, cplx(0.0, 0.0));
    return q;
}

/// One direction of the voxel-driven projection. Each voxel deposits
/// value * voxel_volume / ds onto the two s nodes bracketing x.theta with
/// hat weights, which conserves sum_s q(s) ds = integral exactly.
void project_direction(const ScalarField3D& f, const WeightFunction::PointEval* weight,
                       const Vec3& theta, Sinogram& q, int dir) {
    const auto& g = f.geom;
    const double ds = q.ds();
    const double scale = g.voxel_volume() / ds;
    const double s0 = -q.s_max;
    cplx* row = &q.at(dir, 0);
    std::int64_t idx = 0;
    for (int k = 0; k < g.dims[2]; ++k)
        for (int j = 0; j < g.dims[1]; ++j) {
            // x component accumulates along the row; dot product built once
            double base = (g.origin.y + j * g.spacing) * theta.y +
                          (g.origin.z + k * g.spacing) * theta.z + g.origin.x * theta.x;
            for (int i = 0; i < g.dims[0]; ++i, ++idx) {
                const cplx fv = f.values[static_cast<std::size_t>(idx)];
                if (fv != cplx(0.0, 0.0)) {
                    cplx v = fv * scale;
                    if (weight) v *= (*weight)(g.point(i, j, k));
                    const double s = base + i * g.spacing * theta.x;
                    const double t = (s - s0) / ds;
                    const int b = static_cast<int>(t);
                    if (b < 0 || b + 1 >= q.n_s)
                        throw std::runtime_error("forward_radon: splat outside s range");
                    const double w1 = t - b;
                    row[b] += v * (1.0 - w1);
                    row[b + 1] += v * w1;
                }
            }
        }
}

} // namespace

Sinogram forward_radon(const ScalarField3D& f, const SphereGrid& sphere, int n_s) {
    Sinogram q = make_output(f, sphere, n_s);
    parallel_for(0, sphere.n_directions(), [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t d = lo; d < hi; ++d)
            project_direction(f, nullptr, sphere.directions[static_cast<std::size_t>(d)], q,
                              static_cast<int>(d));
    });
    return q;
}

Sinogram forward_weighted_radon(const ScalarField3D& f, const WeightFunction& weight,
                                const SphereGrid& sphere, int n_s) {
    Sinogram q = make_output(f, sphere, n_s);
    parallel_for(0, sphere.n_directions(), [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t d = lo; d < hi; ++d) {
            const int i = static_cast<int>(d) / sphere.n_phi;
            const int j = static_cast<int>(d) % sphere.n_phi;
            auto eval = weight.at_direction(sphere.gamma[i], sphere.phi[j]);
            project_direction(f, &eval, sphere.directions[static_cast<std::size_t>(d)], q,
                              static_cast<int>(d));
        }
    });
    return q;
}

Sinogram symmetrize_sinogram(const Sinogram& q) {
    Sinogram out = q;
    for (int d = 0; d < q.sphere.n_directions(); ++d) {
        const int da = q.sphere.antipode(d);
        for (int i = 0; i < q.n_s; ++i)
            out.at(d, i) = 0.5 * (q.at(d, i) + q.at(da, q.n_s - 1 - i));
    }
    return out;
}

namespace {

std::vector<cplx> second_derivative_rows(const Sinogram& q, int mollify_passes) {
    const int n = q.n_s;
    const double ds2 = q.ds() * q.ds();
    std::vector<cplx> d2(q.values);
    if (mollify_passes > 0) {
        std::vector<cplx> tmp(static_cast<std::size_t>(n));
        for (int d = 0; d < q.sphere.n_directions(); ++d) {
            cplx* row = &d2[static_cast<std::size_t>(d) * n];
            for (int pass = 0; pass < mollify_passes; ++pass) {
                for (int i = 0; i < n; ++i) {
                    const cplx l = row[i > 0 ? i - 1 : 0];
                    const cplx r = row[i + 1 < n ? i + 1 : n - 1];
                    tmp[static_cast<std::size_t>(i)] = 0.25 * (l + 2.0 * row[i] + r);
                }
                std::copy(tmp.begin(), tmp.end(), row);
            }
        }
    }
    std::vector<cplx> out(d2.size());
    for (int d = 0; d < q.sphere.n_directions(); ++d) {
        const cplx* row = &d2[static_cast<std::size_t>(d) * n];
        cplx* o = &out[static_cast<std::size_t>(d) * n];
        for (int i = 1; i + 1 < n; ++i) o[i] = (row[i - 1] - 2.0 * row[i] + row[i + 1]) / ds2;
        o[0] = (row[0] - 2.0 * row[1] + row[2]) / ds2;          // one-sided fallback
        o[n - 1] = (row[n - 3] - 2.0 * row[n - 2] + row[n - 1]) / ds2;
    }
    return out;
}

} // namespace

ScalarField3D inverse_radon_fbp(const Sinogram& q, const GridGeometry& geom,
                                const FbpOptions& opt) {
    const std::vector<cplx> d2 = second_derivative_rows(q, opt.mollify_passes);
    ScalarField3D out(geom);
    const int n = q.n_s;
    const double s0 = -q.s_max;
    const double ds = q.ds();
    const double c = -1.0 / (8.0 * M_PI * M_PI);
    const std::int64_t nly = static_cast<std::int64_t>(geom.dims[0]) * geom.dims[1];

    parallel_for(0, geom.size(), [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t v = lo; v < hi; ++v) {
            const int kz = static_cast<int>(v / nly);
            const int jy = static_cast<int>((v - kz * nly) / geom.dims[0]);
            const int ix = static_cast<int>(v % geom.dims[0]);
            const Vec3 p = geom.point(ix, jy, kz);
            cplx acc = 0.0;
            for (int d = 0; d < q.sphere.n_directions(); ++d) {
                const double s = p.dot(q.sphere.directions[static_cast<std::size_t>(d)]);
                const double t = (s - s0) / ds;
                int b = static_cast<int>(t);
                if (b < 0) b = 0;
                if (b + 1 >= n) b = n - 2;
                const double w1 = t - b;
                const cplx* row = &d2[static_cast<std::size_t>(d) * n];
                acc += q.sphere.weights[static_cast<std::size_t>(d)] *
                       ((1.0 - w1) * row[b] + w1 * row[b + 1]);
            }
            out.values[static_cast<std::size_t>(v)] = c * acc;
        }
    });
    return out;
}

ScalarField3D inverse_radon_fourier(const Sinogram& q, const GridGeometry& geom,
                                    const FourierInversionOptions& opt) {
    const int n = q.n_s;
    const int os = std::max(1, opt.radial_oversample);
    const int nr = n * os;
    const double ds = q.ds();
    const int ndir = q.sphere.n_directions();

    // Per-direction 1D Fourier transform of q in s (continuum-normalized):
    // qhat(rho_j) = ds/sqrt(2 pi) * e^{-i rho_j s_0} * DFT(zero-padded row).
    std::vector<cplx> rows(static_cast<std::size_t>(ndir) * nr, cplx(0.0, 0.0));
    for (int d = 0; d < ndir; ++d)
        for (int i = 0; i < n; ++i)
            rows[static_cast<std::size_t>(d) * nr + i] = q.at(d, i);
    dft1_rows(rows, nr, ndir, -1);

    const double s_first = q.s_node(0);
    const double drho = 2.0 * M_PI / (nr * ds);
    const double c_meas = std::pow(2.0 * M_PI, -2.5) * 0.5 * drho;
    const double nyquist = M_PI / ds;
    auto radial_window = [&](double rho) {
        const double t = std::abs(rho) / nyquist;
        if (t <= opt.window_lo) return 1.0;
        if (t >= opt.window_hi) return 0.0;
        const double u = (t - opt.window_lo) / (opt.window_hi - opt.window_lo);
        return 0.5 * (1.0 + std::cos(M_PI * u));
    };

    // Spread the polar samples onto the Cartesian DFT frequency grid with
    // trilinear weights; accumulated values carry the full measure
    // rho^2/2 (2pi)^{-5/2} drho domega so the final step is a bare sum.
    const auto& dims = geom.dims;
    std::vector<cplx> grid(static_cast<std::size_t>(geom.size()), cplx(0.0, 0.0));
    const double dxi = 2.0 * M_PI / (dims[0] * geom.spacing);

    for (int d = 0; d < ndir; ++d) {
        const Vec3 theta = q.sphere.directions[static_cast<std::size_t>(d)];
        const double wd = q.sphere.weights[static_cast<std::size_t>(d)];
        for (int jj = 0; jj < nr; ++jj) {
            const int jshift = jj < (nr + 1) / 2 ? jj : jj - nr;
            if (jshift == 0) continue;  // rho = 0 has zero measure weight
            const double rho = jshift * drho;
            const double win = radial_window(rho);
            if (win == 0.0) continue;
            const cplx qhat = rows[static_cast<std::size_t>(d) * nr + jj] * (ds / std::sqrt(2.0 * M_PI)) *
                              std::polar(1.0, -rho * s_first);
            const cplx val = qhat * c_meas * rho * rho * wd * win;
            const double cx = rho * theta.x / dxi;
            const double cy = rho * theta.y / dxi;
            const double cz = rho * theta.z / dxi;
            const int bx = static_cast<int>(std::floor(cx));
            const int by = static_cast<int>(std::floor(cy));
            const int bz = static_cast<int>(std::floor(cz));
            const double tx = cx - bx, ty = cy - by, tz = cz - bz;
            for (int dz = 0; dz < 2; ++dz)
                for (int dy = 0; dy < 2; ++dy)
                    for (int dx = 0; dx < 2; ++dx) {
                        const int gx = bx + dx, gy = by + dy, gz = bz + dz;
                        if (gx < -dims[0] / 2 || gx >= (dims[0] + 1) / 2) continue;
                        if (gy < -dims[1] / 2 || gy >= (dims[1] + 1) / 2) continue;
                        if (gz < -dims[2] / 2 || gz >= (dims[2] + 1) / 2) continue;
                        const double w = (dx ? tx : 1 - tx) * (dy ? ty : 1 - ty) * (dz ? tz : 1 - tz);
                        const int ix = gx < 0 ? gx + dims[0] : gx;
                        const int iy = gy < 0 ? gy + dims[1] : gy;
                        const int iz = gz < 0 ? gz + dims[2] : gz;
                        grid[static_cast<std::size_t>(geom.index(ix, iy, iz))] += w * val;
                    }
        }
    }

    // Evaluate u(x) = sum_c G_c e^{i xi_c . x} at the voxel centers: phase
    // for the grid origin, then an unnormalized backward DFT.
    for (int iz = 0; iz < dims[2]; ++iz)
        for (int iy = 0; iy < dims[1]; ++iy)
            for (int ix = 0; ix < dims[0]; ++ix) {
                const double ph = dft_frequency(ix, dims[0], geom.spacing) * geom.origin.x +
                                  dft_frequency(iy, dims[1], geom.spacing) * geom.origin.y +
                                  dft_frequency(iz, dims[2], geom.spacing) * geom.origin.z;
                grid[static_cast<std::size_t>(geom.index(ix, iy, iz))] *= std::polar(1.0, ph);
            }
    dft3(grid, dims, +1);

    // Deapodize the trilinear spreading window: division by
    // sinc^2(pi x_a / (N h)) per axis.
    ScalarField3D out(geom);
    auto sinc2 = [](double t) {
        if (std::abs(t) < 1e-12) return 1.0;
        const double s = std::sin(t) / t;
        return s * s;
    };
    for (int iz = 0; iz < dims[2]; ++iz)
        for (int iy = 0; iy < dims[1]; ++iy)
            for (int ix = 0; ix < dims[0]; ++ix) {
                const Vec3 p = geom.point(ix, iy, iz);
                const double apo = sinc2(0.5 * dxi * p.x) * sinc2(0.5 * dxi * p.y) *
                                   sinc2(0.5 * dxi * p.z);
                out.at(ix, iy, iz) =
                    grid[static_cast<std::size_t>(geom.index(ix, iy, iz))] / apo;
            }
    return out;
}

} // namespace wradon
