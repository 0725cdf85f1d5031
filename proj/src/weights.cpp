#include "wradon/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "wradon/legendre.hpp"
#include "wradon/parallel.hpp"

namespace wradon {

WeightFunction constant_weight(cplx c) {
    if (c == cplx(0.0, 0.0)) throw std::invalid_argument("constant_weight: c must be nonzero");
    return WeightFunction(
        "constant", [c](double, double) { return WeightFunction::PointEval([c](const Vec3&) { return c; }); },
        std::abs(c));
}

namespace {

struct SeriesEntry {
    int k = 0, n = 0;
    const ScalarField3D* field = nullptr;
};

std::vector<SeriesEntry> nonzero_entries(const HarmonicCoefficients& coeffs) {
    std::vector<SeriesEntry> list;
    for (int k = 0; k <= coeffs.k_max(); ++k)
        for (int n = -k; n <= k; ++n) {
            const auto& f = coeffs.entry(k, n);
            const bool any = std::any_of(f.values.begin(), f.values.end(),
                                         [](const cplx& v) { return v != cplx(0.0, 0.0); });
            if (any) list.push_back({k, n, &f});
        }
    return list;
}

} // namespace

WeightFunction harmonic_sum_weight(const HarmonicCoefficients& coeffs) {
    auto owned = std::make_shared<HarmonicCoefficients>(coeffs);
    auto entries = std::make_shared<std::vector<SeriesEntry>>(nonzero_entries(*owned));
    const GridGeometry geom = coeffs.geom();

    auto factory = [owned, entries, geom](double gamma, double phi) {
        // Collapse the series once per direction into a single field so the
        // per-point cost does not scale with the number of entries.
        auto combined = std::make_shared<ScalarField3D>(geom);
        for (const auto& e : *entries) {
            const cplx y = ylm(e.k, e.n, gamma, phi);
            if (y == cplx(0.0, 0.0)) continue;
            const auto& src = e.field->values;
            auto& dst = combined->values;
            for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += y * src[i];
        }
        return WeightFunction::PointEval([combined](const Vec3& p) {
            // Projection loops hit exact voxel centers almost always; a
            // rounded index read then equals the trilinear sample.
            const auto& g = combined->geom;
            const double fx = (p.x - g.origin.x) / g.spacing;
            const double fy = (p.y - g.origin.y) / g.spacing;
            const double fz = (p.z - g.origin.z) / g.spacing;
            const double rx = std::round(fx), ry = std::round(fy), rz = std::round(fz);
            if (std::abs(fx - rx) < 1e-9 && std::abs(fy - ry) < 1e-9 &&
                std::abs(fz - rz) < 1e-9 && rx >= 0 && ry >= 0 && rz >= 0 &&
                rx < g.dims[0] && ry < g.dims[1] && rz < g.dims[2]) {
                return combined->values[static_cast<std::size_t>(g.index(
                    static_cast<int>(rx), static_cast<int>(ry), static_cast<int>(rz)))];
            }
            return combined->sample(p);
        });
    };
    return WeightFunction("finite-series", std::move(factory), 0.0);
}

WeightFunction finite_series_weight(const HarmonicCoefficients& coeffs, const DomainMask& domain) {
    require_compatible(coeffs.geom(), domain.geom, "finite_series_weight");
    const auto& w00 = coeffs.entry(0, 0);
    double inf = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < w00.values.size(); ++i)
        if (domain.in[i]) inf = std::min(inf, std::abs(w00.values[i]));
    if (!(inf > 0.0))
        throw std::invalid_argument("finite_series_weight: (0,0) entry vanishes on the domain");
    WeightFunction base = harmonic_sum_weight(coeffs);
    return WeightFunction("finite-series", [base](double g, double p) { return base.at_direction(g, p); },
                          inf);
}

WeightFunction perturbed_weight(double c,
                                const std::function<cplx(const Vec3&, double, double)>& v,
                                const GridGeometry& geom, const SphereGrid& sphere,
                                bool bound_check) {
    if (!(c > 0.0)) throw std::invalid_argument("perturbed_weight: c > 0 required");
    double sup_v = 0.0;
    if (bound_check) {
        for (int d = 0; d < sphere.n_directions(); ++d) {
            const int i = d / sphere.n_phi, j = d % sphere.n_phi;
            for (int kz = 0; kz < geom.dims[2]; ++kz)
                for (int jy = 0; jy < geom.dims[1]; ++jy)
                    for (int ix = 0; ix < geom.dims[0]; ++ix) {
                        sup_v = std::max(sup_v,
                                         std::abs(v(geom.point(ix, jy, kz), sphere.gamma[i],
                                                    sphere.phi[j])));
                    }
        }
        if (sup_v >= c)
            throw std::invalid_argument("perturbed_weight: sampled sup|V| >= c");
    }
    auto factory = [c, v](double gamma, double phi) {
        return WeightFunction::PointEval(
            [c, v, gamma, phi](const Vec3& p) { return cplx(c, 0.0) + v(p, gamma, phi); });
    };
    return WeightFunction("perturbed", std::move(factory), c - sup_v);
}

namespace {

/// Marching attenuation integral from p outward along unit theta, midpoint
/// rule with step = spacing/2; a is taken as 0 outside its grid.
double attenuation_integral(const ScalarField3D& a, const Vec3& p, const Vec3& theta) {
    const double L = a.geom.half_extent();
    const double step = 0.5 * a.geom.spacing;
    // conservative exit distance: from anywhere inside/near the cube.
    const double t_end = 2.0 * std::sqrt(3.0) * L + p.norm();
    double acc = 0.0;
    for (double t = 0.5 * step; t < t_end; t += step) {
        const Vec3 q = p + theta * t;
        if (q.x < a.geom.origin.x || q.y < a.geom.origin.y || q.z < a.geom.origin.z ||
            q.x > a.geom.origin.x + (a.geom.dims[0] - 1) * a.geom.spacing ||
            q.y > a.geom.origin.y + (a.geom.dims[1] - 1) * a.geom.spacing ||
            q.z > a.geom.origin.z + (a.geom.dims[2] - 1) * a.geom.spacing) {
            continue;  // outside the sample box; nothing to add there
        }
        acc += a.sample(q).real() * step;
    }
    return acc;
}

} // namespace

WeightFunction attenuation_weight(const ScalarField3D& a) {
    for (const auto& v : a.values) {
        if (v.real() < 0.0 || v.imag() != 0.0)
            throw std::invalid_argument("attenuation_weight: a must be real and nonnegative");
    }
    auto owned = std::make_shared<ScalarField3D>(a);
    auto factory = [owned](double gamma, double phi) {
        const Vec3 theta{std::sin(gamma) * std::cos(phi), std::sin(gamma) * std::sin(phi),
                         std::cos(gamma)};
        return WeightFunction::PointEval([owned, theta](const Vec3& p) {
            return cplx(std::exp(-attenuation_integral(*owned, p, theta)), 0.0);
        });
    };
    // w_{0,0} of exp(-nonnegative integral) is bounded below by the worst
    // full-diameter path; report that conservative floor.
    double sup_a = 0.0;
    for (const auto& v : owned->values) sup_a = std::max(sup_a, v.real());
    const double floor =
        std::exp(-sup_a * 2.0 * std::sqrt(3.0) * a.geom.half_extent());
    return WeightFunction("attenuation", std::move(factory), floor);
}

std::vector<cplx> ray_transform(const ScalarField3D& f, const WeightFunction& w_ray,
                                const std::vector<std::pair<Vec3, Vec3>>& rays) {
    std::vector<cplx> out;
    out.reserve(rays.size());
    const double L = f.geom.half_extent();
    const double step = 0.5 * f.geom.spacing;
    const double reach = std::sqrt(3.0) * L;
    for (const auto& [x0, alpha] : rays) {
        if (std::abs(alpha.norm() - 1.0) > 1e-12)
            throw std::invalid_argument("ray_transform: direction must be unit");
        const double gamma = std::acos(std::clamp(alpha.z, -1.0, 1.0));
        const double phi = std::atan2(alpha.y, alpha.x);
        auto w = w_ray.at_direction(gamma, phi < 0 ? phi + 2.0 * M_PI : phi);
        const double t_span = reach + x0.norm();
        cplx acc = 0.0;
        for (double t = -t_span + 0.5 * step; t < t_span; t += step) {
            const Vec3 q = x0 + alpha * t;
            if (!f.inside(q)) continue;
            acc += w(q) * f.sample(q) * step;
        }
        out.push_back(acc);
    }
    return out;
}

ScalarField3D make_phantom(PhantomKind kind, const GridGeometry& geom,
                           const std::vector<PhantomBall>& spec, const DomainMask& domain) {
    require_compatible(geom, domain.geom, "make_phantom");
    ScalarField3D f(geom);
    const int ss = 4;  // subvoxel sampling per axis for antialiased balls
    parallel_for(0, geom.dims[2], [&](std::int64_t klo, std::int64_t khi) {
        for (std::int64_t k = klo; k < khi; ++k)
            for (int j = 0; j < geom.dims[1]; ++j)
                for (int i = 0; i < geom.dims[0]; ++i) {
                    const Vec3 p = geom.point(i, static_cast<int>(j), static_cast<int>(k));
                    cplx val = 0.0;
                    for (const auto& b : spec) {
                        if (kind == PhantomKind::Balls) {
                            int hits = 0;
                            for (int sz = 0; sz < ss; ++sz)
                                for (int sy = 0; sy < ss; ++sy)
                                    for (int sx = 0; sx < ss; ++sx) {
                                        const Vec3 q{
                                            p.x + ((sx + 0.5) / ss - 0.5) * geom.spacing,
                                            p.y + ((sy + 0.5) / ss - 0.5) * geom.spacing,
                                            p.z + ((sz + 0.5) / ss - 0.5) * geom.spacing};
                                        if ((q - b.center).norm() <= b.radius) ++hits;
                                    }
                            val += b.amplitude * static_cast<double>(hits) / (ss * ss * ss);
                        } else {
                            const double u = (p - b.center).norm() / b.radius;
                            if (u < 1.0)
                                val += b.amplitude * std::exp(1.0 - 1.0 / (1.0 - u * u));
                        }
                    }
                    f.at(i, j, static_cast<int>(k)) = val;
                }
    });
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        if (f.values[i] != cplx(0.0, 0.0) && !domain.in[i])
            throw std::invalid_argument("make_phantom: support escapes the domain");
    }
    return f;
}

ScalarField3D gaussian_field(const GridGeometry& geom, const Vec3& center, double sigma,
                             double amplitude) {
    ScalarField3D f(geom);
    for (int k = 0; k < geom.dims[2]; ++k)
        for (int j = 0; j < geom.dims[1]; ++j)
            for (int i = 0; i < geom.dims[0]; ++i) {
                const Vec3 d = geom.point(i, j, k) - center;
                f.at(i, j, k) = amplitude * std::exp(-d.dot(d) / (2.0 * sigma * sigma));
            }
    return f;
}

} // namespace wradon
