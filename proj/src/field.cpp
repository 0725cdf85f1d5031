#include "wradon/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wradon {

bool ScalarField3D::inside(const Vec3& p) const {
    const auto& g = geom;
    const double lo = -0.5 * g.spacing * 1e-12;
    for (int a = 0; a < 3; ++a) {
        const double c = (a == 0 ? p.x - g.origin.x : a == 1 ? p.y - g.origin.y : p.z - g.origin.z);
        if (c < lo || c > (g.dims[a] - 1) * g.spacing - lo) return false;
    }
    return true;
}

cplx ScalarField3D::sample(const Vec3& p) const {
    const auto& g = geom;
    const double fx = (p.x - g.origin.x) / g.spacing;
    const double fy = (p.y - g.origin.y) / g.spacing;
    const double fz = (p.z - g.origin.z) / g.spacing;
    if (fx < 0 || fy < 0 || fz < 0 || fx > g.dims[0] - 1 || fy > g.dims[1] - 1 ||
        fz > g.dims[2] - 1) {
        throw std::invalid_argument("sample point outside grid");
    }
    const int i0 = std::min(static_cast<int>(fx), g.dims[0] - 2);
    const int j0 = std::min(static_cast<int>(fy), g.dims[1] - 2);
    const int k0 = std::min(static_cast<int>(fz), g.dims[2] - 2);
    const double tx = fx - i0, ty = fy - j0, tz = fz - k0;
    cplx v = 0.0;
    for (int dk = 0; dk < 2; ++dk)
        for (int dj = 0; dj < 2; ++dj)
            for (int di = 0; di < 2; ++di) {
                const double w = (di ? tx : 1 - tx) * (dj ? ty : 1 - ty) * (dk ? tz : 1 - tz);
                v += w * at(i0 + di, j0 + dj, k0 + dk);
            }
    return v;
}

std::int64_t DomainMask::count() const {
    return std::count_if(in.begin(), in.end(), [](std::uint8_t b) { return b != 0; });
}

ScalarField3D make_uniform_grid(int n_per_axis, double half_extent) {
    if (n_per_axis < 8) throw std::invalid_argument("grid needs at least 8 voxels per axis");
    if (!(half_extent > 0.0)) throw std::invalid_argument("half_extent must be positive");
    GridGeometry g;
    g.dims = {n_per_axis, n_per_axis, n_per_axis};
    g.spacing = 2.0 * half_extent / n_per_axis;
    const double o = -half_extent + 0.5 * g.spacing;
    g.origin = {o, o, o};
    return ScalarField3D(g);
}

DomainMask make_ball_mask(const GridGeometry& geom, double radius, const Vec3& center) {
    const double L = geom.half_extent();
    const double r = radius > 0.0 ? radius : 0.8 * L;
    if (r + std::max({std::abs(center.x), std::abs(center.y), std::abs(center.z)}) >= L) {
        throw std::invalid_argument("mask support must stay strictly inside the grid cube");
    }
    DomainMask mask(geom);
    std::int64_t idx = 0;
    for (int k = 0; k < geom.dims[2]; ++k)
        for (int j = 0; j < geom.dims[1]; ++j)
            for (int i = 0; i < geom.dims[0]; ++i, ++idx) {
                const Vec3 p = geom.point(i, j, k) - center;
                mask.in[static_cast<std::size_t>(idx)] = p.norm() <= r ? 1 : 0;
            }
    if (mask.count() == 0) throw std::invalid_argument("empty mask");
    return mask;
}

void require_compatible(const GridGeometry& a, const GridGeometry& b, const char* what) {
    if (!(a == b)) throw std::invalid_argument(std::string("incompatible grids in ") + what);
}

double field_norm_l2(const ScalarField3D& u, const DomainMask& mask) {
    require_compatible(u.geom, mask.geom, "field_norm_l2");
    double acc = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        if (mask.in[i]) acc += std::norm(u.values[i]);
    }
    return std::sqrt(acc * u.geom.voxel_volume());
}

double field_norm_l2(const ScalarField3D& u) {
    double acc = 0.0;
    for (const auto& v : u.values) acc += std::norm(v);
    return std::sqrt(acc * u.geom.voxel_volume());
}

double field_sup(const ScalarField3D& u, const DomainMask& mask) {
    require_compatible(u.geom, mask.geom, "field_sup");
    double best = -1.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        if (mask.in[i]) best = std::max(best, std::abs(u.values[i]));
    }
    if (best < 0.0) throw std::invalid_argument("field_sup over empty mask");
    return best;
}

} // namespace wradon
