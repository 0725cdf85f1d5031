#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "wradon/geometry.hpp"

namespace wradon {

using cplx = std::complex<double>;

/// Complex scalar samples on a uniform cube grid, x index fastest.
/// Real data simply carries zero imaginary parts.
struct ScalarField3D {
    GridGeometry geom;
    std::vector<cplx> values;

    ScalarField3D() = default;
    explicit ScalarField3D(const GridGeometry& g)
        : geom(g), values(static_cast<std::size_t>(g.size()), cplx(0.0, 0.0)) {}

    cplx& at(int i, int j, int k) { return values[static_cast<std::size_t>(geom.index(i, j, k))]; }
    const cplx& at(int i, int j, int k) const {
        return values[static_cast<std::size_t>(geom.index(i, j, k))];
    }

    /// Trilinear interpolation at a physical point; throws if the point is
    /// outside the voxel-center bounding box.
    cplx sample(const Vec3& p) const;

    bool inside(const Vec3& p) const;
};

/// 0/1 indicator on the same grid layout as a ScalarField3D.
struct DomainMask {
    GridGeometry geom;
    std::vector<std::uint8_t> in;

    DomainMask() = default;
    explicit DomainMask(const GridGeometry& g)
        : geom(g), in(static_cast<std::size_t>(g.size()), 0) {}

    bool at(int i, int j, int k) const { return in[static_cast<std::size_t>(geom.index(i, j, k))] != 0; }
    std::int64_t count() const;
    double volume() const { return count() * geom.voxel_volume(); }
};

/// Zero-initialized cube grid centered at the origin:
/// spacing = 2*half_extent / n_per_axis, voxel centers at
/// -half_extent + (i+1/2)*spacing. Rejects n_per_axis < 8.
ScalarField3D make_uniform_grid(int n_per_axis, double half_extent);

/// Ball indicator mask centered at `center`. Default radius (radius <= 0)
/// is 0.8 * half_extent. The support must be nonempty and strictly inside
/// the grid cube.
DomainMask make_ball_mask(const GridGeometry& geom, double radius = 0.0,
                          const Vec3& center = {});

/// sqrt( sum over masked voxels of |u|^2 * voxel_volume ).
double field_norm_l2(const ScalarField3D& u, const DomainMask& mask);

/// max over masked voxels of |u|; throws on an empty mask.
double field_sup(const ScalarField3D& u, const DomainMask& mask);

/// Whole-grid L2 norm (mask == everything).
double field_norm_l2(const ScalarField3D& u);

void require_compatible(const GridGeometry& a, const GridGeometry& b, const char* what);

} // namespace wradon
