#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace wradon {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
};

/// Uniform cube-grid geometry: voxel (i,j,k) is centered at
/// origin + (i,j,k)*spacing, with the x index fastest in memory.
struct GridGeometry {
    std::array<int, 3> dims{0, 0, 0};
    double spacing = 0.0;
    Vec3 origin;

    std::int64_t size() const {
        return static_cast<std::int64_t>(dims[0]) * dims[1] * dims[2];
    }
    std::int64_t index(int i, int j, int k) const {
        return i + static_cast<std::int64_t>(dims[0]) * (j + static_cast<std::int64_t>(dims[1]) * k);
    }
    Vec3 point(int i, int j, int k) const {
        return {origin.x + i * spacing, origin.y + j * spacing, origin.z + k * spacing};
    }
    double voxel_volume() const { return spacing * spacing * spacing; }
    /// Half edge length of the cube covered by the voxel centers' cells.
    double half_extent() const { return 0.5 * dims[0] * spacing; }

    bool operator==(const GridGeometry& o) const {
        return dims == o.dims && spacing == o.spacing &&
               origin.x == o.origin.x && origin.y == o.origin.y && origin.z == o.origin.z;
    }
};

} // namespace wradon
