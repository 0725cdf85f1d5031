#pragma once

#include <complex>
#include <vector>

#include "wradon/sphere.hpp"

namespace wradon {

/// Samples of a function on R x S^2, direction-major:
/// values[d * n_s + i] is the value at (s_i, theta_d) with
/// s_i = (i - (n_s-1)/2) * ds, ds = 2*s_max/(n_s-1). The s nodes are exact
/// +- mirror pairs, so s-reflection is an index flip.
struct Sinogram {
    SphereGrid sphere;
    int n_s = 0;
    double s_max = 0.0;
    std::vector<std::complex<double>> values;

    double ds() const { return 2.0 * s_max / (n_s - 1); }
    double s_node(int i) const { return (i - 0.5 * (n_s - 1)) * ds(); }

    std::complex<double>& at(int dir, int i_s) {
        return values[static_cast<std::size_t>(dir) * n_s + i_s];
    }
    const std::complex<double>& at(int dir, int i_s) const {
        return values[static_cast<std::size_t>(dir) * n_s + i_s];
    }
};

Sinogram make_sinogram(const SphereGrid& sphere, int n_s, double s_max);

} // namespace wradon
