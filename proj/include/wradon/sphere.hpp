#pragma once

#include <vector>

#include "wradon/geometry.hpp"

namespace wradon {

/// Product quadrature on S^2: Gauss-Legendre in cos(gamma) times a uniform
/// periodic grid in phi. Directions are theta(gamma,phi) =
/// (sin gamma cos phi, sin gamma sin phi, cos gamma); the quadrature weight
/// of node (i,j) is gl_weight[i] * 2*pi/n_phi and the weights sum to 4*pi.
///
/// n_phi must be even so antipodes map node-to-node:
///  -theta(i,j) == theta(n_gamma-1-i, (j+n_phi/2) mod n_phi) bitwise.
struct SphereGrid {
    int n_gamma = 0;
    int n_phi = 0;
    std::vector<double> cos_gamma;   // ascending GL nodes, mirrored pairs
    std::vector<double> sin_gamma;
    std::vector<double> gamma;       // acos(cos_gamma)
    std::vector<double> gl_weight;
    std::vector<double> phi;         // 2*pi*j / n_phi
    std::vector<double> cos_phi;     // second half is the exact negation of the first
    std::vector<double> sin_phi;
    std::vector<Vec3> directions;    // direction-major order: d = i*n_phi + j
    std::vector<double> weights;     // quadrature weight per direction

    int n_directions() const { return n_gamma * n_phi; }
    int dir_index(int i_gamma, int j_phi) const { return i_gamma * n_phi + j_phi; }

    /// Index of the antipodal direction -theta_d.
    int antipode(int d) const {
        int i = d / n_phi, j = d % n_phi;
        return dir_index(n_gamma - 1 - i, (j + n_phi / 2) % n_phi);
    }
};

/// Requires n_gamma >= 2, n_phi >= 4 and n_phi even.
SphereGrid make_sphere_grid(int n_gamma, int n_phi);

} // namespace wradon
