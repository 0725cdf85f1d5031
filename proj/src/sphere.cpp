#include "wradon/sphere.hpp"

#include <cmath>
#include <stdexcept>

#include "wradon/legendre.hpp"

namespace wradon {

SphereGrid make_sphere_grid(int n_gamma, int n_phi) {
    if (n_gamma < 2) throw std::invalid_argument("make_sphere_grid: n_gamma >= 2");
    if (n_phi < 4 || n_phi % 2) throw std::invalid_argument("make_sphere_grid: n_phi >= 4 and even");

    SphereGrid s;
    s.n_gamma = n_gamma;
    s.n_phi = n_phi;
    gauss_legendre(n_gamma, s.cos_gamma, s.gl_weight);
    s.sin_gamma.resize(n_gamma);
    s.gamma.resize(n_gamma);
    for (int i = 0; i < n_gamma; ++i) {
        // sin(gamma) from the node magnitude so mirrored nodes share it bitwise
        s.sin_gamma[i] = std::sqrt((1.0 - s.cos_gamma[i]) * (1.0 + s.cos_gamma[i]));
        s.gamma[i] = std::acos(s.cos_gamma[i]);
    }

    s.phi.resize(n_phi);
    s.cos_phi.resize(n_phi);
    s.sin_phi.resize(n_phi);
    for (int j = 0; j < n_phi / 2; ++j) {
        s.phi[j] = 2.0 * M_PI * j / n_phi;
        s.cos_phi[j] = std::cos(s.phi[j]);
        s.sin_phi[j] = std::sin(s.phi[j]);
        s.phi[j + n_phi / 2] = s.phi[j] + M_PI;
        s.cos_phi[j + n_phi / 2] = -s.cos_phi[j];
        s.sin_phi[j + n_phi / 2] = -s.sin_phi[j];
    }

    s.directions.resize(static_cast<std::size_t>(n_gamma) * n_phi);
    s.weights.resize(s.directions.size());
    const double wphi = 2.0 * M_PI / n_phi;
    for (int i = 0; i < n_gamma; ++i)
        for (int j = 0; j < n_phi; ++j) {
            const int d = s.dir_index(i, j);
            s.directions[d] = {s.sin_gamma[i] * s.cos_phi[j], s.sin_gamma[i] * s.sin_phi[j],
                               s.cos_gamma[i]};
            s.weights[d] = s.gl_weight[i] * wphi;
        }
    return s;
}

} // namespace wradon
