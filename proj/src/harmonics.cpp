#include "wradon/harmonics.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "wradon/legendre.hpp"
#include "wradon/parallel.hpp"
#include "wradon/weights.hpp"

namespace wradon {

HarmonicCoefficients::HarmonicCoefficients(const GridGeometry& geom, int k_max)
    : geom_(geom), k_max_(k_max) {
    if (k_max < 0) throw std::invalid_argument("HarmonicCoefficients: k_max >= 0");
    entries_.assign(static_cast<std::size_t>((k_max + 1) * (k_max + 1)), ScalarField3D(geom));
}

const ScalarField3D& HarmonicCoefficients::entry(int k, int n) const {
    if (k < 0 || k > k_max_ || n < -k || n > k)
        throw std::invalid_argument("HarmonicCoefficients::entry: bad (k,n)");
    return entries_[static_cast<std::size_t>(pack(k, n))];
}

ScalarField3D& HarmonicCoefficients::entry(int k, int n) {
    if (k < 0 || k > k_max_ || n < -k || n > k)
        throw std::invalid_argument("HarmonicCoefficients::entry: bad (k,n)");
    return entries_[static_cast<std::size_t>(pack(k, n))];
}

HarmonicCoefficients analyze_weight(const WeightFunction& weight, const GridGeometry& geom,
                                    const SphereGrid& sphere, int k_max) {
    if (k_max < 0) throw std::invalid_argument("analyze_weight: k_max >= 0");
    if (sphere.n_gamma < k_max + 1 || sphere.n_phi < 2 * k_max + 2) {
        throw std::invalid_argument(
            "analyze_weight: sphere quadrature too coarse for requested degree "
            "(need n_gamma >= k_max+1, n_phi >= 2*k_max+2)");
    }

    const int ng = sphere.n_gamma, np = sphere.n_phi;
    const int n_orders = 2 * k_max + 1;

    // Azimuthal phase table e^{-i n phi_j} and Legendre table p_k^{|n|} at
    // the gamma nodes; both shared by every voxel.
    std::vector<cplx> phase(static_cast<std::size_t>(n_orders) * np);
    for (int n = -k_max; n <= k_max; ++n)
        for (int j = 0; j < np; ++j)
            phase[static_cast<std::size_t>(n + k_max) * np + j] =
                cplx(std::cos(n * sphere.phi[j]), -std::sin(n * sphere.phi[j]));

    std::vector<double> ptab(static_cast<std::size_t>((k_max + 1) * (k_max + 1)) * ng);
    for (int k = 0; k <= k_max; ++k)
        for (int n = 0; n <= k; ++n)
            for (int i = 0; i < ng; ++i)
                ptab[static_cast<std::size_t>(k * (k_max + 1) + n) * ng + i] =
                    legendre_assoc(k, n, sphere.cos_gamma[i]);

    HarmonicCoefficients coeffs(geom, k_max);
    std::mutex residual_mutex;
    double worst_residual2 = 0.0;

    const double wphi = 2.0 * M_PI / np;
    const std::int64_t nly = static_cast<std::int64_t>(geom.dims[0]) * geom.dims[1];

    parallel_for(0, geom.size(), [&](std::int64_t lo, std::int64_t hi) {
        std::vector<cplx> wvals(static_cast<std::size_t>(ng) * np);
        std::vector<cplx> azim(static_cast<std::size_t>(n_orders) * ng);
        double worst = 0.0;

        for (std::int64_t v = lo; v < hi; ++v) {
            const int k3 = static_cast<int>(v / nly);
            const int j2 = static_cast<int>((v - k3 * nly) / geom.dims[0]);
            const int i1 = static_cast<int>(v % geom.dims[0]);
            const Vec3 p = geom.point(i1, j2, k3);

            double l2w = 0.0;
            for (int i = 0; i < ng; ++i)
                for (int j = 0; j < np; ++j) {
                    const cplx w = weight(p, sphere.gamma[i], sphere.phi[j]);
                    wvals[static_cast<std::size_t>(i) * np + j] = w;
                    l2w += std::norm(w) * sphere.gl_weight[i] * wphi;
                }

            // Azimuthal sums first: shared by all degrees of one order.
            for (int n = -k_max; n <= k_max; ++n) {
                const cplx* ph = &phase[static_cast<std::size_t>(n + k_max) * np];
                for (int i = 0; i < ng; ++i) {
                    cplx acc = 0.0;
                    const cplx* row = &wvals[static_cast<std::size_t>(i) * np];
                    for (int j = 0; j < np; ++j) acc += row[j] * ph[j];
                    azim[static_cast<std::size_t>(n + k_max) * ng + i] = acc * wphi;
                }
            }

            double captured2 = 0.0;
            for (int k = 0; k <= k_max; ++k) {
                const double norm_c = (2.0 * k + 1.0) / (4.0 * M_PI);
                for (int n = -k; n <= k; ++n) {
                    const double* pr = &ptab[static_cast<std::size_t>(k * (k_max + 1) + std::abs(n)) * ng];
                    const cplx* az = &azim[static_cast<std::size_t>(n + k_max) * ng];
                    cplx acc = 0.0;
                    for (int i = 0; i < ng; ++i) acc += pr[i] * az[i] * sphere.gl_weight[i];
                    acc *= norm_c;
                    coeffs.entry(k, n).values[static_cast<std::size_t>(v)] = acc;
                    captured2 += std::norm(acc) * 4.0 * M_PI / (2.0 * k + 1.0);
                }
            }
            worst = std::max(worst, l2w - captured2);  // Parseval remainder
        }
        std::lock_guard<std::mutex> lock(residual_mutex);
        worst_residual2 = std::max(worst_residual2, worst);
    });

    coeffs.truncation_residual = std::sqrt(std::max(0.0, worst_residual2));
    return coeffs;
}

HarmonicCoefficients symmetrize(const HarmonicCoefficients& coeffs) {
    HarmonicCoefficients out = coeffs;
    for (int k = 1; k <= coeffs.k_max(); k += 2)
        for (int n = -k; n <= k; ++n) {
            auto& vals = out.entry(k, n).values;
            std::fill(vals.begin(), vals.end(), cplx(0.0, 0.0));
        }
    return out;
}

HarmonicCoefficients truncate(const HarmonicCoefficients& coeffs, int n_max) {
    if (n_max > coeffs.k_max()) throw std::invalid_argument("truncate: N > K_max");
    if (n_max < 0) throw std::invalid_argument("truncate: N >= 0");
    HarmonicCoefficients out(coeffs.geom(), n_max);
    for (int k = 0; k <= n_max; ++k)
        for (int n = -k; n <= k; ++n) out.entry(k, n) = coeffs.entry(k, n);
    out.truncation_residual = coeffs.truncation_residual;
    return out;
}

cplx synthesize(const HarmonicCoefficients& coeffs, const Vec3& x, double gamma, double phi) {
    cplx acc = 0.0;
    for (int k = 0; k <= coeffs.k_max(); ++k)
        for (int n = -k; n <= k; ++n) {
            const cplx c = coeffs.entry(k, n).sample(x);
            if (c != cplx(0.0, 0.0)) acc += c * ylm(k, n, gamma, phi);
        }
    return acc;
}

} // namespace wradon
