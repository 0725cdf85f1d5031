#pragma once

#include <vector>

#include "wradon/field.hpp"
#include "wradon/sphere.hpp"

namespace wradon {

class WeightFunction;

/// Coefficient fields w_{k,n} of a weight's spherical-harmonic expansion in
/// the direction variable, stored densely for 0 <= k <= K_max, |n| <= k.
/// Entry (0,0) is the spherical mean field.
class HarmonicCoefficients {
public:
    HarmonicCoefficients() = default;
    HarmonicCoefficients(const GridGeometry& geom, int k_max);

    int k_max() const { return k_max_; }
    const GridGeometry& geom() const { return geom_; }

    static int pack(int k, int n) { return k * k + (n + k); }

    const ScalarField3D& entry(int k, int n) const;
    ScalarField3D& entry(int k, int n);

    /// L2(S^2) residual of the degree-K_max truncation, sampled on
    /// quadrature nodes at the grid point where it is largest.
    /// Filled by analyze_weight; 0 for synthetic coefficient sets.
    double truncation_residual = 0.0;

private:
    GridGeometry geom_;
    int k_max_ = -1;
    std::vector<ScalarField3D> entries_;
};

/// Projects W onto Y_k^n per voxel with the (2k+1)/(4*pi) normalization:
/// w_{k,n}(x) = (2k+1)/(4pi) * sum_q W(x,theta_q) p_k^{|n|}(cos g_q) e^{-in phi_q} wq.
/// The sphere quadrature must integrate degree-2*K_max products exactly:
/// n_gamma >= K_max+1 and n_phi >= 2*K_max+2.
HarmonicCoefficients analyze_weight(const WeightFunction& weight, const GridGeometry& geom,
                                    const SphereGrid& sphere, int k_max);

/// Zeroes every odd-k entry: the coefficient image of replacing W(x,theta)
/// by (W(x,theta)+W(x,-theta))/2.
HarmonicCoefficients symmetrize(const HarmonicCoefficients& coeffs);

/// Drops entries with k > N. Requires N <= K_max.
HarmonicCoefficients truncate(const HarmonicCoefficients& coeffs, int n_max);

/// sum_k sum_n w_{k,n}(x) Y_k^n(gamma,phi), coefficient fields sampled by
/// trilinear interpolation at x.
cplx synthesize(const HarmonicCoefficients& coeffs, const Vec3& x, double gamma, double phi);

} // namespace wradon
