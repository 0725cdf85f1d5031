#pragma once

#include "wradon/field.hpp"
#include "wradon/sinogram.hpp"
#include "wradon/weights.hpp"

namespace wradon {

/// Hyperplane integrals R f(s,theta) = int_{x.theta = s} f dx, discretized
/// by splatting each voxel's value * voxel_volume / ds onto the two s nodes
/// bracketing x.theta with linear (hat) weights. Exactly mass-conserving:
/// sum_s Rf(s,theta) ds == integral of f, for every direction.
/// s_max is the circumscribed-ball radius of the grid cube. n_s >= 8.
Sinogram forward_radon(const ScalarField3D& f, const SphereGrid& sphere, int n_s);

/// Same accumulation with integrand W(x,theta) f(x).
Sinogram forward_weighted_radon(const ScalarField3D& f, const WeightFunction& weight,
                                const SphereGrid& sphere, int n_s);

/// Pointwise (q(s,theta) + q(-s,-theta)) / 2; idempotent, exact on the
/// grid because s nodes and directions mirror node-to-node.
Sinogram symmetrize_sinogram(const Sinogram& q);

struct FbpOptions {
    /// Binomial [1,2,1]/4 smoothing passes applied in s before
    /// differentiation (mollification of rough data); 0 = off.
    int mollify_passes = 0;
};

/// Filtered backprojection: -(1/(8 pi^2)) * integral over S^2 of the second
/// s-derivative of q at s = x.theta. Centered second differences with
/// one-sided fallback at the ends; linear interpolation in s during
/// backprojection. Linear in q.
ScalarField3D inverse_radon_fbp(const Sinogram& q, const GridGeometry& geom,
                                const FbpOptions& opt = {});

struct FourierInversionOptions {
    /// Zero-padding factor of the s-axis FFT (finer radial sampling of the
    /// polar frequency cloud).
    int radial_oversample = 4;
    /// Cosine-tapered radial low-pass, as fractions of the 1D Nyquist
    /// pi/ds: full gain below window_lo, zero above window_hi. Suppresses
    /// the near-Nyquist splat aliases that the rho^2 weight amplifies.
    double window_lo = 0.5;
    double window_hi = 0.8;
};

/// Projection-theorem route: per-direction 1D Fourier transform of q,
/// rho^2/2 * (2pi)^{-5/2} weighting, trilinear spreading of the polar
/// samples onto the Cartesian frequency grid with rho^2 drho domega density
/// compensation, inverse 3D FFT, and sinc^2 deapodization of the trilinear
/// spreading window.
ScalarField3D inverse_radon_fourier(const Sinogram& q, const GridGeometry& geom,
                                    const FourierInversionOptions& opt = {});

} // namespace wradon
