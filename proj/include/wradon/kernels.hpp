#pragma once

#include <array>
#include <complex>
#include <vector>

#include "wradon/field.hpp"

namespace wradon {

/// Closed-form convolution kernel of even angular degree 2k:
/// (-1)^k sqrt(2) Gamma(3/2+k) / (pi Gamma(k)) * Y_{2k}^n(gamma,phi) / r^3.
/// Homogeneous of degree -3 and even; singular at r = 0 (throws for r <= 0).
cplx d2kn_closed_form(int k, int n, double r, double gamma, double phi);

/// Fourier multiplier of d_{2k,n}: Y_{2k}^n(xi/|xi|) / (2 pi) sampled on the
/// DFT frequency layout of an x-fastest cube, with the DC bin set to 0.
/// (Directions of DFT frequencies depend only on the index, not the sample
/// spacing.)
std::vector<cplx> kernel_multiplier(int k, int n, const std::array<int, 3>& dims);

/// Dimension-n kernel constant
/// sqrt(2) pi^{(1-n)/2} Gamma(k+1/2) Gamma(k+n/2) / (Gamma(k) Gamma(k+(n-1)/2))
///   * (Gamma(k+1)/Gamma(k+1/2))^{n-2},
/// evaluated with log-Gamma arithmetic. At dim = 3 it reduces to the
/// d_{2k,n} constant above. Requires k >= 1, dim >= 3.
double gamma_constant(int k, int dim);

/// Convolution of u against d_{2k,n} through the multiplier route:
/// (2 pi)^{3/2} * IDFT[ kernel_multiplier * DFT[u] ] on a grid padded by
/// pad_factor. Padding both pushes back periodic wrap of the r^-3 tails and
/// refines the frequency bins near DC, where the degree-0-homogeneous
/// symbol is not smooth; degree-4 symbols need pad >= 3 for percent-level
/// accuracy while degree-2 symbols are fine at 2.
ScalarField3D convolve_d2kn(const ScalarField3D& u, int k, int n, int pad_factor = 3);

/// accum[c] += Y_{two_k}^n(direction of frequency bin c) * spec[c], with the
/// DC bin skipped. This is the unit-gain spectral symbol of the operator
/// v -> R^{-1}(Y_{two_k}^n R v); d_{2k,n} aside, no 2 pi factors enter
/// because the DFT pair cancels them for a pure multiplier.
void add_symbol_product(int two_k, int n, const std::array<int, 3>& dims,
                        const std::vector<cplx>& spec, std::vector<cplx>& accum);

/// Self-test fault injection: scales every sampled symbol by (1 + eps) so
/// the diagnostic suite can prove it notices a corrupted multiplier.
void set_kernel_fault_for_tests(double eps);

} // namespace wradon
