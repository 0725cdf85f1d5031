#pragma once

#include <complex>
#include <vector>

namespace wradon {

/// Ordinary Legendre polynomial p_k(x) on [-1,1] by the three-term
/// recurrence. Throws for |x| > 1.
double legendre_p(int k, double x);

/// Semi-normalized associated Legendre function: the ordinary associated
/// function with Condon-Shortley sign, scaled by sqrt((k-n)!/(k+n)!), so
/// that its squared integral over [-1,1] is 2/(2k+1) for every order.
/// Requires 0 <= n <= k and |x| <= 1.
double legendre_assoc(int k, int n, double x);

/// Y_k^n(gamma,phi) = p_k^{|n|}(cos gamma) * exp(i n phi), |n| <= k.
std::complex<double> ylm(int k, int n, double gamma, double phi);

/// sup over [-1,1] of |p_k^{|n|}|, by dense scan including the endpoints.
/// Equals 1 for n = 0 (attained at x = +-1) and is < 1 otherwise.
double legendre_assoc_max_abs(int k, int n);

/// Gauss-Legendre nodes (ascending) and weights on [-1,1]. Nodes are
/// constructed in exactly mirrored pairs: x[i] == -x[n-1-i] bitwise.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace wradon
