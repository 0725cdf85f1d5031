#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wradon/field.hpp"
#include "wradon/harmonics.hpp"
#include "wradon/sinogram.hpp"

namespace wradon {

/// Refusal to iterate outside the contraction regime (distinct from plain
/// runtime errors so callers can map it to a dedicated exit status).
struct GateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolveReport {
    /// Contraction budget via the uniform 1/(2 pi sqrt 2) multiplier bound.
    double sigma_paper = 0.0;
    /// Same sum with per-harmonic measured symbol maxima sup|Y_{2k}^n|;
    /// this is the bound the solver actually gates on.
    double sigma_measured = 0.0;
    /// inf over the mask of |w_{0,0}|.
    double c_lower = 0.0;
    int m = 0;
    int iterations = 0;
    bool converged = false;
    double tol = 0.0;
    /// ||u + Qu - g|| / ||g|| of the returned iterate.
    double fixed_point_residual = 0.0;
    /// Relative update ||u_{j+1} - u_j|| / ||g|| per iteration.
    std::vector<double> residual_history;
    /// Truncation-tail error bound (set by invert_approx / error_bound).
    std::optional<double> error_bound;
    /// Finite tail sum of ||w_{2k,n}/w_{0,0}||_{L2(D)} (relaxed-condition
    /// diagnostic).
    double ratio_tail_l2 = 0.0;
    std::string note;
};

/// Both truncated contraction sums over k = 1..m, |n| <= 2k of
/// sup_D |w_{2k,n}/w_{0,0}|: first scaled uniformly by 1/(2 pi sqrt 2),
/// second scaled per harmonic by the measured sup|Y_{2k}^n|. Zero for m=0.
/// Requires w_{0,0} bounded away from 0 on the mask.
std::pair<double, double> sigma(const HarmonicCoefficients& coeffs, const DomainMask& mask, int m);

struct QOptions {
    /// FFT padding factor for the multiplier applications; 0 picks
    /// automatically (2 when only degree-2 symbols appear, 3 beyond, where
    /// the coarse near-DC frequency bins need refining).
    int pad_factor = 0;

    int effective_pad(int m) const { return pad_factor > 0 ? pad_factor : (m >= 2 ? 3 : 2); }
};

/// The degree-truncated perturbation operator:
/// Q u = sum_{k=1..m} sum_{|n|<=2k} IDFT[ Y_{2k}^n(xi-hat) * DFT[(w_{2k,n}/w_{0,0}) chi_D u] ].
/// Linear in u; zero for m = 0. Requires 2m <= K_max and c_lower > 0.
ScalarField3D apply_Q(const ScalarField3D& u, const HarmonicCoefficients& coeffs,
                      const DomainMask& mask, int m, const QOptions& opt = {});

/// Fixed-point iteration u_{j+1} = g - A u_j from u_0 = g for a generic
/// linear operator A; the Neumann partial sums of (I+A)^{-1} g. Stops when
/// the relative update falls below tol, aborts after three consecutive
/// residual increases or max_iter. Fills iteration fields of `report`.
ScalarField3D neumann_iterate(const ScalarField3D& g,
                              const std::function<ScalarField3D(const ScalarField3D&)>& apply,
                              double tol, int max_iter, SolveReport& report);

/// Solves u + Q u = g by successive approximations. Refuses (throws) when
/// sigma_measured >= 1 unless allow_divergent; then proceeds and reports.
std::pair<ScalarField3D, SolveReport> neumann_solve(const ScalarField3D& g,
                                                    const HarmonicCoefficients& coeffs,
                                                    const DomainMask& mask, int m, double tol,
                                                    int max_iter, bool allow_divergent = false,
                                                    const QOptions& opt = {});

struct InversionOptions {
    double tol = 1e-8;
    int max_iter = 50;
    bool allow_divergent = false;
    QOptions q;
    /// Sup-norm estimate of the unknown function for the error bound; if
    /// unset, the sup of the reconstruction is used.
    std::optional<double> f_sup;
};

/// Full-order inversion: g = FBP(q), solve u + Q_{K_max/2} u = g, then
/// f = u / w_{0,0} on the mask and 0 outside.
std::pair<ScalarField3D, SolveReport> invert_exact(const Sinogram& q,
                                                   const HarmonicCoefficients& coeffs,
                                                   const DomainMask& mask,
                                                   const InversionOptions& opt = {});

/// Order-m approximate inversion (m = 0 is the zeroth-order normalized
/// backprojection f_0 = FBP(q)/w_{0,0}). The report carries the
/// truncation-tail error bound at order m.
std::pair<ScalarField3D, SolveReport> invert_approx(const Sinogram& q,
                                                    const HarmonicCoefficients& coeffs,
                                                    const DomainMask& mask, int m,
                                                    const InversionOptions& opt = {});

/// Truncation-tail error bound at order m:
///   f_sup / (2 pi sqrt2 * c * (1 - sigma_paper_m)) *
///     sum_{k=m+1..floor(K_max/2)} sum_n ||w_{2k,n}||_{L2(D)}.
/// Zero when the tail is empty. Throws if sigma_paper_m >= 1.
double error_bound(const HarmonicCoefficients& coeffs, const DomainMask& mask, int m,
                   double f_sup);

/// Finite tail sum_{k=m+1..floor(K_max/2)} sum_n ||w_{2k,n}/w_{0,0}||_{L2(D)}.
double ratio_tail_l2(const HarmonicCoefficients& coeffs, const DomainMask& mask, int m);

} // namespace wradon
