#pragma once

#include <stdexcept>
#include <string>

#include "wradon/field.hpp"
#include "wradon/harmonics.hpp"
#include "wradon/operators.hpp"
#include "wradon/sinogram.hpp"

namespace wradon {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Volume file: raw little-endian float64 (re, im) pairs in x-fastest
/// order; JSON sidecar <path>.json with {dims, spacing, origin, complex}.
void write_volume(const std::string& path, const ScalarField3D& u, bool mark_complex = true);
ScalarField3D read_volume(const std::string& path);

/// Mask file: same layout with 0/1 values.
void write_mask(const std::string& path, const DomainMask& mask);
DomainMask read_mask(const std::string& path);

/// Sinogram file: raw little-endian float64 (re, im) pairs, direction-major;
/// sidecar {n_gamma, n_phi, n_s, s_max, complex}.
void write_sinogram(const std::string& path, const Sinogram& q, bool mark_complex = true);
Sinogram read_sinogram(const std::string& path);

/// Coefficient bundle: one volume file per entry plus a manifest
/// {k_max, entries: [{k, n, file}]}. Entry files live next to the manifest.
void write_coefficients(const std::string& manifest_path, const HarmonicCoefficients& coeffs);
HarmonicCoefficients read_coefficients(const std::string& manifest_path);

void write_report_json(const std::string& path, const SolveReport& report);
void write_residuals_csv(const std::string& path, const SolveReport& report);

/// 16-bit P5 PGM of an axial slice (real part, min-max scaled); the scale
/// is recorded in <path>.json.
void write_pgm_slice(const std::string& path, const ScalarField3D& u, int k_slice);

} // namespace wradon
