#pragma once

#include <complex>
#include <vector>

#include "wradon/field.hpp"

namespace wradon {

/// In-place 3D DFT of an x-fastest cube array. sign = -1 forward, +1
/// backward; both unnormalized (FFTW convention).
void dft3(std::vector<cplx>& data, const std::array<int, 3>& dims, int sign);

/// Batched in-place 1D DFTs: `count` contiguous rows of length n.
void dft1_rows(std::vector<cplx>& data, int n, int count, int sign);

/// Physical frequency of DFT bin c on an n-point axis with sample spacing h:
/// 2*pi*c' / (n*h) with c' = c for c < n/2, c - n for c >= n/2.
inline double dft_frequency(int c, int n, double h) {
    const int cc = (c < (n + 1) / 2) ? c : c - n;
    return 2.0 * M_PI * cc / (n * h);
}

/// Field embedded in a zero cube of pad_factor*N per axis (original voxels
/// at index offset (pad-1)*N/2), for FFT work that needs breathing room
/// against periodic wrap. crop() returns to the original layout.
struct PaddedField {
    GridGeometry geom;          // padded geometry
    std::array<int, 3> offset;  // index of original voxel (0,0,0)
    GridGeometry original;
    std::vector<cplx> values;
};

PaddedField pad_field(const ScalarField3D& u, int pad_factor);
ScalarField3D crop_field(const PaddedField& p);

} // namespace wradon
