#include "wradon/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace wradon {

namespace {
// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex g_plan_mutex;
}

void dft3(std::vector<cplx>& data, const std::array<int, 3>& dims, int sign) {
    const std::size_t n =
        static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
    if (data.size() != n) throw std::invalid_argument("dft3: size mismatch");
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(g_plan_mutex);
        // dims are x-fastest; FFTW wants row-major (last index fastest).
        plan = fftw_plan_dft_3d(dims[2], dims[1], dims[0], ptr, ptr,
                                sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("dft3: fftw plan failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(g_plan_mutex);
        fftw_destroy_plan(plan);
    }
}

void dft1_rows(std::vector<cplx>& data, int n, int count, int sign) {
    if (data.size() != static_cast<std::size_t>(n) * count)
        throw std::invalid_argument("dft1_rows: size mismatch");
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(g_plan_mutex);
        plan = fftw_plan_many_dft(1, &n, count, ptr, nullptr, 1, n, ptr, nullptr, 1, n,
                                  sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("dft1_rows: fftw plan failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(g_plan_mutex);
        fftw_destroy_plan(plan);
    }
}

PaddedField pad_field(const ScalarField3D& u, int pad_factor) {
    if (pad_factor < 1) throw std::invalid_argument("pad_field: pad_factor >= 1");
    PaddedField p;
    p.original = u.geom;
    p.geom = u.geom;
    for (int a = 0; a < 3; ++a) p.geom.dims[a] = u.geom.dims[a] * pad_factor;
    p.offset = {(p.geom.dims[0] - u.geom.dims[0]) / 2, (p.geom.dims[1] - u.geom.dims[1]) / 2,
                (p.geom.dims[2] - u.geom.dims[2]) / 2};
    p.geom.origin = {u.geom.origin.x - p.offset[0] * u.geom.spacing,
                     u.geom.origin.y - p.offset[1] * u.geom.spacing,
                     u.geom.origin.z - p.offset[2] * u.geom.spacing};
    p.values.assign(static_cast<std::size_t>(p.geom.size()), cplx(0.0, 0.0));
    for (int k = 0; k < u.geom.dims[2]; ++k)
        for (int j = 0; j < u.geom.dims[1]; ++j) {
            const std::int64_t src = u.geom.index(0, j, k);
            const std::int64_t dst =
                p.geom.index(p.offset[0], j + p.offset[1], k + p.offset[2]);
            for (int i = 0; i < u.geom.dims[0]; ++i)
                p.values[static_cast<std::size_t>(dst + i)] =
                    u.values[static_cast<std::size_t>(src + i)];
        }
    return p;
}

ScalarField3D crop_field(const PaddedField& p) {
    ScalarField3D u(p.original);
    for (int k = 0; k < u.geom.dims[2]; ++k)
        for (int j = 0; j < u.geom.dims[1]; ++j) {
            const std::int64_t dst = u.geom.index(0, j, k);
            const std::int64_t src =
                p.geom.index(p.offset[0], j + p.offset[1], k + p.offset[2]);
            for (int i = 0; i < u.geom.dims[0]; ++i)
                u.values[static_cast<std::size_t>(dst + i)] =
                    p.values[static_cast<std::size_t>(src + i)];
        }
    return u;
}

} // namespace wradon
