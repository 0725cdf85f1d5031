#include "wradon/kernels.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "wradon/fft.hpp"
#include "wradon/legendre.hpp"
#include "wradon/parallel.hpp"

namespace wradon {

namespace {

std::atomic<double> g_kernel_fault{0.0};

double d2kn_constant(int k) {
    // sqrt(2) Gamma(3/2+k) / (pi Gamma(k)), via log-Gamma
    return std::sqrt(2.0) / M_PI * std::exp(std::lgamma(1.5 + k) - std::lgamma(k));
}

/// Semi-normalized associated Legendre evaluator with the degree/order
/// fixed, recurrence constants precomputed (hot loops over frequency bins).
struct AssocEval {
    int k = 0, n = 0;
    double diag = 1.0;  // (-1)^n prod sqrt((2j-1)/(2j))
    std::vector<std::pair<double, double>> steps;  // (1/a_j, b_j)

    AssocEval(int k_, int n_) : k(k_), n(n_) {
        for (int j = 1; j <= n; ++j) diag *= std::sqrt((2.0 * j - 1.0) / (2.0 * j));
        if (n % 2) diag = -diag;
        for (int j = n + 2; j <= k; ++j) {
            const double a = std::sqrt(static_cast<double>(j) * j - static_cast<double>(n) * n);
            const double b =
                std::sqrt(static_cast<double>(j - 1) * (j - 1) - static_cast<double>(n) * n);
            steps.emplace_back(1.0 / a, b);
        }
    }

    double operator()(double x, double sinx) const {
        double p = diag;
        for (int j = 0; j < n; ++j) p *= sinx;
        if (k == n) return p;
        double pm1 = p;
        p *= x * std::sqrt(2.0 * n + 1.0);
        int j = n + 2;
        for (const auto& [inv_a, b] : steps) {
            const double pn = ((2.0 * j - 1.0) * x * p - b * pm1) * inv_a;
            pm1 = p;
            p = pn;
            ++j;
        }
        return p;
    }
};

/// Direction angles of every DFT frequency bin of a cube (independent of
/// the sample spacing), cached per dims.
struct FreqAngles {
    std::array<int, 3> dims{};
    std::vector<double> cosg;   // z / |c|
    std::vector<double> sing;
    std::vector<cplx> eiphi;    // unit azimuth phasor; 1 on the z axis
};

const FreqAngles& frequency_angles(const std::array<int, 3>& dims) {
    static std::mutex mutex;
    static std::map<std::array<int, 3>, std::unique_ptr<FreqAngles>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(dims);
    if (it != cache.end()) return *it->second;

    auto fa = std::make_unique<FreqAngles>();
    fa->dims = dims;
    const std::size_t n = static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
    fa->cosg.resize(n);
    fa->sing.resize(n);
    fa->eiphi.resize(n);
    std::size_t idx = 0;
    for (int kz = 0; kz < dims[2]; ++kz) {
        const double cz = kz < (dims[2] + 1) / 2 ? kz : kz - dims[2];
        for (int jy = 0; jy < dims[1]; ++jy) {
            const double cy = jy < (dims[1] + 1) / 2 ? jy : jy - dims[1];
            for (int ix = 0; ix < dims[0]; ++ix, ++idx) {
                const double cx = ix < (dims[0] + 1) / 2 ? ix : ix - dims[0];
                const double rxy2 = cx * cx + cy * cy;
                const double r = std::sqrt(rxy2 + cz * cz);
                if (r == 0.0) {
                    fa->cosg[idx] = 1.0;
                    fa->sing[idx] = 0.0;
                    fa->eiphi[idx] = 1.0;
                    continue;
                }
                fa->cosg[idx] = cz / r;
                fa->sing[idx] = std::sqrt(rxy2) / r;
                fa->eiphi[idx] =
                    rxy2 == 0.0 ? cplx(1.0, 0.0) : cplx(cx, cy) / std::sqrt(rxy2);
            }
        }
    }
    const FreqAngles& ref = *fa;
    cache[dims] = std::move(fa);
    return ref;
}

cplx phase_power(const cplx& e, int n) {
    if (n == 0) return 1.0;
    cplx base = n > 0 ? e : std::conj(e);
    int m = n > 0 ? n : -n;
    cplx acc = 1.0;
    while (m) {
        if (m & 1) acc *= base;
        base *= base;
        m >>= 1;
    }
    return acc;
}

} // namespace

cplx d2kn_closed_form(int k, int n, double r, double gamma, double phi) {
    if (k < 1) throw std::invalid_argument("d2kn_closed_form: k >= 1");
    if (std::abs(n) > 2 * k) throw std::invalid_argument("d2kn_closed_form: |n| <= 2k");
    if (!(r > 0.0)) throw std::invalid_argument("d2kn_closed_form: r > 0 (singular at 0)");
    const double c = (k % 2 ? -1.0 : 1.0) * d2kn_constant(k);
    return c * ylm(2 * k, n, gamma, phi) / (r * r * r);
}

std::vector<cplx> kernel_multiplier(int k, int n, const std::array<int, 3>& dims) {
    if (k < 1) throw std::invalid_argument("kernel_multiplier: k >= 1");
    if (std::abs(n) > 2 * k) throw std::invalid_argument("kernel_multiplier: |n| <= 2k");
    const FreqAngles& fa = frequency_angles(dims);
    const AssocEval pe(2 * k, std::abs(n));
    const double inv2pi = (1.0 + g_kernel_fault.load()) / (2.0 * M_PI);
    std::vector<cplx> out(fa.cosg.size());
    parallel_for(0, static_cast<std::int64_t>(out.size()), [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            const auto s = static_cast<std::size_t>(i);
            out[s] = pe(fa.cosg[s], fa.sing[s]) * phase_power(fa.eiphi[s], n) * inv2pi;
        }
    });
    out[0] = 0.0;  // DC by convention
    return out;
}

void set_kernel_fault_for_tests(double eps) { g_kernel_fault.store(eps); }

double gamma_constant(int k, int dim) {
    if (k < 1 || dim < 3) throw std::invalid_argument("gamma_constant: k >= 1, dim >= 3");
    const double n = dim;
    double lg = 0.5 * std::log(2.0) + 0.5 * (1.0 - n) * std::log(M_PI);
    lg += std::lgamma(k + 0.5) + std::lgamma(k + 0.5 * n);
    lg -= std::lgamma(k) + std::lgamma(k + 0.5 * (n - 1.0));
    lg += (n - 2.0) * (std::lgamma(k + 1.0) - std::lgamma(k + 0.5));
    return std::exp(lg);
}

ScalarField3D convolve_d2kn(const ScalarField3D& u, int k, int n, int pad_factor) {
    PaddedField p = pad_field(u, pad_factor);
    dft3(p.values, p.geom.dims, -1);
    const std::vector<cplx> mult = kernel_multiplier(k, n, p.geom.dims);
    const double norm = std::pow(2.0 * M_PI, 1.5) / static_cast<double>(p.geom.size());
    for (std::size_t i = 0; i < p.values.size(); ++i) p.values[i] *= mult[i] * norm;
    dft3(p.values, p.geom.dims, +1);
    return crop_field(p);
}

void add_symbol_product(int two_k, int n, const std::array<int, 3>& dims,
                        const std::vector<cplx>& spec, std::vector<cplx>& accum) {
    if (two_k < 2 || two_k % 2) throw std::invalid_argument("add_symbol_product: even degree >= 2");
    if (spec.size() != accum.size())
        throw std::invalid_argument("add_symbol_product: size mismatch");
    const FreqAngles& fa = frequency_angles(dims);
    if (fa.cosg.size() != spec.size())
        throw std::invalid_argument("add_symbol_product: dims mismatch");
    const AssocEval pe(two_k, std::abs(n));
    const double gain = 1.0 + g_kernel_fault.load();
    parallel_for(1, static_cast<std::int64_t>(spec.size()), [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            const auto s = static_cast<std::size_t>(i);
            accum[s] += gain * pe(fa.cosg[s], fa.sing[s]) * phase_power(fa.eiphi[s], n) * spec[s];
        }
    });
    // bin 0 (DC) intentionally skipped
}

} // namespace wradon
