#include "wradon/operators.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

#include "wradon/fft.hpp"
#include "wradon/kernels.hpp"
#include "wradon/legendre.hpp"
#include "wradon/parallel.hpp"
#include "wradon/radon.hpp"

namespace wradon {

namespace {

double mask_inf_abs(const ScalarField3D& w00, const DomainMask& mask) {
    require_compatible(w00.geom, mask.geom, "sigma/apply_Q");
    double inf = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < w00.values.size(); ++i)
        if (mask.in[i]) inf = std::min(inf, std::abs(w00.values[i]));
    return std::isfinite(inf) ? inf : 0.0;
}

double symbol_max_abs(int two_k, int n) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, double> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(two_k, std::abs(n));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const double v = legendre_assoc_max_abs(two_k, std::abs(n));
    cache[key] = v;
    return v;
}

void require_order(const HarmonicCoefficients& coeffs, int m, const char* what) {
    if (m < 0) throw std::invalid_argument(std::string(what) + ": m >= 0");
    if (2 * m > coeffs.k_max())
        throw std::invalid_argument(std::string(what) +
                                    ": order m exceeds resolved coefficient degree");
}

void append_note(SolveReport& report, const std::string& msg) {
    if (!report.note.empty()) report.note += "; ";
    report.note += msg;
}

} // namespace

std::pair<double, double> sigma(const HarmonicCoefficients& coeffs, const DomainMask& mask,
                                int m) {
    require_order(coeffs, m, "sigma");
    const auto& w00 = coeffs.entry(0, 0);
    const double c = mask_inf_abs(w00, mask);
    if (!(c > 0.0)) throw std::invalid_argument("sigma: w_{0,0} vanishes on the domain");

    double paper = 0.0, measured = 0.0;
    for (int k = 1; k <= m; ++k)
        for (int n = -2 * k; n <= 2 * k; ++n) {
            const auto& w = coeffs.entry(2 * k, n);
            double sup = 0.0;
            for (std::size_t i = 0; i < w.values.size(); ++i)
                if (mask.in[i]) sup = std::max(sup, std::abs(w.values[i] / w00.values[i]));
            paper += sup / (2.0 * M_PI * std::sqrt(2.0));
            measured += sup * symbol_max_abs(2 * k, n);
        }
    return {paper, measured};
}

ScalarField3D apply_Q(const ScalarField3D& u, const HarmonicCoefficients& coeffs,
                      const DomainMask& mask, int m, const QOptions& opt) {
    require_compatible(u.geom, coeffs.geom(), "apply_Q");
    require_compatible(u.geom, mask.geom, "apply_Q");
    require_order(coeffs, m, "apply_Q");
    if (m == 0) return ScalarField3D(u.geom);

    const auto& w00 = coeffs.entry(0, 0);
    if (!(mask_inf_abs(w00, mask) > 0.0))
        throw std::invalid_argument("apply_Q: w_{0,0} vanishes on the domain");

    const int pad = opt.effective_pad(m);
    PaddedField accum = pad_field(ScalarField3D(u.geom), pad);
    std::vector<cplx> acc_spec(accum.values.size(), cplx(0.0, 0.0));

    ScalarField3D term(u.geom);
    for (int k = 1; k <= m; ++k)
        for (int n = -2 * k; n <= 2 * k; ++n) {
            const auto& w = coeffs.entry(2 * k, n);
            bool any = false;
            for (std::size_t i = 0; i < term.values.size(); ++i) {
                if (mask.in[i]) {
                    term.values[i] = w.values[i] / w00.values[i] * u.values[i];
                    any = any || term.values[i] != cplx(0.0, 0.0);
                } else {
                    term.values[i] = 0.0;
                }
            }
            if (!any) continue;
            PaddedField p = pad_field(term, pad);
            dft3(p.values, p.geom.dims, -1);
            add_symbol_product(2 * k, n, p.geom.dims, p.values, acc_spec);
        }

    const double inv_n = 1.0 / static_cast<double>(accum.geom.size());
    for (std::size_t i = 0; i < acc_spec.size(); ++i) acc_spec[i] *= inv_n;
    dft3(acc_spec, accum.geom.dims, +1);
    accum.values = std::move(acc_spec);
    return crop_field(accum);
}

ScalarField3D neumann_iterate(const ScalarField3D& g,
                              const std::function<ScalarField3D(const ScalarField3D&)>& apply,
                              double tol, int max_iter, SolveReport& report) {
    const double g_norm = field_norm_l2(g);
    report.tol = tol;
    report.residual_history.clear();
    report.converged = false;
    if (g_norm == 0.0) {
        report.converged = true;
        report.iterations = 0;
        report.fixed_point_residual = 0.0;
        return g;
    }

    ScalarField3D u = g;
    double prev = std::numeric_limits<double>::infinity();
    int growth_streak = 0;
    bool aborted = false;
    for (int it = 0; it < max_iter; ++it) {
        ScalarField3D qu = apply(u);
        ScalarField3D next(g.geom);
        double diff2 = 0.0;
        for (std::size_t i = 0; i < next.values.size(); ++i) {
            next.values[i] = g.values[i] - qu.values[i];
            diff2 += std::norm(next.values[i] - u.values[i]);
        }
        const double res = std::sqrt(diff2 * g.geom.voxel_volume()) / g_norm;
        report.residual_history.push_back(res);
        u = std::move(next);
        if (res <= tol) {
            report.converged = true;
            break;
        }
        if (res > prev) {
            if (++growth_streak >= 3) {
                append_note(report, "aborted: residual grew for 3 consecutive iterations");
                aborted = true;
                break;
            }
        } else {
            growth_streak = 0;
        }
        prev = res;
    }
    report.iterations = static_cast<int>(report.residual_history.size());
    if (!report.converged && !aborted)
        append_note(report, "stopped at max_iter before reaching tol");

    // Honest fixed-point residual of the iterate actually returned.
    ScalarField3D qu = apply(u);
    double fp2 = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i)
        fp2 += std::norm(u.values[i] + qu.values[i] - g.values[i]);
    report.fixed_point_residual = std::sqrt(fp2 * g.geom.voxel_volume()) / g_norm;
    return u;
}

std::pair<ScalarField3D, SolveReport> neumann_solve(const ScalarField3D& g,
                                                    const HarmonicCoefficients& coeffs,
                                                    const DomainMask& mask, int m, double tol,
                                                    int max_iter, bool allow_divergent,
                                                    const QOptions& opt) {
    SolveReport report;
    report.m = m;
    auto [sp, sm] = sigma(coeffs, mask, m);
    report.sigma_paper = sp;
    report.sigma_measured = sm;
    report.c_lower = mask_inf_abs(coeffs.entry(0, 0), mask);
    if (sm >= 1.0) {
        if (!allow_divergent)
            throw GateError(
                "neumann_solve: contraction gate failed (sigma_measured >= 1); "
                "pass the override to proceed anyway");
        report.note = "sigma_measured >= 1: proceeding on explicit override";
    }
    ScalarField3D u = neumann_iterate(
        g, [&](const ScalarField3D& v) { return apply_Q(v, coeffs, mask, m, opt); }, tol,
        max_iter, report);
    return {std::move(u), std::move(report)};
}

namespace {

ScalarField3D masked_divide(const ScalarField3D& u, const ScalarField3D& w00,
                            const DomainMask& mask) {
    ScalarField3D f(u.geom);
    for (std::size_t i = 0; i < u.values.size(); ++i)
        f.values[i] = mask.in[i] ? u.values[i] / w00.values[i] : cplx(0.0, 0.0);
    return f;
}

} // namespace

double ratio_tail_l2(const HarmonicCoefficients& coeffs, const DomainMask& mask, int m) {
    const auto& w00 = coeffs.entry(0, 0);
    const int k_half = coeffs.k_max() / 2;
    double tail = 0.0;
    ScalarField3D ratio(coeffs.geom());
    for (int k = m + 1; k <= k_half; ++k)
        for (int n = -2 * k; n <= 2 * k; ++n) {
            const auto& w = coeffs.entry(2 * k, n);
            for (std::size_t i = 0; i < ratio.values.size(); ++i)
                ratio.values[i] = mask.in[i] ? w.values[i] / w00.values[i] : cplx(0.0, 0.0);
            tail += field_norm_l2(ratio, mask);
        }
    return tail;
}

double error_bound(const HarmonicCoefficients& coeffs, const DomainMask& mask, int m,
                   double f_sup) {
    require_order(coeffs, m, "error_bound");
    auto [sig_paper, sig_meas] = sigma(coeffs, mask, m);
    (void)sig_meas;
    if (sig_paper >= 1.0) throw std::invalid_argument("error_bound: sigma_m >= 1");
    const double c = mask_inf_abs(coeffs.entry(0, 0), mask);
    if (!(c > 0.0)) throw std::invalid_argument("error_bound: w_{0,0} vanishes on the domain");

    const int k_half = coeffs.k_max() / 2;
    double tail = 0.0;
    for (int k = m + 1; k <= k_half; ++k)
        for (int n = -2 * k; n <= 2 * k; ++n)
            tail += field_norm_l2(coeffs.entry(2 * k, n), mask);
    if (tail == 0.0) return 0.0;
    return f_sup * tail / (2.0 * M_PI * std::sqrt(2.0) * c * (1.0 - sig_paper));
}

std::pair<ScalarField3D, SolveReport> invert_approx(const Sinogram& q,
                                                    const HarmonicCoefficients& coeffs,
                                                    const DomainMask& mask, int m,
                                                    const InversionOptions& opt) {
    require_order(coeffs, m, "invert_approx");
    ScalarField3D g = inverse_radon_fbp(q, coeffs.geom());
    SolveReport report;
    ScalarField3D u(g.geom);
    if (m == 0) {
        // zeroth order: no integral-equation step at all
        report.m = 0;
        report.converged = true;
        report.iterations = 0;
        report.c_lower = mask_inf_abs(coeffs.entry(0, 0), mask);
        if (!(report.c_lower > 0.0))
            throw std::invalid_argument("invert_approx: w_{0,0} vanishes on the domain");
        u = g;
    } else {
        auto [uu, rep] = neumann_solve(g, coeffs, mask, m, opt.tol, opt.max_iter,
                                       opt.allow_divergent, opt.q);
        u = std::move(uu);
        report = std::move(rep);
    }
    ScalarField3D f = masked_divide(u, coeffs.entry(0, 0), mask);
    const double f_sup = opt.f_sup ? *opt.f_sup : field_sup(f, mask);
    report.error_bound = error_bound(coeffs, mask, m, f_sup);
    report.ratio_tail_l2 = ratio_tail_l2(coeffs, mask, 0);
    return {std::move(f), std::move(report)};
}

std::pair<ScalarField3D, SolveReport> invert_exact(const Sinogram& q,
                                                   const HarmonicCoefficients& coeffs,
                                                   const DomainMask& mask,
                                                   const InversionOptions& opt) {
    const int k_half = coeffs.k_max() / 2;
    ScalarField3D g = inverse_radon_fbp(q, coeffs.geom());
    SolveReport report;
    ScalarField3D u(g.geom);
    if (k_half == 0) {
        report.m = 0;
        report.converged = true;
        report.iterations = 0;
        report.c_lower = mask_inf_abs(coeffs.entry(0, 0), mask);
        if (!(report.c_lower > 0.0))
            throw std::invalid_argument("invert_exact: w_{0,0} vanishes on the domain");
        u = g;
    } else {
        auto [uu, rep] = neumann_solve(g, coeffs, mask, k_half, opt.tol, opt.max_iter,
                                       opt.allow_divergent, opt.q);
        u = std::move(uu);
        report = std::move(rep);
    }
    ScalarField3D f = masked_divide(u, coeffs.entry(0, 0), mask);
    report.ratio_tail_l2 = ratio_tail_l2(coeffs, mask, 0);
    return {std::move(f), std::move(report)};
}

} // namespace wradon
