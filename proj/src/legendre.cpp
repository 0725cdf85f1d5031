#include "wradon/legendre.hpp"

#include <cmath>
#include <stdexcept>

namespace wradon {

double legendre_p(int k, double x) {
    if (k < 0) throw std::invalid_argument("legendre_p: negative degree");
    if (std::abs(x) > 1.0) throw std::invalid_argument("legendre_p: |x| > 1");
    if (k == 0) return 1.0;
    double pm1 = 1.0, p = x;
    for (int j = 1; j < k; ++j) {
        const double pn = ((2 * j + 1) * x * p - j * pm1) / (j + 1);
        pm1 = p;
        p = pn;
    }
    return p;
}

double legendre_assoc(int k, int n, double x) {
    if (n < 0 || n > k) throw std::invalid_argument("legendre_assoc: need 0 <= n <= k");
    if (std::abs(x) > 1.0) throw std::invalid_argument("legendre_assoc: |x| > 1");
    if (n == 0) return legendre_p(k, x);

    // Seed on the diagonal, then ascend in degree at fixed order. The
    // sqrt((k-n)!/(k+n)!) scaling is folded into the recurrence so every
    // intermediate stays O(1).
    const double sx2 = (1.0 - x) * (1.0 + x);  // sin^2(gamma), >= 0
    double diag = 1.0;
    for (int j = 1; j <= n; ++j) diag *= std::sqrt((2.0 * j - 1.0) / (2.0 * j));
    diag *= (n % 2 ? -1.0 : 1.0) * std::pow(std::sqrt(sx2), n);
    if (k == n) return diag;

    double pm1 = diag;
    double p = x * std::sqrt(2.0 * n + 1.0) * diag;
    for (int j = n + 2; j <= k; ++j) {
        const double a = std::sqrt(static_cast<double>(j) * j - static_cast<double>(n) * n);
        const double b = std::sqrt(static_cast<double>(j - 1) * (j - 1) - static_cast<double>(n) * n);
        const double pn = ((2.0 * j - 1.0) * x * p - b * pm1) / a;
        pm1 = p;
        p = pn;
    }
    return p;
}

std::complex<double> ylm(int k, int n, double gamma, double phi) {
    const int an = n < 0 ? -n : n;
    if (an > k) throw std::invalid_argument("ylm: |n| > k");
    const double p = legendre_assoc(k, an, std::cos(gamma));
    return p * std::complex<double>(std::cos(n * phi), std::sin(n * phi));
}

double legendre_assoc_max_abs(int k, int n) {
    const int an = n < 0 ? -n : n;
    if (an == 0) return 1.0;  // |p_k(+-1)| = 1 dominates
    const int samples = 20000;
    double best = 0.0;
    double xbest = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double x = -1.0 + 2.0 * i / samples;
        const double v = std::abs(legendre_assoc(k, an, x));
        if (v > best) {
            best = v;
            xbest = x;
        }
    }
    // One golden-section refinement pass around the scan winner.
    double lo = std::max(-1.0, xbest - 2.0 / samples);
    double hi = std::min(1.0, xbest + 2.0 / samples);
    for (int it = 0; it < 60; ++it) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (std::abs(legendre_assoc(k, an, m1)) < std::abs(legendre_assoc(k, an, m2)))
            lo = m1;
        else
            hi = m2;
    }
    return std::max(best, std::abs(legendre_assoc(k, an, 0.5 * (lo + hi))));
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi-style initial guess for the i-th root from above.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            const double p = legendre_p(n, x);
            dp = n * (legendre_p(n - 1, x) - x * p) / (1.0 - x * x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
        nodes[i] = -x;  // exact mirror pairs by construction
        weights[i] = w;
    }
    if (n % 2) {
        nodes[n / 2] = 0.0;
        const double dp = n * legendre_p(n - 1, 0.0);
        weights[n / 2] = 2.0 / (dp * dp);
    }
}

} // namespace wradon
