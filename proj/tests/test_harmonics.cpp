#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "wradon/harmonics.hpp"
#include "wradon/legendre.hpp"
#include "wradon/weights.hpp"

using namespace wradon;

namespace {

// ---- independent oracle: Legendre polynomials as explicit coefficient
// vectors built from (j+1)p_{j+1} = (2j+1)x p_j - j p_{j-1}, evaluated by
// Horner; the associated functions by symbolic differentiation. This path
// never touches the library recurrences.

std::vector<double> legendre_coeffs(int k) {
    std::vector<std::vector<double>> p{{1.0}, {0.0, 1.0}};
    for (int j = 1; j < k; ++j) {
        std::vector<double> next(j + 2, 0.0);
        for (std::size_t a = 0; a < p[j].size(); ++a) next[a + 1] += (2.0 * j + 1.0) * p[j][a];
        for (std::size_t a = 0; a < p[j - 1].size(); ++a) next[a] -= j * p[j - 1][a];
        for (auto& c : next) c /= (j + 1.0);
        p.push_back(std::move(next));
    }
    return p[static_cast<std::size_t>(k)];
}

std::vector<double> differentiate(std::vector<double> c, int times) {
    for (int t = 0; t < times; ++t) {
        std::vector<double> d(c.size() > 1 ? c.size() - 1 : 1, 0.0);
        for (std::size_t a = 1; a < c.size(); ++a) d[a - 1] = a * c[a];
        c = std::move(d);
    }
    return c;
}

double horner(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (std::size_t a = c.size(); a-- > 0;) v = v * x + c[a];
    return v;
}

double oracle_legendre(int k, double x) { return horner(legendre_coeffs(k), x); }

double oracle_assoc(int k, int n, double x) {
    double sqrt_ratio = 1.0;  // sqrt((k-n)!/(k+n)!)
    for (int j = k - n + 1; j <= k + n; ++j) sqrt_ratio /= std::sqrt(static_cast<double>(j));
    const double deriv = horner(differentiate(legendre_coeffs(k), n), x);
    return (n % 2 ? -1.0 : 1.0) * sqrt_ratio * std::pow(1.0 - x * x, 0.5 * n) * deriv;
}

double integrate_poly_squared(const std::vector<double>& c) {
    // int_{-1}^{1} (sum c_a x^a)^2 dx, exact per-term
    double acc = 0.0;
    for (std::size_t a = 0; a < c.size(); ++a)
        for (std::size_t b = 0; b < c.size(); ++b) {
            if ((a + b) % 2 == 0) acc += c[a] * c[b] * 2.0 / (a + b + 1.0);
        }
    return acc;
}

} // namespace

TEST_CASE("legendre_p examples and oracle sweep") {
    CHECK(legendre_p(0, 0.3) == 1.0);
    CHECK(legendre_p(1, 0.5) == 0.5);
    CHECK(legendre_p(2, 0.5) == doctest::Approx(oracle_legendre(2, 0.5)).epsilon(1e-14));
    CHECK(legendre_p(2, 0.5) == doctest::Approx(-0.125).epsilon(1e-14));

    for (int k = 0; k <= 6; ++k)
        for (int i = 0; i <= 100; ++i) {
            const double x = -1.0 + 0.02 * i;
            CHECK(legendre_p(k, x) == doctest::Approx(oracle_legendre(k, x)).epsilon(1e-13));
        }
    CHECK_THROWS_AS(legendre_p(2, 1.5), std::invalid_argument);
}

TEST_CASE("legendre_assoc matches the factorial formula to 1e-12") {
    CHECK(legendre_assoc(1, 1, 0.0) == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(legendre_assoc(2, 1, 0.0) == doctest::Approx(0.0));

    for (int k = 0; k <= 12; ++k)
        for (int n = 0; n <= k; ++n)
            for (int i = 0; i <= 100; ++i) {
                const double x = -1.0 + 0.02 * i;
                const double want = oracle_assoc(k, n, x);
                CHECK(legendre_assoc(k, n, x) == doctest::Approx(want).epsilon(1e-12));
            }

    // n = 0 reduces to the ordinary polynomial
    for (int k = 0; k <= 10; ++k)
        CHECK(legendre_assoc(k, 0, 0.37) == doctest::Approx(legendre_p(k, 0.37)).epsilon(1e-14));

    CHECK_THROWS_AS(legendre_assoc(2, 3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(legendre_assoc(2, 1, 1.5), std::invalid_argument);
}

TEST_CASE("p_2 squared integrates to 2/5 (normalization cross-check)") {
    CHECK(integrate_poly_squared(legendre_coeffs(2)) == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("ylm values and parity") {
    CHECK(ylm(0, 0, 1.1, 2.2) == cplx(1.0, 0.0));
    CHECK(ylm(2, 0, 0.0, 0.7).real() == doctest::Approx(1.0).epsilon(1e-14));

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> ug(0.0, M_PI), up(0.0, 2.0 * M_PI);
    for (int k2 = 2; k2 <= 8; k2 += 2)
        for (int n = -k2; n <= k2; ++n)
            for (int t = 0; t < 5; ++t) {
                const double g = ug(rng), p = up(rng);
                const cplx a = ylm(k2, n, g, p);
                const cplx b = ylm(k2, n, M_PI - g, p + M_PI);
                CHECK(std::abs(a - b) < 1e-12);
            }
    // odd degrees flip sign instead
    for (int t = 0; t < 5; ++t) {
        const double g = ug(rng), p = up(rng);
        CHECK(std::abs(ylm(3, 1, g, p) + ylm(3, 1, M_PI - g, p + M_PI)) < 1e-12);
    }
}

TEST_CASE("sup of the semi-normalized functions") {
    for (int k = 1; k <= 8; ++k) {
        CHECK(legendre_assoc_max_abs(k, 0) == 1.0);
        for (int n = 1; n <= k; ++n) CHECK(legendre_assoc_max_abs(k, n) < 1.0);
    }
    // known closed form: |p_2^2| peaks at x = 0 with sqrt(3/8)
    CHECK(legendre_assoc_max_abs(2, 2) == doctest::Approx(std::sqrt(3.0 / 8.0)).epsilon(1e-9));
    // interior quadrature nodes never reach the n = 0 endpoint maximum
    std::vector<double> nodes, w;
    gauss_legendre(16, nodes, w);
    for (int k = 1; k <= 6; ++k) {
        double node_max = 0.0;
        for (double x : nodes) node_max = std::max(node_max, std::abs(legendre_assoc(k, 0, x)));
        CHECK(node_max < 1.0);
    }
}

namespace {

WeightFunction direction_only_weight(int k, int n) {
    return WeightFunction(
        "test",
        [k, n](double gamma, double phi) {
            const cplx y = ylm(k, n, gamma, phi);
            return WeightFunction::PointEval([y](const Vec3&) { return y; });
        },
        1.0);
}

} // namespace

TEST_CASE("analyze_weight projects exactly at quadrature-exact degrees") {
    auto grid = make_uniform_grid(8, 1.0);
    auto sphere = make_sphere_grid(8, 16);

    SUBCASE("constant weight") {
        auto w = constant_weight(5.0);
        auto coeffs = analyze_weight(w, grid.geom, sphere, 4);
        for (const auto& v : coeffs.entry(0, 0).values)
            CHECK(std::abs(v - cplx(5.0, 0.0)) < 1e-12);
        for (int k = 1; k <= 4; ++k)
            for (int n = -k; n <= k; ++n)
                for (const auto& v : coeffs.entry(k, n).values) CHECK(std::abs(v) < 1e-12);
        CHECK(coeffs.truncation_residual < 1e-6);
    }

    SUBCASE("pure harmonic weight lands in one entry") {
        auto w = direction_only_weight(2, 0);
        auto coeffs = analyze_weight(w, grid.geom, sphere, 4);
        for (const auto& v : coeffs.entry(2, 0).values)
            CHECK(std::abs(v - cplx(1.0, 0.0)) < 1e-10);
        for (int k = 0; k <= 4; ++k)
            for (int n = -k; n <= k; ++n) {
                if (k == 2 && n == 0) continue;
                for (const auto& v : coeffs.entry(k, n).values) CHECK(std::abs(v) < 1e-10);
            }
    }

    SUBCASE("spatial modulation is preserved") {
        WeightFunction w(
            "test",
            [](double gamma, double phi) {
                const cplx y = ylm(1, 0, gamma, phi);
                return WeightFunction::PointEval([y](const Vec3& p) { return p.x * y; });
            },
            1.0);
        auto coeffs = analyze_weight(w, grid.geom, sphere, 2);
        for (int k = 0; k < 8; ++k)
            for (int j = 0; j < 8; ++j)
                for (int i = 0; i < 8; ++i) {
                    const double want = grid.geom.point(i, j, k).x;
                    CHECK(std::abs(coeffs.entry(1, 0).at(i, j, k) - cplx(want, 0.0)) < 1e-10);
                }
    }

    SUBCASE("insufficient quadrature is rejected") {
        CHECK_THROWS_AS(analyze_weight(constant_weight(1.0), grid.geom, make_sphere_grid(3, 8), 4),
                        std::invalid_argument);
    }
}

namespace {

HarmonicCoefficients random_constant_coeffs(const GridGeometry& geom, int k_max,
                                            unsigned seed) {
    HarmonicCoefficients coeffs(geom, k_max);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    for (auto& v : coeffs.entry(0, 0).values) v = 2.0;
    for (int k = 1; k <= k_max; ++k)
        for (int n = -k; n <= k; ++n) {
            const cplx c(u(rng), u(rng));
            for (auto& v : coeffs.entry(k, n).values) v = c;
        }
    return coeffs;
}

} // namespace

TEST_CASE("analysis-synthesis round trip on finite series") {
    auto grid = make_uniform_grid(8, 1.0);
    auto sphere = make_sphere_grid(8, 16);
    auto coeffs = random_constant_coeffs(grid.geom, 3, 11);
    auto weight = harmonic_sum_weight(coeffs);

    auto back = analyze_weight(weight, grid.geom, sphere, 3);
    for (int k = 0; k <= 3; ++k)
        for (int n = -k; n <= k; ++n) {
            const cplx want = coeffs.entry(k, n).values[0];
            for (const auto& v : back.entry(k, n).values) CHECK(std::abs(v - want) < 1e-9);
        }
    CHECK(back.truncation_residual < 1e-7);

    // pointwise synthesis against the generating sum
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ug(0.0, M_PI), up(0.0, 2.0 * M_PI),
        ux(-0.8, 0.8);
    for (int t = 0; t < 20; ++t) {
        const double g = ug(rng), p = up(rng);
        const Vec3 x{ux(rng), ux(rng), ux(rng)};
        const cplx direct = weight(x, g, p);
        const cplx synth = synthesize(back, x, g, p);
        CHECK(std::abs(direct - synth) < 1e-9);
    }
}

TEST_CASE("symmetrize kills odd degrees and matches the two-point average") {
    auto grid = make_uniform_grid(8, 1.0);
    auto sphere = make_sphere_grid(8, 16);
    auto coeffs = random_constant_coeffs(grid.geom, 3, 23);
    auto weight = harmonic_sum_weight(coeffs);

    auto sym = symmetrize(analyze_weight(weight, grid.geom, sphere, 3));
    for (int k = 1; k <= 3; k += 2)
        for (int n = -k; n <= k; ++n)
            for (const auto& v : sym.entry(k, n).values) CHECK(v == cplx(0.0, 0.0));

    std::mt19937 rng(29);
    std::uniform_real_distribution<double> ug(0.0, M_PI), up(0.0, M_PI), ux(-0.8, 0.8);
    for (int t = 0; t < 20; ++t) {
        const double g = ug(rng), p = up(rng);
        const Vec3 x{ux(rng), ux(rng), ux(rng)};
        const cplx avg = 0.5 * (weight(x, g, p) + weight(x, M_PI - g, p + M_PI));
        CHECK(std::abs(synthesize(sym, x, g, p) - avg) < 1e-9);
    }

    // constants are untouched
    auto cc = analyze_weight(constant_weight(3.0), grid.geom, sphere, 2);
    auto sc = symmetrize(cc);
    for (std::size_t i = 0; i < cc.entry(0, 0).values.size(); ++i)
        CHECK(sc.entry(0, 0).values[i] == cc.entry(0, 0).values[i]);
}

TEST_CASE("truncate keeps low degrees and validates bounds") {
    auto grid = make_uniform_grid(8, 1.0);
    auto coeffs = random_constant_coeffs(grid.geom, 4, 31);

    auto t0 = truncate(coeffs, 0);
    CHECK(t0.k_max() == 0);
    CHECK(t0.entry(0, 0).values[0] == coeffs.entry(0, 0).values[0]);

    auto tid = truncate(coeffs, 4);
    for (int k = 0; k <= 4; ++k)
        for (int n = -k; n <= k; ++n)
            CHECK(tid.entry(k, n).values[0] == coeffs.entry(k, n).values[0]);

    CHECK_THROWS_AS(truncate(coeffs, 5), std::invalid_argument);
}

TEST_CASE("analysis of a degree-2 series then truncation reproduces it") {
    auto grid = make_uniform_grid(8, 1.0);
    auto sphere = make_sphere_grid(8, 16);
    auto gen = random_constant_coeffs(grid.geom, 2, 37);
    auto weight = harmonic_sum_weight(gen);
    auto back = truncate(analyze_weight(weight, grid.geom, sphere, 4), 2);
    for (int k = 0; k <= 2; ++k)
        for (int n = -k; n <= k; ++n) {
            const cplx want = gen.entry(k, n).values[0];
            for (const auto& v : back.entry(k, n).values) CHECK(std::abs(v - want) < 1e-10);
        }
}

TEST_CASE("direction reflection negates odd-degree coefficients") {
    auto grid = make_uniform_grid(8, 1.0);
    auto sphere = make_sphere_grid(8, 16);
    auto gen = random_constant_coeffs(grid.geom, 3, 41);
    auto weight = harmonic_sum_weight(gen);

    WeightFunction reflected(
        "test",
        [weight](double gamma, double phi) { return weight.at_direction(M_PI - gamma, phi + M_PI); },
        1.0);

    auto a = analyze_weight(weight, grid.geom, sphere, 3);
    auto b = analyze_weight(reflected, grid.geom, sphere, 3);
    for (int k = 0; k <= 3; ++k)
        for (int n = -k; n <= k; ++n) {
            const double sign = k % 2 ? -1.0 : 1.0;
            CHECK(std::abs(b.entry(k, n).values[7] - sign * a.entry(k, n).values[7]) < 1e-9);
        }
}

TEST_CASE("synthesize of a symmetrized set is even in theta") {
    auto grid = make_uniform_grid(8, 1.0);
    auto coeffs = symmetrize(random_constant_coeffs(grid.geom, 4, 43));
    const Vec3 x{0.2, -0.1, 0.3};
    std::mt19937 rng(47);
    std::uniform_real_distribution<double> ug(0.0, M_PI), up(0.0, 2.0 * M_PI);
    for (int t = 0; t < 10; ++t) {
        const double g = ug(rng), p = up(rng);
        CHECK(std::abs(synthesize(coeffs, x, g, p) - synthesize(coeffs, x, M_PI - g, p + M_PI)) <
              1e-12);
    }
}
