#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "wradon/field.hpp"
#include "wradon/harmonics.hpp"

namespace wradon {

/// A weight W(x,theta) on R^3 x S^2, exposed as a factory of per-direction
/// evaluators so projection loops can hoist all direction-only work out of
/// the voxel loop.
class WeightFunction {
public:
    using PointEval = std::function<cplx(const Vec3&)>;
    using DirectionFactory = std::function<PointEval(double gamma, double phi)>;

    WeightFunction() = default;
    WeightFunction(std::string tag, DirectionFactory factory, double c_lower)
        : tag_(std::move(tag)), factory_(std::move(factory)), c_lower_(c_lower) {}

    cplx operator()(const Vec3& x, double gamma, double phi) const {
        return factory_(gamma, phi)(x);
    }
    PointEval at_direction(double gamma, double phi) const { return factory_(gamma, phi); }

    const std::string& tag() const { return tag_; }
    /// Reported lower bound on inf_D |w_{0,0}|; > 0 for every constructible
    /// weight family.
    double c_lower() const { return c_lower_; }

private:
    std::string tag_;
    DirectionFactory factory_;
    double c_lower_ = 0.0;
};

/// W == c. Rejects c == 0.
WeightFunction constant_weight(cplx c);

/// W(x,theta) = sum over entries of w_{k,n}(x) Y_k^n(theta). The (0,0)
/// entry must be present with inf over `domain` of |w_{0,0}| > 0.
WeightFunction finite_series_weight(const HarmonicCoefficients& coeffs, const DomainMask& domain);

/// Plain harmonic sum without the (0,0) requirement; the building block of
/// finite_series_weight, also used directly to realize the masked
/// coefficient-ratio transforms that the operator checks integrate against.
WeightFunction harmonic_sum_weight(const HarmonicCoefficients& coeffs);

/// W = c + V with c > 0. Rejects (when bound_check) any sampled |V| >= c;
/// sampling runs over `geom` voxel centers and `sphere` directions.
WeightFunction perturbed_weight(double c,
                                const std::function<cplx(const Vec3&, double, double)>& v,
                                const GridGeometry& geom, const SphereGrid& sphere,
                                bool bound_check = true);

/// SPECT-style ray weight w(x,theta) = exp(-int_0^inf a(x+t theta) dt),
/// by ray marching with step = spacing/2 and trilinear sampling. Used here
/// as a stand-in test weight for hyperplane transforms; the reduction of
/// ray data to hyperplane data is out of scope. Rejects negative a.
WeightFunction attenuation_weight(const ScalarField3D& a);

/// Weighted line integrals int w(x+t alpha, alpha) f(x+t alpha) dt over
/// full lines, ray marching with step = spacing/2. Directions must be unit.
std::vector<cplx> ray_transform(const ScalarField3D& f, const WeightFunction& w_ray,
                                const std::vector<std::pair<Vec3, Vec3>>& rays);

struct PhantomBall {
    Vec3 center;
    double radius = 0.0;
    double amplitude = 1.0;
};

enum class PhantomKind { Balls, SmoothBumps };

/// Sum of ball indicators (antialiased by 4^3 subvoxel sampling) or of
/// C-infinity bumps amp*exp(1 - 1/(1-(r/rho)^2)). Every ball/bump must lie
/// strictly inside `domain`.
ScalarField3D make_phantom(PhantomKind kind, const GridGeometry& geom,
                           const std::vector<PhantomBall>& spec, const DomainMask& domain);

/// exp(-|x-center|^2 / (2 sigma^2)) sampled on the grid (test plumbing).
ScalarField3D gaussian_field(const GridGeometry& geom, const Vec3& center, double sigma,
                             double amplitude = 1.0);

} // namespace wradon
