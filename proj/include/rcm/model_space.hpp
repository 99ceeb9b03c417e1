#ifndef RCM_MODEL_SPACE_HPP
#define RCM_MODEL_SPACE_HPP

#include <Eigen/Dense>
#include <vector>

#include "rcm/errors.hpp"

namespace rcm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// The simply connected space H_kappa^n of constant sectional curvature kappa:
/// a round sphere of radius 1/sqrt(kappa) for kappa > 0, Euclidean n-space for
/// kappa = 0, and the upper hyperboloid sheet for kappa < 0.
///
/// Points and tangent vectors live in an ambient representation: R^{n+1} with
/// the Euclidean form on the sphere, R^{n+1} with the Minkowski form
/// (-,+,...,+) on the hyperboloid, and plain R^n in the flat case.
struct ModelSpace {
    double curvature = 0.0;
    int dimension = 1;

    ModelSpace(double kappa, int n);

    int ambient_dim() const { return curvature == 0.0 ? dimension : dimension + 1; }

    /// pi/sqrt(kappa) on the sphere, +infinity otherwise.
    double injectivity_radius() const;

    /// Sphere radius 1/sqrt(|kappa|); meaningless (infinite) for kappa = 0.
    double radius() const;

    /// Ambient bilinear form: Euclidean for kappa >= 0, Minkowski for kappa < 0.
    double form(const Vector& a, const Vector& b) const;

    bool same_space(const ModelSpace& other) const {
        return curvature == other.curvature && dimension == other.dimension;
    }
};

struct ModelPoint {
    ModelSpace space;
    Vector ambient;

    /// Validates the surface constraint (<x,x> = 1/kappa under the space's
    /// form, x0 > 0 on the hyperboloid) to relative tolerance 1e-12.
    ModelPoint(const ModelSpace& s, Vector coords);

    /// Projects raw ambient coordinates onto the model surface, then
    /// constructs.  Used to absorb floating-point drift and coarse input.
    static ModelPoint project(const ModelSpace& s, Vector coords);
};

struct TangentVector {
    ModelPoint base;
    Vector ambient;

    /// Validates orthogonality to the base point under the ambient form.
    TangentVector(ModelPoint at, Vector coords);

    /// Orthogonalizes against the base point before constructing.
    static TangentVector project(const ModelPoint& at, Vector coords);

    double norm() const;
    double inner(const TangentVector& other) const;
};

double distance(const ModelPoint& x, const ModelPoint& y);

/// Follows the geodesic from x with initial velocity v for time 1.
/// On the sphere requires ||v|| < pi/sqrt(kappa).  The result is projected
/// back onto the model surface.
ModelPoint exp_map(const ModelPoint& x, const TangentVector& v);

/// Inverse of exp_map: the tangent vector at x reaching y.  Undefined (throws
/// InjectivityError) at the antipode on a sphere; the cutoff is at distance
/// pi/sqrt(kappa) - 1e-8.
TangentVector log_map(const ModelPoint& x, const ModelPoint& y);

/// Angle at x between the geodesics towards y and towards z, in [0, pi].
double angle(const ModelPoint& x, const ModelPoint& y, const ModelPoint& z);

/// Angle in [0, pi] between two tangent vectors at a common base point.
double angle_between(const TangentVector& u, const TangentVector& v);

/// Third side of the hinge with leg lengths c and delta meeting at angle
/// alpha in the space of constant curvature kappa.  For kappa > 0 requires
/// c*sqrt(kappa) and delta*sqrt(kappa) < pi/2.
///
/// All three curvature signs are evaluated through the same cancellation-free
/// half-angle form of the law of cosines, so the function is continuous in
/// kappa across 0.
double cosine_rule_side(double kappa, double c, double delta, double alpha);

/// Angle opposite side `a` in the constant-curvature triangle with sides
/// (a, b, c); the angle sits between sides b and c.  Throws
/// std::domain_error if no such triangle exists in H_kappa.
double cosine_rule_angle(double kappa, double a, double b, double c);

/// Deterministic orthonormal basis of the tangent space at x, built by
/// Gram-Schmidt over the projected ambient coordinate axes.  Depends only on
/// the point, so every caller anchored at x sees the same frame.
std::vector<TangentVector> canonical_frame(const ModelPoint& x);

/// exp_x of the tangent vector with the given coefficients in the frame.
ModelPoint from_normal_coords(const ModelPoint& x, const std::vector<TangentVector>& frame,
                              const Vector& coords);

/// Coefficients of log_x(y) in the frame.
Vector to_normal_coords(const ModelPoint& x, const std::vector<TangentVector>& frame,
                        const ModelPoint& y);

} // namespace rcm

#endif
