#ifndef RCM_ENERGY_HPP
#define RCM_ENERGY_HPP

#include "rcm/signed_measure.hpp"

namespace rcm {

/// Two-sided sectional curvature bounds lambda_lo <= K <= lambda_hi.
struct CurvatureBounds {
    double lambda_lo;
    double lambda_hi;

    CurvatureBounds(double lo, double hi);

    /// Symmetric bound Lambda = max(|lambda_lo|, |lambda_hi|).
    double lambda_abs() const;

    bool contains(double kappa) const { return lambda_lo <= kappa && kappa <= lambda_hi; }
};

/// theta/tan(theta) on [0, pi/2); equals 1 at 0 and decreases strictly.
double tan_ratio(double theta);

/// theta/tanh(theta) on [0, inf); equals 1 at 0 and increases strictly.
double tanh_ratio(double theta);

/// Comparison factor of the squared-distance expansion:
///   cos^2(alpha) + (theta/tan theta)  sin^2(alpha)   for kappa >= 0,
///   cos^2(alpha) + (theta/tanh theta) sin^2(alpha)   for kappa <= 0,
/// with theta = z*sqrt(|kappa|).  Value 1 at theta = 0.  For kappa > 0
/// requires z*sqrt(kappa) < pi/2.
double f_kappa(double kappa, double alpha, double z);

/// E(x) = 1/2 sum_i w_i d(x, p_i)^2.
double energy(const SignedDiscreteMeasure& m, const ModelPoint& x);

/// Grad E(x) = -sum_i w_i log_x(p_i), a tangent vector at x.
TangentVector gradient(const SignedDiscreteMeasure& m, const ModelPoint& x);

/// Analytic lower bound on d^2/dt^2 E(exp_x(t u)) at t = 0 for a unit
/// direction u:
///   sum_{w_i>0} w_i f_{lambda_hi}(alpha_i, d_i)
///     - sum_{w_i<0} |w_i| f_{lambda_lo}(alpha_i, d_i),
/// where d_i = d(x, p_i) and alpha_i is the angle between u and log_x(p_i).
/// Support points coincident with x contribute factor 1.
double second_derivative_lower_bound(const SignedDiscreteMeasure& m, const ModelPoint& x,
                                     const TangentVector& u, const CurvatureBounds& bounds);

/// Step size for central finite differences: cbrt(machine eps) * (1 + scale).
double fd_step(double scale);

} // namespace rcm

#endif
