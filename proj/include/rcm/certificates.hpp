#ifndef RCM_CERTIFICATES_HPP
#define RCM_CERTIFICATES_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "rcm/energy.hpp"

namespace rcm {

/// Verdict for one of the explicit sufficient conditions, together with the
/// evaluated margin (left-hand side minus right-hand side of the decisive
/// inequality, in its native units) and the numbers that entered it.
/// All inequalities are strict: satisfied <=> margin > 0, no epsilon.
struct Certificate {
    std::string name;
    bool satisfied = false;
    double margin = 0.0;
    std::map<std::string, double> inputs;
    std::optional<std::pair<double, double>> rho_interval; // admissible (lo, hi)
    std::string failing_component; // set when a conjunction fails

    bool interval_nonempty() const {
        return rho_interval && rho_interval->first < rho_interval->second;
    }
};

/// Radius cap rho_0 = min{ iota/2, pi/(4 sqrt(lambda_hi)) }, with the second
/// term read as +infinity when lambda_hi <= 0.
double rho0(double iota, double lambda_hi);

/// Strict convexity of the energy on B_rho, by the sign pattern of the
/// curvature bounds.  With theta_l = 2 rho sqrt(|lambda_lo|) and
/// theta_u = 2 rho sqrt(|lambda_hi|), the margin is
///   (theta_u/tan theta_u) mu+ - mu-                           0 <= l <= u
///   (theta_u/tan theta_u) mu+ - (theta_l/tanh theta_l) mu-    l <= 0 <= u
///   mu+ - (theta_l/tanh theta_l) mu-                          l <= u <= 0.
/// Requires rho > 0 and theta_u < pi/2 when lambda_hi > 0.
Certificate convexity_certificate(double mu_plus, double mu_minus, double rho,
                                  const CurvatureBounds& bounds);

/// Outward-pointing gradient on the boundary sphere of B_rho when the support
/// sits in the concentric ball of radius r: margin (rho-r) mu+ - (rho+r) mu-.
/// Requires 0 <= r < rho.
Certificate gradient_outward_certificate(double mu_plus, double mu_minus, double rho, double r);

/// Unique centre of mass in B_rho: conjunction of rho < rho0, the outward
/// gradient condition and the convexity condition.  The reported margin is
/// the minimum of the component margins, with the outwardness margin
/// nondimensionalized by rho*(mu+ + mu-).
Certificate theorem_com_certificate(const SignedDiscreteMeasure& m, const ModelPoint& c,
                                    double rho, const CurvatureBounds& bounds, double iota);

/// Both sides of the secant-line bounds
///   1 - 2 theta/pi <= theta/tan(theta)     (theta in [0, pi/2))
///   1 + theta      >= theta/tanh(theta)    (theta >= 0).
struct LinearTanBounds {
    double lhs_tan;
    double rhs_tan;
    double lhs_tanh;
    double rhs_tanh;
};
LinearTanBounds linear_tan_bounds_check(double theta);

/// Simplified centre-of-mass condition for a normalized measure under a
/// symmetric curvature bound |K| <= Lambda: rho must lie in
///   ( (1 + 2 mu-) r,  (pi/(4 sqrt(Lambda))) (1 + C mu-)^-1 ),  C = 1 + pi/2.
/// margin = min(rho - lo, hi - rho); the interval endpoints are reported.
Certificate corollary_certificate(double mu_minus, double r, double rho, double lambda_abs);

/// Barycentric-chart condition: thickness margin t^2 - 25 s^2 L sqrt(Lambda),
/// plus the admissible interval
///   ( (1 + 2s/t) L,  (pi/(4 sqrt(Lambda))) (1 + C s/t)^-1 ).
/// When the thickness condition holds the interval is guaranteed nonempty.
/// Requires s >= 1, 0 < t < 1, L > 0.
Certificate chart_certificate(double L, double t, double s, double lambda_abs);

/// Clean sufficient radius for the barycentric parameter domain:
///   (L t / 3) (-1 + sqrt(-3 + pi/(4 L sqrt(Lambda)))).
/// Requires L sqrt(Lambda) <= pi/16 (value 0 at the boundary); returns
/// +infinity when Lambda = 0.
double tilde_r_max(double L, double t, double lambda_abs);

/// Radius of the geodesic ball about the anchor vertex guaranteed to be
/// covered by the chart: (s - 18/(25 s)) L.  For s >= 3/2 this is >= L.
double contained_ball_radius(double s, double L);

/// Relative metric distortion of the barycentric map: 50 Lambda rho^2 / t^2.
/// Requires rho <= t/(6 sqrt(Lambda)) when Lambda > 0; 0 when Lambda = 0.
double distortion_bound(double lambda_abs, double rho, double t);

} // namespace rcm

#endif
