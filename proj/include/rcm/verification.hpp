#ifndef RCM_VERIFICATION_HPP
#define RCM_VERIFICATION_HPP

#include <array>

#include "rcm/certificates.hpp"

namespace rcm {

/// Third sides of the comparison hinges with legs (c, delta) and angle alpha
/// evaluated at three curvatures; checks the comparison ordering
/// a_hi <= a_mid <= a_lo (+1e-12) and throws std::logic_error on violation.
struct HingeComparison {
    double a_hi;
    double a_mid;
    double a_lo;
};
HingeComparison hinge_comparison_check(double kappa_mid, double kappa_lo, double kappa_hi,
                                       double c, double delta, double alpha);

/// Corner angles of the triangle with the given sides realized at three
/// curvatures; angles[corner] = {alpha_lo, alpha_mid, alpha_hi} where corner
/// k is opposite sides[k].  Checks alpha_lo <= alpha_mid <= alpha_hi (+1e-12)
/// per corner.  Throws std::domain_error when the triangle is unrealizable
/// at one of the curvatures.
struct AngleComparison {
    std::array<std::array<double, 3>, 3> angles; // [corner][lo, mid, hi]
};
AngleComparison angle_comparison_check(double kappa_lo, double kappa_mid, double kappa_hi,
                                       const std::array<double, 3>& sides);

/// Fits the delta^2 coefficient of the squared-distance remainder
///   R(delta) = d(w(delta), y)^2 - ||log_x w - log_x y||^2
/// over a geometric delta ladder by pairwise Richardson extrapolation, and
/// checks it equals f_kappa(alpha, c) - 1 within 1e-6 with residuals decaying
/// at least linearly in delta.  `order` is +infinity when the residuals sit
/// at the floating-point floor (flat case).
struct ExpansionFit {
    double coefficient;
    double order;
};
ExpansionFit expansion_order_check(double kappa, double c, double alpha,
                                   const std::vector<double>& delta_sequence);

/// Minimum over boundary samples of <N(x), grad E(x)> where N is the outward
/// unit normal of B(c, rho).  Requires gradient_outward_certificate to hold
/// unless force is set; when certified, a nonpositive minimum throws
/// std::logic_error (it would contradict the lemma).
double boundary_outwardness_check(const SignedDiscreteMeasure& m, const ModelPoint& c, double rho,
                                  int samples, bool force = false,
                                  unsigned long long seed = 0);

/// Brute-force oracle: exhaustive energy evaluation on a normal-coordinate
/// grid over the closed ball about c, followed by pattern-search refinement
/// of every grid-local minimum down to `resolution`.  Refined minima within
/// max(2*resolution, coarse step) of each other are merged;
/// local_min_count is the number of surviving basins.  Dimension <= 3.
struct GridMinimizeResult {
    ModelPoint point;
    double value;
    int local_min_count;
};
GridMinimizeResult grid_minimize(const SignedDiscreteMeasure& m, const ModelPoint& c, double rho,
                                 double resolution);

} // namespace rcm

#endif
