#ifndef RCM_CHART_HPP
#define RCM_CHART_HPP

#include "rcm/certificates.hpp"
#include "rcm/simplex.hpp"

namespace rcm {

struct KarcherOptions {
    bool force = false;             // run even when the certificate fails
    bool check_certificate = true;  // evaluate/enforce the certificate
    double iota = 0.0;              // if > 0, overrides the model-space injectivity radius
    int max_iterations = 10000;
    // Working gradient-norm target as a multiple of rho*(mu+ + mu-); the
    // contract guarantees 1e-10, the solver aims three decades lower so that
    // flat instances reproduce affine algebra to 1e-10 in position.
    double tolerance_factor = 1e-13;
};

struct KarcherResult {
    ModelPoint point;
    int iterations = 0;
    double gradient_norm = 0.0;
    Certificate certificate; // theorem_com_certificate of the instance
};

/// Minimizes the energy of a signed measure over the closed ball about c of
/// radius rho by damped fixed-point iteration x <- exp_x(-tau grad E(x)).
/// tau starts each step at 1/(mu+ + mu-) and is halved whenever the energy
/// fails to decrease or the iterate would leave the closed ball.  Refuses to
/// run when theorem_com_certificate fails, unless opts.force is set.
KarcherResult karcher_mean(const SignedDiscreteMeasure& m, const ModelPoint& c, double rho,
                           const CurvatureBounds& bounds, const KarcherOptions& opts = {});

/// A certified barycentric coordinate chart: n+1 points sigma on a model
/// space, the Euclidean reference simplex realized from their geodesic edge
/// lengths, a scale s >= 1, and the ball B(center, rho) about the anchor
/// vertex on which the coordinate map is valid.  The map's domain is the
/// Euclidean ball of radius s*L about the anchor's reference vertex.
struct BarycentricChart {
    ModelSpace space;
    std::vector<ModelPoint> sigma;
    EuclideanSimplex reference;
    double s = 1.0;
    int anchor_vertex = 0;
    double rho = 0.0;
    ModelPoint center; // = sigma[anchor_vertex]
    Certificate certificate;
    double support_radius_from_anchor = 0.0;

    double domain_radius() const { return s * reference.L; }
    const Eigen::VectorXd& anchor_ref() const { return reference.vertices[anchor_vertex]; }
};

/// Builds a chart.  rho defaults to just above the lower endpoint of the
/// certificate interval (sqrt(lo^2 + (1e-3 lo)^2)), which keeps the
/// distortion lemma applicable.  With require_certificate the construction
/// throws CertificateFailedError when chart_certificate fails; otherwise an
/// uncertified chart is returned for probing.
BarycentricChart make_chart(const ModelSpace& space, std::vector<ModelPoint> sigma, double s,
                            int anchor_vertex = 0, bool require_certificate = true);

/// Barycentric coordinate map: u in B(anchor_ref, s L) -> the centre of mass
/// of (sigma, barycentric coordinates of u).
ModelPoint forward_map(const BarycentricChart& chart, const Eigen::VectorXd& u);

/// Inverse of the coordinate map: solves the stationarity system
///   [ log_x(p_0) ... log_x(p_n) ; 1 ... 1 ] lambda = [0 ; 1]
/// in an orthonormal tangent frame at x, then verifies the round trip
/// (forward_map of the recovered parameter returns x to 1e-8 and the
/// parameter lies in the domain ball).
Eigen::VectorXd inverse_map(const BarycentricChart& chart, const ModelPoint& x);

/// Reference-domain point of a coordinate vector: u = sum lambda_i v_i.
Eigen::VectorXd reference_point(const BarycentricChart& chart, const Eigen::VectorXd& lambda);

/// Smallest singular value of the central-difference Jacobian of the forward
/// map at u, expressed in normal coordinates at forward_map(u); step 1e-5 L.
double differential_min_singular_value(const BarycentricChart& chart, const Eigen::VectorXd& u);

/// Sign (+1/-1) of the Jacobian determinant of the forward map at the anchor
/// vertex, taken in the canonical tangent frame at the anchor point (shared
/// by every chart anchored at that manifold point).  Throws on |det| <= 1e-10.
int orientation(const BarycentricChart& chart);

enum class FacetCheckStatus { Pass, Violation, NotApplicable };

struct FacetCheckReport {
    FacetCheckStatus status = FacetCheckStatus::NotApplicable;
    double worst_violation = 0.0;
    std::string reason;
    int shared_count = 0;
    int samples_checked = 0;
};

/// Verifies that two compatibly oriented Riemannian simplices sharing n
/// vertices intersect only in the shared facet: samples each simplex on a
/// deterministic barycentric lattice of depth 40 plus `samples` random
/// weights, maps the points through the other chart, and requires the
/// coordinate of the non-shared vertex to be nonpositive (|.| <= 1e-8 for
/// facet samples).  Preconditions (n shared vertices, both certified with
/// s = 3/2 at a common L, equal orientation at a shared anchor) that fail
/// yield NotApplicable rather than Violation.
FacetCheckReport shared_facet_check(const BarycentricChart& chart_sigma,
                                    const BarycentricChart& chart_tau, int samples,
                                    unsigned long long seed = 0);

} // namespace rcm

#endif
