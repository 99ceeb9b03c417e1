#ifndef RCM_SIMPLEX_HPP
#define RCM_SIMPLEX_HPP

#include <Eigen/Dense>
#include <vector>

#include "rcm/errors.hpp"

namespace rcm {

/// Symmetric (n+1)x(n+1) matrix of pairwise edge lengths with zero diagonal
/// and strictly positive off-diagonal entries.
struct EdgeLengthMatrix {
    int n; // simplex dimension; matrix side is n+1
    Eigen::MatrixXd lengths;

    EdgeLengthMatrix(int n_, Eigen::MatrixXd lengths_);
};

/// A nondegenerate Euclidean n-simplex realized in E^n: vertex 0 at the
/// origin, the rest placed by Cholesky factorization of the Gram matrix
/// G_ij = (d_0i^2 + d_0j^2 - d_ij^2)/2 (deterministic up to nothing: the
/// rigid-motion ambiguity is fixed by the factorization).
struct EuclideanSimplex {
    std::vector<Eigen::VectorXd> vertices; // n+1 points in E^n
    double L = 0.0;                        // max edge length
    double min_altitude = 0.0;             // a
    double t = 0.0;                        // thickness a/(n L)

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

/// Realizes a simplex from its edge lengths.  Throws NotRealizableError when
/// the Gram matrix is not positive definite within 1e-12 * (max length)^2,
/// i.e. no Euclidean simplex with those edge lengths exists.
EuclideanSimplex realize_from_edge_lengths(const EdgeLengthMatrix& d);

EdgeLengthMatrix edge_lengths_of(const EuclideanSimplex& s);

/// a / (n L); 0 for degenerate input.
double thickness(const EuclideanSimplex& s);

/// Affine barycentric coordinates of u: the last coordinate is computed as
/// 1 - sum of the others, so the sum is exactly 1.
Eigen::VectorXd barycentric_coords_euclidean(const EuclideanSimplex& s, const Eigen::VectorXd& u);

/// Gradients of the coordinate functions, one row per coordinate; each row
/// has Euclidean norm at most 1/a.
Eigen::MatrixXd barycentric_gradients(const EuclideanSimplex& s);

/// Sum of the negative coordinates (<= 0).  Requires sum(lambda) = 1.
double lambda_minus(const Eigen::VectorXd& lambda);

} // namespace rcm

#endif
