#include "rcm/simplex.hpp"

#include <cmath>

namespace rcm {

EdgeLengthMatrix::EdgeLengthMatrix(int n_, Eigen::MatrixXd lengths_)
    : n(n_), lengths(std::move(lengths_)) {
    if (n < 1) throw std::invalid_argument("EdgeLengthMatrix: dimension must be >= 1");
    if (lengths.rows() != n + 1 || lengths.cols() != n + 1)
        throw std::invalid_argument("EdgeLengthMatrix: matrix must be (n+1)x(n+1)");
    double scale = 0.0;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) scale = std::max(scale, std::abs(lengths(i, j)));
    for (int i = 0; i <= n; ++i) {
        if (lengths(i, i) != 0.0)
            throw std::invalid_argument("EdgeLengthMatrix: nonzero diagonal");
        for (int j = i + 1; j <= n; ++j) {
            if (std::abs(lengths(i, j) - lengths(j, i)) > 1e-14 * scale)
                throw std::invalid_argument("EdgeLengthMatrix: not symmetric");
            if (!(lengths(i, j) > 0.0))
                throw std::invalid_argument("EdgeLengthMatrix: off-diagonal lengths must be positive");
        }
    }
}

EuclideanSimplex realize_from_edge_lengths(const EdgeLengthMatrix& d) {
    const int n = d.n;
    const double L = d.lengths.maxCoeff();

    Eigen::MatrixXd gram(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            const double d0i = d.lengths(0, i);
            const double d0j = d.lengths(0, j);
            const double dij = d.lengths(i, j);
            gram(i - 1, j - 1) = 0.5 * (d0i * d0i + d0j * d0j - dij * dij);
        }
    gram = 0.5 * (gram + gram.transpose().eval());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    if (eig.eigenvalues().minCoeff() <= 1e-12 * L * L)
        throw NotRealizableError("realize_from_edge_lengths: Gram matrix not positive definite "
                                 "(degenerate or non-Euclidean edge lengths)");

    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success)
        throw NotRealizableError("realize_from_edge_lengths: Cholesky factorization failed");
    const Eigen::MatrixXd Lfac = llt.matrixL();

    EuclideanSimplex s;
    s.vertices.resize(n + 1, Eigen::VectorXd::Zero(n));
    for (int i = 1; i <= n; ++i) s.vertices[i] = Lfac.row(i - 1).transpose();
    s.L = L;

    // Min altitude: distance from each vertex to the affine hull of the
    // opposite facet, by least squares (stabler than determinant ratios).
    double a = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= n; ++k) {
        std::vector<int> facet;
        for (int i = 0; i <= n; ++i)
            if (i != k) facet.push_back(i);
        if (n == 1) {
            a = std::min(a, (s.vertices[k] - s.vertices[facet[0]]).norm());
            continue;
        }
        Eigen::MatrixXd basis(n, n - 1);
        for (int j = 1; j < n; ++j)
            basis.col(j - 1) = s.vertices[facet[j]] - s.vertices[facet[0]];
        const Eigen::VectorXd rhs = s.vertices[k] - s.vertices[facet[0]];
        const Eigen::VectorXd coef = basis.colPivHouseholderQr().solve(rhs);
        a = std::min(a, (rhs - basis * coef).norm());
    }
    s.min_altitude = a;
    s.t = a / (n * L);
    return s;
}

EdgeLengthMatrix edge_lengths_of(const EuclideanSimplex& s) {
    const int n = s.dim();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            m(i, j) = m(j, i) = (s.vertices[i] - s.vertices[j]).norm();
    return EdgeLengthMatrix(n, std::move(m));
}

double thickness(const EuclideanSimplex& s) {
    if (s.vertices.empty() || !(s.L > 0.0)) return 0.0;
    return s.min_altitude / (s.dim() * s.L);
}

namespace {

// Affine system with the last vertex as base: columns v_i - v_n, i < n.
Eigen::PartialPivLU<Eigen::MatrixXd> affine_system(const EuclideanSimplex& s) {
    const int n = s.dim();
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i) A.col(i) = s.vertices[i] - s.vertices[n];
    return Eigen::PartialPivLU<Eigen::MatrixXd>(A);
}

} // namespace

Eigen::VectorXd barycentric_coords_euclidean(const EuclideanSimplex& s, const Eigen::VectorXd& u) {
    const int n = s.dim();
    if (u.size() != n) throw std::invalid_argument("barycentric_coords_euclidean: bad point dimension");
    if (!(thickness(s) > 0.0))
        throw std::invalid_argument("barycentric_coords_euclidean: degenerate simplex");
    const Eigen::VectorXd c = affine_system(s).solve(u - s.vertices[n]);
    Eigen::VectorXd lambda(n + 1);
    lambda.head(n) = c;
    lambda[n] = 1.0 - c.sum();
    return lambda;
}

Eigen::MatrixXd barycentric_gradients(const EuclideanSimplex& s) {
    const int n = s.dim();
    const Eigen::MatrixXd inv = affine_system(s).inverse();
    Eigen::MatrixXd g(n + 1, n);
    g.topRows(n) = inv;
    g.row(n) = -inv.colwise().sum();
    return g;
}

double lambda_minus(const Eigen::VectorXd& lambda) {
    if (std::abs(lambda.sum() - 1.0) > 1e-9)
        throw std::invalid_argument("lambda_minus: coordinates must sum to 1");
    double neg = 0.0;
    for (int i = 0; i < lambda.size(); ++i)
        if (lambda[i] < 0.0) neg += lambda[i];
    return neg;
}

} // namespace rcm
