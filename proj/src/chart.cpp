#include "rcm/chart.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace rcm {

namespace {

SignedDiscreteMeasure weighted(const std::vector<ModelPoint>& pts, const Eigen::VectorXd& w) {
    std::vector<double> weights(w.data(), w.data() + w.size());
    return SignedDiscreteMeasure(pts, std::move(weights));
}

} // namespace

KarcherResult karcher_mean(const SignedDiscreteMeasure& m, const ModelPoint& c, double rho,
                           const CurvatureBounds& bounds, const KarcherOptions& opts) {
    Certificate cert;
    if (opts.check_certificate) {
        const double iota = opts.iota > 0.0 ? opts.iota : c.space.injectivity_radius();
        try {
            cert = theorem_com_certificate(m, c, rho, bounds, iota);
        } catch (const std::domain_error& e) {
            if (!opts.force) throw CertificateFailedError(e.what());
            cert.name = "theorem_com";
            cert.satisfied = false;
            cert.failing_component = "evaluation";
        }
        if (!cert.satisfied && !opts.force)
            throw CertificateFailedError("karcher_mean: certificate failed (" +
                                             (cert.failing_component.empty() ? std::string("unknown")
                                                                             : cert.failing_component) +
                                             ")",
                                         cert.failing_component);
    } else {
        cert.name = "theorem_com";
        cert.satisfied = true;
    }

    const auto [mu_plus, mu_minus] = jordan_masses(m);
    const double mass = mu_plus + mu_minus;
    if (mass <= 0.0) throw std::invalid_argument("karcher_mean: measure has no mass");

    const double target = opts.tolerance_factor * rho * mass;
    const double tau0 = 1.0 / mass;

    ModelPoint x = c;
    double e = energy(m, x);
    TangentVector g = gradient(m, x);
    double gn = g.norm();
    int it = 0;

    // Phase 1: energy-backtracked damped steps.  Energy comparisons lose
    // resolution once the decrease per step drops below machine noise, so
    // this phase runs while decreases are still observable.
    for (; it < opts.max_iterations && gn > target; ++it) {
        double tau = tau0;
        bool accepted = false;
        for (int halvings = 0; halvings < 60; ++halvings, tau *= 0.5) {
            ModelPoint cand = exp_map(x, TangentVector(x, -tau * g.ambient));
            if (distance(c, cand) > rho) continue; // stay in the closed ball
            const double ec = energy(m, cand);
            if (ec < e) {
                x = std::move(cand);
                e = ec;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
        g = gradient(m, x);
        gn = g.norm();
    }

    // Phase 2: polish by gradient-norm descent.  Near the minimum the full
    // step contracts the gradient geometrically even though energy
    // differences are below floating-point resolution.
    for (; it < opts.max_iterations && gn > target; ++it) {
        double tau = tau0;
        bool accepted = false;
        for (int halvings = 0; halvings < 60; ++halvings, tau *= 0.5) {
            ModelPoint cand = exp_map(x, TangentVector(x, -tau * g.ambient));
            if (distance(c, cand) > rho) continue;
            TangentVector gc = gradient(m, cand);
            const double gcn = gc.norm();
            if (gcn < gn) {
                x = std::move(cand);
                g = std::move(gc);
                gn = gcn;
                accepted = true;
                break;
            }
        }
        if (!accepted) break; // gradient at the floating-point noise floor
    }

    const double contract = 1e-10 * rho * mass;
    if (gn <= std::max(target, contract)) return {x, it, gn, cert};
    if (it >= opts.max_iterations)
        throw MaxIterationsError("karcher_mean: iteration budget exhausted");
    throw MaxIterationsError("karcher_mean: damping schedule failed to make progress");
}

BarycentricChart make_chart(const ModelSpace& space, std::vector<ModelPoint> sigma, double s,
                            int anchor_vertex, bool require_certificate) {
    const int n = space.dimension;
    if (static_cast<int>(sigma.size()) != n + 1)
        throw std::invalid_argument("make_chart: need n+1 points on an n-dimensional space");
    if (anchor_vertex < 0 || anchor_vertex > n)
        throw std::invalid_argument("make_chart: anchor vertex out of range");
    for (const ModelPoint& p : sigma)
        if (!p.space.same_space(space)) throw SpaceMismatchError("make_chart: point in wrong space");

    Eigen::MatrixXd lengths = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            lengths(i, j) = lengths(j, i) = distance(sigma[i], sigma[j]);

    EuclideanSimplex ref = realize_from_edge_lengths(EdgeLengthMatrix(n, std::move(lengths)));
    const double lambda_abs = std::abs(space.curvature);
    Certificate cert = chart_certificate(ref.L, ref.t, s, lambda_abs);
    if (require_certificate && !cert.satisfied)
        throw CertificateFailedError("make_chart: chart certificate failed (thickness margin " +
                                     std::to_string(cert.margin) + ")");

    const double lo = cert.rho_interval->first;
    const double hi = cert.rho_interval->second;
    const double eps = 1e-3 * lo;
    double rho = std::sqrt(lo * lo + eps * eps);
    if (cert.satisfied && !(rho < hi))
        throw std::logic_error("make_chart: default rho fell outside the certified interval");

    ModelPoint center = sigma[static_cast<size_t>(anchor_vertex)];
    BarycentricChart chart{space,
                           std::move(sigma),
                           std::move(ref),
                           s,
                           anchor_vertex,
                           rho,
                           std::move(center),
                           std::move(cert),
                           0.0};
    double r = 0.0;
    for (const ModelPoint& p : chart.sigma) r = std::max(r, distance(chart.center, p));
    chart.support_radius_from_anchor = r;
    return chart;
}

ModelPoint forward_map(const BarycentricChart& chart, const Eigen::VectorXd& u) {
    const double dom = chart.domain_radius();
    if ((u - chart.anchor_ref()).norm() > dom * (1.0 + 1e-9))
        throw std::domain_error("forward_map: parameter outside the domain ball");
    const Eigen::VectorXd lambda = barycentric_coords_euclidean(chart.reference, u);
    KarcherOptions opts;
    opts.force = !chart.certificate.satisfied;
    return karcher_mean(weighted(chart.sigma, lambda), chart.center, chart.rho,
                        CurvatureBounds(chart.space.curvature, chart.space.curvature), opts)
        .point;
}

Eigen::VectorXd reference_point(const BarycentricChart& chart, const Eigen::VectorXd& lambda) {
    const int n = chart.space.dimension;
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i) u += lambda[i] * chart.reference.vertices[i];
    return u;
}

Eigen::VectorXd inverse_map(const BarycentricChart& chart, const ModelPoint& x) {
    const int n = chart.space.dimension;
    const auto frame = canonical_frame(x);
    Eigen::MatrixXd A(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) {
        const TangentVector li = log_map(x, chart.sigma[i]);
        for (int k = 0; k < n; ++k) A(k, i) = x.space.form(frame[k].ambient, li.ambient);
        A(n, i) = 1.0;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (!(smin > 1e-12 * smax))
        throw SingularSystemError("inverse_map: stationarity system is rank deficient");
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 1);
    b[n] = 1.0;
    const Eigen::VectorXd lambda = svd.solve(b);

    const Eigen::VectorXd u = reference_point(chart, lambda);
    if ((u - chart.anchor_ref()).norm() > chart.domain_radius() * (1.0 + 1e-9))
        throw std::domain_error("inverse_map: recovered parameter outside the domain ball");
    const ModelPoint back = forward_map(chart, u);
    if (distance(back, x) > 1e-8)
        throw std::domain_error("inverse_map: round trip failed; point outside the chart image");
    return lambda;
}

namespace {

Eigen::MatrixXd forward_jacobian(const BarycentricChart& chart, const Eigen::VectorXd& u) {
    const int n = chart.space.dimension;
    const double h = 1e-5 * chart.reference.L;
    const ModelPoint y0 = forward_map(chart, u);
    const auto frame = canonical_frame(y0);
    Eigen::MatrixXd J(n, n);
    for (int j = 0; j < n; ++j) {
        Eigen::VectorXd up = u, um = u;
        up[j] += h;
        um[j] -= h;
        const Eigen::VectorXd cp = to_normal_coords(y0, frame, forward_map(chart, up));
        const Eigen::VectorXd cm = to_normal_coords(y0, frame, forward_map(chart, um));
        J.col(j) = (cp - cm) / (2.0 * h);
    }
    return J;
}

} // namespace

double differential_min_singular_value(const BarycentricChart& chart, const Eigen::VectorXd& u) {
    const Eigen::MatrixXd J = forward_jacobian(chart, u);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
    return svd.singularValues().minCoeff();
}

int orientation(const BarycentricChart& chart) {
    const Eigen::MatrixXd J = forward_jacobian(chart, chart.anchor_ref());
    const double det = J.determinant();
    if (std::abs(det) <= 1e-10)
        throw std::domain_error("orientation: Jacobian determinant vanishes (degenerate chart)");
    return det > 0.0 ? 1 : -1;
}

namespace {

// Barycentric lattice of the given depth: all nonnegative integer vectors of
// length n+1 summing to depth, scaled by 1/depth.
void lattice_rec(int slots, int remaining, Eigen::VectorXd& cur, int depth,
                 std::vector<Eigen::VectorXd>& out) {
    const int idx = cur.size() - slots;
    if (slots == 1) {
        cur[idx] = static_cast<double>(remaining) / depth;
        out.push_back(cur);
        return;
    }
    for (int k = 0; k <= remaining; ++k) {
        cur[idx] = static_cast<double>(k) / depth;
        lattice_rec(slots - 1, remaining - k, cur, depth, out);
    }
}

std::vector<Eigen::VectorXd> barycentric_lattice(int n, int depth) {
    std::vector<Eigen::VectorXd> out;
    Eigen::VectorXd cur(n + 1);
    lattice_rec(n + 1, depth, cur, depth, out);
    return out;
}

std::vector<Eigen::VectorXd> random_simplex_weights(int n, int count, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expo(1.0);
    std::vector<Eigen::VectorXd> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        Eigen::VectorXd w(n + 1);
        double total = 0.0;
        for (int j = 0; j <= n; ++j) {
            w[j] = expo(rng);
            total += w[j];
        }
        out.push_back(w / total);
    }
    return out;
}

struct SharedMatch {
    std::vector<std::pair<int, int>> pairs; // (index in sigma, index in tau)
    int lone_sigma = -1;
    int lone_tau = -1;
};

SharedMatch match_vertices(const BarycentricChart& a, const BarycentricChart& b) {
    const int n = a.space.dimension;
    const double tol = 1e-9 * (1.0 + a.reference.L);
    SharedMatch m;
    std::vector<bool> used_b(n + 1, false);
    for (int i = 0; i <= n; ++i) {
        int hit = -1;
        for (int j = 0; j <= n; ++j) {
            if (used_b[j]) continue;
            if (distance(a.sigma[i], b.sigma[j]) <= tol) {
                hit = j;
                break;
            }
        }
        if (hit >= 0) {
            used_b[hit] = true;
            m.pairs.emplace_back(i, hit);
        } else {
            m.lone_sigma = i;
        }
    }
    for (int j = 0; j <= n; ++j)
        if (!used_b[j]) m.lone_tau = j;
    return m;
}

} // namespace

FacetCheckReport shared_facet_check(const BarycentricChart& chart_sigma,
                                    const BarycentricChart& chart_tau, int samples,
                                    unsigned long long seed) {
    FacetCheckReport report;
    if (!chart_sigma.space.same_space(chart_tau.space))
        throw SpaceMismatchError("shared_facet_check: charts on different spaces");
    const int n = chart_sigma.space.dimension;

    const SharedMatch match = match_vertices(chart_sigma, chart_tau);
    report.shared_count = static_cast<int>(match.pairs.size());
    if (report.shared_count != n || match.lone_sigma < 0 || match.lone_tau < 0) {
        report.reason = "charts do not share exactly n vertices";
        return report;
    }
    if (std::abs(chart_sigma.s - 1.5) > 1e-12 || std::abs(chart_tau.s - 1.5) > 1e-12) {
        report.reason = "scale factor must be 3/2 for both charts";
        return report;
    }

    // Re-certify both simplices against the common strict edge-length bound.
    const double Lc = std::max(chart_sigma.reference.L, chart_tau.reference.L);
    const double lambda_abs = std::abs(chart_sigma.space.curvature);
    const Certificate ca = chart_certificate(Lc, chart_sigma.reference.t, 1.5, lambda_abs);
    const Certificate cb = chart_certificate(Lc, chart_tau.reference.t, 1.5, lambda_abs);
    if (!ca.satisfied || !cb.satisfied) {
        report.reason = "chart certificate fails at the common edge-length bound";
        return report;
    }

    // Compare orientations at a common shared vertex.
    const int anchor_sigma = match.pairs.front().first;
    const int anchor_tau = match.pairs.front().second;
    const BarycentricChart a =
        make_chart(chart_sigma.space, chart_sigma.sigma, 1.5, anchor_sigma);
    const BarycentricChart b = make_chart(chart_tau.space, chart_tau.sigma, 1.5, anchor_tau);
    if (orientation(a) != orientation(b)) {
        report.reason = "opposite orientation (simplices overlap)";
        return report;
    }

    // Sample each simplex and check the non-shared coordinate in the other chart.
    auto weights_a = barycentric_lattice(n, 40);
    auto extra_a = random_simplex_weights(n, samples, seed);
    weights_a.insert(weights_a.end(), extra_a.begin(), extra_a.end());
    auto weights_b = barycentric_lattice(n, 40);
    auto extra_b = random_simplex_weights(n, samples, seed + 1);
    weights_b.insert(weights_b.end(), extra_b.begin(), extra_b.end());

    double worst = 0.0;
    int checked = 0;
    auto run_side = [&](const BarycentricChart& from, const BarycentricChart& to, int lone_from,
                        int lone_to, const std::vector<Eigen::VectorXd>& weights) {
        for (const Eigen::VectorXd& lam : weights) {
            const Eigen::VectorXd u = reference_point(from, lam);
            const ModelPoint x = forward_map(from, u);
            const Eigen::VectorXd mu = inverse_map(to, x);
            const double q = mu[lone_to];
            const bool facet_sample = lam[lone_from] == 0.0;
            worst = std::max(worst, facet_sample ? std::abs(q) : std::max(q, 0.0));
            ++checked;
        }
    };
    run_side(a, b, match.lone_sigma, match.lone_tau, weights_a);
    run_side(b, a, match.lone_tau, match.lone_sigma, weights_b);

    report.samples_checked = checked;
    report.worst_violation = worst;
    report.status = worst <= 1e-8 ? FacetCheckStatus::Pass : FacetCheckStatus::Violation;
    report.reason = report.status == FacetCheckStatus::Pass ? "pass" : "sign violation";
    return report;
}

} // namespace rcm
