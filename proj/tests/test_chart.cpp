#include <doctest.h>

#include "test_support.hpp"

using namespace rcm;
using namespace rcm::testing;

namespace {
constexpr double kPi = 3.14159265358979323846;

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}
Vector vec3(double a, double b, double c) {
    Vector v(3);
    v << a, b, c;
    return v;
}
} // namespace

TEST_CASE("karcher mean: flat examples") {
    const ModelSpace flat(0.0, 2);
    const SignedDiscreteMeasure half_half(
        {ModelPoint(flat, vec2(0, 0)), ModelPoint(flat, vec2(2, 0))}, {0.5, 0.5});
    const KarcherResult r = karcher_mean(half_half, ModelPoint(flat, vec2(1, 0)), 2.0,
                                         CurvatureBounds(0.0, 0.0));
    CHECK((r.point.ambient - vec2(1, 0)).norm() <= 1e-10);
    CHECK(r.gradient_norm <= 1e-10 * 2.0);

    // Signed flat mean is the affine combination.
    const SignedDiscreteMeasure signed_m({ModelPoint(flat, vec2(0, 0)),
                                          ModelPoint(flat, vec2(1, 0)),
                                          ModelPoint(flat, vec2(0, 1))},
                                         {-1.0, 1.0, 1.0});
    const ModelPoint c(flat, vec2(1, 1));
    const KarcherResult rs = karcher_mean(signed_m, c, 6.0, CurvatureBounds(0.0, 0.0));
    CHECK((rs.point.ambient - vec2(1, 1)).norm() <= 1e-10);
}

TEST_CASE("karcher mean: symmetric sphere pair needs force") {
    const ModelSpace sphere(1.0, 2);
    const SignedDiscreteMeasure m(
        {ModelPoint(sphere, vec3(1, 0, 0)), ModelPoint(sphere, vec3(0, 1, 0))}, {0.5, 0.5});
    const ModelPoint mid = ModelPoint::project(sphere, vec3(1, 1, 0));

    // Support radius pi/4 equals rho0, so the certificate cannot hold.
    CHECK_THROWS_AS(karcher_mean(m, mid, 1.0, CurvatureBounds(1.0, 1.0)), CertificateFailedError);

    KarcherOptions opts;
    opts.force = true;
    const KarcherResult r = karcher_mean(m, mid, 1.0, CurvatureBounds(1.0, 1.0), opts);
    CHECK((r.point.ambient - vec3(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0)).norm() <= 1e-12);
}

TEST_CASE("karcher mean matches the grid oracle on a signed sphere instance") {
    const ModelSpace sphere(1.0, 2);
    const ModelPoint north = base_point(sphere);
    const auto frame = canonical_frame(north);
    Rng rng(3);
    std::vector<ModelPoint> pts;
    for (int i = 0; i < 3; ++i)
        pts.push_back(from_normal_coords(north, frame, 0.05 * random_direction(rng, 2)));
    const SignedDiscreteMeasure m(pts, {1.2, 0.5, -0.7});
    const double rho = 0.3;
    const CurvatureBounds bounds(-1.0, 1.0);

    const KarcherResult solved = karcher_mean(m, north, rho, bounds);
    const double res = 1e-3;
    const GridMinimizeResult grid = grid_minimize(m, north, rho, res);
    CHECK(grid.local_min_count == 1);
    CHECK(distance(solved.point, grid.point) <= 2.0 * res);
    CHECK(distance(solved.point, north) < rho); // interior minimizer
}

TEST_CASE("karcher mean solver agrees with the oracle across curvatures and dimensions") {
    Rng rng(101);
    for (double kappa : {1.0, 0.0, -1.0}) {
        for (int dim : {1, 2, 3}) {
            for (int rep = 0; rep < 4; ++rep) {
                const CertifiedInstance inst = random_certified_instance(kappa, dim, rng);
                const KarcherResult solved =
                    karcher_mean(inst.measure, inst.center, inst.rho, inst.bounds);
                const double res = 1e-3 * inst.rho;
                const GridMinimizeResult grid =
                    grid_minimize(inst.measure, inst.center, inst.rho, res);
                CHECK(grid.local_min_count == 1);
                CHECK(distance(solved.point, grid.point) <= 2.0 * res);
                CHECK(solved.gradient_norm <=
                      1e-10 * inst.rho * (jordan_masses(inst.measure).first +
                                          jordan_masses(inst.measure).second));
                CHECK(distance(solved.point, inst.center) < inst.rho);
            }
        }
    }
}

TEST_CASE("energy never increases along accepted solver steps") {
    // Reconstructed trace: re-run the damped iteration manually and compare
    // against the solver result.
    Rng rng(7);
    const CertifiedInstance inst = random_certified_instance(1.0, 2, rng);
    const auto [mu_plus, mu_minus] = jordan_masses(inst.measure);
    ModelPoint x = inst.center;
    double e = energy(inst.measure, x);
    for (int it = 0; it < 200; ++it) {
        const TangentVector g = gradient(inst.measure, x);
        if (g.norm() <= 1e-12) break;
        double tau = 1.0 / (mu_plus + mu_minus);
        bool accepted = false;
        for (int h = 0; h < 60 && !accepted; ++h, tau *= 0.5) {
            const ModelPoint cand = exp_map(x, TangentVector(x, -tau * g.ambient));
            if (distance(inst.center, cand) > inst.rho) continue;
            const double ec = energy(inst.measure, cand);
            if (ec < e) {
                CHECK(ec <= e); // accepted steps strictly decrease the energy
                x = cand;
                e = ec;
                accepted = true;
            }
        }
        if (!accepted) break;
    }
    const KarcherResult solved = karcher_mean(inst.measure, inst.center, inst.rho, inst.bounds);
    CHECK(distance(solved.point, x) <= 1e-5);
}

TEST_CASE("make_chart invariants") {
    Rng rng(11);
    const BarycentricChart chart = random_certified_chart(1.0, 2, 1.5, rng);
    CHECK(chart.certificate.satisfied);
    CHECK(chart.rho > chart.certificate.rho_interval->first);
    CHECK(chart.rho < chart.certificate.rho_interval->second);

    // Reference edge lengths reproduce geodesic distances.
    for (int i = 0; i <= 2; ++i)
        for (int j = i + 1; j <= 2; ++j) {
            const double geo = distance(chart.sigma[i], chart.sigma[j]);
            const double ref = (chart.reference.vertices[i] - chart.reference.vertices[j]).norm();
            CHECK(std::abs(geo - ref) <= 1e-10 * (1.0 + geo));
        }

    // Thin simplices fail certification unless forced.
    const ModelSpace sphere(1.0, 2);
    const ModelPoint north = base_point(sphere);
    const auto frame = canonical_frame(north);
    std::vector<ModelPoint> thin{north, from_normal_coords(north, frame, vec2(0.3, 0.0)),
                                 from_normal_coords(north, frame, vec2(0.6, 1e-3))};
    CHECK_THROWS_AS(make_chart(sphere, thin, 1.5), CertificateFailedError);
    const BarycentricChart probe = make_chart(sphere, thin, 1.5, 0, false);
    CHECK_FALSE(probe.certificate.satisfied);
}

TEST_CASE("forward map sends reference vertices to sigma") {
    Rng rng(13);
    for (double kappa : {1.0, 0.0, -1.0}) {
        const BarycentricChart chart = random_certified_chart(kappa, 2, 1.5, rng);
        for (int i = 0; i <= 2; ++i) {
            const ModelPoint image = forward_map(chart, chart.reference.vertices[i]);
            CHECK(distance(image, chart.sigma[i]) <= 1e-9);
        }
        CHECK_THROWS_AS(forward_map(chart, chart.anchor_ref() +
                                               vec2(2.0 * chart.domain_radius(), 0.0)),
                        std::domain_error);
    }
}

TEST_CASE("flat charts are exact affine maps") {
    Rng rng(17);
    const BarycentricChart chart = random_certified_chart(0.0, 2, 1.5, rng);

    // forward_map is the affine map taking the reference onto sigma.
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::VectorXd lambda(3);
        double total = 0.0;
        for (int i = 0; i < 3; ++i) {
            lambda[i] = uniform(rng, -0.2, 1.0);
            total += lambda[i];
        }
        lambda /= total;
        const Vector u = reference_point(chart, lambda);
        if ((u - chart.anchor_ref()).norm() >= chart.domain_radius()) continue;
        Vector expected = Vector::Zero(2);
        for (int i = 0; i < 3; ++i) expected += lambda[i] * chart.sigma[i].ambient;
        const ModelPoint image = forward_map(chart, u);
        CHECK((image.ambient - expected).norm() <= 1e-10);

        const Eigen::VectorXd back = inverse_map(chart, image);
        CHECK((back - lambda).norm() <= 1e-8);
    }

    // Distances are preserved exactly (isometry).
    for (int trial = 0; trial < 30; ++trial) {
        const Vector a = chart.anchor_ref() +
                         0.9 * chart.domain_radius() * std::sqrt(uniform(rng, 0.0, 1.0)) *
                             random_direction(rng, 2);
        const Vector b = chart.anchor_ref() +
                         0.9 * chart.domain_radius() * std::sqrt(uniform(rng, 0.0, 1.0)) *
                             random_direction(rng, 2);
        const double dm = distance(forward_map(chart, a), forward_map(chart, b));
        CHECK(std::abs(dm - (a - b).norm()) <= 1e-10);
    }
}

TEST_CASE("inverse map round trips through the forward map") {
    Rng rng(19);
    for (double kappa : {1.0, -1.0}) {
        for (int n : {2, 3}) {
            const BarycentricChart chart = random_certified_chart(kappa, n, 1.5, rng);
            for (int trial = 0; trial < 30; ++trial) {
                const Vector u = chart.anchor_ref() +
                                 0.95 * chart.domain_radius() *
                                     std::pow(uniform(rng, 0.0, 1.0), 1.0 / n) *
                                     random_direction(rng, n);
                const Eigen::VectorXd lambda_u =
                    barycentric_coords_euclidean(chart.reference, u);
                const ModelPoint x = forward_map(chart, u);
                const Eigen::VectorXd lambda = inverse_map(chart, x);
                CHECK((lambda - lambda_u).norm() <= 1e-8);
                CHECK(lambda.sum() == doctest::Approx(1.0).epsilon(1e-12));
            }
            // sigma_i -> e_i.
            const Eigen::VectorXd at_vertex = inverse_map(chart, chart.sigma[1]);
            for (int j = 0; j <= n; ++j)
                CHECK(at_vertex[j] == doctest::Approx(j == 1 ? 1.0 : 0.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("differential singular values") {
    Rng rng(23);
    // Flat charts: exact isometry, all singular values 1.
    const BarycentricChart flat = random_certified_chart(0.0, 2, 1.5, rng);
    const double sv_flat = differential_min_singular_value(flat, flat.anchor_ref());
    CHECK(sv_flat == doctest::Approx(1.0).epsilon(1e-7));

    for (double kappa : {1.0, -1.0}) {
        const BarycentricChart chart = random_certified_chart(kappa, 2, 1.5, rng);
        const double bound =
            distortion_bound(std::abs(kappa), chart.rho, chart.reference.t);
        for (int trial = 0; trial < 10; ++trial) {
            const Vector u = chart.anchor_ref() +
                             0.8 * chart.domain_radius() * std::sqrt(uniform(rng, 0.0, 1.0)) *
                                 random_direction(rng, 2);
            const double sv = differential_min_singular_value(chart, u);
            CHECK(sv > 0.0);
            CHECK(sv >= 1.0 - bound - 0.05);
        }
    }
}

TEST_CASE("chart distortion obeys the metric bound") {
    Rng rng(29);
    for (double kappa : {1.0, -1.0}) {
        const BarycentricChart chart = random_certified_chart(kappa, 2, 1.5, rng);
        const double bound = distortion_bound(std::abs(kappa), chart.rho, chart.reference.t);
        std::vector<Vector> us;
        std::vector<ModelPoint> images;
        for (int i = 0; i < 25; ++i) {
            const Vector u = chart.anchor_ref() +
                             0.95 * chart.domain_radius() * std::sqrt(uniform(rng, 0.0, 1.0)) *
                                 random_direction(rng, 2);
            us.push_back(u);
            images.push_back(forward_map(chart, u));
        }
        for (size_t i = 0; i < us.size(); ++i)
            for (size_t j = i + 1; j < us.size(); ++j) {
                const double flat = (us[i] - us[j]).norm();
                if (flat < 1e-6) continue;
                const double bent = distance(images[i], images[j]);
                CHECK(std::abs(bent - flat) <= bound * flat + 1e-12);
            }
    }
}

TEST_CASE("containment of the guaranteed geodesic ball") {
    Rng rng(31);
    for (double kappa : {1.0, -1.0, 0.0}) {
        const BarycentricChart chart = random_certified_chart(kappa, 2, 1.5, rng);
        const double rbar = contained_ball_radius(chart.s, chart.reference.L) * (1.0 - 1e-6);
        const auto frame = canonical_frame(chart.center);
        for (int i = 0; i < 60; ++i) {
            const double phi = 2.0 * kPi * i / 60.0;
            const ModelPoint target =
                from_normal_coords(chart.center, frame, rbar * vec2(std::cos(phi), std::sin(phi)));
            const Eigen::VectorXd lambda = inverse_map(chart, target); // must not throw
            CHECK((reference_point(chart, lambda) - chart.anchor_ref()).norm() <=
                  chart.domain_radius());
        }
    }
}

TEST_CASE("orientation basics") {
    Rng rng(37);
    // kappa = 0 with reference equal to sigma: orientation +1.
    const ModelSpace flat(0.0, 2);
    std::vector<ModelPoint> tri{ModelPoint(flat, vec2(0, 0)), ModelPoint(flat, vec2(0.2, 0)),
                                ModelPoint(flat, vec2(0.07, 0.17))};
    const BarycentricChart chart = make_chart(flat, tri, 1.5);
    CHECK(orientation(chart) == 1);

    // Swapping two points flips the sign.
    std::vector<ModelPoint> swapped{tri[0], tri[2], tri[1]};
    const BarycentricChart flipped = make_chart(flat, swapped, 1.5);
    CHECK(orientation(flipped) == -1);

    for (double kappa : {1.0, -1.0}) {
        const BarycentricChart c = random_certified_chart(kappa, 2, 1.5, rng);
        std::vector<ModelPoint> sw{c.sigma[0], c.sigma[2], c.sigma[1]};
        const BarycentricChart cf = make_chart(c.space, sw, 1.5, 0);
        CHECK(orientation(c) * orientation(cf) == -1);
    }
}

TEST_CASE("compatibly oriented shared-facet charts have equal orientation signs") {
    Rng rng(41);
    const auto [cs, ct] = shared_facet_pair(1.0, rng);
    // Both charts are anchored at the shared vertex p0 by construction.
    CHECK(distance(cs.center, ct.center) <= 1e-12);
    CHECK(orientation(cs) == orientation(ct));
}

TEST_CASE("shared facet check") {
    Rng rng(43);

    // Flat pair sharing an edge, opposite sides: pass.
    {
        const auto [cs, ct] = shared_facet_pair(0.0, rng);
        const FacetCheckReport rep = shared_facet_check(cs, ct, 200, 1);
        CHECK(rep.status == FacetCheckStatus::Pass);
        CHECK(rep.worst_violation <= 1e-8);
        CHECK(rep.shared_count == 2);
        CHECK(rep.samples_checked == 2 * (861 + 200)); // depth-40 lattice + random draws
    }

    // Certified sphere pair: pass.
    {
        const auto [cs, ct] = shared_facet_pair(1.0, rng);
        const FacetCheckReport rep = shared_facet_check(cs, ct, 200, 2);
        CHECK(rep.status == FacetCheckStatus::Pass);
        CHECK(rep.worst_violation <= 1e-8);
    }

    // Reflected apex: overlapping, opposite orientation -> NotApplicable.
    {
        const auto [cs, ct] = shared_facet_pair(1.0, rng, true);
        const FacetCheckReport rep = shared_facet_check(cs, ct, 50, 3);
        CHECK(rep.status == FacetCheckStatus::NotApplicable);
    }

    // Wrong scale factor -> NotApplicable.
    {
        const auto [cs, ct] = shared_facet_pair(-1.0, rng);
        const BarycentricChart rescaled = make_chart(cs.space, cs.sigma, 2.0, cs.anchor_vertex);
        const FacetCheckReport rep = shared_facet_check(rescaled, ct, 50, 4);
        CHECK(rep.status == FacetCheckStatus::NotApplicable);
    }
}
