#include "rcm/certificates.hpp"

#include <cmath>
#include <limits>

namespace rcm {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kC = 1.0 + kPi / 2.0; // the constant C of the simplified bound
} // namespace

double rho0(double iota, double lambda_hi) {
    if (!(iota > 0.0)) throw std::domain_error("rho0: iota must be positive");
    const double curv_cap = lambda_hi > 0.0 ? kPi / (4.0 * std::sqrt(lambda_hi)) : kInf;
    return std::min(iota / 2.0, curv_cap);
}

Certificate convexity_certificate(double mu_plus, double mu_minus, double rho,
                                  const CurvatureBounds& bounds) {
    if (!(rho > 0.0)) throw std::domain_error("convexity_certificate: rho must be positive");
    const double theta_u = 2.0 * rho * std::sqrt(std::abs(bounds.lambda_hi));
    const double theta_l = 2.0 * rho * std::sqrt(std::abs(bounds.lambda_lo));
    if (bounds.lambda_hi > 0.0 && theta_u >= kPi / 2.0)
        throw std::domain_error("convexity_certificate: rho out of range (2 rho sqrt(lambda_hi) >= pi/2)");

    Certificate cert;
    cert.name = "convexity";
    double margin;
    if (bounds.lambda_lo >= 0.0) {
        margin = tan_ratio(theta_u) * mu_plus - mu_minus;
    } else if (bounds.lambda_hi <= 0.0) {
        margin = mu_plus - tanh_ratio(theta_l) * mu_minus;
    } else {
        margin = tan_ratio(theta_u) * mu_plus - tanh_ratio(theta_l) * mu_minus;
    }
    cert.margin = margin;
    cert.satisfied = margin > 0.0;
    cert.inputs = {{"mu_plus", mu_plus},
                   {"mu_minus", mu_minus},
                   {"rho", rho},
                   {"lambda_lo", bounds.lambda_lo},
                   {"lambda_hi", bounds.lambda_hi},
                   {"theta_l", theta_l},
                   {"theta_u", theta_u}};
    return cert;
}

Certificate gradient_outward_certificate(double mu_plus, double mu_minus, double rho, double r) {
    if (!(r >= 0.0) || !(r < rho))
        throw std::domain_error("gradient_outward_certificate: need 0 <= r < rho");
    Certificate cert;
    cert.name = "gradient_outward";
    cert.margin = (rho - r) * mu_plus - (rho + r) * mu_minus;
    cert.satisfied = cert.margin > 0.0;
    cert.inputs = {{"mu_plus", mu_plus}, {"mu_minus", mu_minus}, {"rho", rho}, {"r", r}};
    return cert;
}

Certificate theorem_com_certificate(const SignedDiscreteMeasure& m, const ModelPoint& c,
                                    double rho, const CurvatureBounds& bounds, double iota) {
    const double r = support_radius(m, c);
    if (!(r < rho)) throw std::domain_error("theorem_com_certificate: support radius >= rho");
    const auto [mu_plus, mu_minus] = jordan_masses(m);

    Certificate cert;
    cert.name = "theorem_com";
    const double cap = rho0(iota, bounds.lambda_hi);
    const double rho_margin = cap - rho;
    cert.inputs = {{"mu_plus", mu_plus}, {"mu_minus", mu_minus}, {"rho", rho},
                   {"r", r},             {"rho0", cap},          {"iota", iota},
                   {"lambda_lo", bounds.lambda_lo}, {"lambda_hi", bounds.lambda_hi},
                   {"margin_rho0", rho_margin}};

    const Certificate outward = gradient_outward_certificate(mu_plus, mu_minus, rho, r);
    const double outward_scaled = outward.margin / (rho * (mu_plus + mu_minus));
    cert.inputs["margin_outward"] = outward_scaled;

    // The convexity case formulas need 2 rho sqrt(lambda_hi) < pi/2, which
    // rho < rho0 guarantees; when rho >= rho0 the certificate already fails.
    const bool convexity_evaluable =
        bounds.lambda_hi <= 0.0 || 2.0 * rho * std::sqrt(bounds.lambda_hi) < kPi / 2.0;
    double convexity_margin = -kInf;
    if (convexity_evaluable) {
        convexity_margin = convexity_certificate(mu_plus, mu_minus, rho, bounds).margin;
        cert.inputs["margin_convexity"] = convexity_margin;
    }

    cert.margin = std::min({rho_margin, outward_scaled, convexity_margin});
    cert.satisfied = cert.margin > 0.0;
    if (!cert.satisfied) {
        if (!(rho_margin > 0.0)) cert.failing_component = "rho0";
        else if (!(outward_scaled > 0.0)) cert.failing_component = "gradient_outward";
        else cert.failing_component = "convexity";
    }
    return cert;
}

LinearTanBounds linear_tan_bounds_check(double theta) {
    if (theta < 0.0 || theta >= kPi / 2.0)
        throw std::domain_error("linear_tan_bounds_check: theta must lie in [0, pi/2)");
    return {1.0 - 2.0 * theta / kPi, tan_ratio(theta), 1.0 + theta, tanh_ratio(theta)};
}

Certificate corollary_certificate(double mu_minus, double r, double rho, double lambda_abs) {
    if (lambda_abs < 0.0) throw std::domain_error("corollary_certificate: lambda_abs must be >= 0");
    if (mu_minus < 0.0) throw std::domain_error("corollary_certificate: mu_minus must be >= 0");
    const double lo = (1.0 + 2.0 * mu_minus) * r;
    const double hi =
        lambda_abs > 0.0 ? kPi / (4.0 * std::sqrt(lambda_abs)) / (1.0 + kC * mu_minus) : kInf;
    Certificate cert;
    cert.name = "corollary_com";
    cert.rho_interval = {lo, hi};
    cert.margin = std::min(rho - lo, hi - rho);
    cert.satisfied = cert.margin > 0.0;
    cert.inputs = {{"mu_minus", mu_minus},
                   {"r", r},
                   {"rho", rho},
                   {"lambda_abs", lambda_abs},
                   {"interval_lo", lo},
                   {"interval_hi", hi},
                   {"interval_nonempty", lo < hi ? 1.0 : 0.0}};
    return cert;
}

Certificate chart_certificate(double L, double t, double s, double lambda_abs) {
    if (s < 1.0) throw std::domain_error("chart_certificate: scale s must be >= 1");
    if (!(t > 0.0) || !(t < 1.0)) throw std::domain_error("chart_certificate: need 0 < t < 1");
    if (!(L > 0.0)) throw std::domain_error("chart_certificate: need L > 0");
    if (lambda_abs < 0.0) throw std::domain_error("chart_certificate: lambda_abs must be >= 0");

    Certificate cert;
    cert.name = "chart";
    cert.margin = t * t - 25.0 * s * s * L * std::sqrt(lambda_abs);
    cert.satisfied = cert.margin > 0.0;
    const double lo = (1.0 + 2.0 * s / t) * L;
    const double hi =
        lambda_abs > 0.0 ? kPi / (4.0 * std::sqrt(lambda_abs)) / (1.0 + kC * s / t) : kInf;
    cert.rho_interval = {lo, hi};
    cert.inputs = {{"L", L},
                   {"t", t},
                   {"s", s},
                   {"lambda_abs", lambda_abs},
                   {"interval_lo", lo},
                   {"interval_hi", hi}};
    if (cert.satisfied && !(lo < hi))
        throw std::logic_error("chart_certificate: thickness condition held but the rho interval is empty");
    return cert;
}

double tilde_r_max(double L, double t, double lambda_abs) {
    if (!(L > 0.0) || !(t > 0.0)) throw std::domain_error("tilde_r_max: need L, t > 0");
    if (lambda_abs < 0.0) throw std::domain_error("tilde_r_max: lambda_abs must be >= 0");
    if (lambda_abs == 0.0) return kInf;
    const double g = L * std::sqrt(lambda_abs);
    if (g > kPi / 16.0)
        throw std::domain_error("tilde_r_max: positivity requires L sqrt(Lambda) <= pi/16");
    const double root = std::sqrt(std::max(-3.0 + kPi / (4.0 * g), 0.0));
    return (L * t / 3.0) * (root - 1.0);
}

double contained_ball_radius(double s, double L) {
    if (s < 1.0) throw std::domain_error("contained_ball_radius: scale s must be >= 1");
    const double rbar = (s - 18.0 / (25.0 * s)) * L;
    if (s >= 1.5 && rbar < L)
        throw std::logic_error("contained_ball_radius: s >= 3/2 must give rbar >= L");
    return rbar;
}

double distortion_bound(double lambda_abs, double rho, double t) {
    if (!(t > 0.0)) throw std::domain_error("distortion_bound: need t > 0");
    if (rho < 0.0) throw std::domain_error("distortion_bound: need rho >= 0");
    if (lambda_abs < 0.0) throw std::domain_error("distortion_bound: lambda_abs must be >= 0");
    if (lambda_abs == 0.0) return 0.0;
    if (rho > t / (6.0 * std::sqrt(lambda_abs)))
        throw std::domain_error("distortion_bound: requires rho <= t/(6 sqrt(Lambda))");
    return 50.0 * lambda_abs * rho * rho / (t * t);
}

} // namespace rcm
