#include "rcm/energy.hpp"

#include <cmath>

namespace rcm {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

CurvatureBounds::CurvatureBounds(double lo, double hi) : lambda_lo(lo), lambda_hi(hi) {
    if (!(lo <= hi)) throw std::invalid_argument("CurvatureBounds: lambda_lo must be <= lambda_hi");
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("CurvatureBounds: bounds must be finite");
}

double CurvatureBounds::lambda_abs() const {
    return std::max(std::abs(lambda_lo), std::abs(lambda_hi));
}

double tan_ratio(double theta) {
    if (theta < 0.0 || theta >= kPi / 2.0)
        throw std::domain_error("tan_ratio: theta must lie in [0, pi/2)");
    if (theta < 1e-6) return 1.0 - theta * theta / 3.0;
    return theta / std::tan(theta);
}

double tanh_ratio(double theta) {
    if (theta < 0.0) throw std::domain_error("tanh_ratio: theta must be >= 0");
    if (theta < 1e-6) return 1.0 + theta * theta / 3.0;
    return theta / std::tanh(theta);
}

double f_kappa(double kappa, double alpha, double z) {
    if (z < 0.0) throw std::domain_error("f_kappa: z must be >= 0");
    if (alpha < -1e-12 || alpha > kPi + 1e-12)
        throw std::domain_error("f_kappa: alpha outside [0, pi]");
    const double theta = z * std::sqrt(std::abs(kappa));
    if (kappa > 0.0 && theta >= kPi / 2.0)
        throw std::domain_error("f_kappa: z*sqrt(kappa) must be < pi/2");
    const double ratio = kappa >= 0.0 ? tan_ratio(theta) : tanh_ratio(theta);
    if (ratio == 1.0) return 1.0; // kappa = 0 or theta = 0: exactly 1
    const double s = std::sin(std::clamp(alpha, 0.0, kPi));
    const double c = std::cos(std::clamp(alpha, 0.0, kPi));
    return c * c + ratio * s * s;
}

double energy(const SignedDiscreteMeasure& m, const ModelPoint& x) {
    double e = 0.0;
    for (size_t i = 0; i < m.points.size(); ++i) {
        const double d = distance(x, m.points[i]);
        e += m.weights[i] * d * d;
    }
    return 0.5 * e;
}

TangentVector gradient(const SignedDiscreteMeasure& m, const ModelPoint& x) {
    Vector g = Vector::Zero(x.space.ambient_dim());
    for (size_t i = 0; i < m.points.size(); ++i) {
        if (m.weights[i] == 0.0) continue;
        g -= m.weights[i] * log_map(x, m.points[i]).ambient;
    }
    return TangentVector::project(x, std::move(g));
}

double second_derivative_lower_bound(const SignedDiscreteMeasure& m, const ModelPoint& x,
                                     const TangentVector& u, const CurvatureBounds& bounds) {
    if (std::abs(u.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("second_derivative_lower_bound: direction must be a unit vector");
    const double coincident = 1e-14 * (1.0 + x.ambient.norm());
    double bound = 0.0;
    for (size_t i = 0; i < m.points.size(); ++i) {
        const double w = m.weights[i];
        if (w == 0.0) continue;
        const double d = distance(x, m.points[i]);
        double f;
        if (d <= coincident) {
            f = 1.0;
        } else {
            const double a = angle_between(u, log_map(x, m.points[i]));
            f = f_kappa(w > 0.0 ? bounds.lambda_hi : bounds.lambda_lo, a, d);
        }
        bound += w * f; // w < 0 subtracts |w| * f_{lambda_lo}
    }
    return bound;
}

double fd_step(double scale) {
    static const double cbrt_eps = std::cbrt(std::numeric_limits<double>::epsilon());
    return cbrt_eps * (1.0 + scale);
}

} // namespace rcm
