#include "rcm/model_space.hpp"

#include <cmath>
#include <limits>

namespace rcm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kAntipodeGuard = 1e-8; // length cut below pi/sqrt(kappa)

double minkowski(const Vector& a, const Vector& b) {
    double s = -a[0] * b[0];
    for (int i = 1; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

ModelSpace::ModelSpace(double kappa, int n) : curvature(kappa), dimension(n) {
    if (n < 1) throw std::invalid_argument("ModelSpace: dimension must be >= 1");
    if (!std::isfinite(kappa)) throw std::invalid_argument("ModelSpace: curvature must be finite");
}

double ModelSpace::injectivity_radius() const {
    return curvature > 0.0 ? kPi / std::sqrt(curvature) : kInf;
}

double ModelSpace::radius() const {
    return curvature == 0.0 ? kInf : 1.0 / std::sqrt(std::abs(curvature));
}

double ModelSpace::form(const Vector& a, const Vector& b) const {
    return curvature < 0.0 ? minkowski(a, b) : a.dot(b);
}

ModelPoint::ModelPoint(const ModelSpace& s, Vector coords) : space(s), ambient(std::move(coords)) {
    if (ambient.size() != s.ambient_dim())
        throw std::invalid_argument("ModelPoint: ambient coordinate length mismatch");
    const double kappa = s.curvature;
    if (kappa != 0.0) {
        // <x,x> = 1/kappa, checked in the dimensionless form kappa*<x,x> = 1.
        const double q = kappa * s.form(ambient, ambient);
        if (std::abs(q - 1.0) > 1e-12)
            throw std::invalid_argument("ModelPoint: coordinates are off the model surface");
        if (kappa < 0.0 && ambient[0] <= 0.0)
            throw std::invalid_argument("ModelPoint: hyperboloid point must lie on the upper sheet");
    }
}

ModelPoint ModelPoint::project(const ModelSpace& s, Vector coords) {
    if (coords.size() != s.ambient_dim())
        throw std::invalid_argument("ModelPoint::project: ambient coordinate length mismatch");
    const double kappa = s.curvature;
    if (kappa > 0.0) {
        const double n = coords.norm();
        if (n == 0.0) throw std::invalid_argument("ModelPoint::project: zero vector");
        coords *= s.radius() / n;
    } else if (kappa < 0.0) {
        const double q = -minkowski(coords, coords);
        if (q <= 0.0) throw std::invalid_argument("ModelPoint::project: not a timelike vector");
        coords *= s.radius() / std::sqrt(q);
        if (coords[0] < 0.0) coords = -coords;
    }
    return ModelPoint(s, std::move(coords));
}

TangentVector::TangentVector(ModelPoint at, Vector coords)
    : base(std::move(at)), ambient(std::move(coords)) {
    if (ambient.size() != base.space.ambient_dim())
        throw std::invalid_argument("TangentVector: ambient coordinate length mismatch");
    if (base.space.curvature != 0.0) {
        const double ip = base.space.form(base.ambient, ambient);
        const double scale = 1.0 + base.ambient.norm() * ambient.norm();
        if (std::abs(ip) > 1e-12 * scale)
            throw std::invalid_argument("TangentVector: not orthogonal to the base point");
    }
}

TangentVector TangentVector::project(const ModelPoint& at, Vector coords) {
    if (at.space.curvature != 0.0) {
        const double xx = at.space.form(at.ambient, at.ambient); // = 1/kappa
        const double xv = at.space.form(at.ambient, coords);
        coords -= (xv / xx) * at.ambient;
    }
    return TangentVector(at, std::move(coords));
}

double TangentVector::norm() const {
    const double q = base.space.form(ambient, ambient);
    return std::sqrt(std::max(q, 0.0));
}

double TangentVector::inner(const TangentVector& other) const {
    if (!base.space.same_space(other.base.space))
        throw SpaceMismatchError("TangentVector::inner: different spaces");
    return base.space.form(ambient, other.ambient);
}

double distance(const ModelPoint& x, const ModelPoint& y) {
    if (!x.space.same_space(y.space)) throw SpaceMismatchError("distance: different spaces");
    const double kappa = x.space.curvature;
    if (kappa == 0.0) return (x.ambient - y.ambient).norm();
    const double sk = std::sqrt(std::abs(kappa));
    if (kappa > 0.0) {
        // Chord-based half-angle form: well conditioned at both ends.
        if (kappa * x.ambient.dot(y.ambient) >= 0.0) {
            const double h = 0.5 * sk * (x.ambient - y.ambient).norm();
            return 2.0 * std::asin(std::min(h, 1.0)) / sk;
        }
        const double h = 0.5 * sk * (x.ambient + y.ambient).norm();
        return (kPi - 2.0 * std::asin(std::min(h, 1.0))) / sk;
    }
    // Hyperboloid: <y-x, y-x>_M = 4 R^2 sinh^2(psi/2) with d = R psi.
    const double q = std::max(minkowski(y.ambient - x.ambient, y.ambient - x.ambient), 0.0);
    return 2.0 * std::asinh(0.5 * sk * std::sqrt(q)) / sk;
}

ModelPoint exp_map(const ModelPoint& x, const TangentVector& v) {
    if (!x.space.same_space(v.base.space) ||
        (x.ambient - v.base.ambient).norm() > 1e-12 * (1.0 + x.ambient.norm()))
        throw SpaceMismatchError("exp_map: vector not based at x");
    const double kappa = x.space.curvature;
    const double len = v.norm();
    if (kappa == 0.0) return ModelPoint(x.space, x.ambient + v.ambient);
    if (len == 0.0) return x;
    const double R = x.space.radius();
    const double t = len / R;
    if (kappa > 0.0) {
        if (len >= x.space.injectivity_radius())
            throw InjectivityError("exp_map: vector length exceeds the injectivity radius");
        Vector y = std::cos(t) * x.ambient + (R * std::sin(t) / len) * v.ambient;
        return ModelPoint::project(x.space, std::move(y));
    }
    Vector y = std::cosh(t) * x.ambient + (R * std::sinh(t) / len) * v.ambient;
    return ModelPoint::project(x.space, std::move(y));
}

TangentVector log_map(const ModelPoint& x, const ModelPoint& y) {
    if (!x.space.same_space(y.space)) throw SpaceMismatchError("log_map: different spaces");
    const double kappa = x.space.curvature;
    if (kappa == 0.0) return TangentVector(x, y.ambient - x.ambient);
    const double d = distance(x, y);
    const int m = x.space.ambient_dim();
    if (d == 0.0) return TangentVector(x, Vector::Zero(m));
    if (kappa > 0.0 && d > x.space.injectivity_radius() - kAntipodeGuard)
        throw InjectivityError("log_map: points are (numerically) antipodal");
    // Component of y orthogonal to x, rescaled to length d.
    const double xx = x.space.form(x.ambient, x.ambient); // 1/kappa
    const double xy = x.space.form(x.ambient, y.ambient);
    Vector w = y.ambient - (xy / xx) * x.ambient;
    const double wn = std::sqrt(std::max(x.space.form(w, w), 0.0));
    if (wn == 0.0) return TangentVector(x, Vector::Zero(m));
    w *= d / wn;
    return TangentVector::project(x, std::move(w));
}

double angle_between(const TangentVector& u, const TangentVector& v) {
    const double nu = u.norm();
    const double nv = v.norm();
    if (nu == 0.0 || nv == 0.0)
        throw std::domain_error("angle_between: zero-length vector");
    // Kahan's formula; exact in [0, pi] and well conditioned at both ends.
    const Vector a = u.ambient / nu;
    const Vector b = v.ambient / nv;
    const ModelSpace& sp = u.base.space;
    const double dm = std::sqrt(std::max(sp.form(a - b, a - b), 0.0));
    const double dp = std::sqrt(std::max(sp.form(a + b, a + b), 0.0));
    return 2.0 * std::atan2(dm, dp);
}

double angle(const ModelPoint& x, const ModelPoint& y, const ModelPoint& z) {
    const double scale = 1.0 + x.ambient.norm();
    if (distance(x, y) <= 1e-14 * scale || distance(x, z) <= 1e-14 * scale)
        throw std::domain_error("angle: degenerate (zero-length) leg");
    return angle_between(log_map(x, y), log_map(x, z));
}

double cosine_rule_side(double kappa, double c, double delta, double alpha) {
    if (c < 0.0 || delta < 0.0) throw std::domain_error("cosine_rule_side: negative leg");
    if (alpha < -1e-12 || alpha > kPi + 1e-12)
        throw std::domain_error("cosine_rule_side: angle outside [0, pi]");
    alpha = std::clamp(alpha, 0.0, kPi);
    const double sa2 = std::sin(0.5 * alpha);
    if (kappa == 0.0) {
        // a^2 = (c - delta)^2 + 4 c delta sin^2(alpha/2)
        return std::sqrt((c - delta) * (c - delta) + 4.0 * c * delta * sa2 * sa2);
    }
    const double sk = std::sqrt(std::abs(kappa));
    if (kappa > 0.0) {
        if (c * sk >= kPi / 2.0 || delta * sk >= kPi / 2.0)
            throw std::domain_error("cosine_rule_side: spherical legs must satisfy l*sqrt(kappa) < pi/2");
        // sin^2(a/2) = sin^2((c-delta)/2) + sin(c) sin(delta) sin^2(alpha/2), all scaled by sqrt(kappa)
        const double sd = std::sin(0.5 * (c - delta) * sk);
        double h = sd * sd + std::sin(c * sk) * std::sin(delta * sk) * sa2 * sa2;
        h = std::clamp(h, 0.0, 1.0);
        return 2.0 * std::asin(std::sqrt(h)) / sk;
    }
    // sinh^2(a/2) = sinh^2((c-delta)/2) + sinh(c) sinh(delta) sin^2(alpha/2)
    const double sd = std::sinh(0.5 * (c - delta) * sk);
    const double h = sd * sd + std::sinh(c * sk) * std::sinh(delta * sk) * sa2 * sa2;
    return 2.0 * std::asinh(std::sqrt(std::max(h, 0.0))) / sk;
}

double cosine_rule_angle(double kappa, double a, double b, double c) {
    if (a < 0.0 || b <= 0.0 || c <= 0.0)
        throw std::domain_error("cosine_rule_angle: sides must be positive");
    double num, den;
    if (kappa == 0.0) {
        num = a * a - (b - c) * (b - c);
        den = 4.0 * b * c;
    } else {
        const double sk = std::sqrt(std::abs(kappa));
        if (kappa > 0.0) {
            if (a * sk >= kPi || b * sk >= kPi || c * sk >= kPi)
                throw std::domain_error("cosine_rule_angle: side exceeds the spherical diameter");
            const double sa = std::sin(0.5 * a * sk);
            const double sd = std::sin(0.5 * (b - c) * sk);
            num = sa * sa - sd * sd;
            den = std::sin(b * sk) * std::sin(c * sk);
        } else {
            const double sa = std::sinh(0.5 * a * sk);
            const double sd = std::sinh(0.5 * (b - c) * sk);
            num = sa * sa - sd * sd;
            den = std::sinh(b * sk) * std::sinh(c * sk);
        }
    }
    if (den <= 0.0) throw std::domain_error("cosine_rule_angle: degenerate side pair");
    const double ratio = num / den;
    if (ratio < -1e-9 || ratio > 1.0 + 1e-9)
        throw std::domain_error("cosine_rule_angle: triangle not realizable in this curvature");
    return 2.0 * std::asin(std::sqrt(std::clamp(ratio, 0.0, 1.0)));
}

std::vector<TangentVector> canonical_frame(const ModelPoint& x) {
    const ModelSpace& sp = x.space;
    const int m = sp.ambient_dim();
    const int n = sp.dimension;
    std::vector<TangentVector> frame;
    frame.reserve(n);
    const double drop = 1e-6 * (1.0 + x.ambient.norm());
    for (int axis = 0; axis < m && static_cast<int>(frame.size()) < n; ++axis) {
        Vector w = Vector::Zero(m);
        w[axis] = 1.0;
        if (sp.curvature != 0.0) {
            const double xx = sp.form(x.ambient, x.ambient);
            w -= (sp.form(x.ambient, w) / xx) * x.ambient;
        }
        for (const TangentVector& f : frame) w -= sp.form(f.ambient, w) * f.ambient;
        const double wn = std::sqrt(std::max(sp.form(w, w), 0.0));
        if (wn < drop) continue;
        frame.emplace_back(TangentVector::project(x, w / wn));
    }
    if (static_cast<int>(frame.size()) != n)
        throw std::logic_error("canonical_frame: failed to span the tangent space");
    return frame;
}

ModelPoint from_normal_coords(const ModelPoint& x, const std::vector<TangentVector>& frame,
                              const Vector& coords) {
    Vector v = Vector::Zero(x.space.ambient_dim());
    for (int i = 0; i < coords.size(); ++i) v += coords[i] * frame[i].ambient;
    return exp_map(x, TangentVector::project(x, std::move(v)));
}

Vector to_normal_coords(const ModelPoint& x, const std::vector<TangentVector>& frame,
                        const ModelPoint& y) {
    const TangentVector v = log_map(x, y);
    Vector coords(static_cast<int>(frame.size()));
    for (size_t i = 0; i < frame.size(); ++i)
        coords[static_cast<int>(i)] = x.space.form(frame[i].ambient, v.ambient);
    return coords;
}

} // namespace rcm
