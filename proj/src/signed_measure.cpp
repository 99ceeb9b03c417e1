#include "rcm/signed_measure.hpp"

#include <cmath>

namespace rcm {

SignedDiscreteMeasure::SignedDiscreteMeasure(std::vector<ModelPoint> pts, std::vector<double> w)
    : points(std::move(pts)), weights(std::move(w)) {
    if (points.empty()) throw std::invalid_argument("SignedDiscreteMeasure: empty support");
    if (points.size() != weights.size())
        throw std::invalid_argument("SignedDiscreteMeasure: points/weights length mismatch");
    for (const ModelPoint& p : points)
        if (!p.space.same_space(points.front().space))
            throw SpaceMismatchError("SignedDiscreteMeasure: support points in different spaces");
    for (double wi : weights)
        if (!std::isfinite(wi))
            throw std::invalid_argument("SignedDiscreteMeasure: non-finite weight");
}

double SignedDiscreteMeasure::total_mass() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

std::pair<double, double> jordan_masses(const SignedDiscreteMeasure& m) {
    double plus = 0.0, minus = 0.0;
    for (double w : m.weights) {
        if (w > 0.0) plus += w;
        else if (w < 0.0) minus -= w;
    }
    return {plus, minus};
}

double support_radius(const SignedDiscreteMeasure& m, const ModelPoint& c) {
    const double iota = c.space.injectivity_radius();
    double r = 0.0;
    for (const ModelPoint& p : m.points) {
        const double d = distance(c, p);
        if (d >= iota - 1e-8)
            throw InjectivityError("support_radius: support point at or beyond the injectivity radius");
        r = std::max(r, d);
    }
    return r;
}

SignedDiscreteMeasure normalize(const SignedDiscreteMeasure& m) {
    const double total = m.total_mass();
    if (std::abs(total) <= 1e-12)
        throw std::invalid_argument("normalize: total mass is (numerically) zero");
    std::vector<double> w = m.weights;
    for (double& wi : w) wi /= total;
    return SignedDiscreteMeasure(m.points, std::move(w));
}

} // namespace rcm
