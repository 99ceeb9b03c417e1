#ifndef RCM_SIGNED_MEASURE_HPP
#define RCM_SIGNED_MEASURE_HPP

#include <utility>
#include <vector>

#include "rcm/model_space.hpp"

namespace rcm {

/// A finite signed measure concentrated on finitely many points of one model
/// space.  Weights of exact zero are kept in the data but contribute to
/// neither Jordan part.
struct SignedDiscreteMeasure {
    std::vector<ModelPoint> points;
    std::vector<double> weights;

    SignedDiscreteMeasure(std::vector<ModelPoint> pts, std::vector<double> w);

    const ModelSpace& space() const { return points.front().space; }
    double total_mass() const;
};

/// Jordan decomposition masses (mu_plus, mu_minus): positive and negative
/// weights summed separately, so mu_plus - mu_minus equals the total mass.
std::pair<double, double> jordan_masses(const SignedDiscreteMeasure& m);

/// Radius of the smallest closed ball about c containing the support.
/// Every support point must be within the injectivity radius of c.
double support_radius(const SignedDiscreteMeasure& m, const ModelPoint& c);

/// Rescales the weights so the total mass is 1.  Rejects |total| <= 1e-12.
SignedDiscreteMeasure normalize(const SignedDiscreteMeasure& m);

} // namespace rcm

#endif
