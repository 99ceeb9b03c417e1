#ifndef RCM_MEASURE_IO_HPP
#define RCM_MEASURE_IO_HPP

#include <optional>
#include <string>

#include "rcm/signed_measure.hpp"

namespace rcm {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One JSON document describing a measure or a bare point set (simplex).
/// Field names are fixed: curvature, dimension, points, weights, center, rho.
/// Points and center are ambient coordinate arrays (length n for curvature 0,
/// n+1 otherwise); weights, center and rho are optional.
struct MeasureFile {
    double curvature = 0.0;
    int dimension = 1;
    std::vector<Vector> points;
    std::vector<double> weights; // empty for simplex-style files
    std::optional<Vector> center;
    std::optional<double> rho;

    ModelSpace space() const { return ModelSpace(curvature, dimension); }
    bool has_weights() const { return !weights.empty(); }
};

/// Parses a MeasureFile document; throws ParseError on malformed input.
MeasureFile parse_measure_file(const std::string& json_text);
MeasureFile load_measure_file(const std::string& path);
std::string dump_measure_file(const MeasureFile& f);

/// Converts the raw coordinate arrays into model points.  Coordinates must
/// satisfy the surface constraint to 1e-6 and are then projected exactly.
std::vector<ModelPoint> points_of(const MeasureFile& f);
ModelPoint center_of(const MeasureFile& f);
SignedDiscreteMeasure measure_of(const MeasureFile& f);

} // namespace rcm

#endif
