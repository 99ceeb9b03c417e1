#include "rcm/measure_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rcm {

namespace {

using nlohmann::json;

Vector to_vector(const json& arr, const char* what) {
    if (!arr.is_array() || arr.empty()) throw ParseError(std::string(what) + " must be a nonempty array");
    Vector v(static_cast<int>(arr.size()));
    for (size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number()) throw ParseError(std::string(what) + " must contain numbers");
        v[static_cast<int>(i)] = arr[i].get<double>();
    }
    return v;
}

ModelPoint checked_point(const ModelSpace& space, const Vector& coords, const char* what) {
    if (coords.size() != space.ambient_dim())
        throw ParseError(std::string(what) + ": expected " + std::to_string(space.ambient_dim()) +
                         " ambient coordinates");
    if (space.curvature != 0.0) {
        const double q = space.curvature * space.form(coords, coords);
        if (std::abs(q - 1.0) > 1e-6)
            throw ParseError(std::string(what) + ": coordinates are not on the model surface");
    }
    return ModelPoint::project(space, coords);
}

} // namespace

MeasureFile parse_measure_file(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("top-level JSON value must be an object");
    if (!doc.contains("curvature") || !doc["curvature"].is_number())
        throw ParseError("missing numeric field 'curvature'");
    if (!doc.contains("dimension") || !doc["dimension"].is_number_integer())
        throw ParseError("missing integer field 'dimension'");
    if (!doc.contains("points") || !doc["points"].is_array() || doc["points"].empty())
        throw ParseError("missing nonempty array field 'points'");

    MeasureFile f;
    f.curvature = doc["curvature"].get<double>();
    f.dimension = doc["dimension"].get<int>();
    for (const auto& p : doc["points"]) f.points.push_back(to_vector(p, "points[i]"));
    if (doc.contains("weights")) {
        if (!doc["weights"].is_array()) throw ParseError("'weights' must be an array");
        for (const auto& w : doc["weights"]) {
            if (!w.is_number()) throw ParseError("'weights' must contain numbers");
            f.weights.push_back(w.get<double>());
        }
        if (f.weights.size() != f.points.size())
            throw ParseError("'weights' and 'points' must have the same length");
    }
    if (doc.contains("center")) f.center = to_vector(doc["center"], "center");
    if (doc.contains("rho")) {
        if (!doc["rho"].is_number()) throw ParseError("'rho' must be a number");
        f.rho = doc["rho"].get<double>();
    }
    return f;
}

MeasureFile load_measure_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_measure_file(buf.str());
}

std::string dump_measure_file(const MeasureFile& f) {
    json doc;
    doc["curvature"] = f.curvature;
    doc["dimension"] = f.dimension;
    doc["points"] = json::array();
    for (const Vector& p : f.points) {
        json arr = json::array();
        for (int i = 0; i < p.size(); ++i) arr.push_back(p[i]);
        doc["points"].push_back(arr);
    }
    if (!f.weights.empty()) doc["weights"] = f.weights;
    if (f.center) {
        json arr = json::array();
        for (int i = 0; i < f.center->size(); ++i) arr.push_back((*f.center)[i]);
        doc["center"] = arr;
    }
    if (f.rho) doc["rho"] = *f.rho;
    return doc.dump(2);
}

std::vector<ModelPoint> points_of(const MeasureFile& f) {
    const ModelSpace space = f.space();
    std::vector<ModelPoint> pts;
    pts.reserve(f.points.size());
    for (const Vector& p : f.points) pts.push_back(checked_point(space, p, "points[i]"));
    return pts;
}

ModelPoint center_of(const MeasureFile& f) {
    if (!f.center) throw ParseError("file has no 'center' field");
    return checked_point(f.space(), *f.center, "center");
}

SignedDiscreteMeasure measure_of(const MeasureFile& f) {
    if (!f.has_weights()) throw ParseError("file has no 'weights' field");
    return SignedDiscreteMeasure(points_of(f), f.weights);
}

} // namespace rcm
