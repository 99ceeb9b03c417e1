// Command-line front end: centres of mass of signed measures on
// constant-curvature model spaces, certificate reports, parameter sweeps and
// shared-facet checks.  One JSON document per measure/simplex; see README.

#include <cstdio>
#include <future>
#include <iostream>
#include <random>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "rcm/chart.hpp"
#include "rcm/measure_io.hpp"
#include "rcm/verification.hpp"

using nlohmann::json;
using namespace rcm;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitCertificate = 2;
constexpr int kExitSolver = 3;

json to_json(const Certificate& cert) {
    json j;
    j["name"] = cert.name;
    j["satisfied"] = cert.satisfied;
    j["margin"] = cert.margin;
    j["inputs"] = cert.inputs;
    if (cert.rho_interval) j["rho_interval"] = {cert.rho_interval->first, cert.rho_interval->second};
    if (!cert.failing_component.empty()) j["failing_component"] = cert.failing_component;
    return j;
}

json to_json(const Vector& v) {
    json arr = json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Range spec: either a single value "v" or "lo:hi:count" (count evenly spaced
// values, endpoints included).
std::vector<double> parse_range(const std::string& spec) {
    std::vector<double> out;
    const auto c1 = spec.find(':');
    try {
        if (c1 == std::string::npos) {
            out.push_back(std::stod(spec));
            return out;
        }
        const auto c2 = spec.find(':', c1 + 1);
        if (c2 == std::string::npos) throw std::invalid_argument(spec);
        const double lo = std::stod(spec.substr(0, c1));
        const double hi = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
        const int count = std::stoi(spec.substr(c2 + 1));
        if (count < 1) throw std::invalid_argument(spec);
        for (int i = 0; i < count; ++i)
            out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
        return out;
    } catch (const std::exception&) {
        throw ParseError("bad range spec '" + spec + "' (expected v or lo:hi:count)");
    }
}

struct CommonFlags {
    double rho = 0.0;
    double iota = 0.0;
    double lambda_lo = 0.0;
    double lambda_hi = 0.0;
    bool has_rho = false;
    bool has_lambda_lo = false;
    bool has_lambda_hi = false;
};

CurvatureBounds bounds_for(const CommonFlags& flags, double kappa) {
    if (flags.has_lambda_lo != flags.has_lambda_hi)
        throw ParseError("--lambda-lo and --lambda-hi must be given together");
    if (!flags.has_lambda_lo) return CurvatureBounds(kappa, kappa);
    CurvatureBounds b(flags.lambda_lo, flags.lambda_hi);
    if (!b.contains(kappa))
        throw ParseError("curvature bounds do not contain the model curvature");
    return b;
}

double rho_for(const CommonFlags& flags, const MeasureFile& file) {
    if (flags.has_rho) return flags.rho;
    if (file.rho) return *file.rho;
    throw ParseError("no rho given (neither in the file nor via --rho)");
}

int run_mean(const std::string& path, const CommonFlags& flags, bool force) {
    const MeasureFile file = load_measure_file(path);
    const SignedDiscreteMeasure m = measure_of(file);
    const ModelPoint c = center_of(file);
    const double rho = rho_for(flags, file);
    const CurvatureBounds bounds = bounds_for(flags, file.curvature);

    KarcherOptions opts;
    opts.force = force;
    opts.iota = flags.iota;
    try {
        const KarcherResult result = karcher_mean(m, c, rho, bounds, opts);
        json out;
        out["minimizer"] = to_json(result.point.ambient);
        out["gradient_norm"] = result.gradient_norm;
        out["iterations"] = result.iterations;
        out["energy"] = energy(m, result.point);
        out["certificate"] = to_json(result.certificate);
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    } catch (const CertificateFailedError& e) {
        json out;
        out["error"] = "certificate failed";
        out["detail"] = e.what();
        if (!e.failing_component.empty()) out["failing_component"] = e.failing_component;
        std::cout << out.dump(2) << "\n";
        return kExitCertificate;
    } catch (const MaxIterationsError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    }
}

int run_oracle(const std::string& path, const CommonFlags& flags, double resolution) {
    const MeasureFile file = load_measure_file(path);
    const SignedDiscreteMeasure m = measure_of(file);
    const ModelPoint c = center_of(file);
    const double rho = rho_for(flags, file);
    const double res = resolution > 0.0 ? resolution : 1e-3 * rho;

    const GridMinimizeResult result = grid_minimize(m, c, rho, res);
    json out;
    out["point"] = to_json(result.point.ambient);
    out["value"] = result.value;
    out["local_min_count"] = result.local_min_count;
    out["resolution"] = res;
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int run_certify(const std::string& path, const CommonFlags& flags, double scale) {
    const MeasureFile file = load_measure_file(path);
    json certificates = json::array();

    if (file.has_weights()) {
        const SignedDiscreteMeasure m = measure_of(file);
        const ModelPoint c = center_of(file);
        const double rho = rho_for(flags, file);
        const CurvatureBounds bounds = bounds_for(flags, file.curvature);
        const double iota =
            flags.iota > 0.0 ? flags.iota : m.space().injectivity_radius();
        const auto [mu_plus, mu_minus] = jordan_masses(m);
        const double r = support_radius(m, c);

        json rho0_record;
        rho0_record["name"] = "rho0";
        rho0_record["value"] = rho0(iota, bounds.lambda_hi);
        certificates.push_back(rho0_record);
        certificates.push_back(to_json(gradient_outward_certificate(mu_plus, mu_minus, rho, r)));
        certificates.push_back(to_json(convexity_certificate(mu_plus, mu_minus, rho, bounds)));
        certificates.push_back(to_json(theorem_com_certificate(m, c, rho, bounds, iota)));
        const auto norm_masses = jordan_masses(normalize(m));
        certificates.push_back(
            to_json(corollary_certificate(norm_masses.second, r, rho, bounds.lambda_abs())));
    } else {
        const BarycentricChart chart =
            make_chart(file.space(), points_of(file), scale, 0, false);
        certificates.push_back(to_json(chart.certificate));

        json extras;
        extras["name"] = "chart_radii";
        extras["L"] = chart.reference.L;
        extras["thickness"] = chart.reference.t;
        extras["rho"] = chart.rho;
        extras["contained_ball_radius"] = contained_ball_radius(scale, chart.reference.L);
        const double lambda = std::abs(file.curvature);
        try {
            extras["tilde_r_max"] = tilde_r_max(chart.reference.L, chart.reference.t, lambda);
        } catch (const std::domain_error&) {
            extras["tilde_r_max"] = nullptr;
        }
        try {
            extras["distortion_bound"] = distortion_bound(lambda, chart.rho, chart.reference.t);
        } catch (const std::domain_error&) {
            extras["distortion_bound"] = nullptr;
        }
        certificates.push_back(extras);
    }
    std::cout << certificates.dump(2) << "\n";
    return kExitOk;
}

struct SweepCell {
    double kappa, rho, mu_minus, t, s;
};

std::string sweep_row(const SweepCell& cell, int samples, double resolution,
                      unsigned long long seed) {
    bool cert_thm31 = false, cert_cor41 = false, empirical_convex = false,
         empirical_unique = false;
    double margin_thm31 = std::numeric_limits<double>::quiet_NaN();

    try {
        const ModelSpace space(cell.kappa, 2);
        const ModelPoint c = [&] {
            Vector v = Vector::Zero(space.ambient_dim());
            if (cell.kappa > 0.0) v[space.ambient_dim() - 1] = space.radius();
            else if (cell.kappa < 0.0) v[0] = space.radius();
            return ModelPoint(space, v);
        }();
        const auto frame = canonical_frame(c);
        const double lambda = std::abs(cell.kappa);
        const double r = cell.rho / (1.0 + 2.0 * cell.s / cell.t);

        // Canonical three-point instance: support radius exactly r, Jordan
        // masses (1 + mu-, mu-), total mass 1.
        Vector e0 = Vector::Zero(2), e1 = Vector::Zero(2);
        e0[0] = 1.0;
        e1[1] = 1.0;
        std::vector<ModelPoint> pts{from_normal_coords(c, frame, r * e0),
                                    from_normal_coords(c, frame, -0.8 * r * e0),
                                    from_normal_coords(c, frame, 0.6 * r * e1)};
        const std::vector<double> w{0.5 * (1.0 + cell.mu_minus), 0.5 * (1.0 + cell.mu_minus),
                                    -cell.mu_minus};
        const SignedDiscreteMeasure m(pts, w);
        const CurvatureBounds bounds(-lambda, lambda);

        const Certificate thm =
            theorem_com_certificate(m, c, cell.rho, bounds, space.injectivity_radius());
        cert_thm31 = thm.satisfied;
        margin_thm31 = thm.margin;
        cert_cor41 = corollary_certificate(cell.mu_minus, r, cell.rho, lambda).satisfied;

        // Empirical probes (seeded per cell).
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        bool convex = true;
        for (int i = 0; i < samples; ++i) {
            Vector dir(2);
            do {
                dir[0] = gauss(rng);
                dir[1] = gauss(rng);
            } while (dir.norm() < 1e-12);
            dir.normalize();
            const double rad =
                cell.rho * 0.95 * std::sqrt(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
            const ModelPoint x = from_normal_coords(c, frame, rad * dir);
            Vector udir(2);
            do {
                udir[0] = gauss(rng);
                udir[1] = gauss(rng);
            } while (udir.norm() < 1e-12);
            udir.normalize();
            Vector amb = Vector::Zero(space.ambient_dim());
            const auto xframe = canonical_frame(x);
            for (int k = 0; k < 2; ++k) amb += udir[k] * xframe[k].ambient;
            const TangentVector u = TangentVector::project(x, amb);
            const double h = 1e-4 * (1.0 + cell.rho);
            const double e0v = energy(m, x);
            const double ep = energy(m, exp_map(x, TangentVector(x, h * u.ambient)));
            const double em = energy(m, exp_map(x, TangentVector(x, -h * u.ambient)));
            if ((ep - 2.0 * e0v + em) / (h * h) <= 0.0) {
                convex = false;
                break;
            }
        }
        empirical_convex = samples > 0 && convex;
        const double res = resolution > 0.0 ? resolution : 2e-2 * cell.rho;
        empirical_unique = grid_minimize(m, c, cell.rho, res).local_min_count == 1;
    } catch (const std::exception&) {
        // Invalid cell (e.g. support outside the injectivity radius): report
        // unsatisfied certificates and NaN margin.
    }

    std::string row;
    row += format17(cell.kappa) + "," + format17(cell.rho) + "," + format17(cell.mu_minus) + "," +
           format17(cell.t) + "," + format17(cell.s) + ",";
    row += std::string(cert_thm31 ? "1" : "0") + "," + format17(margin_thm31) + "," +
           (cert_cor41 ? "1" : "0") + "," + (empirical_convex ? "1" : "0") + "," +
           (empirical_unique ? "1" : "0");
    return row;
}

int run_sweep(const std::string& kappa_spec, const std::string& rho_spec,
              const std::string& mu_spec, const std::string& t_spec, const std::string& s_spec,
              int samples, double resolution, unsigned long long seed) {
    const auto kappas = parse_range(kappa_spec);
    const auto rhos = parse_range(rho_spec);
    const auto mus = parse_range(mu_spec);
    const auto ts = parse_range(t_spec);
    const auto ss = parse_range(s_spec);

    const size_t cells = kappas.size() * rhos.size() * mus.size() * ts.size() * ss.size();
    if (cells > 1000000) throw ParseError("sweep grid exceeds 10^6 cells");
    for (double t : ts)
        if (!(t > 0.0 && t < 1.0)) throw ParseError("sweep thickness values must lie in (0, 1)");
    for (double s : ss)
        if (s < 1.0) throw ParseError("sweep scale values must be >= 1");
    for (double rho : rhos)
        if (!(rho > 0.0)) throw ParseError("sweep rho values must be positive");
    for (double mu : mus)
        if (mu < 0.0) throw ParseError("sweep mu_minus values must be >= 0");

    // Lexicographic cell order: kappa, rho, mu_minus, t, s.
    std::vector<SweepCell> grid;
    grid.reserve(cells);
    for (double kappa : kappas)
        for (double rho : rhos)
            for (double mu : mus)
                for (double t : ts)
                    for (double s : ss) grid.push_back({kappa, rho, mu, t, s});

    std::vector<std::string> rows(grid.size());
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    const size_t chunk = std::max<size_t>(1, grid.size() / (4 * workers) + 1);
    std::vector<std::future<void>> futures;
    for (size_t begin = 0; begin < grid.size(); begin += chunk) {
        const size_t end = std::min(begin + chunk, grid.size());
        futures.push_back(std::async(std::launch::async, [&, begin, end] {
            for (size_t i = begin; i < end; ++i)
                rows[i] = sweep_row(grid[i], samples, resolution,
                                    seed ^ (0x9e3779b97f4a7c15ULL * (i + 1)));
        }));
    }
    for (auto& f : futures) f.get();

    std::cout << "kappa,rho,mu_minus,t,s,cert_thm31,margin_thm31,cert_cor41,empirical_convex,"
                 "empirical_unique\n";
    for (const std::string& row : rows) std::cout << row << "\n";
    return kExitOk;
}

int run_facet_check(const std::string& path_a, const std::string& path_b, int samples,
                    unsigned long long seed) {
    const MeasureFile fa = load_measure_file(path_a);
    const MeasureFile fb = load_measure_file(path_b);
    const BarycentricChart a = make_chart(fa.space(), points_of(fa), 1.5, 0, false);
    const BarycentricChart b = make_chart(fb.space(), points_of(fb), 1.5, 0, false);

    const FacetCheckReport report = shared_facet_check(a, b, samples, seed);
    json out;
    out["status"] = report.status == FacetCheckStatus::Pass         ? "pass"
                    : report.status == FacetCheckStatus::Violation ? "violation"
                                                                   : "not_applicable";
    out["worst_violation"] = report.worst_violation;
    out["reason"] = report.reason;
    out["shared_vertices"] = report.shared_count;
    out["samples_checked"] = report.samples_checked;
    std::cout << out.dump(2) << "\n";
    switch (report.status) {
        case FacetCheckStatus::Pass: return kExitOk;
        case FacetCheckStatus::NotApplicable: return kExitCertificate;
        case FacetCheckStatus::Violation: return kExitSolver;
    }
    return kExitSolver;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Riemannian centres of mass and barycentric charts on constant-curvature "
                 "model spaces"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string input, input_b;
    bool force = false;
    double scale = 1.5;
    double resolution = 0.0;
    int samples = 20;
    int facet_samples = 1000;
    unsigned long long seed = 0;

    auto add_common = [&](CLI::App* cmd, bool with_bounds = true) {
        cmd->add_option("--rho", flags.rho, "ball radius rho")->each([&](const std::string&) {
            flags.has_rho = true;
        });
        cmd->add_option("--iota", flags.iota, "injectivity radius override");
        if (with_bounds) {
            cmd->add_option("--lambda-lo", flags.lambda_lo, "lower sectional curvature bound")
                ->each([&](const std::string&) { flags.has_lambda_lo = true; });
            cmd->add_option("--lambda-hi", flags.lambda_hi, "upper sectional curvature bound")
                ->each([&](const std::string&) { flags.has_lambda_hi = true; });
        }
    };

    CLI::App* mean = app.add_subcommand("mean", "centre of mass of a signed measure");
    mean->add_option("input", input, "measure JSON file")->required();
    add_common(mean);
    mean->add_flag("--force", force, "run the solver even if the certificate fails");

    CLI::App* oracle = app.add_subcommand("oracle", "brute-force grid minimization");
    oracle->add_option("input", input, "measure JSON file")->required();
    add_common(oracle, false);
    oracle->add_option("--resolution", resolution, "grid resolution (default 1e-3 rho)");

    CLI::App* certify = app.add_subcommand("certify", "evaluate all applicable certificates");
    certify->add_option("input", input, "measure or simplex JSON file")->required();
    add_common(certify);
    certify->add_option("--scale", scale, "chart scale factor s (simplex files)");

    CLI::App* sweep = app.add_subcommand("sweep", "certificate margins over a parameter grid");
    std::string kappa_spec = "1", rho_spec = "0.1", mu_spec = "0", t_spec = "0.4330127",
                s_spec = "1.5";
    sweep->add_option("--kappa", kappa_spec, "curvature range (v or lo:hi:count)");
    sweep->add_option("--rho", rho_spec, "rho range");
    sweep->add_option("--mu-minus", mu_spec, "negative-mass range");
    sweep->add_option("--t", t_spec, "thickness range");
    sweep->add_option("--s", s_spec, "scale range");
    sweep->add_option("--samples", samples, "second-difference probes per cell");
    sweep->add_option("--resolution", resolution, "oracle resolution (default 2e-2 rho)");
    sweep->add_option("--seed", seed, "random seed");

    CLI::App* facet = app.add_subcommand("facet-check", "shared-facet intersection check");
    facet->add_option("input_a", input, "first simplex JSON file")->required();
    facet->add_option("input_b", input_b, "second simplex JSON file")->required();
    facet->add_option("--samples", samples, "random weight samples per simplex");
    facet->add_option("--seed", seed, "random seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(mean)) return run_mean(input, flags, force);
        if (app.got_subcommand(oracle)) return run_oracle(input, flags, resolution);
        if (app.got_subcommand(certify)) return run_certify(input, flags, scale);
        if (app.got_subcommand(sweep))
            return run_sweep(kappa_spec, rho_spec, mu_spec, t_spec, s_spec, samples, resolution,
                             seed);
        if (app.got_subcommand(facet)) return run_facet_check(input, input_b, samples, seed);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const CertificateFailedError& e) {
        std::cerr << "certificate failed: " << e.what() << "\n";
        return kExitCertificate;
    } catch (const MaxIterationsError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitParse;
}
