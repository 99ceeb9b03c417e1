#include "rcm/verification.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace rcm {

namespace {
constexpr double kOrderTol = 1e-12;
}

HingeComparison hinge_comparison_check(double kappa_mid, double kappa_lo, double kappa_hi,
                                       double c, double delta, double alpha) {
    if (!(kappa_lo <= kappa_mid && kappa_mid <= kappa_hi))
        throw std::domain_error("hinge_comparison_check: need kappa_lo <= kappa_mid <= kappa_hi");
    HingeComparison out{cosine_rule_side(kappa_hi, c, delta, alpha),
                        cosine_rule_side(kappa_mid, c, delta, alpha),
                        cosine_rule_side(kappa_lo, c, delta, alpha)};
    if (!(out.a_hi <= out.a_mid + kOrderTol && out.a_mid <= out.a_lo + kOrderTol))
        throw std::logic_error("hinge_comparison_check: comparison ordering violated");
    return out;
}

AngleComparison angle_comparison_check(double kappa_lo, double kappa_mid, double kappa_hi,
                                       const std::array<double, 3>& sides) {
    if (!(kappa_lo <= kappa_mid && kappa_mid <= kappa_hi))
        throw std::domain_error("angle_comparison_check: need kappa_lo <= kappa_mid <= kappa_hi");
    AngleComparison out;
    const std::array<double, 3> kappas{kappa_lo, kappa_mid, kappa_hi};
    for (int corner = 0; corner < 3; ++corner) {
        const double a = sides[corner];
        const double b = sides[(corner + 1) % 3];
        const double c = sides[(corner + 2) % 3];
        for (int k = 0; k < 3; ++k) out.angles[corner][k] = cosine_rule_angle(kappas[k], a, b, c);
        if (!(out.angles[corner][0] <= out.angles[corner][1] + kOrderTol &&
              out.angles[corner][1] <= out.angles[corner][2] + kOrderTol))
            throw std::logic_error("angle_comparison_check: comparison ordering violated");
    }
    return out;
}

ExpansionFit expansion_order_check(double kappa, double c, double alpha,
                                   const std::vector<double>& delta_sequence) {
    if (!(c > 0.0)) throw std::domain_error("expansion_order_check: need c > 0");
    if (delta_sequence.empty())
        throw std::domain_error("expansion_order_check: empty delta sequence");
    for (size_t i = 0; i < delta_sequence.size(); ++i) {
        if (!(delta_sequence[i] > 0.0) || delta_sequence[i] > c / 10.0 + 1e-15)
            throw std::domain_error("expansion_order_check: deltas must lie in (0, c/10]");
        if (i > 0 && !(delta_sequence[i] < delta_sequence[i - 1]))
            throw std::domain_error("expansion_order_check: deltas must decrease");
    }

    // y(delta) = R(delta)/delta^2 -> f_kappa - 1 as delta -> 0.
    const double sa2 = std::sin(0.5 * alpha);
    std::vector<double> y;
    y.reserve(delta_sequence.size());
    for (double d : delta_sequence) {
        const double a = cosine_rule_side(kappa, c, d, alpha);
        const double flat_sq = (c - d) * (c - d) + 4.0 * c * d * sa2 * sa2;
        y.push_back((a * a - flat_sq) / (d * d));
    }

    double coeff;
    if (y.size() == 1) {
        coeff = y[0];
    } else {
        // Linear (Richardson) extrapolation per consecutive pair; take the
        // value where successive extrapolants agree best.
        std::vector<double> extrap;
        for (size_t k = 0; k + 1 < y.size(); ++k) {
            const double d0 = delta_sequence[k], d1 = delta_sequence[k + 1];
            extrap.push_back((y[k + 1] * d0 - y[k] * d1) / (d0 - d1));
        }
        coeff = extrap.back();
        double best = std::numeric_limits<double>::infinity();
        for (size_t k = 1; k < extrap.size(); ++k) {
            const double diff = std::abs(extrap[k] - extrap[k - 1]);
            if (diff < best) {
                best = diff;
                coeff = extrap[k];
            }
        }
    }

    const double expected = f_kappa(kappa, alpha, c) - 1.0;
    if (std::abs(coeff - expected) > 1e-6)
        throw std::logic_error("expansion_order_check: fitted coefficient does not match f_kappa - 1");

    // Residual decay order from the largest-delta pair above the noise floor.
    const double floor = 1e-11 * (1.0 + std::abs(coeff));
    double order = std::numeric_limits<double>::infinity();
    if (y.size() >= 2) {
        const double r0 = std::abs(y[0] - coeff);
        const double r1 = std::abs(y[1] - coeff);
        if (r0 > floor && r1 > floor) {
            order = std::log(r0 / r1) / std::log(delta_sequence[0] / delta_sequence[1]);
            if (order < 0.8)
                throw std::logic_error("expansion_order_check: residual decays slower than O(delta)");
        }
    }
    return {coeff, order};
}

double boundary_outwardness_check(const SignedDiscreteMeasure& m, const ModelPoint& c, double rho,
                                  int samples, bool force, unsigned long long seed) {
    if (samples < 1) throw std::domain_error("boundary_outwardness_check: need samples >= 1");
    const auto [mu_plus, mu_minus] = jordan_masses(m);
    const double r = support_radius(m, c);
    bool certified = false;
    if (r < rho) {
        certified = gradient_outward_certificate(mu_plus, mu_minus, rho, r).satisfied;
    }
    if (!certified && !force)
        throw CertificateFailedError("boundary_outwardness_check: outward-gradient certificate fails");

    const int n = c.space.dimension;
    const auto frame = canonical_frame(c);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    double worst = std::numeric_limits<double>::infinity();
    int produced = 0;
    auto probe = [&](const Vector& dir) {
        const ModelPoint x = from_normal_coords(c, frame, rho * dir);
        const TangentVector back = log_map(x, c);
        // Outward unit normal: direction of -log_x(c).
        const TangentVector normal = TangentVector(x, -back.ambient / back.norm());
        worst = std::min(worst, normal.inner(gradient(m, x)));
        ++produced;
    };
    for (int i = 0; i < n && produced < samples; ++i) {
        Vector dir = Vector::Zero(n);
        dir[i] = 1.0;
        probe(dir);
        if (produced < samples) probe(-dir);
    }
    while (produced < samples) {
        Vector dir(n);
        for (int i = 0; i < n; ++i) dir[i] = gauss(rng);
        const double norm = dir.norm();
        if (norm < 1e-12) continue;
        probe(dir / norm);
    }

    if (certified && !(worst > 0.0))
        throw std::logic_error("boundary_outwardness_check: certified instance with non-outward gradient");
    return worst;
}

namespace {

struct GridScan {
    std::vector<Vector> coords;  // normal coordinates of in-ball grid nodes
    std::vector<double> values;  // energies
    std::vector<int> local_minima;
};

double energy_at(const SignedDiscreteMeasure& m, const ModelPoint& c,
                 const std::vector<TangentVector>& frame, const Vector& xi) {
    return energy(m, from_normal_coords(c, frame, xi));
}

// Pattern-search descent constrained to ||xi|| <= rho.
Vector refine(const SignedDiscreteMeasure& m, const ModelPoint& c,
              const std::vector<TangentVector>& frame, Vector xi, double rho, double step,
              double resolution) {
    const int n = xi.size();
    double best = energy_at(m, c, frame, xi);
    for (int evals = 0; step > resolution / 4.0 && evals < 200000;) {
        bool moved = false;
        for (int i = 0; i < n; ++i) {
            for (double sgn : {1.0, -1.0}) {
                Vector cand = xi;
                cand[i] += sgn * step;
                if (cand.norm() > rho) continue;
                const double e = energy_at(m, c, frame, cand);
                ++evals;
                if (e < best) {
                    best = e;
                    xi = cand;
                    moved = true;
                }
            }
        }
        if (!moved) step *= 0.5;
    }
    return xi;
}

} // namespace

GridMinimizeResult grid_minimize(const SignedDiscreteMeasure& m, const ModelPoint& c, double rho,
                                 double resolution) {
    const int n = c.space.dimension;
    if (n > 3) throw std::domain_error("grid_minimize: dimension must be <= 3");
    if (!(rho > 0.0) || !(resolution > 0.0))
        throw std::domain_error("grid_minimize: rho and resolution must be positive");
    const auto frame = canonical_frame(c);

    // Coarse spacing keeps the scan affordable; refinement recovers the
    // requested resolution afterwards.
    double h = resolution;
    if (n == 2) h = std::max(resolution, rho / 48.0);
    if (n == 3) h = std::max(resolution, rho / 16.0);
    const int m_idx = static_cast<int>(std::floor(rho / h));
    const int side = 2 * m_idx + 1;

    size_t cell_count = 1;
    for (int d = 0; d < n; ++d) cell_count *= static_cast<size_t>(side);
    std::vector<double> values(cell_count, std::numeric_limits<double>::quiet_NaN());
    auto flat = [&](const std::array<int, 3>& idx) {
        size_t f = 0;
        for (int d = 0; d < n; ++d) f = f * side + (idx[d] + m_idx);
        return f;
    };

    std::array<int, 3> idx{0, 0, 0};
    std::vector<std::array<int, 3>> nodes;
    std::function<void(int)> scan = [&](int d) {
        if (d == n) {
            Vector xi(n);
            for (int k = 0; k < n; ++k) xi[k] = idx[k] * h;
            if (xi.norm() > rho) return;
            values[flat(idx)] = energy_at(m, c, frame, xi);
            nodes.push_back(idx);
            return;
        }
        for (idx[d] = -m_idx; idx[d] <= m_idx; ++idx[d]) scan(d + 1);
    };
    scan(0);

    // Grid-local minima: not above any in-ball axis neighbour.
    std::vector<std::array<int, 3>> minima;
    for (const auto& node : nodes) {
        const double e = values[flat(node)];
        bool is_min = true;
        for (int d = 0; d < n && is_min; ++d) {
            for (int sgn : {-1, 1}) {
                auto nb = node;
                nb[d] += sgn;
                if (std::abs(nb[d]) > m_idx) continue;
                const double en = values[flat(nb)];
                if (!std::isnan(en) && en < e) {
                    is_min = false;
                    break;
                }
            }
        }
        if (is_min) minima.push_back(node);
    }

    // Refine every coarse basin and merge those that converge together.
    const double merge_tol = std::max(2.0 * resolution, h);
    std::vector<Vector> refined;
    for (const auto& node : minima) {
        Vector xi(n);
        for (int k = 0; k < n; ++k) xi[k] = node[k] * h;
        xi = refine(m, c, frame, xi, rho, h, resolution);
        bool fresh = true;
        for (const Vector& seen : refined)
            if ((seen - xi).norm() <= merge_tol) {
                fresh = false;
                break;
            }
        if (fresh) refined.push_back(xi);
    }

    Vector best = refined.front();
    double best_e = energy_at(m, c, frame, best);
    for (const Vector& cand : refined) {
        const double e = energy_at(m, c, frame, cand);
        if (e < best_e) {
            best_e = e;
            best = cand;
        }
    }
    return {from_normal_coords(c, frame, best), best_e, static_cast<int>(refined.size())};
}

} // namespace rcm
