#include "flowlab/monitors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace flowlab {

namespace {
constexpr double nan = std::numeric_limits<double>::quiet_NaN();
}

bool has_pinching_G(FlowKind kind, int ambient_c) {
    if (ambient_c == -1) return true;
    if (ambient_c == +1) return kind != FlowKind::ScalarPow;
    return false;
}

double pinching_G(const SpeedSpec& spec, double k1, double k2, double F) {
    if (!has_pinching_G(spec.kind, spec.ambient.c))
        throw domain_error("no pinching quantity for " + to_string(spec.kind) + " in the " +
                           spec.ambient.name() + " ambient");
    const double K = k1 * k2;
    const double denom = spec.ambient.c == -1 ? K - 1.0 : K;
    if (!in_cone(spec, k1, k2) || !(denom > 0.0))
        throw domain_error("pinching quantity needs " +
                           std::string(spec.ambient.c == -1 ? "kappa1*kappa2 > 1" : "kappa_i > 0") +
                           ", got kappa = (" + std::to_string(k1) + ", " + std::to_string(k2) + ")");
    const double d = (k1 - k2) / denom;
    return F * F * d * d;
}

std::pair<double, double> g_monotone_alpha_range(FlowKind kind, int ambient_c) {
    if (ambient_c == -1) {
        if (kind == FlowKind::MeanPow) return {1.0 / 3.0, 4.0};
        return {0.25, 1.0};
    }
    if (kind == FlowKind::MeanPow) return {1.0, 5.0};
    return {0.25, 1.0};
}

std::pair<double, double> pinch_constancy_alpha_range(FlowKind kind, int ambient_c) {
    if (kind == FlowKind::MeanPow) return ambient_c == -1 ? std::pair{1.0, 4.0} : std::pair{1.0, 5.0};
    return {0.5, 1.0};
}

double bound_scalar_blowup_time(const SpeedSpec& spec, double K0min) {
    const double m0 = K0min - 1.0;
    if (!(m0 > 0.0)) throw domain_error("bound needs K0min > 1");
    const double a = spec.alpha;
    if (spec.kind == FlowKind::MeanPow)
        return pow_real(2.0, -a) / (a + 1.0) * pow_real(m0, -(a + 1.0) / 2.0);
    return pow_real(m0, -(a + 0.5)) / (2.0 * a + 1.0);
}

double bound_scalar_lower(const SpeedSpec& spec, double t, double K0min) {
    if (spec.ambient.c != -1)
        throw domain_error("scalar-curvature bound applies to the hyperbolic ambient");
    const double m0 = K0min - 1.0;
    if (!(m0 > 0.0)) throw domain_error("bound needs K0min > 1");
    const double a = spec.alpha;
    double base, expo;
    if (spec.kind == FlowKind::MeanPow) {
        base = 1.0 - pow_real(2.0, a) * (a + 1.0) * t * pow_real(m0, (a + 1.0) / 2.0);
        expo = -2.0 / (a + 1.0);
    } else {
        base = 1.0 - (2.0 * a + 1.0) * t * pow_real(m0, a + 0.5);
        expo = -2.0 / (2.0 * a + 1.0);
    }
    if (!(base > 0.0))
        throw domain_error("bound exhausted: formula blows up at t = " +
                           std::to_string(bound_scalar_blowup_time(spec, K0min)));
    return m0 * std::pow(base, expo);
}

double bound_H_lower_sphere(double alpha, double t, double H0min) {
    if (!(H0min > 0.0)) throw domain_error("bound needs H0min > 0");
    const double base = 1.0 - (alpha + 1.0) / 2.0 * pow_real(H0min, alpha + 1.0) * t;
    if (!(base > 0.0))
        throw domain_error("bound exhausted: formula blows up at t = " +
                           std::to_string(bound_H_blowup_time_sphere(alpha, H0min)));
    return H0min * std::pow(base, -1.0 / (alpha + 1.0));
}

double bound_H_blowup_time_sphere(double alpha, double H0min) {
    if (!(H0min > 0.0)) throw domain_error("bound needs H0min > 0");
    return 2.0 / (alpha + 1.0) * pow_real(H0min, -(alpha + 1.0));
}

double bound_K_lower_sphere_gauss(double alpha, double t, double K0min) {
    if (!(K0min > 0.0)) throw domain_error("bound needs K0min > 0");
    const double base = 1.0 - (2.0 * alpha + 1.0) * pow_real(K0min, alpha + 0.5) * t;
    if (!(base > 0.0)) throw domain_error("bound exhausted");
    return K0min * std::pow(base, -2.0 / (2.0 * alpha + 1.0));
}

PinchDecayFit pinch_decay_check(std::span<const MonitorRecord> records, double alpha) {
    if (!(alpha > 1.0)) throw domain_error("pinch decay fit needs alpha > 1");
    PinchDecayFit fit;
    if (records.empty()) return fit;

    double worst = 0.0;
    for (const auto& r : records) worst = std::max(worst, r.pinch_ratio_max - 1.0);
    if (worst < 1e-9) {
        fit.trivially_pinched = true;
        return fit;
    }

    // Fit on the trailing part of the tau range; the early transient is not
    // in the asymptotic regime.
    const double tau_lo = records.front().tau;
    const double tau_hi = records.back().tau;
    const double cut = tau_lo + 0.25 * (tau_hi - tau_lo);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& r : records) {
        if (!(r.tau >= cut)) continue;
        const double excess = r.pinch_ratio_max - 1.0;
        if (!(excess > 1e-14)) continue;
        const double x = r.tau, y = std::log(excess);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 8) {
        fit.trivially_pinched = true;
        return fit;
    }
    const double det = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
    fit.points = n;
    return fit;
}

MonitorBaseline make_baseline(const FlowState& initial, double g_rel_tol) {
    MonitorBaseline b;
    b.K0min = initial.curvature.min_of(initial.curvature.K);
    b.H0min = initial.curvature.min_of(initial.curvature.H);
    if (has_pinching_G(initial.spec.kind, initial.spec.ambient.c)) {
        double gmax = 0.0;
        for (int i = 0; i < initial.graph.grid.node_count(); ++i) {
            const double F =
                speed_jet(initial.spec, initial.curvature.kappa1[i], initial.curvature.kappa2[i]).f;
            gmax = std::max(gmax, pinching_G(initial.spec, initial.curvature.kappa1[i],
                                             initial.curvature.kappa2[i], F));
        }
        b.G0max = gmax;
    } else {
        b.G0max = nan;
    }
    b.g_tolerance = g_rel_tol * (std::isnan(b.G0max) ? 0.0 : b.G0max) + 1e-12;
    return b;
}

namespace {

// First-order axial recentering: remove the l=1 Legendre component of u
// before taking max/min, as a proxy for the true in/out radii around the
// drifting center.
double recentered_radius_ratio(const FlowState& state) {
    const SphereGrid& grid = state.graph.grid;
    double num = 0.0, den = 0.0;
    for (int j = 0; j < grid.n_theta(); ++j) {
        const double w = grid.sin_theta(j);  // area weight per theta ring
        for (int k = 0; k < grid.n_phi(); ++k) {
            const double u = state.graph.u[grid.index(j, k)];
            num += w * u * grid.cos_theta(j);
            den += w * grid.cos_theta(j) * grid.cos_theta(j);
        }
    }
    const double d = num / den;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int j = 0; j < grid.n_theta(); ++j)
        for (int k = 0; k < grid.n_phi(); ++k) {
            const double u = state.graph.u[grid.index(j, k)] - d * grid.cos_theta(j);
            lo = std::min(lo, u);
            hi = std::max(hi, u);
        }
    return hi / lo;
}

}  // namespace

MonitorRecord assemble_record(const FlowState& state, double dt, const MonitorBaseline& baseline,
                              const MonitorRecord* previous) {
    MonitorRecord r;
    r.t = state.graph.t;
    r.tau = nan;
    r.dt = dt;
    r.u_min = state.graph.u_min();
    r.u_max = state.graph.u_max();
    r.k1_max = state.curvature.max_of(state.curvature.kappa1);
    r.k2_min = state.curvature.min_of(state.curvature.kappa2);
    r.H_min = state.curvature.min_of(state.curvature.H);
    r.K_min = state.curvature.min_of(state.curvature.K);
    r.u_tilde_dev = nan;

    if (has_pinching_G(state.spec.kind, state.spec.ambient.c)) {
        double gmax = 0.0;
        for (int i = 0; i < state.graph.grid.node_count(); ++i) {
            const double F =
                speed_jet(state.spec, state.curvature.kappa1[i], state.curvature.kappa2[i]).f;
            gmax = std::max(
                gmax, pinching_G(state.spec, state.curvature.kappa1[i], state.curvature.kappa2[i], F));
        }
        r.G_max = gmax;
    } else {
        r.G_max = nan;
    }
    r.pinch_ratio_max = state.curvature.pinch_ratio_max();
    r.radius_ratio = recentered_radius_ratio(state);

    // Printed lower bounds for the matching flow.
    const int c = state.spec.ambient.c;
    if (c == -1) {
        r.bound_K = bound_scalar_lower(state.spec, r.t, baseline.K0min);
        r.bound_H = nan;
        r.bound_K_ok = (r.K_min - 1.0) >= r.bound_K - 1e-6;
    } else if (c == +1) {
        if (state.spec.kind == FlowKind::MeanPow) {
            r.bound_K = baseline.K0min;  // min K is non-decreasing
            r.bound_H = bound_H_lower_sphere(state.spec.alpha, r.t, baseline.H0min);
            r.bound_H_ok = r.H_min >= r.bound_H - 1e-6;
        } else {
            r.bound_K = bound_K_lower_sphere_gauss(state.spec.alpha, r.t, baseline.K0min);
            r.bound_H = nan;
        }
        r.bound_K_ok = r.K_min >= r.bound_K - 1e-6;
    } else {
        r.bound_K = nan;
        r.bound_H = nan;
    }

    if (previous && !std::isnan(r.G_max))
        r.g_monotone_ok = r.G_max <= previous->G_max + baseline.g_tolerance;
    return r;
}

void finalize_records(std::span<MonitorRecord> records, const SphericalSolution& family,
                      double t_extinct_est) {
    for (auto& r : records) {
        const double remaining = t_extinct_est - r.t;
        if (!(remaining > 0.0)) continue;
        const double theta = family.radius_at_remaining(remaining);
        r.tau = -std::log(theta);
        r.u_tilde_dev = std::max(r.u_max / theta - 1.0, 1.0 - r.u_min / theta);
    }
}

}  // namespace flowlab
