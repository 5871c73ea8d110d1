#pragma once

#include <optional>
#include <span>
#include <vector>

#include "flowlab/integrator.hpp"

namespace flowlab {

/// One row of the diagnostic time series.  tau, u_tilde_dev and the bound
/// columns are filled by a post-pass once the extinction time estimate is
/// available; until then they are NaN.
struct MonitorRecord {
    double t = 0.0;
    double tau = 0.0;
    double dt = 0.0;
    double u_min = 0.0, u_max = 0.0;
    double k1_max = 0.0, k2_min = 0.0;
    double H_min = 0.0, K_min = 0.0;
    double G_max = 0.0;
    double pinch_ratio_max = 1.0;
    double radius_ratio = 1.0;
    double u_tilde_dev = 0.0;
    double bound_K = 0.0;  // lower bound for K-1 (c=-1) or K (c=+1)
    double bound_H = 0.0;  // lower bound for H (spherical mean power only)
    bool g_monotone_ok = true;
    bool bound_K_ok = true;
    bool bound_H_ok = true;
};

/// The flow's pinching quantity G = F^2 (k1-k2)^2 / D^2 with D = K-1 in the
/// hyperbolic ambient and D = K in the spherical one.  No quantity is
/// defined for scalar_power outside the hyperbolic ambient.
double pinching_G(const SpeedSpec& spec, double k1, double k2, double F);

/// Whether a pinching quantity exists for (kind, ambient).
bool has_pinching_G(FlowKind kind, int ambient_c);

/// alpha interval on which max G is proven non-increasing for this case.
std::pair<double, double> g_monotone_alpha_range(FlowKind kind, int ambient_c);

/// alpha interval of the pinching-constancy corollaries (ratio controlled by
/// its initial value).
std::pair<double, double> pinch_constancy_alpha_range(FlowKind kind, int ambient_c);

/// Lower bound for min(K-1) at time t in the hyperbolic ambient:
///   mean power:   m0 (1 - 2^a (a+1) t m0^{(a+1)/2})^{-2/(a+1)}
///   scalar/gauss: m0 (1 - (2a+1) t m0^{a+1/2})^{-2/(2a+1)}
/// with m0 = K0min - 1.  Throws when t is at or past the formula blow-up
/// ("bound exhausted", distinct from flow extinction).
double bound_scalar_lower(const SpeedSpec& spec, double t, double K0min);

/// Blow-up time of bound_scalar_lower; for the mean-power flow this is also
/// the printed upper bound for the maximum existence time.
double bound_scalar_blowup_time(const SpeedSpec& spec, double K0min);

/// Lower bound for min H under the spherical mean-power flow (n = 2):
///   H0 (1 - (a+1)/2 H0^{a+1} t)^{-1/(a+1)}.
double bound_H_lower_sphere(double alpha, double t, double H0min);

/// Implied upper bound for the existence time of the spherical mean-power
/// flow: (2/(a+1)) H0^{-(a+1)}.
double bound_H_blowup_time_sphere(double alpha, double H0min);

/// Lower bound for min K under the spherical gauss-power flow:
///   K0 (1 - (2a+1) t K0^{a+1/2})^{-2/(2a+1)}.
double bound_K_lower_sphere_gauss(double alpha, double t, double K0min);

/// Least-squares fit of log(max k1/k2 - 1) against tau over the trailing
/// part of a rescaled trajectory (mean power, c = -1, alpha > 1).
struct PinchDecayFit {
    bool trivially_pinched = false;
    double slope = 0.0;
    double intercept = 0.0;
    int points = 0;
};

PinchDecayFit pinch_decay_check(std::span<const MonitorRecord> records, double alpha);

/// Baseline data captured from the initial state, used by the per-record
/// monotonicity and bound comparisons.
struct MonitorBaseline {
    double K0min = 0.0;
    double H0min = 0.0;
    double G0max = 0.0;
    double g_tolerance = 0.0;  // allowed per-step increase of max G
};

MonitorBaseline make_baseline(const FlowState& initial, double g_rel_tol = 1e-6);

/// Reductions over one state plus the pass/fail comparisons against the
/// previous record and the printed bound formulas.  The radius ratio is
/// computed after first-order axial recentering (the l=1 component of u is
/// removed before taking max/min).
MonitorRecord assemble_record(const FlowState& state, double dt, const MonitorBaseline& baseline,
                              const MonitorRecord* previous);

/// Post-pass: fills tau and u_tilde_dev from the spherical family once the
/// extinction time estimate is known.  Theta(t) = radius of the comparison
/// sphere that extinguishes at t_extinct_est.
void finalize_records(std::span<MonitorRecord> records, const SphericalSolution& family,
                      double t_extinct_est);

}  // namespace flowlab
