#pragma once

#include <string>

#include "flowlab/ambient.hpp"

namespace flowlab {

/// The three contracting speed families: F = H^a, (K-1)^a, K^a.
enum class FlowKind { MeanPow, ScalarPow, GaussPow };

std::string to_string(FlowKind k);

struct SpeedSpec {
    FlowKind kind = FlowKind::MeanPow;
    double alpha = 1.0;
    Ambient ambient = Ambient::hyperbolic();
    /// Strict cone inequalities are enforced with this margin so the flow
    /// stays uniformly parabolic in floating point.
    double cone_margin = 1e-10;

    void validate() const;

    /// alpha interval quoted for this (kind, ambient) by the convergence
    /// results; advisory metadata, not enforced.
    static std::pair<double, double> advisory_alpha_range(FlowKind kind, int c);
};

/// Speed value and first/second derivatives in principal-curvature
/// coordinates at a point (kappa1, kappa2).
struct SpeedJet {
    double f;
    double f1, f2;        // d f / d kappa_i
    double f11, f22, f12; // second derivatives
};

/// True when kappa lies strictly inside the admissibility cone of the kind
/// (MeanPow: H > 0; ScalarPow: K > 1; GaussPow: kappa_i > 0), with margin.
bool in_cone(const SpeedSpec& spec, double k1, double k2);

/// Text of the cone inequality for error messages, e.g. "kappa1*kappa2 > 1".
std::string cone_inequality(FlowKind kind);

/// Closed-form jet of F at (kappa1, kappa2); throws domain_error naming the
/// violated inequality when kappa is outside the cone.
SpeedJet speed_jet(const SpeedSpec& spec, double k1, double k2);

/// Homogeneity degree of the speed (MeanPow: alpha, GaussPow: 2*alpha);
/// ScalarPow is not homogeneous.
double homogeneity_degree(const SpeedSpec& spec);

/// Euler-relation residual f1*k1 + f2*k2 - deg*f for homogeneous kinds;
/// rejects ScalarPow with an explicit "not homogeneous" error.
double euler_check(const SpeedSpec& spec, double k1, double k2);

/// x^a with an exact product branch for integer and half-integer a.
double pow_real(double x, double a);

}  // namespace flowlab
