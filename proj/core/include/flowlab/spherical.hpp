#pragma once

#include <vector>

#include "flowlab/speeds.hpp"

namespace flowlab {

/// Trajectory of the geodesic-sphere solution: radius Theta(t) with
/// Theta(0) = theta0, integrated until theta_stop, plus the estimated
/// extinction time (Theta -> 0).
struct SphericalSolution {
    Ambient ambient;
    SpeedSpec spec;
    double theta0 = 0.0;
    double t_extinct = 0.0;

    struct Sample {
        double t, theta, dtheta;  // dtheta = dTheta/dt at the sample
    };
    std::vector<Sample> samples;  // t increasing, theta strictly decreasing

    double t_end() const { return samples.back().t; }
    double theta_end() const { return samples.back().theta; }

    /// Dense output by cubic Hermite interpolation; below the sampled range
    /// the extinction tail is inverted by quadrature.
    double theta_at(double t) const;

    /// Time left until extinction for a sphere of the given radius
    /// (radius must be <= theta0).
    double time_to_extinction(double radius) const;

    /// Radius of the sphere that extinguishes after the given remaining
    /// time; inverse of time_to_extinction.
    double radius_at_remaining(double remaining) const;
};

/// dTheta/dt for a geodesic sphere of radius theta: principal curvatures are
/// ct(theta), so F evaluated on the sphere gives
///   MeanPow:   -(2 ct)^alpha      ScalarPow (c=-1): -sn(theta)^(-2 alpha)
///   GaussPow:  -ct^(2 alpha)
/// Domain: theta > 0, and theta < pi/2 for c = +1.
double spherical_ode_rhs(const Ambient& ambient, const SpeedSpec& spec, double theta);

/// Adaptive embedded Runge-Kutta integration of the sphere radius down to
/// theta_stop; the extinction tail below theta_stop is added by quadrature
/// of dt = dTheta / |rhs|.
SphericalSolution solve_spherical(const Ambient& ambient, const SpeedSpec& spec, double theta0,
                                  double tol, double theta_stop = 1e-4);

}  // namespace flowlab
