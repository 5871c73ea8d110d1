#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "flowlab/radial_graph.hpp"

namespace flowlab {

namespace node_flag {
inline constexpr std::uint8_t convexity_loss = 1;  // kappa_2 <= 0
inline constexpr std::uint8_t scalar_loss = 2;     // kappa_1 * kappa_2 <= 1 (c = -1 only)
}  // namespace node_flag

/// Per-node curvature data of a radial graph.
///
/// W holds the mixed Weingarten matrix (rows indexed by theta, phi), kappa1
/// >= kappa2 are its eigenvalues, H = kappa1 + kappa2, K = kappa1 * kappa2.
struct CurvatureField {
    std::vector<double> v;
    std::vector<double> phi_theta, phi_phi;  // phi_i = u_i / sn(u)
    std::vector<std::array<double, 4>> W;    // row-major {W_tt, W_tp, W_pt, W_pp}
    std::vector<double> kappa1, kappa2, H, K;
    std::vector<std::uint8_t> flags;

    int flag_count(std::uint8_t mask) const;
    bool any_flag(std::uint8_t mask) const;

    double min_of(const std::vector<double>& field) const;
    double max_of(const std::vector<double>& field) const;

    /// Largest kappa1/kappa2 over the nodes; requires kappa2 > 0 everywhere.
    double pinch_ratio_max() const;
};

/// Graph slope factor v = sqrt(1 + sn(u)^-2 |Du|^2_sigma) >= 1, with Du from
/// centered differences.
double slope_factor(const RadialGraph& graph, int node);

/// Mixed Weingarten matrix of the graph at one node,
///   W = -(sigma^-1 - phi phi^T / v^2) Hess(phi) / (v sn(u)) + ct(u)/v * Id,
/// where phi is the radial chart of u and Hess is the covariant Hessian on
/// the round sphere.  Outward-normal convention: geodesic spheres get
/// positive principal curvatures.
std::array<double, 4> weingarten(const RadialGraph& graph, int node);

/// Evaluates v, phi, W, sorted eigenvalues, H and K at every node and raises
/// the convexity / scalar-curvature flags (flags, not failures).
CurvatureField curvature_field(const RadialGraph& graph);

}  // namespace flowlab
