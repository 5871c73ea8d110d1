#include "flowlab/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace flowlab {

namespace {

struct NodeData {
    double v;
    double phi_theta, phi_phi;
    std::array<double, 4> W;
};

double checked(double x, int node, const char* what) {
    if (!std::isfinite(x))
        throw data_error(std::string("non-finite ") + what + " at node " + std::to_string(node));
    return x;
}

// Shared per-node kernel.  phi_vals caches radial_chart(u) at all nodes so
// the theta/phi stencils of the Hessian reuse transcendental evaluations.
NodeData node_curvature(const RadialGraph& g, const std::vector<double>& phi_vals, int node) {
    const SphereGrid& grid = g.grid;
    const int np = grid.n_phi();
    const int j = node / np;
    const int k = node % np;
    const bool full = grid.mode() == GridMode::Full;
    const double ht = grid.h_theta();

    const double uc = checked(g.u[node], node, "graph value");
    const double un = checked(g.u_at(j + 1, k), node, "graph value");
    const double us = checked(g.u_at(j - 1, k), node, "graph value");

    const double sn = g.ambient.sn(uc);
    if (!(sn > 0.0) || !std::isfinite(sn))
        throw data_error("sn(u) not positive at node " + std::to_string(node));
    const double ct = g.ambient.ct(uc);
    const double sin_t = grid.sin_theta(j);
    const double cos_t = grid.cos_theta(j);

    const double u_th = (un - us) / (2.0 * ht);
    const double phi_th = u_th / sn;

    double u_ph = 0.0, phi_ph = 0.0;
    if (full) {
        const double hp = grid.h_phi();
        const double ue = g.u_at(j, k + 1);
        const double uw = g.u_at(j, k - 1);
        u_ph = (ue - uw) / (2.0 * hp);
        phi_ph = u_ph / sn;
    }

    const double grad2 = phi_th * phi_th + (full ? phi_ph * phi_ph / (sin_t * sin_t) : 0.0);
    const double v = std::sqrt(1.0 + grad2);

    // Covariant Hessian of phi = radial_chart(u) w.r.t. the round metric.
    const double pc = phi_vals[node];
    const double pn = phi_vals[grid.ghost_index(j + 1, k)];
    const double ps = phi_vals[grid.ghost_index(j - 1, k)];
    const double hess_tt = (pn - 2.0 * pc + ps) / (ht * ht);

    double hess_tp = 0.0;
    double hess_pp = sin_t * cos_t * phi_th;
    if (full) {
        const double hp = grid.h_phi();
        const double pe = phi_vals[grid.ghost_index(j, k + 1)];
        const double pw = phi_vals[grid.ghost_index(j, k - 1)];
        const double pne = phi_vals[grid.ghost_index(j + 1, k + 1)];
        const double pnw = phi_vals[grid.ghost_index(j + 1, k - 1)];
        const double pse = phi_vals[grid.ghost_index(j - 1, k + 1)];
        const double psw = phi_vals[grid.ghost_index(j - 1, k - 1)];
        const double p_thph = (pne - pnw - pse + psw) / (4.0 * ht * hp);
        const double p_phph = (pe - 2.0 * pc + pw) / (hp * hp);
        hess_tp = p_thph - (cos_t / sin_t) * phi_ph;
        hess_pp = p_phph + sin_t * cos_t * phi_th;
    }

    // Projector sigma^{ik} - phi^i phi^k / v^2 (raised phi: phi^phi has a
    // 1/sin^2 factor).
    const double v2 = v * v;
    const double phi_up_ph = phi_ph / (sin_t * sin_t);
    const double P_tt = 1.0 - phi_th * phi_th / v2;
    const double P_tp = -phi_th * phi_up_ph / v2;
    const double P_pp = 1.0 / (sin_t * sin_t) - phi_up_ph * phi_up_ph / v2;

    const double M_tt = P_tt * hess_tt + P_tp * hess_tp;
    const double M_tp = P_tt * hess_tp + P_tp * hess_pp;
    const double M_pt = P_tp * hess_tt + P_pp * hess_tp;
    const double M_pp = P_tp * hess_tp + P_pp * hess_pp;

    const double s = -1.0 / (v * sn);
    const double diag = ct / v;
    NodeData out;
    out.v = v;
    out.phi_theta = phi_th;
    out.phi_phi = phi_ph;
    out.W = {s * M_tt + diag, s * M_tp, s * M_pt, s * M_pp + diag};
    for (double w : out.W) checked(w, node, "Weingarten entry");
    return out;
}

}  // namespace

int CurvatureField::flag_count(std::uint8_t mask) const {
    int n = 0;
    for (auto f : flags) n += (f & mask) != 0;
    return n;
}

bool CurvatureField::any_flag(std::uint8_t mask) const { return flag_count(mask) > 0; }

double CurvatureField::min_of(const std::vector<double>& field) const {
    return *std::min_element(field.begin(), field.end());
}

double CurvatureField::max_of(const std::vector<double>& field) const {
    return *std::max_element(field.begin(), field.end());
}

double CurvatureField::pinch_ratio_max() const {
    double r = 1.0;
    for (std::size_t i = 0; i < kappa1.size(); ++i) {
        if (!(kappa2[i] > 0.0))
            throw domain_error("pinch ratio undefined: kappa2 <= 0 at node " + std::to_string(i));
        r = std::max(r, kappa1[i] / kappa2[i]);
    }
    return r;
}

double slope_factor(const RadialGraph& graph, int node) {
    std::vector<double> phi_vals(graph.u.size());
    for (std::size_t i = 0; i < graph.u.size(); ++i)
        phi_vals[i] = graph.ambient.radial_chart(graph.u[i]);
    return node_curvature(graph, phi_vals, node).v;
}

std::array<double, 4> weingarten(const RadialGraph& graph, int node) {
    std::vector<double> phi_vals(graph.u.size());
    for (std::size_t i = 0; i < graph.u.size(); ++i)
        phi_vals[i] = graph.ambient.radial_chart(graph.u[i]);
    return node_curvature(graph, phi_vals, node).W;
}

CurvatureField curvature_field(const RadialGraph& graph) {
    const int n = graph.grid.node_count();
    std::vector<double> phi_vals(n);
    for (int i = 0; i < n; ++i) phi_vals[i] = graph.ambient.radial_chart(graph.u[i]);

    CurvatureField f;
    f.v.resize(n);
    f.phi_theta.resize(n);
    f.phi_phi.resize(n);
    f.W.resize(n);
    f.kappa1.resize(n);
    f.kappa2.resize(n);
    f.H.resize(n);
    f.K.resize(n);
    f.flags.assign(n, 0);

    for (int i = 0; i < n; ++i) {
        NodeData nd = node_curvature(graph, phi_vals, i);
        f.v[i] = nd.v;
        f.phi_theta[i] = nd.phi_theta;
        f.phi_phi[i] = nd.phi_phi;
        f.W[i] = nd.W;

        const double tr = nd.W[0] + nd.W[3];
        const double det = nd.W[0] * nd.W[3] - nd.W[1] * nd.W[2];
        double disc = tr * tr - 4.0 * det;
        // W is conjugate to a symmetric matrix, so disc >= 0 up to round-off.
        if (disc < 0.0) {
            if (disc < -1e-10 * std::max(tr * tr, 1.0))
                throw data_error("complex principal curvatures at node " + std::to_string(i));
            disc = 0.0;
        }
        const double root = std::sqrt(disc);
        const double k1 = (tr + root) / 2.0;
        const double k2 = (tr - root) / 2.0;
        f.kappa1[i] = k1;
        f.kappa2[i] = k2;
        f.H[i] = k1 + k2;
        f.K[i] = k1 * k2;

        if (k2 <= 0.0) f.flags[i] |= node_flag::convexity_loss;
        if (graph.ambient.c == -1 && f.K[i] <= 1.0) f.flags[i] |= node_flag::scalar_loss;
    }
    return f;
}

}  // namespace flowlab
