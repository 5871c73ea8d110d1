#pragma once

// Independent curvature oracle for axisymmetric radial graphs, used to
// validate the graph Weingarten formula.  The surface is embedded in the
// model space (hyperboloid in R^{3,1} for c = -1, unit sphere in R^4 for
// c = +1, R^3 for c = 0); the normal field is computed algebraically and
// differentiated numerically, so nothing here shares code with the formula
// under test.

#include <array>
#include <cmath>
#include <functional>

#include "flowlab/ambient.hpp"

namespace oracle {

using Vec4 = std::array<double, 4>;

struct Profile {
    std::function<double(double)> u;   // radius as a function of theta
    std::function<double(double)> du;  // analytic derivative
};

inline double dot(const flowlab::Ambient& amb, const Vec4& a, const Vec4& b) {
    const double sign0 = amb.c == -1 ? -1.0 : 1.0;  // Minkowski for the hyperboloid
    return sign0 * a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

// Embedding of the profile point at azimuth phi = 0:
//   c=-1: (cosh u, sinh u sin t, 0, sinh u cos t)
//   c=+1: (cos u, sin u sin t, 0, sin u cos t)
//   c= 0: (0, u sin t, 0, u cos t)   (first slot unused)
inline Vec4 embed(const flowlab::Ambient& amb, double u, double t) {
    const double sn = amb.sn(u), cs = amb.cs(u);
    if (amb.c == 0) return {0.0, u * std::sin(t), 0.0, u * std::cos(t)};
    return {cs, sn * std::sin(t), 0.0, sn * std::cos(t)};
}

// Tangent along theta, via the chain rule with the analytic profile slope.
inline Vec4 d_theta(const flowlab::Ambient& amb, const Profile& p, double t) {
    const double u = p.u(t), up = p.du(t);
    const double sn = amb.sn(u), cs = amb.cs(u);
    if (amb.c == 0)
        return {0.0, up * std::sin(t) + u * std::cos(t), 0.0, up * std::cos(t) - u * std::sin(t)};
    const double dsn = cs * up;
    const double dcs = (amb.c == -1 ? sn : -sn) * up;
    return {dcs, dsn * std::sin(t) + sn * std::cos(t), 0.0, dsn * std::cos(t) - sn * std::sin(t)};
}

// Outward unit normal at azimuth 0.  It lies in the span of the radial
// direction and the theta tangent, orthogonal to the tangent (and to the
// position vector for curved ambients).
inline Vec4 normal(const flowlab::Ambient& amb, const Profile& p, double t) {
    const double u = p.u(t);
    const Vec4 xt = d_theta(amb, p, t);
    // radial direction d/du of the embedding
    const double sn = amb.sn(u), cs = amb.cs(u);
    Vec4 rad;
    if (amb.c == 0)
        rad = {0.0, std::sin(t), 0.0, std::cos(t)};
    else
        rad = {amb.c == -1 ? sn : -sn, cs * std::sin(t), 0.0, cs * std::cos(t)};
    // Gram-Schmidt: remove the xt component from rad.
    const double g_tt = dot(amb, xt, xt);
    const double proj = dot(amb, rad, xt) / g_tt;
    Vec4 nu;
    for (int i = 0; i < 4; ++i) nu[i] = rad[i] - proj * xt[i];
    const double norm = std::sqrt(dot(amb, nu, nu));
    for (auto& x : nu) x /= norm;
    if (dot(amb, nu, rad) < 0.0)
        for (auto& x : nu) x = -x;
    return nu;
}

struct Curvatures {
    double k_meridian;
    double k_parallel;
    double v;
};

// Principal curvatures of the surface of revolution at polar angle t.
// Meridian curvature from the Weingarten relation d nu = kappa * dX along
// the profile (numerical derivative of the normal field); parallel curvature
// from the rotational symmetry: nu_phi = b(t) e_phi and X_phi = sn(u) sin t e_phi.
inline Curvatures principal_curvatures(const flowlab::Ambient& amb, const Profile& p, double t,
                                       double fd_step = 1e-5) {
    const Vec4 xt = d_theta(amb, p, t);
    const double g_tt = dot(amb, xt, xt);

    const Vec4 nu_plus = normal(amb, p, t + fd_step);
    const Vec4 nu_minus = normal(amb, p, t - fd_step);
    Vec4 dnu;
    for (int i = 0; i < 4; ++i) dnu[i] = (nu_plus[i] - nu_minus[i]) / (2.0 * fd_step);
    const double k_mer = dot(amb, dnu, xt) / g_tt;

    const Vec4 nu = normal(amb, p, t);
    const double u = p.u(t);
    const double k_par = nu[1] / (amb.sn(u) * std::sin(t));

    const double v = std::sqrt(g_tt) / amb.sn(u);
    return {k_mer, k_par, v};
}

}  // namespace oracle
