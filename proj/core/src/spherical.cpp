#include "flowlab/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

namespace flowlab {

namespace {

void check_theta_domain(const Ambient& ambient, double theta) {
    if (!(theta > 0.0) || !std::isfinite(theta))
        throw domain_error("sphere radius must be positive, got " + std::to_string(theta));
    if (ambient.c == +1 && theta >= std::numbers::pi / 2.0)
        throw domain_error("sphere radius must be below pi/2 in the spherical ambient");
}

// Blow-up exponent p of |rhs| ~ const * theta^-p as theta -> 0.
double tail_exponent(const SpeedSpec& spec) {
    return spec.kind == FlowKind::MeanPow ? spec.alpha : 2.0 * spec.alpha;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Time for the sphere to shrink from the given radius to zero, by
// quadrature of dt = dTheta/|rhs|.  Substituting s = theta^(p+1)/(p+1)
// removes the theta^-p blow-up of the integrand.
double tail_time(const Ambient& ambient, const SpeedSpec& spec, double radius) {
    if (radius <= 0.0) return 0.0;
    const double p = tail_exponent(spec);
    const double s_hi = std::pow(radius, p + 1.0) / (p + 1.0);
    auto integrand = [&](double s) {
        const double theta = std::pow((p + 1.0) * s, 1.0 / (p + 1.0));
        if (!(theta > 0.0)) {
            const double m = spec.kind == FlowKind::MeanPow ? 2.0 : 1.0;
            return 1.0 / std::pow(m, p);
        }
        const double g = std::pow(theta, p) * std::fabs(spherical_ode_rhs(ambient, spec, theta));
        return 1.0 / g;
    };
    return integrate(integrand, 0.0, s_hi, 1e-13 * std::max(s_hi, 1e-30));
}

double hermite(double t, double t0, double t1, double y0, double y1, double d0, double d1) {
    const double dt = t1 - t0;
    const double s = (t - t0) / dt;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * dt * d0 + (-2 * s3 + 3 * s2) * y1 +
           (s3 - s2) * dt * d1;
}

}  // namespace

double spherical_ode_rhs(const Ambient& ambient, const SpeedSpec& spec, double theta) {
    check_theta_domain(ambient, theta);
    const double a = spec.alpha;
    switch (spec.kind) {
        case FlowKind::MeanPow:
            return -pow_real(2.0 * ambient.ct(theta), a);
        case FlowKind::ScalarPow:
            if (ambient.c != -1)
                throw domain_error("scalar_power flow is defined only for the hyperbolic ambient");
            return -pow_real(ambient.sn(theta), -2.0 * a);
        default:
            return -pow_real(ambient.ct(theta), 2.0 * a);
    }
}

SphericalSolution solve_spherical(const Ambient& ambient, const SpeedSpec& spec, double theta0,
                                  double tol, double theta_stop) {
    check_theta_domain(ambient, theta0);
    if (!(theta_stop > 0.0 && theta_stop < theta0))
        throw domain_error("theta_stop must lie in (0, theta0)");
    if (!(tol > 0.0)) throw domain_error("tolerance must be positive");

    // Cash-Karp embedded RK5(4) pair.
    static constexpr double A[6][5] = {
        {0, 0, 0, 0, 0},
        {1.0 / 5, 0, 0, 0, 0},
        {3.0 / 40, 9.0 / 40, 0, 0, 0},
        {3.0 / 10, -9.0 / 10, 6.0 / 5, 0, 0},
        {-11.0 / 54, 5.0 / 2, -70.0 / 27, 35.0 / 27, 0},
        {1631.0 / 55296, 175.0 / 512, 575.0 / 13824, 44275.0 / 110592, 253.0 / 4096}};
    static constexpr double B5[6] = {37.0 / 378, 0, 250.0 / 621, 125.0 / 594, 0, 512.0 / 1771};
    static constexpr double B4[6] = {2825.0 / 27648,  0,             18575.0 / 48384,
                                     13525.0 / 55296, 277.0 / 14336, 1.0 / 4};

    SphericalSolution sol;
    sol.ambient = ambient;
    sol.spec = spec;
    sol.theta0 = theta0;

    double t = 0.0, theta = theta0;
    double dtheta = spherical_ode_rhs(ambient, spec, theta);
    sol.samples.push_back({t, theta, dtheta});

    double h = 1e-3 * theta0 / std::fabs(dtheta);
    double worst_err = 0.0;
    bool final_step = false;

    // The time left below radius theta shrinks like theta^(p+1); once it
    // falls under the double resolution of t itself, stop integrating and
    // let the tail quadrature carry the rest.
    const double p = tail_exponent(spec);
    auto tail_resolvable = [&](double th) {
        const double m = spec.kind == FlowKind::MeanPow ? 2.0 : 1.0;
        const double remaining = std::pow(th, p + 1.0) / ((p + 1.0) * std::pow(m, p));
        return remaining > 64.0 * std::numeric_limits<double>::epsilon() * std::max(t, 1e-12);
    };

    const long max_steps = 4'000'000;
    bool resolution_stop = false;
    for (long step = 0; step < max_steps && theta > theta_stop; ++step) {
        if (!tail_resolvable(theta)) {
            resolution_stop = true;
            break;
        }
        double k[6];
        bool stage_ok = true;
        k[0] = dtheta;
        for (int s = 1; s < 6; ++s) {
            double y = theta;
            for (int q = 0; q < s; ++q) y += h * A[s][q] * k[q];
            if (!(y > 0.0) || (ambient.c == +1 && y >= std::numbers::pi / 2.0)) {
                stage_ok = false;
                break;
            }
            k[s] = spherical_ode_rhs(ambient, spec, y);
        }
        if (!stage_ok) {
            h *= 0.5;
            final_step = false;
            if (t + h == t) throw error("spherical ODE step size underflow");
            continue;
        }
        double y5 = theta, y4 = theta;
        for (int s = 0; s < 6; ++s) {
            y5 += h * B5[s] * k[s];
            y4 += h * B4[s] * k[s];
        }
        const double scale = tol * (std::fabs(theta) + std::fabs(h * dtheta)) + 1e-300;
        const double err = std::fabs(y5 - y4) / scale;
        if ((err > 1.0 && !final_step) || !(y5 > 0.0)) {
            h *= std::max(0.1, 0.9 * std::pow(err, -0.25));
            if (t + h == t) throw error("spherical ODE step size underflow");
            continue;
        }
        worst_err = std::max(worst_err, err * tol);
        if (t + h == t) {
            resolution_stop = true;
            break;
        }
        t += h;
        theta = y5;
        dtheta = spherical_ode_rhs(ambient, spec, theta);
        sol.samples.push_back({t, theta, dtheta});
        if (final_step) break;
        h *= std::min(5.0, 0.9 * std::pow(std::max(err, 1e-10), -0.2));
        const double predicted = theta + h * dtheta;
        if (predicted < theta_stop) {
            // shorten the next step to land near theta_stop
            h = std::max(1e-300, (theta - theta_stop) / -dtheta);
            final_step = true;
        }
    }
    if (theta > 4.0 * theta_stop && !resolution_stop)
        throw error("spherical ODE did not reach theta_stop; achieved error " +
                    std::to_string(worst_err));

    sol.t_extinct = t + tail_time(ambient, spec, theta);
    return sol;
}

double SphericalSolution::theta_at(double t) const {
    if (samples.empty()) throw error("empty spherical solution");
    if (t <= samples.front().t) return samples.front().theta;
    if (t >= samples.back().t) {
        if (t > t_extinct * (1.0 + 1e-12)) throw domain_error("query past extinction time");
        // Invert the tail quadrature below the sampled range.
        const double remaining = std::max(0.0, t_extinct - t);
        double lo = 0.0, hi = samples.back().theta;
        for (int i = 0; i < 100 && hi - lo > 1e-14 * std::max(hi, 1e-30); ++i) {
            const double mid = 0.5 * (lo + hi);
            (tail_time(ambient, spec, mid) >= remaining ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    }
    auto it = std::lower_bound(samples.begin(), samples.end(), t,
                               [](const Sample& s, double tv) { return s.t < tv; });
    const Sample& hi = *it;
    const Sample& lo = *(it - 1);
    return hermite(t, lo.t, hi.t, lo.theta, hi.theta, lo.dtheta, hi.dtheta);
}

double SphericalSolution::time_to_extinction(double radius) const {
    if (!(radius > 0.0)) return 0.0;
    if (radius > theta0 * (1.0 + 1e-12))
        throw domain_error("radius exceeds the solved initial radius");
    if (radius <= samples.back().theta) return tail_time(ambient, spec, radius);
    // Invert theta(t) = radius by bisection; theta is strictly decreasing.
    double lo = 0.0, hi = samples.back().t;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        (theta_at(mid) <= radius ? hi : lo) = mid;
    }
    return t_extinct - 0.5 * (lo + hi);
}

double SphericalSolution::radius_at_remaining(double remaining) const {
    if (!(remaining >= 0.0)) throw domain_error("remaining time must be non-negative");
    if (remaining > t_extinct * (1.0 + 1e-12) + 1e-300)
        throw domain_error("remaining time exceeds the extinction time");
    return theta_at(std::max(0.0, t_extinct - remaining));
}

}  // namespace flowlab
