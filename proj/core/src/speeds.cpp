#include "flowlab/speeds.hpp"

#include <cmath>

namespace flowlab {

std::string to_string(FlowKind k) {
    switch (k) {
        case FlowKind::MeanPow: return "mean_power";
        case FlowKind::ScalarPow: return "scalar_power";
        default: return "gauss_power";
    }
}

void SpeedSpec::validate() const {
    ambient.validate();
    if (!(alpha > 0.0)) throw domain_error("speed exponent alpha must be positive");
    if (kind == FlowKind::ScalarPow && ambient.c != -1)
        throw domain_error("scalar_power flow is defined only for the hyperbolic ambient");
    if (!(cone_margin >= 0.0)) throw domain_error("cone_margin must be non-negative");
}

std::pair<double, double> SpeedSpec::advisory_alpha_range(FlowKind kind, int c) {
    if (kind == FlowKind::MeanPow) return c == 1 ? std::pair{1.0, 5.0} : std::pair{1.0, 4.0};
    if (kind == FlowKind::ScalarPow) return {0.5, 1.0};
    return {0.5, 1.0};
}

double pow_real(double x, double a) {
    const double r = std::round(a);
    if (r == a && std::fabs(r) <= 64.0) {
        const long n = static_cast<long>(r);
        double base = n < 0 ? 1.0 / x : x;
        double acc = 1.0;
        for (long i = 0; i < std::labs(n); ++i) acc *= base;
        return acc;
    }
    const double r2 = std::round(2.0 * a);
    if (r2 == 2.0 * a && std::fabs(r2) <= 128.0) return pow_real(std::sqrt(x), r2);
    return std::pow(x, a);
}

bool in_cone(const SpeedSpec& spec, double k1, double k2) {
    const double m = spec.cone_margin;
    switch (spec.kind) {
        case FlowKind::MeanPow: return k1 + k2 > m;
        case FlowKind::ScalarPow: return k1 * k2 > 1.0 + m;
        default: return k1 > m && k2 > m;
    }
}

std::string cone_inequality(FlowKind kind) {
    switch (kind) {
        case FlowKind::MeanPow: return "kappa1 + kappa2 > 0";
        case FlowKind::ScalarPow: return "kappa1*kappa2 > 1";
        default: return "kappa1 > 0 and kappa2 > 0";
    }
}

SpeedJet speed_jet(const SpeedSpec& spec, double k1, double k2) {
    if (!in_cone(spec, k1, k2))
        throw domain_error("kappa = (" + std::to_string(k1) + ", " + std::to_string(k2) +
                           ") violates the " + to_string(spec.kind) +
                           " cone condition " + cone_inequality(spec.kind));
    // All three kinds are f = lambda^alpha for a bilinear lambda(kappa).
    double lam, l1, l2, l12;
    switch (spec.kind) {
        case FlowKind::MeanPow:
            lam = k1 + k2; l1 = 1.0; l2 = 1.0; l12 = 0.0;
            break;
        case FlowKind::ScalarPow:
            lam = k1 * k2 - 1.0; l1 = k2; l2 = k1; l12 = 1.0;
            break;
        default:
            lam = k1 * k2; l1 = k2; l2 = k1; l12 = 1.0;
            break;
    }
    const double a = spec.alpha;
    const double pa2 = pow_real(lam, a - 2.0);
    const double pa1 = pa2 * lam;
    const double pa0 = pa1 * lam;
    SpeedJet jet;
    jet.f = pa0;
    jet.f1 = a * pa1 * l1;
    jet.f2 = a * pa1 * l2;
    jet.f11 = a * (a - 1.0) * pa2 * l1 * l1;
    jet.f22 = a * (a - 1.0) * pa2 * l2 * l2;
    jet.f12 = a * (a - 1.0) * pa2 * l1 * l2 + a * pa1 * l12;
    return jet;
}

double homogeneity_degree(const SpeedSpec& spec) {
    switch (spec.kind) {
        case FlowKind::MeanPow: return spec.alpha;
        case FlowKind::GaussPow: return 2.0 * spec.alpha;
        default:
            throw domain_error("scalar_power speed is not homogeneous in the principal curvatures");
    }
}

double euler_check(const SpeedSpec& spec, double k1, double k2) {
    const double deg = homogeneity_degree(spec);
    const SpeedJet jet = speed_jet(spec, k1, k2);
    return jet.f1 * k1 + jet.f2 * k2 - deg * jet.f;
}

}  // namespace flowlab
