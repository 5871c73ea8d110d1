#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "flowlab/errors.hpp"

namespace flowlab {

/// Simply connected space form of curvature c in {-1, 0, +1}.
///
/// All metric formulas for radial graphs are written in terms of the
/// generalized trigonometric functions sn, cs = sn', ct = cs/sn.
struct Ambient {
    int c = -1;

    static Ambient hyperbolic() { return Ambient{-1}; }
    static Ambient euclidean() { return Ambient{0}; }
    static Ambient spherical() { return Ambient{+1}; }

    double sn(double r) const {
        switch (c) {
            case -1: return std::sinh(r);
            case 0: return r;
            default: return std::sin(r);
        }
    }

    double cs(double r) const {
        switch (c) {
            case -1: return std::cosh(r);
            case 0: return 1.0;
            default: return std::cos(r);
        }
    }

    double ct(double r) const { return cs(r) / sn(r); }

    /// Antiderivative of 1/sn.  Radial graphs use the field
    /// phi = radial_chart(u), whose sigma-gradient is Du/sn(u).
    double radial_chart(double r) const {
        switch (c) {
            case -1: return std::log(std::tanh(r / 2.0));
            case 0: return std::log(r);
            default: return std::log(std::tan(r / 2.0));
        }
    }

    /// Admissible graph radii: r > 0, and r < pi/2 when c = +1 (strictly
    /// convex surfaces in the sphere stay inside an open hemisphere).
    bool radius_ok(double r) const {
        if (!(r > 0.0) || !std::isfinite(r)) return false;
        if (c == +1 && r >= std::numbers::pi / 2.0) return false;
        return true;
    }

    std::string name() const {
        switch (c) {
            case -1: return "hyperbolic";
            case 0: return "euclidean";
            default: return "spherical";
        }
    }

    void validate() const {
        if (c != -1 && c != 0 && c != 1)
            throw domain_error("ambient curvature must be one of -1, 0, +1");
    }

    friend bool operator==(const Ambient&, const Ambient&) = default;
};

}  // namespace flowlab
