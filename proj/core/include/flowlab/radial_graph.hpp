#pragma once

#include <functional>
#include <vector>

#include "flowlab/ambient.hpp"
#include "flowlab/grid.hpp"

namespace flowlab {

/// A closed surface written as the geodesic distance u > 0 over the unit
/// sphere of directions at a fixed center point of the ambient space form.
struct RadialGraph {
    Ambient ambient;
    SphereGrid grid;
    std::vector<double> u;
    double t = 0.0;

    RadialGraph(Ambient amb, SphereGrid g, std::vector<double> values, double time = 0.0);

    /// Geodesic sphere of the given radius.
    static RadialGraph sphere(Ambient amb, SphereGrid g, double radius);

    /// Samples f(theta, phi) at the grid nodes.
    static RadialGraph from_function(Ambient amb, SphereGrid g,
                                     const std::function<double(double, double)>& f);

    double u_at(int j, int k) const { return u[grid.ghost_index(j, k)]; }

    double u_min() const;
    double u_max() const;

    /// Enforces u > 0 (and u < pi/2 for c = +1) and finiteness.
    void validate() const;
};

}  // namespace flowlab
