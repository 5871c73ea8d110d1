#include "flowlab/radial_graph.hpp"

#include <algorithm>
#include <cmath>

namespace flowlab {

RadialGraph::RadialGraph(Ambient amb, SphereGrid g, std::vector<double> values, double time)
    : ambient(amb), grid(std::move(g)), u(std::move(values)), t(time) {
    ambient.validate();
    if (static_cast<int>(u.size()) != grid.node_count())
        throw data_error("radial graph has " + std::to_string(u.size()) + " values for " +
                         std::to_string(grid.node_count()) + " grid nodes");
    validate();
}

RadialGraph RadialGraph::sphere(Ambient amb, SphereGrid g, double radius) {
    if (!amb.radius_ok(radius))
        throw domain_error("radius " + std::to_string(radius) + " not admissible for " + amb.name() +
                           " ambient");
    std::vector<double> values(g.node_count(), radius);
    return RadialGraph(amb, std::move(g), std::move(values));
}

RadialGraph RadialGraph::from_function(Ambient amb, SphereGrid g,
                                       const std::function<double(double, double)>& f) {
    std::vector<double> values(g.node_count());
    for (int j = 0; j < g.n_theta(); ++j)
        for (int k = 0; k < g.n_phi(); ++k)
            values[g.index(j, k)] = f(g.theta(j), k * g.h_phi());
    return RadialGraph(amb, std::move(g), std::move(values));
}

double RadialGraph::u_min() const { return *std::min_element(u.begin(), u.end()); }
double RadialGraph::u_max() const { return *std::max_element(u.begin(), u.end()); }

void RadialGraph::validate() const {
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!std::isfinite(u[i]))
            throw data_error("non-finite graph value at node " + std::to_string(i));
        if (!ambient.radius_ok(u[i]))
            throw domain_error("graph value " + std::to_string(u[i]) + " at node " +
                               std::to_string(i) + " outside admissible radii for " +
                               ambient.name() + " ambient");
    }
}

}  // namespace flowlab
