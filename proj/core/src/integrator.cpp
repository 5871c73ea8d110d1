#include "flowlab/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace flowlab {

FlowState make_state(RadialGraph graph, SpeedSpec spec) {
    spec.validate();
    if (spec.ambient.c != graph.ambient.c)
        throw domain_error("speed ambient does not match graph ambient");
    FlowState s{std::move(graph), {}, spec, 0, 0.0};
    s.curvature = curvature_field(s.graph);
    return s;
}

std::vector<double> graph_velocity(const FlowState& state) {
    const int n = state.graph.grid.node_count();
    std::vector<double> du(n);
    for (int i = 0; i < n; ++i) {
        const double k1 = state.curvature.kappa1[i];
        const double k2 = state.curvature.kappa2[i];
        if (!in_cone(state.spec, k1, k2)) {
            const int j = i / state.graph.grid.n_phi();
            const int k = i % state.graph.grid.n_phi();
            throw domain_error("cone condition " + cone_inequality(state.spec.kind) +
                               " violated at node (theta=" + std::to_string(state.graph.grid.theta(j)) +
                               ", phi=" + std::to_string(k * state.graph.grid.h_phi()) +
                               "): kappa = (" + std::to_string(k1) + ", " + std::to_string(k2) + ")");
        }
        const SpeedJet jet = speed_jet(state.spec, k1, k2);
        du[i] = -state.curvature.v[i] * jet.f;
    }
    return du;
}

double dt_stable(const FlowState& state, double c_cfl) {
    const SphereGrid& grid = state.graph.grid;
    const double ht = grid.h_theta();
    double dt = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid.node_count(); ++i) {
        const SpeedJet jet = speed_jet(state.spec, state.curvature.kappa1[i], state.curvature.kappa2[i]);
        const double trace = jet.f1 + jet.f2;
        const double sn = state.graph.ambient.sn(state.graph.u[i]);
        double h_eff = ht;
        if (grid.mode() == GridMode::Full)
            h_eff = std::min(ht, grid.h_phi() * grid.sin_theta(i / grid.n_phi()));
        dt = std::min(dt, h_eff * h_eff * sn * sn / std::max(trace, 1e-300));
    }
    return c_cfl * dt;
}

namespace {

// Trial graph u + dt*du; nullopt-style rejection via the outcome string.
bool advance(const FlowState& state, const std::vector<double>& du, double dt,
             std::vector<double>& out, std::string& reason) {
    const int n = static_cast<int>(state.graph.u.size());
    out.resize(n);
    for (int i = 0; i < n; ++i) {
        const double value = state.graph.u[i] + dt * du[i];
        if (!std::isfinite(value) || !state.graph.ambient.radius_ok(value)) {
            reason = "graph value " + std::to_string(value) + " left the admissible range at node " +
                     std::to_string(i);
            return false;
        }
        out[i] = value;
    }
    return true;
}

}  // namespace

StepOutcome step(FlowState& state, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) return {false, "non-positive step size"};
    try {
        const std::vector<double> v0 = graph_velocity(state);
        std::string reason;
        std::vector<double> u_mid;
        if (!advance(state, v0, dt / 2.0, u_mid, reason)) return {false, reason};

        FlowState mid{RadialGraph(state.graph.ambient, state.graph.grid, std::move(u_mid),
                                  state.graph.t + dt / 2.0),
                      {}, state.spec, state.step_count, dt};
        mid.curvature = curvature_field(mid.graph);
        const std::vector<double> v1 = graph_velocity(mid);

        std::vector<double> u_new;
        if (!advance(state, v1, dt, u_new, reason)) return {false, reason};

        RadialGraph next(state.graph.ambient, state.graph.grid, std::move(u_new), state.graph.t + dt);
        CurvatureField field = curvature_field(next);
        for (int i = 0; i < next.grid.node_count(); ++i) {
            if (!in_cone(state.spec, field.kappa1[i], field.kappa2[i]))
                return {false, "cone exit at node " + std::to_string(i) + " after step"};
        }
        state.graph = std::move(next);
        state.curvature = std::move(field);
        state.step_count += 1;
        state.dt_last = dt;
        return {true, {}};
    } catch (const error& e) {
        return {false, e.what()};
    }
}

std::string to_string(StopReason r) {
    switch (r) {
        case StopReason::Floor: return "floor";
        case StopReason::TimeLimit: return "time_limit";
        case StopReason::StepLimit: return "step_limit";
        case StopReason::FlagEvent: return "flag_event";
        default: return "aborted";
    }
}

FlowTrajectory run_flow(FlowState state, const StoppingRule& stop, const StepControl& control,
                        const StepObserver& observer, int stride) {
    if (stride < 1) throw domain_error("stride must be >= 1");
    StopReason stop_reason = StopReason::Floor;
    std::string stop_detail;
    std::vector<RunEvent> events;
    long accepted = 0, rejected = 0;
    bool degeneracy_logged = false;

    if (observer) observer(state, 0.0);

    long since_record = 0;
    while (true) {
        if (state.graph.u_min() <= stop.theta_floor) {
            stop_reason = StopReason::Floor;
            stop_detail = "min u reached the resolution floor";
            break;
        }
        if (state.graph.t >= stop.t_max) {
            stop_reason = StopReason::TimeLimit;
            stop_detail = "t_max reached";
            break;
        }
        if (accepted >= stop.max_steps) {
            stop_reason = StopReason::StepLimit;
            stop_detail = "max_steps reached";
            break;
        }

        double dt = dt_stable(state, control.c_cfl);
        const std::vector<double> du = graph_velocity(state);
        double du_max = 0.0;
        for (double d : du) du_max = std::max(du_max, std::fabs(d));
        if (du_max > 0.0)
            dt = std::min(dt, control.max_rel_change * state.graph.u_min() / du_max);
        dt = std::min(dt, stop.t_max - state.graph.t);

        // Porous-medium degeneracy guard: vanishing rescaled mean curvature
        // removes parabolicity, so slow down instead of smoothing over it.
        const double h_min = state.curvature.min_of(state.curvature.H);
        if (h_min * state.graph.u_min() < control.degeneracy_floor) {
            dt *= 0.5;
            if (!degeneracy_logged) {
                events.push_back({state.step_count, state.graph.t,
                                  "degenerate parabolicity: u_min*H_min = " +
                                      std::to_string(h_min * state.graph.u_min())});
                degeneracy_logged = true;
            }
        }

        StepOutcome outcome;
        int retries = 0;
        for (; retries <= control.max_retries; ++retries) {
            outcome = step(state, dt);
            if (outcome.accepted) break;
            rejected += 1;
            dt *= 0.5;
        }
        if (!outcome.accepted) {
            stop_reason = StopReason::Aborted;
            stop_detail = "persistent step rejection after " + std::to_string(retries) +
                          " halvings: " + outcome.reason;
            events.push_back({state.step_count, state.graph.t, stop_detail});
            break;
        }
        accepted += 1;

        const bool flagged =
            state.curvature.any_flag(node_flag::convexity_loss | node_flag::scalar_loss);
        if (flagged) {
            std::string what = "curvature flag raised:";
            if (state.curvature.any_flag(node_flag::convexity_loss)) what += " convexity_loss";
            if (state.curvature.any_flag(node_flag::scalar_loss)) what += " scalar_positivity_loss";
            events.push_back({state.step_count, state.graph.t, what});
        }

        since_record += 1;
        if (observer && since_record >= stride) {
            observer(state, state.dt_last);
            since_record = 0;
        }
        if (flagged && stop.stop_on_flags) {
            stop_reason = StopReason::FlagEvent;
            stop_detail = events.back().what;
            break;
        }
    }
    if (observer && since_record > 0) observer(state, state.dt_last);
    return FlowTrajectory{std::move(state), stop_reason,           std::move(stop_detail),
                          std::move(events), accepted, rejected};
}

RescaledState rescale(const FlowState& state, const SphericalSolution& spherical) {
    if (state.graph.t >= spherical.t_extinct)
        throw domain_error("state time is at or past the spherical extinction time");
    RescaledState r;
    r.theta = spherical.theta_at(state.graph.t);
    r.tau = -std::log(r.theta);
    const std::size_t n = state.graph.u.size();
    r.u_tilde.resize(n);
    r.H_tilde.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        r.u_tilde[i] = state.graph.u[i] / r.theta;
        r.H_tilde[i] = state.curvature.H[i] * r.theta;
    }
    return r;
}

}  // namespace flowlab
