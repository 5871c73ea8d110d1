#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "flowlab/curvature.hpp"
#include "flowlab/spherical.hpp"

namespace flowlab {

/// Evolving surface plus its cached curvature data.
struct FlowState {
    RadialGraph graph;
    CurvatureField curvature;
    SpeedSpec spec;
    long step_count = 0;
    double dt_last = 0.0;
};

FlowState make_state(RadialGraph graph, SpeedSpec spec);

/// Pointwise normal-graph velocity du/dt = -v F.  Throws domain_error with
/// the offending node coordinates when kappa leaves the speed cone.
std::vector<double> graph_velocity(const FlowState& state);

struct StepControl {
    double c_cfl = 0.2;            // dt <= c_cfl * h^2 sn(u)^2 / trace(df)
    double max_rel_change = 1e-3;  // per-step |du| <= max_rel_change * u_min
    int max_retries = 40;          // halvings before a run aborts
    double degeneracy_floor = 0.05;  // u_min * H_min below this halves dt
};

/// Largest stable explicit step for the current state.
double dt_stable(const FlowState& state, double c_cfl);

struct StepOutcome {
    bool accepted = false;
    std::string reason;  // set when rejected
};

/// One explicit midpoint (RK2) step of the method-of-lines system.  On
/// rejection (non-positive or non-finite u, cone exit) the state is left
/// untouched and the caller should reduce dt.
StepOutcome step(FlowState& state, double dt);

struct StoppingRule {
    double theta_floor = 1e-2;  // stop when min u <= theta_floor
    double t_max = std::numeric_limits<double>::infinity();
    long max_steps = 2'000'000;
    bool stop_on_flags = true;  // convexity / scalar-positivity loss stops the run
};

enum class StopReason { Floor, TimeLimit, StepLimit, FlagEvent, Aborted };

std::string to_string(StopReason r);

struct RunEvent {
    long step = 0;
    double t = 0.0;
    std::string what;
};

struct FlowTrajectory {
    FlowState final_state;
    StopReason stop_reason = StopReason::Floor;
    std::string stop_detail;
    std::vector<RunEvent> events;
    long accepted_steps = 0;
    long rejected_steps = 0;
};

/// Called on the initial state and after every stride-th accepted step
/// (and unconditionally on the final state).
using StepObserver = std::function<void(const FlowState& state, double dt)>;

/// Adaptive-dt flow loop; observer receives monitor-ready states.
FlowTrajectory run_flow(FlowState state, const StoppingRule& stop, const StepControl& control,
                        const StepObserver& observer = nullptr, int stride = 1);

/// Flow data in the shrinking-sphere gauge: u~ = u/Theta, H~ = Theta H,
/// tau = -log Theta, with Theta = spherical radius at the state time.
struct RescaledState {
    std::vector<double> u_tilde;
    std::vector<double> H_tilde;
    double theta = 0.0;
    double tau = 0.0;
};

RescaledState rescale(const FlowState& state, const SphericalSolution& spherical);

}  // namespace flowlab
