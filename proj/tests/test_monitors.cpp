#include <cmath>

#include "doctest.h"
#include "flowlab/monitors.hpp"

using namespace flowlab;

namespace {
SpeedSpec spec_of(FlowKind kind, double alpha, Ambient amb) {
    SpeedSpec s{kind, alpha, amb};
    s.validate();
    return s;
}
}  // namespace

TEST_CASE("pinching quantity selection table") {
    SUBCASE("umbilic points give zero") {
        for (auto kind : {FlowKind::MeanPow, FlowKind::ScalarPow, FlowKind::GaussPow}) {
            auto s = spec_of(kind, 1.0, Ambient::hyperbolic());
            const double F = speed_jet(s, 2.0, 2.0).f;
            CHECK(pinching_G(s, 2.0, 2.0, F) == 0.0);
        }
    }
    SUBCASE("hyperbolic mean power, alpha=1, kappa=(2,1): G = 9") {
        auto s = spec_of(FlowKind::MeanPow, 1.0, Ambient::hyperbolic());
        CHECK(pinching_G(s, 2.0, 1.0, speed_jet(s, 2.0, 1.0).f) == doctest::Approx(9.0));
    }
    SUBCASE("spherical gauss power, alpha=1, kappa=(2,1): G = 1") {
        auto s = spec_of(FlowKind::GaussPow, 1.0, Ambient::spherical());
        CHECK(pinching_G(s, 2.0, 1.0, speed_jet(s, 2.0, 1.0).f) == doctest::Approx(1.0));
    }
    SUBCASE("other printed forms agree with the unified F^2 (k1-k2)^2 / D^2") {
        // scalar power: (K-1)^{2a-2} (k1-k2)^2
        auto s = spec_of(FlowKind::ScalarPow, 0.75, Ambient::hyperbolic());
        const double k1 = 2.0, k2 = 0.8;
        const double expected = std::pow(k1 * k2 - 1.0, 2 * 0.75 - 2.0) * (k1 - k2) * (k1 - k2);
        CHECK(pinching_G(s, k1, k2, speed_jet(s, k1, k2).f) == doctest::Approx(expected).epsilon(1e-13));
        // spherical mean power: (k1-k2)^2 (k1+k2)^{2a} / (k1 k2)^2
        auto sm = spec_of(FlowKind::MeanPow, 3.0, Ambient::spherical());
        const double em = (k1 - k2) * (k1 - k2) * std::pow(k1 + k2, 6.0) / (k1 * k2 * k1 * k2);
        CHECK(pinching_G(sm, k1, k2, speed_jet(sm, k1, k2).f) == doctest::Approx(em).epsilon(1e-13));
        // spherical gauss power: (k1-k2)^2 / (k1 k2)^{2-2a}
        auto sg = spec_of(FlowKind::GaussPow, 0.25, Ambient::spherical());
        const double eg = (k1 - k2) * (k1 - k2) / std::pow(k1 * k2, 1.5);
        CHECK(pinching_G(sg, k1, k2, speed_jet(sg, k1, k2).f) == doctest::Approx(eg).epsilon(1e-13));
    }
    SUBCASE("no quantity for scalar power off the hyperbolic ambient") {
        CHECK_FALSE(has_pinching_G(FlowKind::ScalarPow, +1));
        SpeedSpec s{FlowKind::ScalarPow, 0.5, Ambient::spherical()};
        CHECK_THROWS_AS(pinching_G(s, 2.0, 1.0, 1.0), domain_error);
    }
    SUBCASE("cone violation") {
        auto s = spec_of(FlowKind::MeanPow, 1.0, Ambient::hyperbolic());
        CHECK_THROWS_AS(pinching_G(s, 1.0, 0.5, 1.5), domain_error);
    }
}

TEST_CASE("scalar-curvature lower bound") {
    const Ambient h3 = Ambient::hyperbolic();
    SUBCASE("t = 0 returns K0min - 1 exactly") {
        for (auto kind : {FlowKind::MeanPow, FlowKind::ScalarPow, FlowKind::GaussPow}) {
            auto s = spec_of(kind, 0.5, h3);
            CHECK(bound_scalar_lower(s, 0.0, 2.5) == 1.5);
        }
    }
    SUBCASE("mean-power blow-up equals the existence-time bound") {
        for (double a : {1.0, 2.0, 4.0}) {
            auto s = spec_of(FlowKind::MeanPow, a, h3);
            const double m0 = 1.4;
            const double blowup = bound_scalar_blowup_time(s, 1.0 + m0);
            CHECK(blowup ==
                  doctest::Approx(std::pow(2.0, -a) / (a + 1.0) * std::pow(m0, -(a + 1.0) / 2.0)));
            CHECK_NOTHROW(bound_scalar_lower(s, 0.999 * blowup, 1.0 + m0));
            CHECK_THROWS_WITH_AS(bound_scalar_lower(s, blowup * (1.0 + 1e-12), 1.0 + m0),
                                 doctest::Contains("bound exhausted"), domain_error);
        }
    }
    SUBCASE("scalar power alpha=1/2 with K0min-1 = 1: bound = (1-2t)^-1") {
        auto s = spec_of(FlowKind::ScalarPow, 0.5, h3);
        for (double t : {0.0, 0.1, 0.3, 0.45})
            CHECK(bound_scalar_lower(s, t, 2.0) == doctest::Approx(1.0 / (1.0 - 2.0 * t)).epsilon(1e-14));
    }
}

TEST_CASE("spherical mean-curvature lower bound") {
    CHECK(bound_H_lower_sphere(2.0, 0.0, 3.0) == 3.0);
    // alpha=1, H0=2: bound = 2 (1-4t)^{-1/2}
    for (double t : {0.0, 0.05, 0.2})
        CHECK(bound_H_lower_sphere(1.0, t, 2.0) ==
              doctest::Approx(2.0 / std::sqrt(1.0 - 4.0 * t)).epsilon(1e-14));
    // implied existence bound (2/(a+1)) H0^-(a+1)
    CHECK(bound_H_blowup_time_sphere(1.0, 2.0) == doctest::Approx(0.25));
    CHECK(bound_H_blowup_time_sphere(3.0, 2.0) == doctest::Approx(0.5 * std::pow(2.0, -4.0)));
}

TEST_CASE("assemble_record and baselines") {
    const Ambient h3 = Ambient::hyperbolic();
    auto g = RadialGraph::from_function(h3, SphereGrid(GridMode::Axisymmetric, 48),
                                        [](double t, double) {
                                            const double c = std::cos(t);
                                            return 1.0 + 0.08 * 0.5 * (3 * c * c - 1);
                                        });
    auto st = make_state(std::move(g), SpeedSpec{FlowKind::MeanPow, 2.0, h3});
    auto baseline = make_baseline(st);

    SUBCASE("first record: comparisons vacuously pass") {
        auto r = assemble_record(st, 0.0, baseline, nullptr);
        CHECK(r.g_monotone_ok);
        CHECK(r.bound_K_ok);
        CHECK(r.pinch_ratio_max >= 1.0);
        CHECK(r.radius_ratio >= 1.0);
        CHECK(r.K_min - 1.0 >= r.bound_K - 1e-12);  // bound at t=0 is K0min-1
    }
    SUBCASE("monotone comparison uses the tolerance") {
        auto r0 = assemble_record(st, 0.0, baseline, nullptr);
        auto r1 = assemble_record(st, 0.0, baseline, &r0);
        CHECK(r1.g_monotone_ok);  // equal G passes
        MonitorRecord fake = r0;
        fake.G_max = r0.G_max * (1.0 - 1e-3);
        auto r2 = assemble_record(st, 0.0, baseline, &fake);
        CHECK_FALSE(r2.g_monotone_ok);
    }
}

TEST_CASE("spherical-run records dominate the printed bounds") {
    const Ambient h3 = Ambient::hyperbolic();
    auto st = make_state(RadialGraph::sphere(h3, SphereGrid(GridMode::Axisymmetric, 32), 1.0),
                         SpeedSpec{FlowKind::MeanPow, 1.0, h3});
    auto baseline = make_baseline(st);
    std::vector<MonitorRecord> records;
    StoppingRule stop;
    stop.theta_floor = 0.15;
    auto traj = run_flow(std::move(st), stop, StepControl{}, [&](const FlowState& s, double dt) {
        const MonitorRecord* prev = records.empty() ? nullptr : &records.back();
        records.push_back(assemble_record(s, dt, baseline, prev));
    });
    REQUIRE(traj.stop_reason == StopReason::Floor);
    for (const auto& r : records) {
        CHECK(r.bound_K_ok);
        CHECK(r.g_monotone_ok);
    }
}

TEST_CASE("spherical gauss-power run in S^3 dominates its K bound") {
    const Ambient s3 = Ambient::spherical();
    auto st = make_state(RadialGraph::sphere(s3, SphereGrid(GridMode::Axisymmetric, 32), 0.8),
                         SpeedSpec{FlowKind::GaussPow, 0.5, s3});
    auto baseline = make_baseline(st);
    std::vector<MonitorRecord> records;
    StoppingRule stop;
    stop.theta_floor = 0.15;
    auto traj = run_flow(std::move(st), stop, StepControl{}, [&](const FlowState& s, double dt) {
        const MonitorRecord* prev = records.empty() ? nullptr : &records.back();
        records.push_back(assemble_record(s, dt, baseline, prev));
    });
    REQUIRE(traj.stop_reason == StopReason::Floor);
    for (const auto& r : records) CHECK(r.bound_K_ok);
}

TEST_CASE("pinch decay fit reports trivially pinched for spherical runs") {
    std::vector<MonitorRecord> records(40);
    for (int i = 0; i < 40; ++i) {
        records[i].tau = 0.1 * i;
        records[i].pinch_ratio_max = 1.0 + 1e-13;
    }
    auto fit = pinch_decay_check(records, 2.0);
    CHECK(fit.trivially_pinched);
}

TEST_CASE("pinch decay fit recovers a synthetic slope") {
    std::vector<MonitorRecord> records(60);
    for (int i = 0; i < 60; ++i) {
        records[i].tau = 0.05 * i;
        records[i].pinch_ratio_max = 1.0 + 0.2 * std::exp(-1.0 * records[i].tau);
    }
    auto fit = pinch_decay_check(records, 2.0);
    CHECK_FALSE(fit.trivially_pinched);
    CHECK(fit.slope == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK_THROWS_AS(pinch_decay_check(records, 1.0), domain_error);
}

TEST_CASE("finalize_records fills tau and u_tilde_dev") {
    const Ambient h3 = Ambient::hyperbolic();
    SpeedSpec spec{FlowKind::MeanPow, 2.0, h3};
    auto family = solve_spherical(h3, spec, 1.2, 1e-11, 1e-4);

    auto st = make_state(RadialGraph::sphere(h3, SphereGrid(GridMode::Axisymmetric, 32), 1.0), spec);
    auto baseline = make_baseline(st);
    std::vector<MonitorRecord> records;
    StoppingRule stop;
    stop.theta_floor = 0.2;
    auto traj = run_flow(std::move(st), stop, StepControl{}, [&](const FlowState& s, double dt) {
        const MonitorRecord* prev = records.empty() ? nullptr : &records.back();
        records.push_back(assemble_record(s, dt, baseline, prev));
    });
    // tail-fit estimate of the extinction time from the final state
    const double t_est = traj.final_state.graph.t +
                         family.time_to_extinction(traj.final_state.graph.u_min());
    finalize_records(records, family, t_est);
    for (const auto& r : records) {
        CHECK(std::isfinite(r.tau));
        // an exact spherical run rescales to u~ = 1
        CHECK(r.u_tilde_dev <= 2e-5);
    }
}
