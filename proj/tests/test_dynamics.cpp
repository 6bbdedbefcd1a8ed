#include <cmath>

#include <doctest.h>

#include "inext/dynamics.hpp"

using namespace inext;

namespace {

const ModelSpec kBeam = make_model(Variant::BeamEta2, BeamParams{});

Eigen::VectorXd mode1(int n, double amp) {
    Eigen::VectorXd q = Eigen::VectorXd::Zero(n);
    q[0] = amp;
    return q;
}

}  // namespace

TEST_CASE("zero initial data stays exactly at rest") {
    auto sys = SemiDiscreteSystem::beam(kBeam, 4, 8, ConstraintMode::Multiplier);
    Trajectory tr = simulate(sys, Eigen::VectorXd::Zero(4), Eigen::VectorXd::Zero(4),
                             0.01, 0.05, Scheme::ImplicitMidpointProjected);
    REQUIRE(tr.completed);
    for (const auto& s : tr.states) {
        CHECK(s.q.cwiseAbs().maxCoeff() < 1e-14);
        CHECK(s.qdot.cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("trajectories flip sign with the initial data") {
    auto sys = SemiDiscreteSystem::beam(kBeam, 4, 8, ConstraintMode::Reduced);
    Trajectory a = simulate(sys, mode1(4, 0.1), Eigen::VectorXd::Zero(4), 0.01, 0.2,
                            Scheme::ExplicitRk4Reduced);
    Trajectory b = simulate(sys, mode1(4, -0.1), Eigen::VectorXd::Zero(4), 0.01, 0.2,
                            Scheme::ExplicitRk4Reduced);
    REQUIRE(a.completed);
    REQUIRE(b.completed);
    for (size_t k = 0; k < a.states.size(); ++k)
        CHECK((a.states[k].q + b.states[k].q).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("repeated integration is bitwise deterministic") {
    auto sys = SemiDiscreteSystem::beam(kBeam, 4, 12, ConstraintMode::Multiplier);
    Trajectory a = simulate(sys, mode1(4, 0.2), Eigen::VectorXd::Zero(4), 0.01, 0.1,
                            Scheme::ImplicitMidpointProjected);
    Trajectory b = simulate(sys, mode1(4, 0.2), Eigen::VectorXd::Zero(4), 0.01, 0.1,
                            Scheme::ImplicitMidpointProjected);
    REQUIRE(a.completed);
    for (size_t k = 0; k < a.states.size(); ++k) {
        CHECK(a.states[k].q == b.states[k].q);
        CHECK(a.states[k].qdot == b.states[k].qdot);
    }
}

TEST_CASE("multiplier and reduced forms agree over a short window") {
    auto red = SemiDiscreteSystem::beam(kBeam, 5, 20, ConstraintMode::Reduced);
    auto mul = SemiDiscreteSystem::beam(kBeam, 5, 20, ConstraintMode::Multiplier);
    const double dt = 0.002;
    Trajectory a = simulate(red, mode1(5, 0.1), Eigen::VectorXd::Zero(5), dt, 0.2,
                            Scheme::ImplicitMidpointProjected);
    Trajectory b = simulate(mul, mode1(5, 0.1), Eigen::VectorXd::Zero(5), dt, 0.2,
                            Scheme::ImplicitMidpointProjected);
    REQUIRE(a.completed);
    REQUIRE(b.completed);
    for (size_t k = 0; k < a.states.size(); ++k)
        CHECK((a.states[k].q - b.states[k].q.head(5)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("dropping the in-plane inertia changes the dynamics") {
    auto sys = SemiDiscreteSystem::beam(kBeam, 4, 16, ConstraintMode::Reduced);
    Trajectory a = simulate(sys, mode1(4, 0.25), Eigen::VectorXd::Zero(4), 0.01, 0.5,
                            Scheme::ExplicitRk4Reduced);
    sys.set_inplane_inertia(false);
    Trajectory b = simulate(sys, mode1(4, 0.25), Eigen::VectorXd::Zero(4), 0.01, 0.5,
                            Scheme::ExplicitRk4Reduced);
    double gap = 0.0;
    for (size_t k = 0; k < a.states.size(); ++k)
        gap = std::max(gap, (a.states[k].q - b.states[k].q).cwiseAbs().maxCoeff());
    CHECK(gap > 1e-8);
}

TEST_CASE("scheme and step-size guards") {
    auto mul = SemiDiscreteSystem::beam(kBeam, 3, 6, ConstraintMode::Multiplier);
    ModalState s0 = mul.initial_state(mode1(3, 0.1), Eigen::VectorXd::Zero(3));
    CHECK_THROWS_AS(step(mul, s0, 0.0, Scheme::ImplicitMidpointProjected),
                    BadParameter);
    CHECK_THROWS_AS(step(mul, s0, 0.01, Scheme::ExplicitRk4Reduced),
                    BadParameter);
}

TEST_CASE("period measurement on a sampled sinusoid") {
    std::vector<double> t, x;
    const double T = 1.7;
    for (int i = 0; i <= 10000; ++i) {
        t.push_back(1e-3 * i);
        x.push_back(std::sin(2.0 * M_PI * t.back() / T));
    }
    CHECK(measure_period(t, x) == doctest::Approx(T).epsilon(1e-5));
    CHECK(std::isnan(measure_period({0.0, 1.0}, {1.0, 2.0})));
}

TEST_CASE("initial state satisfies the weak constraints") {
    auto sys = SemiDiscreteSystem::beam(kBeam, 5, 20, ConstraintMode::Multiplier);
    ModalState s = sys.initial_state(mode1(5, 0.3), Eigen::VectorXd::Zero(5));
    CHECK(sys.constraint(s.q).cwiseAbs().maxCoeff() < 1e-11);
    // Velocity lies in the constraint tangent space.
    CHECK((sys.constraint_jacobian(s.q) * s.qdot).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("reduced explicit integration conserves energy at modest amplitude") {
    auto sys = SemiDiscreteSystem::beam(kBeam, 4, 16, ConstraintMode::Reduced);
    Trajectory tr = simulate(sys, mode1(4, 0.1), Eigen::VectorXd::Zero(4), 0.005,
                             1.0, Scheme::ExplicitRk4Reduced);
    REQUIRE(tr.completed);
    const double e0 = tr.diagnostics.front().kinetic + tr.diagnostics.front().potential;
    for (const auto& d : tr.diagnostics)
        CHECK(std::abs(d.kinetic + d.potential - e0) < 1e-6 * e0);
}
