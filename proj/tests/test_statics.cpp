#include <cmath>

#include <doctest.h>

#include "inext/statics.hpp"

using namespace inext;

namespace {

const ModelSpec kBeam = make_model(Variant::BeamEta2, BeamParams{});

}  // namespace

TEST_CASE("cantilever spectrum matches the classical frequencies") {
    auto sys = SemiDiscreteSystem::beam(kBeam, 6, 12, ConstraintMode::Multiplier);
    ModalReport r = linear_modes(sys, 3);
    CHECK(r.frequencies[0] == doctest::Approx(3.5160152544).epsilon(1e-8));
    CHECK(r.frequencies[1] == doctest::Approx(22.0344916588).epsilon(1e-8));
    CHECK(r.frequencies[2] == doctest::Approx(61.6972143957).epsilon(1e-8));

    // omega scales with sqrt(D).
    BeamParams p;
    p.stiffness = 4.0;
    auto sys2 = SemiDiscreteSystem::beam(make_model(Variant::BeamEta2, p), 6, 12,
                                         ConstraintMode::Multiplier);
    ModalReport r2 = linear_modes(sys2, 1);
    CHECK(r2.frequencies[0] == doctest::Approx(2.0 * r.frequencies[0]).epsilon(1e-9));
}

TEST_CASE("plate spectrum is positive and y-uniform modes match the beam") {
    PlateParams p;
    auto sys = SemiDiscreteSystem::plate_statics(make_model(Variant::PlateII, p), 5,
                                                 3, 5, 3);
    ModalReport r = linear_modes(sys, 4);
    for (int i = 0; i < r.frequencies.size(); ++i) CHECK(r.frequencies[i] > 0.0);
    // With y modes present, Poisson coupling can only lower the fundamental
    // below the y-uniform cantilever value (a valid trial function).
    const double beam_omega = 3.5160152544 * std::sqrt(p.stiffness());
    CHECK(r.frequencies[0] <= beam_omega * (1.0 + 1e-9));
    CHECK(r.frequencies[0] > 0.9 * beam_omega);

    // Restricted to the uniform y mode the spectrum is exactly the beam's.
    auto sys1 = SemiDiscreteSystem::plate_statics(make_model(Variant::PlateII, p), 5,
                                                  1, 5, 1);
    ModalReport r1 = linear_modes(sys1, 1);
    CHECK(r1.frequencies[0] == doctest::Approx(beam_omega).epsilon(1e-8));
}

TEST_CASE("small tip load reproduces the linear cantilever deflection") {
    auto sys = SemiDiscreteSystem::beam(kBeam, 8, 16, ConstraintMode::Multiplier);
    LoadSpec load{LoadKind::TipForce, 1e-4};
    EquilibriumReport rep = solve_static(sys, load);
    const double linear = load.magnitude / 3.0;  // P L^3 / (3 D)
    CHECK(std::abs(rep.probe - linear) / linear < 1e-3);
    CHECK(rep.optimality < 1e-10);
    CHECK(rep.constraint_sup < 1e-10);
    CHECK(rep.min_reduced_hessian_eig > 0.0);
}

TEST_CASE("uniform pressure reproduces the linear distributed-load deflection") {
    auto sys = SemiDiscreteSystem::beam(kBeam, 8, 16, ConstraintMode::Multiplier);
    LoadSpec load{LoadKind::UniformPressure, 1e-4};
    EquilibriumReport rep = solve_static(sys, load);
    const double linear = load.magnitude / 8.0;  // q L^4 / (8 D)
    CHECK(std::abs(rep.probe - linear) / linear < 1e-3);
}

TEST_CASE("load vector acts on the transverse block only") {
    auto sys = SemiDiscreteSystem::beam(kBeam, 5, 10, ConstraintMode::Multiplier);
    Eigen::VectorXd f = load_vector(sys, LoadSpec{LoadKind::TipForce, 2.0});
    CHECK(f.size() == sys.dim());
    CHECK(f.head(5).cwiseAbs().maxCoeff() > 0.0);
    CHECK(f.tail(sys.dim() - 5).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("tip deflection grows sublinearly once geometry stiffens") {
    auto sys = SemiDiscreteSystem::beam(kBeam, 6, 12, ConstraintMode::Multiplier);
    EquilibriumReport small = solve_static(sys, LoadSpec{LoadKind::TipForce, 0.1});
    EquilibriumReport big = solve_static(sys, LoadSpec{LoadKind::TipForce, 1.0});
    CHECK(big.probe < 10.0 * small.probe);
    CHECK(big.probe > small.probe);
    CHECK(!big.load_path.empty());
}
