#include <benchmark/benchmark.h>

#include "inext/dynamics.hpp"
#include "inext/statics.hpp"

using namespace inext;

namespace {

const ModelSpec kBeam = make_model(Variant::BeamEta2, BeamParams{});

void bm_beam_reduced_step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto sys = SemiDiscreteSystem::beam(kBeam, n, 4 * n, ConstraintMode::Reduced);
    Eigen::VectorXd q0 = Eigen::VectorXd::Zero(n);
    q0[0] = 0.2;
    ModalState s = sys.initial_state(q0, Eigen::VectorXd::Zero(n));
    for (auto _ : state) {
        s = step(sys, s, 1e-3, Scheme::ExplicitRk4Reduced);
        benchmark::DoNotOptimize(s.q.data());
    }
}
BENCHMARK(bm_beam_reduced_step)->Arg(4)->Arg(8)->Arg(12);

void bm_beam_multiplier_step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto sys = SemiDiscreteSystem::beam(kBeam, n, 4 * n, ConstraintMode::Multiplier);
    Eigen::VectorXd q0 = Eigen::VectorXd::Zero(n);
    q0[0] = 0.2;
    ModalState s = sys.initial_state(q0, Eigen::VectorXd::Zero(n));
    for (auto _ : state) {
        s = step(sys, s, 1e-3, Scheme::ImplicitMidpointProjected);
        benchmark::DoNotOptimize(s.q.data());
    }
}
BENCHMARK(bm_beam_multiplier_step)->Arg(4)->Arg(8);

void bm_plate_reduced_accel(benchmark::State& state) {
    auto sys = SemiDiscreteSystem::plate(make_model(Variant::PlateII, PlateParams{}),
                                         5, 3, 5, 3, ConstraintMode::Reduced);
    Eigen::VectorXd q0 = Eigen::VectorXd::Zero(sys.dim());
    q0[0] = 0.1;
    ModalState s = sys.initial_state(q0, Eigen::VectorXd::Zero(sys.dim()));
    for (auto _ : state) {
        Eigen::VectorXd a = sys.reduced_accel(s.q, s.qdot);
        benchmark::DoNotOptimize(a.data());
    }
}
BENCHMARK(bm_plate_reduced_accel);

void bm_static_tip_solve(benchmark::State& state) {
    auto sys = SemiDiscreteSystem::beam(kBeam, 6, 12, ConstraintMode::Multiplier);
    for (auto _ : state) {
        EquilibriumReport r = solve_static(sys, {LoadKind::TipForce, 0.5});
        benchmark::DoNotOptimize(r.probe);
    }
}
BENCHMARK(bm_static_tip_solve);

}  // namespace

BENCHMARK_MAIN();
