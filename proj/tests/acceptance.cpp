// End-to-end acceptance suite. Each criterion is selected by its number on
// the command line and prints a single pass/fail line with the measured
// values, so `ctest` shows one entry per criterion.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "inext/kinematics.hpp"
#include "inext/residuals.hpp"
#include "inext/runner.hpp"
#include "inext/statics.hpp"

using namespace inext;

namespace {

struct Result {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* spec, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), spec, a, b, c);
    return buf;
}

const double kBeta1 = 1.8751040687119611;

ModelSpec beam_model(double stiffness = 1.0) {
    BeamParams p;
    p.stiffness = stiffness;
    return make_model(Variant::BeamEta2, p);
}

// Least-squares slope of log y vs log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        const double lx = std::log(x[static_cast<size_t>(i)]);
        const double ly = std::log(y[static_cast<size_t>(i)]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Shared conservation run: first transverse mode at amplitude 0.3 in the
// multiplier formulation.
Trajectory conservation_run(const SemiDiscreteSystem& sys, double dt,
                            double t_end) {
    Eigen::VectorXd q0 = Eigen::VectorXd::Zero(sys.w_dim());
    q0[0] = 0.3;
    return simulate(sys, q0, Eigen::VectorXd::Zero(sys.w_dim()), dt, t_end,
                    Scheme::ImplicitMidpointProjected);
}

double energy_drift(const Trajectory& tr) {
    const double e0 =
        tr.diagnostics.front().kinetic + tr.diagnostics.front().potential;
    double worst = 0.0;
    for (const auto& d : tr.diagnostics)
        worst = std::max(worst, std::abs(d.kinetic + d.potential - e0));
    return worst / std::abs(e0);
}

// ---------------------------------------------------------------- 1 -------

Result criterion1() {
    auto sys = SemiDiscreteSystem::beam(beam_model(), 6, 24, ConstraintMode::Reduced);
    const double omega = kBeta1 * kBeta1;
    const double period = 2.0 * M_PI / omega;
    Trajectory tr = simulate(sys, Eigen::VectorXd::Unit(6, 0) * 1e-3,
                             Eigen::VectorXd::Zero(6), period / 500.0, 8.0 * period,
                             Scheme::ExplicitRk4Reduced);
    if (!tr.completed) return {false, "integration failed: " + tr.failure};
    std::vector<double> t, x;
    for (const auto& s : tr.states) {
        t.push_back(s.t);
        x.push_back(s.q[0]);
    }
    const double measured = measure_period(t, x);
    const double rel = std::abs(measured - period) / period;
    return {rel <= 1e-3, fmt("period rel err %.3g (tol 1e-3)", rel)};
}

// ---------------------------------------------------------------- 2 -------

Result criterion2() {
    auto sys = SemiDiscreteSystem::beam(beam_model(), 6, 36,
                                        ConstraintMode::Multiplier);
    const double period = 2.0 * M_PI / (kBeta1 * kBeta1);
    const double dt = period / 500.0;
    const double drift1 = energy_drift(conservation_run(sys, dt, 10.0 * period));
    const double drift2 =
        energy_drift(conservation_run(sys, dt / 2.0, 10.0 * period));
    const double ratio = drift1 / drift2;
    const bool pass = drift1 <= 1e-4 && ratio >= 3.5;
    return {pass, fmt("drift %.3g (tol 1e-4), halving ratio %.2f (min 3.5)",
                      drift1, ratio)};
}

// ---------------------------------------------------------------- 3 -------

Result criterion3() {
    auto sys = SemiDiscreteSystem::beam(beam_model(), 6, 36,
                                        ConstraintMode::Multiplier);
    const double period = 2.0 * M_PI / (kBeta1 * kBeta1);
    Trajectory tr = conservation_run(sys, period / 500.0, 10.0 * period);
    if (!tr.completed) return {false, "integration failed: " + tr.failure};
    double weak = 0.0, field = 0.0;
    for (const auto& d : tr.diagnostics) {
        weak = std::max(weak, d.constraint_weak_sup);
        field = std::max(field, d.constraint_field_sup);
    }
    const bool pass = weak <= 1e-9 && field <= 1e-10;
    return {pass, fmt("weak sup %.3g (tol 1e-9), field sup %.3g (tol 1e-10)",
                      weak, field)};
}

// ---------------------------------------------------------------- 4 -------

Result criterion4() {
    auto sys = SemiDiscreteSystem::beam(beam_model(), 6, 36,
                                        ConstraintMode::Multiplier);
    const double period = 2.0 * M_PI / (kBeta1 * kBeta1);
    Trajectory tr = conservation_run(sys, period / 500.0, 10.0 * period);
    if (!tr.completed) return {false, "integration failed: " + tr.failure};

    const Grid1& g = sys.beam_u_basis().grid();
    const Eigen::VectorXd end_row = g.interp_row(g.length);
    double worst_end = 0.0, worst_l2 = 0.0;
    for (size_t k = 0; k < tr.states.size(); k += 250) {
        const Eigen::VectorXd qdd = sys.acceleration(tr.states[k]);
        const Eigen::ArrayXd utt =
            (sys.beam_u_basis().samples(0) * qdd.tail(qdd.size() - 6)).array();
        const Profile1 lam = beam_recover_lambda(g, utt);
        const double scale = std::max(1e-30, lam(0).abs().maxCoeff());
        worst_end = std::max(worst_end, std::abs(end_row.dot(lam(0).matrix())));
        const Eigen::ArrayXd balance = (g.diff * lam(0).matrix()).array() + utt;
        worst_l2 = std::max(worst_l2,
                            std::sqrt(g.integrate(balance.square())) /
                                std::max(1.0, scale));
    }
    const bool pass = worst_end <= 1e-10 && worst_l2 <= 1e-8;
    return {pass, fmt("lambda(L) %.3g (tol 1e-10), balance L2 %.3g (tol 1e-8)",
                      worst_end, worst_l2)};
}

// ---------------------------------------------------------------- 5 -------

Result criterion5() {
    PlateParams pp;  // unit square, default thickness and Poisson ratio
    const double D = pp.stiffness();
    const int nw = 5;
    const double dt = 0.02, t_end = 5.0, amp = 0.1;

    auto beam = SemiDiscreteSystem::beam(beam_model(D), nw, 4 * nw,
                                         ConstraintMode::Reduced);
    Trajectory tb = simulate(beam, Eigen::VectorXd::Unit(nw, 0) * amp,
                             Eigen::VectorXd::Zero(nw), dt, t_end,
                             Scheme::ExplicitRk4Reduced);

    auto plate = SemiDiscreteSystem::plate(make_model(Variant::PlateII, pp), nw, 3,
                                           nw, 3, ConstraintMode::Reduced);
    Eigen::VectorXd q0 = Eigen::VectorXd::Zero(plate.dim());
    q0[0] = amp;  // (mode 1 in x) x (uniform y mode)
    Trajectory tp = simulate(plate, q0, Eigen::VectorXd::Zero(plate.dim()), dt,
                             t_end, Scheme::ExplicitRk4Reduced);
    if (!tb.completed || !tp.completed) return {false, "integration failed"};

    double gap = 0.0;
    for (size_t k = 0; k < tb.states.size(); ++k) {
        const Eigen::VectorXd& qp = tp.states[k].q;
        gap = std::max(gap,
                       (qp.head(nw) - tb.states[k].q).cwiseAbs().maxCoeff());
        gap = std::max(gap, qp.tail(qp.size() - nw).cwiseAbs().maxCoeff());
    }
    return {gap <= 1e-8, fmt("trajectory sup gap %.3g (tol 1e-8)", gap)};
}

// ---------------------------------------------------------------- 6 -------

Result criterion6() {
    const ModelSpec m = make_model(Variant::PlateII, PlateParams{});
    PlateBasisSet B = PlateBasisSet::make(4, 3, 3, 3, 1.0, 1.0);
    const Grid2& g = B.grid;
    const int nx = g.gx.size(), ny = g.gy.size();
    const Eigen::ArrayXd x = g.gx.x.array(), y = g.gy.x.array();

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::MatrixXd qw(4, 3);
        for (int i = 0; i < qw.size(); ++i) qw.data()[i] = 0.2 * dist(rng);

        PlateFieldState s;
        s.grid = g;
        s.w = synth(B.wx, B.wy, qw);
        s.u = s.v = Profile2::zero(nx, ny);
        s.utt = s.vtt = s.wtt = Profile2::zero(nx, ny, 0, 0);

        // Polynomial accelerations with closed-form antiderivatives.
        const double a0 = dist(rng), a1 = dist(rng), a2 = dist(rng);
        const double b1 = dist(rng), c0 = dist(rng), c1 = dist(rng);
        const double d0 = dist(rng), d1 = dist(rng), d2 = dist(rng);
        const Eigen::ArrayXd px = a0 + a1 * x + a2 * x.square();
        const Eigen::ArrayXd Px = a0 * x + 0.5 * a1 * x.square() +
                                  (a2 / 3.0) * x.cube();
        const double PxL = a0 + 0.5 * a1 + a2 / 3.0;
        const Eigen::ArrayXd qy = 1.0 + b1 * y;
        const Eigen::ArrayXd rx = c0 + c1 * x;
        const Eigen::ArrayXd sy = d0 + d1 * y + d2 * y.square();
        const Eigen::ArrayXd Sy = d0 * y + 0.5 * d1 * y.square() +
                                  (d2 / 3.0) * y.cube();

        s.utt->at(0, 0) = (px.matrix() * qy.matrix().transpose()).array();
        s.vtt->at(0, 0) = (rx.matrix() * sy.matrix().transpose()).array();
        for (int i = 0; i < qw.size(); ++i) qw.data()[i] = 0.1 * dist(rng);
        s.wtt->at(0, 0) = synth(B.wx, B.wy, qw)(0, 0);

        MultiplierField mult;
        mult.l1 = Profile2::zero(nx, ny, 1, 1);
        mult.l2 = Profile2::zero(nx, ny, 1, 1);
        mult.l1->at(0, 0) = ((PxL - Px).matrix() * qy.matrix().transpose()).array();
        mult.l1->at(1, 0) = -s.utt.value()(0, 0);
        mult.l2->at(0, 0) = -(rx.matrix() * Sy.matrix().transpose()).array();
        mult.l2->at(0, 1) = -s.vtt.value()(0, 0);

        const Eigen::ArrayXXd closed = closed_w_residual(s, m);
        const PlateResidualReport rep = interior_residual(s, mult, m);
        const double rel = (rep.w_eq - closed).abs().maxCoeff() /
                           std::max(1e-30, closed.abs().maxCoeff());
        worst = std::max(worst, rel);
    }
    return {worst <= 1e-12, fmt("worst relative gap %.3g over 20 trials "
                                "(tol 1e-12)", worst)};
}

// ---------------------------------------------------------------- 7 -------

// The recovered in-plane fields satisfy the composite combination only up to
// fourth order in the transverse amplitude (generic fields are incompatible
// with the chord constraint pointwise), so the bound is checked in the
// small-amplitude regime and the quartic decay is verified alongside.
Result criterion7() {
    PlateBasisSet B = PlateBasisSet::make(3, 3, 3, 3, 1.0, 1.0);
    const Grid2& g = B.grid;
    std::vector<double> amps, sups;
    for (double amp : {2.5e-5, 5e-5, 1e-4}) {
        Eigen::MatrixXd qw = Eigen::MatrixXd::Zero(3, 3);
        qw(0, 1) = amp;
        qw(1, 2) = 0.6 * amp;
        qw(0, 0) = 0.8 * amp;
        Profile2 w = synth(B.wx, B.wy, qw);
        auto [u, v] = plate_recover_inplane(g, w);
        const Eigen::ArrayXXd expr = 4.0 * u(1, 0) * v(0, 1) -
                                     2.0 * u(0, 1) * v(1, 0) -
                                     (u(0, 1).square() + v(1, 0).square());
        amps.push_back(amp);
        sups.push_back(expr.abs().maxCoeff());
    }
    const double slope = loglog_slope(amps, sups);
    const bool pass = sups.back() <= 1e-10 && std::abs(slope - 4.0) <= 0.5;
    return {pass, fmt("composite residual sup %.3g (tol 1e-10), "
                      "amplitude order %.2f (want 4)", sups.back(), slope)};
}

// ---------------------------------------------------------------- 8 -------

Result criterion8() {
    // (a) curvature truncation orders, measured relative to the exact value.
    Grid1 g1 = Grid1::make(20, 1.0);
    std::vector<double> amps, e2, e4;
    for (double a = 0.003; a <= 0.31; a *= std::sqrt(10.0)) {
        Profile1 w = Profile1::zero(g1.size());
        w.at(1) = 2.0 * a * g1.x.array();
        w.at(2).setConstant(2.0 * a);
        const Eigen::ArrayXd exact =
            beam_curvature_sq(w, CurvatureVariant::BeamExact);
        const double scale = exact.abs().maxCoeff();
        amps.push_back(a);
        e2.push_back(
            (exact - beam_curvature_sq(w, CurvatureVariant::BeamEta2))
                .abs()
                .maxCoeff() /
            scale);
        e4.push_back(
            (exact - beam_curvature_sq(w, CurvatureVariant::BeamEta4))
                .abs()
                .maxCoeff() /
            scale);
    }
    const double slope2 = loglog_slope(amps, e2);
    const double slope4 = loglog_slope(amps, e4);

    // (b) nonlinear free-edge condition on x = Lx against its linearization.
    // The nonlinear third-order trace carries the opposite sign convention,
    // so the linear part cancels in the sum.
    const ModelSpec pm = make_model(Variant::PlateII, PlateParams{});
    PlateBasisSet B = PlateBasisSet::make(4, 3, 3, 3, 1.0, 1.0);
    Eigen::MatrixXd shape(4, 3);
    shape << 1.0, 0.4, 0.2, 0.5, -0.3, 0.1, 0.2, 0.1, -0.2, 0.1, -0.1, 0.05;
    std::vector<double> bamps, bgap;
    for (double a = 0.002; a <= 0.21; a *= std::sqrt(10.0)) {
        PlateFieldState s;
        s.grid = B.grid;
        s.w = synth(B.wx, B.wy, a * shape);
        s.u = s.v = Profile2::zero(B.grid.gx.size(), B.grid.gy.size());
        PlateBoundaryReport rep = boundary_residual(s, pm);
        const Eigen::ArrayXd diff = rep.find("east", "third_order").values +
                                    rep.find("east", "third_order_lin").values;
        bamps.push_back(a);
        bgap.push_back(diff.abs().maxCoeff());
    }
    const double slope_bc = loglog_slope(bamps, bgap);

    // (c) static tip-deflection gap between the two beam truncation orders.
    BeamParams p2, p4;
    p4.order = BeamOrder::Eta4;
    auto sys2 = SemiDiscreteSystem::beam(make_model(Variant::BeamEta2, p2), 6, 12,
                                         ConstraintMode::Multiplier);
    auto sys4 = SemiDiscreteSystem::beam(make_model(Variant::BeamEta4, p4), 6, 12,
                                         ConstraintMode::Multiplier);
    // The two truncated energies first differ at sixth order in w, so the
    // deflection gap closes at fifth order in the load.
    std::vector<double> loads, gaps;
    for (double P = 0.02; P <= 0.7; P *= 2.0) {
        const double w2 = solve_static(sys2, {LoadKind::TipForce, P}).probe;
        const double w4 = solve_static(sys4, {LoadKind::TipForce, P}).probe;
        loads.push_back(P);
        gaps.push_back(std::abs(w2 - w4));
    }
    const double slope_static = loglog_slope(loads, gaps);

    const bool pass = std::abs(slope2 - 4.0) <= 0.25 &&
                      std::abs(slope4 - 6.0) <= 0.25 &&
                      std::abs(slope_bc - 3.0) <= 0.25 &&
                      std::abs(slope_static - 5.0) <= 0.25;
    std::string detail =
        fmt("curvature slopes %.2f/%.2f (want 4/6), ", slope2, slope4) +
        fmt("edge-condition slope %.2f (want 3), static gap slope %.2f (want 5)",
            slope_bc, slope_static);
    return {pass, detail};
}

// ---------------------------------------------------------------- 9 -------

Result criterion9() {
    auto sys = SemiDiscreteSystem::beam(beam_model(), 8, 16,
                                        ConstraintMode::Multiplier);
    const double P = 1e-3;  // 1e-3 D / L^2
    EquilibriumReport rep = solve_static(sys, {LoadKind::TipForce, P});
    const double linear = P / 3.0;  // P L^3 / (3 D)
    const double rel = std::abs(rep.probe - linear) / linear;
    const bool pass = rel <= 5e-3 && rep.optimality <= 1e-10;
    return {pass, fmt("tip rel err %.3g (tol 5e-3), optimality %.3g (tol 1e-10)",
                      rel, rep.optimality)};
}

// ---------------------------------------------------------------- 10 ------

Result criterion10() {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> dist(-0.05, 0.05);
    const double h = 1e-5;
    double worst = 0.0;

    // Beam variants.
    ModeBasis b = ModeBasis::clamped_free(5, 1.0);
    const ModelSpec bm = beam_model(1.4);
    for (EnergyVariant v : {EnergyVariant::BeamEta2, EnergyVariant::BeamEta4}) {
        for (int trial = 0; trial < 50; ++trial) {
            Eigen::VectorXd q(5);
            for (int i = 0; i < 5; ++i) q[i] = dist(rng);
            const Eigen::VectorXd grad = potential_gradient(b, q, bm, v);
            auto energy_at = [&](const Eigen::VectorXd& qq) {
                BeamFieldState s{b.grid(), synth(b, qq),
                                 Profile1::zero(b.grid().size()), {}, {}, {}, {}};
                return potential_energy(s, bm, v).potential;
            };
            double err = 0.0;
            for (int i = 0; i < 5; ++i) {
                Eigen::VectorXd qp = q, qm = q;
                qp[i] += h;
                qm[i] -= h;
                err = std::max(err, std::abs(grad[i] - (energy_at(qp) -
                                                        energy_at(qm)) /
                                                           (2.0 * h)));
            }
            worst = std::max(worst, err / std::max(1e-12, grad.cwiseAbs().maxCoeff()));
        }
    }

    // Plate variants (the shear and bulk forms also carry in-plane blocks).
    PlateBasisSet B = PlateBasisSet::make(3, 2, 3, 2, 1.0, 1.0);
    const ModelSpec pm = make_model(Variant::PlateII, PlateParams{});
    auto plate_energy = [&](const Eigen::MatrixXd& qw, const Eigen::MatrixXd& qu,
                            const Eigen::MatrixXd& qv, EnergyVariant v) {
        PlateFieldState s;
        s.grid = B.grid;
        s.w = synth(B.wx, B.wy, qw);
        s.u = synth(B.ux, B.uy, qu);
        s.v = synth(B.vx, B.vy, qv);
        return potential_energy(s, pm, v).potential;
    };
    for (EnergyVariant v : {EnergyVariant::PlateEffective, EnergyVariant::PlateShear,
                            EnergyVariant::PlateBulk}) {
        for (int trial = 0; trial < 50; ++trial) {
            Eigen::MatrixXd qw(3, 2), qu(3, 2), qv(3, 2);
            for (int i = 0; i < 6; ++i) {
                qw.data()[i] = dist(rng);
                qu.data()[i] = 0.2 * dist(rng);
                qv.data()[i] = 0.2 * dist(rng);
            }
            PlateGradient grad = potential_gradient(B, qw, qu, qv, pm, v);
            double err = 0.0, scale = 1e-12;
            scale = std::max(scale, grad.dw.cwiseAbs().maxCoeff());
            scale = std::max(scale, grad.du.cwiseAbs().maxCoeff());
            scale = std::max(scale, grad.dv.cwiseAbs().maxCoeff());
            auto probe_block = [&](Eigen::MatrixXd& qblk,
                                   const Eigen::MatrixXd& gblk) {
                for (int i = 0; i < 6; ++i) {
                    const double save = qblk.data()[i];
                    qblk.data()[i] = save + h;
                    const double ep = plate_energy(qw, qu, qv, v);
                    qblk.data()[i] = save - h;
                    const double em = plate_energy(qw, qu, qv, v);
                    qblk.data()[i] = save;
                    err = std::max(err, std::abs(gblk.data()[i] -
                                                 (ep - em) / (2.0 * h)));
                }
            };
            probe_block(qw, grad.dw);
            probe_block(qu, grad.du);
            probe_block(qv, grad.dv);
            worst = std::max(worst, err / scale);
        }
    }
    return {worst <= 1e-6, fmt("worst relative gradient error %.3g (tol 1e-6)",
                               worst)};
}

// ---------------------------------------------------------------- 11 ------

Result criterion11() {
    const std::string cfg_text = R"({
        "model": {"variant": "beam_eta2"},
        "basis": {"n_w": 6, "n_u": 24},
        "initial": {"mode": 1, "amplitude": 0.2},
        "integrator": {"dt": 0.0035, "t_end": 1.8},
        "output": {"snapshots": [0.9], "plots": true}
    })";
    ScenarioConfig cfg = parse_config_text(cfg_text);
    validate_config(cfg);

    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path();
    const fs::path da = base / "inext_acc11_a", db = base / "inext_acc11_b";
    fs::remove_all(da);
    fs::remove_all(db);
    run_scenario(cfg, da.string(), true);
    run_scenario(cfg, db.string(), true);

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    auto drop_wall_clock = [](const std::string& text) {
        std::istringstream in(text);
        std::ostringstream out;
        std::string line;
        while (std::getline(in, line))
            if (line.find("wall_clock_seconds") == std::string::npos)
                out << line << '\n';
        return out.str();
    };

    for (const char* name : {"trajectory.csv", "diagnostics.json",
                             "snapshot_000.csv", "energy.svg", "tip.svg"}) {
        if (!fs::exists(da / name) || slurp(da / name) != slurp(db / name))
            return {false, std::string("artifact differs or missing: ") + name};
    }
    if (drop_wall_clock(slurp(da / "manifest.json")) !=
        drop_wall_clock(slurp(db / "manifest.json")))
        return {false, "manifest differs beyond the wall-clock field"};
    return {true, "all artifacts byte-identical across reruns"};
}

const char* kNames[] = {
    "linear-limit period",
    "energy conservation and second-order drift",
    "constraint maintenance",
    "multiplier recovery consistency",
    "plate-to-beam reduction",
    "multiplier elimination equivalence",
    "composite in-plane identity",
    "truncation-order scaling",
    "static linear limit",
    "potential gradient check",
    "artifact determinism",
};

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: acceptance <criterion 1..11>\n");
        return 2;
    }
    const int n = std::atoi(argv[1]);
    if (n < 1 || n > 11) {
        std::fprintf(stderr, "criterion out of range: %d\n", n);
        return 2;
    }
    Result r;
    try {
        switch (n) {
            case 1: r = criterion1(); break;
            case 2: r = criterion2(); break;
            case 3: r = criterion3(); break;
            case 4: r = criterion4(); break;
            case 5: r = criterion5(); break;
            case 6: r = criterion6(); break;
            case 7: r = criterion7(); break;
            case 8: r = criterion8(); break;
            case 9: r = criterion9(); break;
            case 10: r = criterion10(); break;
            case 11: r = criterion11(); break;
        }
    } catch (const std::exception& e) {
        r = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %2d (%s): %s — %s\n", n, kNames[n - 1],
                r.pass ? "PASS" : "FAIL", r.detail.c_str());
    return r.pass ? 0 : 1;
}
