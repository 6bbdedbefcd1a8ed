#include "inext/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "inext/csv.hpp"
#include "inext/kinematics.hpp"
#include "inext/svg.hpp"

namespace inext {

namespace {

using nlohmann::json;

std::string hash_hex(const std::string& bytes) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(bytes)));
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << text;
}

void write_manifest(const std::string& dir, const ScenarioConfig& c,
                    double wall_seconds, bool completed, const std::string& failure,
                    const std::vector<CheckOutcome>& checks) {
    json m;
    m["config_hash"] = hash_hex(c.source_text);
    m["code_version"] = "0.1.0";
    m["wall_clock_seconds"] = wall_seconds;
    m["completed"] = completed;
    m["failure"] = failure;
    json jc = json::object();
    for (const auto& ck : checks) jc[ck.name] = ck.passed;
    m["checks"] = jc;
    write_text(dir + "/manifest.json", m.dump(2) + "\n");
}

CheckOutcome make_check(const std::string& name, double value, double threshold,
                        bool pass_above = false) {
    CheckOutcome c;
    c.name = name;
    c.value = value;
    c.threshold = threshold;
    c.passed = pass_above ? (value >= threshold) : (value <= threshold);
    return c;
}

// Row that evaluates the transverse deflection at the probe point from the
// leading w block of the coordinate vector.
Eigen::VectorXd probe_row(const SemiDiscreteSystem& sys, const ScenarioConfig& c) {
    if (sys.is_beam()) return sys.beam_w_basis().eval_all(c.probe_x(), 0);
    const auto& B = sys.plate_bases();
    const Eigen::VectorXd fx = B.wx.eval_all(c.probe_x(), 0);
    const Eigen::VectorXd fy = B.wy.eval_all(c.probe_y(), 0);
    Eigen::MatrixXd outer = fx * fy.transpose();
    return Eigen::Map<Eigen::VectorXd>(outer.data(), outer.size());
}

void write_snapshot(const SemiDiscreteSystem& sys, const ScenarioConfig& c,
                    const ModalState& s, const std::string& path) {
    if (sys.is_beam()) {
        const auto& bw = sys.beam_w_basis();
        const int nw = sys.w_dim();
        Profile1 w = synth(bw, s.q.head(nw));
        Eigen::ArrayXd u;
        if (sys.mode() == ConstraintMode::Multiplier) {
            u = (sys.beam_u_basis().samples(0) * s.q.tail(s.q.size() - nw)).array();
        } else {
            const auto flavor = sys.model().beam().order == BeamOrder::Eta4
                                    ? ConstraintFlavor::Eta4Beam
                                    : ConstraintFlavor::Eta2Beam;
            u = beam_recover_u(bw.grid(), w, flavor)(0);
        }
        write_profile_csv(path, bw.grid().x, {{"w", w(0)}, {"u", u}});
    } else {
        const auto& B = sys.plate_bases();
        Eigen::Map<const Eigen::MatrixXd> qw(s.q.data(), B.wx.size(), B.wy.size());
        Profile2 w = synth(B.wx, B.wy, qw);
        write_grid_csv(path, B.grid.gx.x, B.grid.gy.x, w(0, 0));
    }
}

int nearest_state(const Trajectory& tr, double t) {
    int best = 0;
    double gap = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < tr.states.size(); ++i) {
        const double d = std::abs(tr.states[i].t - t);
        if (d < gap) {
            gap = d;
            best = static_cast<int>(i);
        }
    }
    return best;
}

}  // namespace

SemiDiscreteSystem make_system(const ScenarioConfig& c, bool for_statics) {
    if (is_beam(c.model.variant)) {
        const auto mode =
            for_statics ? ConstraintMode::Multiplier : c.integrator.constraints;
        return SemiDiscreteSystem::beam(c.model, c.basis.n_wx, c.inplane_modes_x(),
                                        mode);
    }
    if (for_statics)
        return SemiDiscreteSystem::plate_statics(c.model, c.basis.n_wx, c.basis.n_wy,
                                                 c.inplane_modes_x(),
                                                 c.inplane_modes_y());
    return SemiDiscreteSystem::plate(c.model, c.basis.n_wx, c.basis.n_wy,
                                     c.inplane_modes_x(), c.inplane_modes_y(),
                                     c.integrator.constraints);
}

void initial_coefficients(const ScenarioConfig& c, int n_w, Eigen::VectorXd& qw,
                          Eigen::VectorXd& qw_dot) {
    qw = Eigen::VectorXd::Zero(n_w);
    qw_dot = Eigen::VectorXd::Zero(n_w);
    if (c.initial.coefficients_file) {
        std::ifstream in(*c.initial.coefficients_file);
        if (!in)
            throw ConfigError("initial.coefficients_file: cannot read '" +
                              *c.initial.coefficients_file + "'");
        std::vector<double> vals;
        double v;
        while (in >> v) vals.push_back(v);
        if (static_cast<int>(vals.size()) != n_w)
            throw ConfigError("initial.coefficients_file: expected " +
                              std::to_string(n_w) + " values, found " +
                              std::to_string(vals.size()));
        for (int i = 0; i < n_w; ++i) qw[i] = vals[static_cast<size_t>(i)];
        return;
    }
    int idx = c.initial.mode_x - 1;
    if (!is_beam(c.model.variant)) idx += c.basis.n_wx * (c.initial.mode_y - 1);
    qw[idx] = c.initial.amplitude;
    qw_dot[idx] = c.initial.velocity;
}

RunOutcome run_scenario(const ScenarioConfig& c, const std::string& out_dir,
                        bool with_checks) {
    const auto t0 = std::chrono::steady_clock::now();
    std::filesystem::create_directories(out_dir);

    SemiDiscreteSystem sys = make_system(c, false);
    Eigen::VectorXd qw0, qw0_dot;
    initial_coefficients(c, sys.w_dim(), qw0, qw0_dot);
    Trajectory tr = simulate(sys, qw0, qw0_dot, c.integrator.dt, c.integrator.t_end,
                             c.integrator.scheme);

    // Trajectory CSV: time, modal coordinates, energies, constraint norms.
    {
        CsvWriter csv(out_dir + "/trajectory.csv");
        std::vector<std::string> header{"t"};
        for (int i = 0; i < sys.dim(); ++i) header.push_back("q" + std::to_string(i));
        header.insert(header.end(), {"e_kin", "e_pot", "constraint_weak_sup",
                                     "constraint_field_sup", "lambda_probe"});
        csv.text_row(header);
        std::vector<double> row(header.size());
        for (size_t k = 0; k < tr.states.size(); ++k) {
            const auto& s = tr.states[k];
            const auto& d = tr.diagnostics[k];
            size_t j = 0;
            row[j++] = s.t;
            for (int i = 0; i < sys.dim(); ++i) row[j++] = s.q[i];
            row[j++] = d.kinetic;
            row[j++] = d.potential;
            row[j++] = d.constraint_weak_sup;
            row[j++] = d.constraint_field_sup;
            row[j++] = d.lambda_probe;
            csv.row(row);
        }
    }

    for (size_t k = 0; k < c.output.snapshot_times.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof(name), "/snapshot_%03zu.csv", k);
        write_snapshot(sys, c,
                       tr.states[static_cast<size_t>(
                           nearest_state(tr, c.output.snapshot_times[k]))],
                       out_dir + name);
    }

    double e_min = std::numeric_limits<double>::infinity(), e_max = -e_min;
    double weak_max = 0.0, field_max = 0.0;
    std::vector<double> ts, ek, ep, et, lam, wp;
    const Eigen::VectorXd prow = probe_row(sys, c);
    for (size_t k = 0; k < tr.diagnostics.size(); ++k) {
        const auto& d = tr.diagnostics[k];
        const double tot = d.kinetic + d.potential;
        e_min = std::min(e_min, tot);
        e_max = std::max(e_max, tot);
        weak_max = std::max(weak_max, d.constraint_weak_sup);
        field_max = std::max(field_max, d.constraint_field_sup);
        ts.push_back(d.t);
        ek.push_back(d.kinetic);
        ep.push_back(d.potential);
        et.push_back(tot);
        lam.push_back(d.lambda_probe);
        wp.push_back(prow.dot(tr.states[k].q.head(prow.size())));
    }
    const double e_scale = std::max({std::abs(e_min), std::abs(e_max), 1e-30});
    const double e_spread = (e_max - e_min) / e_scale;

    RunOutcome out;
    if (with_checks && tr.completed) {
        out.checks.push_back(make_check("energy_relative_spread", e_spread, 1e-4));
        out.checks.push_back(make_check("constraint_weak_sup", weak_max, 1e-9));
        out.checks.push_back(make_check("constraint_field_sup", field_max, 1e-7));
    }

    {
        json d;
        d["energy"] = {{"initial", et.empty() ? 0.0 : et.front()},
                       {"final", et.empty() ? 0.0 : et.back()},
                       {"min", e_min},
                       {"max", e_max},
                       {"relative_spread", e_spread}};
        d["constraint_weak_sup_max"] = weak_max;
        d["constraint_field_sup_max"] = field_max;
        d["lambda_probe"] = lam;
        d["completed"] = tr.completed;
        d["failure"] = tr.failure;
        json jc = json::array();
        for (const auto& ck : out.checks)
            jc.push_back({{"name", ck.name},
                          {"passed", ck.passed},
                          {"value", ck.value},
                          {"threshold", ck.threshold}});
        d["checks"] = jc;
        write_text(out_dir + "/diagnostics.json", d.dump(2) + "\n");
    }

    if (c.output.plots) {
        write_line_plot(out_dir + "/energy.svg", "energy history", "t", "energy",
                        {{"kinetic", ts, ek}, {"potential", ts, ep},
                         {"total", ts, et}});
        write_line_plot(out_dir + "/tip.svg", "probe deflection history", "t", "w",
                        {{"w(probe)", ts, wp}});
    }

    if (!tr.completed) {
        out.exit_code = 3;
        out.message = tr.failure;
    } else {
        for (const auto& ck : out.checks)
            if (!ck.passed) {
                out.exit_code = 4;
                out.message = "check failed: " + ck.name;
                break;
            }
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(out_dir, c, wall, tr.completed, tr.failure, out.checks);
    return out;
}

RunOutcome run_static(const ScenarioConfig& c, const std::string& out_dir,
                      bool with_checks) {
    const auto t0 = std::chrono::steady_clock::now();
    std::filesystem::create_directories(out_dir);
    if (!c.load) throw ConfigError("load: required for static analysis");

    SemiDiscreteSystem sys = make_system(c, true);
    RunOutcome out;
    EquilibriumReport rep;
    std::string failure;
    bool completed = true;
    try {
        rep = solve_static(sys, *c.load);
    } catch (const NewtonDivergence& e) {
        completed = false;
        failure = e.what();
    } catch (const ContinuationStall& e) {
        completed = false;
        failure = e.what();
    } catch (const ProjectionFailure& e) {
        completed = false;
        failure = e.what();
    }

    if (completed) {
        if (sys.is_beam()) {
            const auto& bw = sys.beam_w_basis();
            const int nw = sys.w_dim();
            Profile1 w = synth(bw, rep.q.head(nw));
            Eigen::ArrayXd u =
                (sys.beam_u_basis().samples(0) * rep.q.tail(rep.q.size() - nw))
                    .array();
            write_profile_csv(out_dir + "/deflection.csv", bw.grid().x,
                              {{"w", w(0)}, {"u", u}});
        } else {
            const auto& B = sys.plate_bases();
            Eigen::Map<const Eigen::MatrixXd> qw(rep.q.data(), B.wx.size(),
                                                 B.wy.size());
            Profile2 w = synth(B.wx, B.wy, qw);
            write_grid_csv(out_dir + "/deflection.csv", B.grid.gx.x, B.grid.gy.x,
                           w(0, 0));
        }

        if (with_checks) {
            out.checks.push_back(make_check("kkt_optimality", rep.optimality, 1e-10));
            out.checks.push_back(
                make_check("constraint_weak_sup", rep.constraint_sup, 1e-9));
            out.checks.push_back(make_check("reduced_hessian_min_eig",
                                            rep.min_reduced_hessian_eig, -1e-8,
                                            /*pass_above=*/true));
        }

        json r;
        r["probe_deflection"] = rep.probe;
        r["optimality"] = rep.optimality;
        r["constraint_sup"] = rep.constraint_sup;
        r["min_reduced_hessian_eig"] = rep.min_reduced_hessian_eig;
        r["energy"] = {{"potential", rep.energy.potential},
                       {"bending", rep.energy.bending},
                       {"nonlinear_stiffness", rep.energy.nonlinear_stiffness},
                       {"membrane_shear", rep.energy.membrane_shear}};
        r["load_path"] = rep.load_path;
        json jc = json::array();
        for (const auto& ck : out.checks)
            jc.push_back({{"name", ck.name},
                          {"passed", ck.passed},
                          {"value", ck.value},
                          {"threshold", ck.threshold}});
        r["checks"] = jc;
        write_text(out_dir + "/static_report.json", r.dump(2) + "\n");
    }

    if (!completed) {
        out.exit_code = 3;
        out.message = failure;
    } else {
        for (const auto& ck : out.checks)
            if (!ck.passed) {
                out.exit_code = 4;
                out.message = "check failed: " + ck.name;
                break;
            }
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(out_dir, c, wall, completed, failure, out.checks);
    return out;
}

RunOutcome run_modes(const ScenarioConfig& c, const std::string& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    std::filesystem::create_directories(out_dir);

    SemiDiscreteSystem sys = make_system(c, true);
    ModalReport rep = linear_modes(sys);

    {
        CsvWriter csv(out_dir + "/modes.csv");
        csv.text_row({"index", "frequency"});
        for (int i = 0; i < rep.frequencies.size(); ++i)
            csv.row({static_cast<double>(i + 1), rep.frequencies[i]});
    }
    {
        json r;
        r["frequencies"] = std::vector<double>(
            rep.frequencies.data(), rep.frequencies.data() + rep.frequencies.size());
        write_text(out_dir + "/modes.json", r.dump(2) + "\n");
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(out_dir, c, wall, true, "", {});
    return RunOutcome{};
}

}  // namespace inext
