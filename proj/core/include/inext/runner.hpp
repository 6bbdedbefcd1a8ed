#pragma once

#include <string>
#include <vector>

#include "inext/config.hpp"

namespace inext {

struct CheckOutcome {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
};

struct RunOutcome {
    int exit_code = 0;  // 0 success, 3 solver failure, 4 failed checks
    std::string message;
    std::vector<CheckOutcome> checks;
};

// Discrete system matching the scenario (statics always multiplier mode and
// additionally accepts the shear-strain model).
SemiDiscreteSystem make_system(const ScenarioConfig& c, bool for_statics);

// Transverse initial coefficients from the recipe or coefficients file.
void initial_coefficients(const ScenarioConfig& c, int n_w, Eigen::VectorXd& qw,
                          Eigen::VectorXd& qw_dot);

// Time integration run: trajectory CSV, snapshots, diagnostics JSON, energy
// and probe-history SVG plots, manifest. Solver failures leave partial
// artifacts and are flagged in the manifest.
RunOutcome run_scenario(const ScenarioConfig& c, const std::string& out_dir,
                        bool with_checks);

// Equilibrium solve: deflection snapshot, report JSON, manifest.
RunOutcome run_static(const ScenarioConfig& c, const std::string& out_dir,
                      bool with_checks);

// Small-amplitude spectrum: modes CSV/JSON, manifest.
RunOutcome run_modes(const ScenarioConfig& c, const std::string& out_dir);

}  // namespace inext
