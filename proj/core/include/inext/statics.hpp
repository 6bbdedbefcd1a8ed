#pragma once

#include <vector>

#include "inext/dynamics.hpp"

namespace inext {

enum class LoadKind {
    TipForce,         // beam: point force at x = L; plate: point force at
                      // (Lx, Ly/2)
    EdgeLineLoad,     // plate: uniform transverse line load on the x = Lx edge
    UniformPressure,  // uniform transverse load over the whole domain
};

struct LoadSpec {
    LoadKind kind = LoadKind::TipForce;
    double magnitude = 0.0;
};

// Generalized force conjugate to the modal coordinates (transverse block
// only; in-plane coordinates carry no load).
Eigen::VectorXd load_vector(const SemiDiscreteSystem& sys, const LoadSpec& load);

struct EquilibriumReport {
    Eigen::VectorXd q;   // full coordinate vector at equilibrium
    Eigen::VectorXd mu;  // constraint multipliers
    double optimality = 0.0;      // sup norm of the stationarity residual
    double constraint_sup = 0.0;  // sup norm of the weak constraints
    EnergyReport energy;          // potential breakdown at equilibrium
    double probe = 0.0;           // deflection at the load reference point
    double min_reduced_hessian_eig = 0.0;  // second-order (stability) probe
    std::vector<double> load_path;         // continuation loads that converged
};

// Full-space KKT Newton with load continuation: start at 10% of the target,
// halve the increment on divergence, give up (ContinuationStall) below
// 1e-4 of the target. Requires a multiplier-mode system.
EquilibriumReport solve_static(const SemiDiscreteSystem& sys, const LoadSpec& load);

struct ModalReport {
    Eigen::VectorXd frequencies;  // ascending, nonnegative
    Eigen::MatrixXd shapes;       // transverse modal coordinates, one column each
};

// Small-amplitude transverse vibration spectrum about the flat state:
// eigenvalues of the quadratic (bending) part of the potential under the
// identity modal mass. In-plane fields do not enter at linear order.
ModalReport linear_modes(const SemiDiscreteSystem& sys, int count = -1);

}  // namespace inext
