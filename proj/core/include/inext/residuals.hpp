#pragma once

#include <string>
#include <vector>

#include "inext/field.hpp"
#include "inext/params.hpp"

namespace inext {

struct ScalarNorms {
    double sup = 0.0, l2 = 0.0;
};
ScalarNorms field_norms(const Grid1& g, const Eigen::ArrayXd& f);
ScalarNorms field_norms(const Grid2& g, const Eigen::ArrayXXd& f);

// ---------------------------------------------------------------- beam ----

struct BeamResidualReport {
    Eigen::ArrayXd u_eq, w_eq, constraint;
    ScalarNorms u_norms, w_norms, constraint_norms;
};

// Strong-form residuals of the beam system (quadratic or quartic order per
// the model variant). Requires accelerations and the multiplier field.
BeamResidualReport interior_residual(const BeamFieldState& s,
                                     const MultiplierField& mult,
                                     const ModelSpec& m);

struct BeamBoundaryReport {
    double lambda_end = 0.0;  // multiplier trace at x = L (should vanish)
    double moment = 0.0;      // (1 + w_x^2) w_xx at x = L
    double shear = 0.0;       // (1 + w_x^2) w_xxx + w_x w_xx^2 at x = L
    double moment_linear = 0.0, shear_linear = 0.0;  // w_xx, w_xxx traces
    double clamped_w = 0.0, clamped_wx = 0.0;        // traces at x = 0
};
BeamBoundaryReport boundary_residual(const BeamFieldState& s,
                                     const MultiplierField& mult);

// --------------------------------------------------------------- plate ----

struct PlateResidualReport {
    Eigen::ArrayXXd u_eq, v_eq, w_eq;
    ScalarNorms u_norms, v_norms, w_norms;
};

// Strong-form residuals of the selected plate model. Multiplier needs:
// three-constraint model l1, l2, l3; two-constraint and shear models l1, l2.
PlateResidualReport interior_residual(const PlateFieldState& s,
                                      const MultiplierField& mult,
                                      const ModelSpec& m);

// Two-constraint model with the multipliers eliminated through their
// integral formulas: the w-equation in w, u_tt and v_tt alone.
Eigen::ArrayXXd closed_w_residual(const PlateFieldState& s, const ModelSpec& m);

// Exact Euler-Lagrange w-force of the effective plate energy. Diagnostic
// alternative to the strong form's literal (w_xx + w_yy)^2 coefficient; the
// two differ by lower-order terms.
Eigen::ArrayXXd plate_variational_w_force(const PlateFieldState& s,
                                          const ModelSpec& m);

// ------------------------------------------------------------ boundary ----

// One boundary condition trace sampled at the edge's quadrature nodes.
// Edges are "east" (x = Lx), "north" (y = Ly), "west" (x = 0), "south"
// (y = 0); names identify the condition within the model's catalog.
struct EdgeConditionTrace {
    std::string edge, name;
    Eigen::ArrayXd values;
    ScalarNorms norms;
};

struct PlateBoundaryReport {
    std::vector<EdgeConditionTrace> conditions;

    const EdgeConditionTrace& find(const std::string& edge,
                                   const std::string& name) const;
};

// Natural (second/third order) condition residuals per free edge, clamped
// traces on the west edge, and the linear-plate reference conditions
// ("second_order_lin", "third_order_lin") for comparison.
PlateBoundaryReport boundary_residual(const PlateFieldState& s, const ModelSpec& m);

// Multiplier traces per edge: homogeneous conditions are returned as the
// trace of the supplied field (a residual); integral formulas are evaluated
// and returned as (supplied trace) - (formula value).
PlateBoundaryReport multiplier_boundary_values(const PlateFieldState& s,
                                               const MultiplierField& mult,
                                               const ModelSpec& m);

}  // namespace inext
