#pragma once

#include <string>
#include <vector>

#include "inext/energy.hpp"
#include "inext/field.hpp"
#include "inext/params.hpp"

namespace inext {

enum class ConstraintMode {
    Multiplier,  // in-plane coordinates kept, constraints enforced weakly
    Reduced,     // in-plane fields eliminated through the recovery operators
};

enum class Scheme {
    ImplicitMidpointProjected,  // both modes; projection active with constraints
    ExplicitRk4Reduced,         // reduced mode only
};

struct ModalState {
    Eigen::VectorXd q, qdot;
    Eigen::VectorXd mu;  // last accepted multipliers (multiplier mode)
    double t = 0.0;
};

struct StepDiagnostics {
    double t = 0.0;
    double kinetic = 0.0, potential = 0.0;
    double constraint_weak_sup = 0.0;   // ||g(q)||_inf (multiplier mode)
    double constraint_field_sup = 0.0;  // sup |u_x + g(w_x)| on the grid
    double lambda_probe = 0.0;          // recovered multiplier at the clamped end
};

struct Trajectory {
    std::vector<ModalState> states;            // includes the initial state
    std::vector<StepDiagnostics> diagnostics;  // one per state
    bool completed = true;
    std::string failure;  // message when integration aborted early
};

// Semi-discrete constrained system over the modal coordinates. Beam layout:
// q = [q_w; q_u] (multiplier) or q = [q_w] (reduced). Plate layout appends
// q_v; matrices of tensor coefficients are stored column-major.
class SemiDiscreteSystem {
  public:
    static SemiDiscreteSystem beam(const ModelSpec& m, int n_w, int n_u,
                                   ConstraintMode mode, int quad_pts = -1);
    static SemiDiscreteSystem plate(const ModelSpec& m, int n_wx, int n_wy, int n_ix,
                                    int n_iy, ConstraintMode mode, int quad_x = -1,
                                    int quad_y = -1);
    // Multiplier-mode system for equilibrium problems only; additionally
    // accepts the shear-strain model (span and chord constraints, in-plane
    // stiffness from the membrane term). step() refuses such systems.
    static SemiDiscreteSystem plate_statics(const ModelSpec& m, int n_wx, int n_wy,
                                            int n_ix, int n_iy, int quad_x = -1,
                                            int quad_y = -1);

    const ModelSpec& model() const { return model_; }
    ConstraintMode mode() const { return mode_; }
    bool is_beam() const { return beam_; }
    int dim() const { return dim_; }
    int w_dim() const { return nw_; }
    int constraint_dim() const { return m_; }

    const ModeBasis& beam_w_basis() const;
    const ModeBasis& beam_u_basis() const;
    const PlateBasisSet& plate_bases() const;

    // In-plane coordinates and rates are solved from the transverse data so
    // the constraints hold at t = 0 (never user-supplied).
    ModalState initial_state(const Eigen::VectorXd& qw,
                             const Eigen::VectorXd& qw_dot) const;

    Eigen::VectorXd potential_gradient(const Eigen::VectorXd& q) const;
    Eigen::VectorXd constraint(const Eigen::VectorXd& q) const;
    Eigen::MatrixXd constraint_jacobian(const Eigen::VectorXd& q) const;

    // Reduced-mode mass and acceleration.
    Eigen::MatrixXd mass(const Eigen::VectorXd& q) const;
    Eigen::VectorXd reduced_accel(const Eigen::VectorXd& q,
                                  const Eigen::VectorXd& qdot) const;

    // Acceleration of the given state in either mode (multiplier mode uses
    // the stored mu).
    Eigen::VectorXd acceleration(const ModalState& s) const;

    EnergyReport energy(const ModalState& s) const;
    StepDiagnostics diagnostics(const ModalState& s) const;

    // Regression hook: drop the nonlocal in-plane inertia in reduced mode.
    void set_inplane_inertia(bool on) { inplane_inertia_ = on; }

  private:
    SemiDiscreteSystem() = default;
    static SemiDiscreteSystem build_plate(const ModelSpec& m, int n_wx, int n_wy,
                                          int n_ix, int n_iy, ConstraintMode mode,
                                          int quad_x, int quad_y);

    ModelSpec model_ = make_model(Variant::BeamEta2, BeamParams{});
    ConstraintMode mode_ = ConstraintMode::Multiplier;
    bool beam_ = true;
    bool inplane_inertia_ = true;
    int dim_ = 0, nw_ = 0, ni_ = 0, m_ = 0;

    // beam pieces
    ModeBasis bw_ = ModeBasis::clamped_free(1, 1.0);
    ModeBasis bu_ = ModeBasis::poly_clamped(1, 1.0);
    Eigen::MatrixXd gu_;       // d g / d q_u, constant
    Eigen::MatrixXd bu0w_;     // test functions premultiplied by weights

    // plate pieces. The chord constraint is tested against the derivative
    // space of the y-basis (the constant mode pairs to zero with v_y and
    // would make the block singular); the two-constraint model adds explicit
    // rows pinning the y-mean of v to zero (the closure of its reduction).
    PlateBasisSet pb_ = PlateBasisSet::make(1, 1, 1, 1, 1.0, 1.0);
    Eigen::MatrixXd g1u_, g2v_, g3u_, g3v_, gcl_;  // constant constraint blocks
    Eigen::MatrixXd tyv_;  // chord test functions in y (Q x (n_iy - 1))

    // beam helpers
    Eigen::ArrayXd beam_gprime(const Eigen::ArrayXd& wx) const;
    Eigen::ArrayXd beam_gc(const Eigen::ArrayXd& wx) const;
    Eigen::MatrixXd beam_inplane_jacobian(const Eigen::VectorXd& qw) const;

    // plate reduced helpers
    void plate_inplane_jacobians(const Eigen::VectorXd& qw, Eigen::MatrixXd& ju,
                                 Eigen::MatrixXd& jv) const;

    friend ModalState step(const SemiDiscreteSystem&, const ModalState&, double,
                           Scheme);
};

ModalState step(const SemiDiscreteSystem& sys, const ModalState& s, double dt,
                Scheme scheme);

Trajectory simulate(const SemiDiscreteSystem& sys, const Eigen::VectorXd& qw0,
                    const Eigen::VectorXd& qw0_dot, double dt, double t_end,
                    Scheme scheme);

// Mean spacing of upward zero crossings (linear interpolation between
// bracketing samples); NaN when fewer than two crossings exist.
double measure_period(const std::vector<double>& t, const std::vector<double>& x);

}  // namespace inext
