#pragma once

#include "inext/field.hpp"
#include "inext/params.hpp"

namespace inext {

enum class EnergyVariant {
    BeamEta2,        // (D/2) int w_xx^2 (1 + w_x^2)
    BeamEta4,        // (D/2) int w_xx^2 (1 + w_x^2 + w_x^4)
    PlateEffective,  // (D/2) int (1+|grad w|^2)(w_xx^2 + w_yy^2 + 2nu w_xx w_yy
                     //                          + 2(1-nu) w_xy^2)
    PlateShear,      // bending + h-scaled membrane-shear term, in u, v and w
    PlateBulk,       // z-integrated reference: full strains + full curvatures
};

// The variant each model's dynamics and statics use.
EnergyVariant default_energy_variant(Variant v);

struct EnergyReport {
    double kinetic = 0.0;
    double potential = 0.0;
    // Breakdown of the potential: the quadratic bending part, the nonlinear
    // stiffness corrections, and the membrane/shear part carrying the 6D/h
    // thickness scaling (PlateShear and PlateBulk only).
    double bending = 0.0;
    double nonlinear_stiffness = 0.0;
    double membrane_shear = 0.0;

    double total() const { return kinetic + potential; }
};

double kinetic_energy(const BeamFieldState& s);
double kinetic_energy(const PlateFieldState& s);

EnergyReport potential_energy(const BeamFieldState& s, const ModelSpec& m,
                              EnergyVariant v);
EnergyReport potential_energy(const PlateFieldState& s, const ModelSpec& m,
                              EnergyVariant v);
EnergyReport potential_energy(const BeamFieldState& s, const ModelSpec& m);
EnergyReport potential_energy(const PlateFieldState& s, const ModelSpec& m);

double energy_order_gap(const BeamFieldState& s, const ModelSpec& m, EnergyVariant a,
                        EnergyVariant b);
double energy_order_gap(const PlateFieldState& s, const ModelSpec& m, EnergyVariant a,
                        EnergyVariant b);

// Exact gradient of the potential with respect to the modal coordinates
// (forward-mode differentiation of the integrand, then projection onto the
// basis derivatives under the quadrature weights).
Eigen::VectorXd potential_gradient(const ModeBasis& b, const Eigen::VectorXd& qw,
                                   const ModelSpec& m, EnergyVariant v);

struct PlateGradient {
    Eigen::MatrixXd dw, du, dv;  // du, dv are zero for w-only variants
};
PlateGradient potential_gradient(const PlateBasisSet& B, const Eigen::MatrixXd& qw,
                                 const Eigen::MatrixXd& qu, const Eigen::MatrixXd& qv,
                                 const ModelSpec& m, EnergyVariant v);

}  // namespace inext
