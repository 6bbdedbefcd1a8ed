#pragma once

#include <array>
#include <utility>

#include "inext/field.hpp"

namespace inext {

enum class ConstraintFlavor {
    ExactBeam,     // 1 = (1+u_x)^2 + w_x^2
    Eta2Beam,      // u_x = -w_x^2/2
    Eta4Beam,      // u_x = -w_x^2/2 - w_x^4/8
    FullPlate,     // exact span/chord/shear inextensibility
    QuadPlate,     // quadratic effective constraints
    QuarticPlate,  // quartic truncation of span/chord, quadratic shear
};

enum class CurvatureVariant {
    BeamExact,        // kappa^2 = w_xx^2 / (1 - w_x^2)
    BeamEta2,         // kappa^2 = w_xx^2 (1 + w_x^2)
    BeamEta4,         // kappa^2 = w_xx^2 (1 + w_x^2 + w_x^4)
    PlateFull,        // via the intermediate fields theta, psi, chi
    PlateSimplified,  // quadratic-order truncation of the above
    PlateInW,         // kappa_ij written solely in w
};

// In-axis displacement from the transverse field: u(x) = int_0^x g(w_x),
// with g matched to the constraint flavor. u(0) = 0.
Profile1 beam_recover_u(const Grid1& g, const Profile1& w, ConstraintFlavor flavor);

// lambda(x) = int_x^L u_tt, so lambda(L) = 0 identically.
Profile1 beam_recover_lambda(const Grid1& g, const Eigen::ArrayXd& u_tt);

Eigen::ArrayXd constraint_residual(const BeamFieldState& s, ConstraintFlavor flavor);

// Plate residuals ordered (span, chord, shear).
std::array<Eigen::ArrayXXd, 3> constraint_residual(const PlateFieldState& s,
                                                   ConstraintFlavor flavor);

// In-plane displacements from w through the quadratic effective constraints:
//   u(x,y) = -1/2 int_0^x w_x^2,
//   v(x,y) = int_0^x int_0^xi w_x w_xy - int_0^x w_x w_y.
std::pair<Profile2, Profile2> plate_recover_inplane(const Grid2& g, const Profile2& w);

// In-plane accelerations from the transverse motion. The free trace
// v_tt(x, 0) is closed by requiring zero y-mean of v_tt, the unique choice
// for which lambda_2 = -int_0^y v_tt vanishes on both y = 0 and y = L_y.
std::pair<Eigen::ArrayXXd, Eigen::ArrayXXd> plate_vtt_closure(const Grid2& g,
                                                              const Profile2& w,
                                                              const Profile2& wt,
                                                              const Profile2& wtt);

Eigen::ArrayXd beam_curvature_sq(const Profile1& w, CurvatureVariant variant);

// (kappa_11, kappa_22, kappa_12); PlateInW ignores u and v.
std::array<Eigen::ArrayXXd, 3> plate_curvature(const Profile2& u, const Profile2& v,
                                               const Profile2& w,
                                               CurvatureVariant variant);

// Diagnostic only: w_xx w_yy - w_xy^2 (zero for developable fields).
Eigen::ArrayXXd gaussian_curvature_diagnostic(const Profile2& w);

}  // namespace inext
