#include "inext/kinematics.hpp"

#include <cmath>

#include "inext/errors.hpp"

namespace inext {

namespace {

constexpr double slope_limit = 1.0 - 1e-8;

void check_slope(const Eigen::ArrayXd& wx) {
    if (wx.abs().maxCoeff() >= slope_limit)
        throw SlopeTooLarge("beam slope |w_x| too close to 1 for exact kinematics");
}

void check_slope2(const Eigen::ArrayXXd& sq) {
    if (sq.maxCoeff() >= slope_limit * slope_limit)
        throw SlopeTooLarge("plate slope |grad w| too close to 1 for exact kinematics");
}

}  // namespace

Profile1 beam_recover_u(const Grid1& g, const Profile1& w, ConstraintFlavor flavor) {
    const Eigen::ArrayXd& wx = w(1);
    Profile1 u;
    switch (flavor) {
        case ConstraintFlavor::Eta2Beam: {
            const Eigen::ArrayXd &wxx = w(2), &wxxx = w(3), &wxxxx = w(4);
            u.max_d = 4;
            u.at(1) = -0.5 * wx.square();
            u.at(2) = -wx * wxx;
            u.at(3) = -(wxx.square() + wx * wxxx);
            u.at(4) = -(3.0 * wxx * wxxx + wx * wxxxx);
            break;
        }
        case ConstraintFlavor::Eta4Beam: {
            const Eigen::ArrayXd &wxx = w(2), &wxxx = w(3), &wxxxx = w(4);
            u.max_d = 4;
            u.at(1) = -0.5 * wx.square() - 0.125 * wx.square().square();
            u.at(2) = -wx * wxx - 0.5 * wx.cube() * wxx;
            u.at(3) = -(wxx.square() + wx * wxxx) -
                      0.5 * (3.0 * wx.square() * wxx.square() + wx.cube() * wxxx);
            u.at(4) = -(3.0 * wxx * wxxx + wx * wxxxx) -
                      0.5 * (6.0 * wx * wxx.cube() +
                             9.0 * wx.square() * wxx * wxxx + wx.cube() * wxxxx);
            break;
        }
        case ConstraintFlavor::ExactBeam: {
            check_slope(wx);
            const Eigen::ArrayXd s = (1.0 - wx.square()).sqrt();
            u.max_d = 2;
            u.at(1) = s - 1.0;
            u.at(2) = -wx * w(2) / s;
            break;
        }
        default:
            throw BadParameter("beam_recover_u: plate constraint flavor");
    }
    u.at(0) = (g.prefix * u(1).matrix()).array();
    return u;
}

Profile1 beam_recover_lambda(const Grid1& g, const Eigen::ArrayXd& u_tt) {
    Profile1 lam;
    lam.max_d = 1;
    lam.at(0) = (g.suffix * u_tt.matrix()).array();
    lam.at(1) = -u_tt;
    return lam;
}

Eigen::ArrayXd constraint_residual(const BeamFieldState& s, ConstraintFlavor flavor) {
    const Eigen::ArrayXd &ux = s.u(1), &wx = s.w(1);
    switch (flavor) {
        case ConstraintFlavor::ExactBeam:
            return (1.0 + ux).square() + wx.square() - 1.0;
        case ConstraintFlavor::Eta2Beam:
            return ux + 0.5 * wx.square();
        case ConstraintFlavor::Eta4Beam:
            return ux + 0.5 * wx.square() + 0.125 * wx.square().square();
        default:
            throw BadParameter("constraint_residual: plate flavor on a beam state");
    }
}

std::array<Eigen::ArrayXXd, 3> constraint_residual(const PlateFieldState& s,
                                                   ConstraintFlavor flavor) {
    const Eigen::ArrayXXd &ux = s.u(1, 0), &uy = s.u(0, 1);
    const Eigen::ArrayXXd &vx = s.v(1, 0), &vy = s.v(0, 1);
    const Eigen::ArrayXXd &wx = s.w(1, 0), &wy = s.w(0, 1);
    switch (flavor) {
        case ConstraintFlavor::FullPlate:
            return {(1.0 + ux).square() + vx.square() + wx.square() - 1.0,
                    uy.square() + (1.0 + vy).square() + wy.square() - 1.0,
                    (1.0 + ux) * uy + vx * (1.0 + vy) + wx * wy};
        case ConstraintFlavor::QuadPlate:
            return {ux + 0.5 * wx.square(), vy + 0.5 * wy.square(),
                    uy + vx + wx * wy};
        case ConstraintFlavor::QuarticPlate:
            return {ux + 0.5 * wx.square() + 0.125 * wx.square().square(),
                    vy + 0.5 * wy.square() + 0.125 * wy.square().square(),
                    uy + vx + wx * wy};
        default:
            throw BadParameter("constraint_residual: beam flavor on a plate state");
    }
}

std::pair<Profile2, Profile2> plate_recover_inplane(const Grid2& g, const Profile2& w) {
    check_slope2(w(1, 0).square() + w(0, 1).square());

    // u derivatives come from u_x = -w_x^2/2 by Leibniz in x, then one
    // prefix integral for the zeroth order.
    const Profile2 s = Profile2::product(w.shift(1, 0), w.shift(1, 0));
    Profile2 u;
    u.max_dx = 4;
    u.max_dy = 4;
    for (int a = 1; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b) u.at(a, b) = -0.5 * s(a - 1, b);
    for (int b = 0; b <= 4; ++b)
        u.at(0, b) = Grid2::along_x(g.gx.prefix, -0.5 * s(0, b));

    // v_xx = w_x w_xy - d/dx (w_x w_y); lower x-orders by prefix integrals
    // in x (v and v_x vanish on the clamped edge x = 0).
    const Profile2 r = Profile2::product(w.shift(1, 0), w.shift(1, 1));
    const Profile2 m = Profile2::product(w.shift(1, 0), w.shift(0, 1));
    Profile2 v;
    v.max_dx = 4;
    v.max_dy = 3;
    for (int a = 2; a <= 4; ++a)
        for (int b = 0; b <= 3; ++b) v.at(a, b) = r(a - 2, b) - m(a - 1, b);
    for (int b = 0; b <= 3; ++b) {
        v.at(1, b) = Grid2::along_x(g.gx.prefix, r(0, b)) - m(0, b);
        v.at(0, b) = Grid2::along_x(g.gx.prefix, v(1, b));
    }
    return {u, v};
}

std::pair<Eigen::ArrayXXd, Eigen::ArrayXXd> plate_vtt_closure(const Grid2& g,
                                                              const Profile2& w,
                                                              const Profile2& wt,
                                                              const Profile2& wtt) {
    const Eigen::ArrayXXd fu = wt(1, 0).square() + w(1, 0) * wtt(1, 0);
    const Eigen::ArrayXXd utt = -Grid2::along_x(g.gx.prefix, fu);

    const Eigen::ArrayXXd fv = wt(0, 1).square() + w(0, 1) * wtt(0, 1);
    Eigen::ArrayXXd vtt = -Grid2::along_y(g.gy.prefix, fv);
    const Eigen::VectorXd mean = (vtt.matrix() * g.gy.w) / g.gy.length;
    vtt.matrix().colwise() -= mean;
    return {utt, vtt};
}

Eigen::ArrayXd beam_curvature_sq(const Profile1& w, CurvatureVariant variant) {
    const Eigen::ArrayXd &wx = w(1), &wxx = w(2);
    switch (variant) {
        case CurvatureVariant::BeamExact:
            check_slope(wx);
            return wxx.square() / (1.0 - wx.square());
        case CurvatureVariant::BeamEta2:
            return wxx.square() * (1.0 + wx.square());
        case CurvatureVariant::BeamEta4:
            return wxx.square() * (1.0 + wx.square() + wx.square().square());
        default:
            throw BadParameter("beam_curvature_sq: plate variant");
    }
}

std::array<Eigen::ArrayXXd, 3> plate_curvature(const Profile2& u, const Profile2& v,
                                               const Profile2& w,
                                               CurvatureVariant variant) {
    const Eigen::ArrayXXd &wx = w(1, 0), &wy = w(0, 1);
    const Eigen::ArrayXXd &wxx = w(2, 0), &wyy = w(0, 2), &wxy = w(1, 1);

    if (variant == CurvatureVariant::PlateInW) {
        const Eigen::ArrayXXd f = 1.0 + 0.5 * wx.square() + 0.5 * wy.square();
        return {-wxx * f, -wyy * f, -2.0 * wxy * f};
    }

    const Eigen::ArrayXXd &ux = u(1, 0), &uy = u(0, 1);
    const Eigen::ArrayXXd &uxx = u(2, 0), &uyy = u(0, 2), &uxy = u(1, 1);
    const Eigen::ArrayXXd &vx = v(1, 0), &vy = v(0, 1);
    const Eigen::ArrayXXd &vxx = v(2, 0), &vyy = v(0, 2), &vxy = v(1, 1);

    if (variant == CurvatureVariant::PlateSimplified) {
        const Eigen::ArrayXXd trace = 1.0 + ux + vy;
        return {wy * vxx + wx * uxx - trace * wxx,
                uyy * wx + wy * uyy - trace * wyy,
                2.0 * (vxy * wy + uxy * wx - trace * wxy)};
    }

    if (variant != CurvatureVariant::PlateFull)
        throw BadParameter("plate_curvature: beam variant");

    // First derivatives of the intermediate fields
    //   theta = -(1+v_y) w_x + v_x w_y,  psi = -(1+u_x) w_y + u_y w_x,
    //   chi   = u_x + v_y + u_x v_y - u_y v_x.
    const Eigen::ArrayXXd thx = -vxy * wx - (1.0 + vy) * wxx + vxx * wy + vx * wxy;
    const Eigen::ArrayXXd thy = -vyy * wx - (1.0 + vy) * wxy + vxy * wy + vx * wyy;
    const Eigen::ArrayXXd psx = -uxx * wy - (1.0 + ux) * wxy + uxy * wx + uy * wxx;
    const Eigen::ArrayXXd psy = -uxy * wy - (1.0 + ux) * wyy + uyy * wx + uy * wxy;
    const Eigen::ArrayXXd chx =
        uxx + vxy + uxx * vy + ux * vxy - uxy * vx - uy * vxx;
    const Eigen::ArrayXXd chy =
        uxy + vyy + uxy * vy + ux * vyy - uyy * vx - uy * vxy;

    return {(1.0 + ux) * thx + vx * psx + wx * chx,
            uy * thy + (1.0 + vy) * psy + wy * chy,
            (1.0 + ux) * thy + (1.0 + vy) * psx + uy * thx + vx * psy + wx * chy +
                wy * chx};
}

Eigen::ArrayXXd gaussian_curvature_diagnostic(const Profile2& w) {
    return w(2, 0) * w(0, 2) - w(1, 1).square();
}

}  // namespace inext
