#include "inext/residuals.hpp"

#include <cmath>

#include "inext/errors.hpp"
#include "inext/kinematics.hpp"

namespace inext {

ScalarNorms field_norms(const Grid1& g, const Eigen::ArrayXd& f) {
    ScalarNorms n;
    n.sup = f.abs().maxCoeff();
    n.l2 = std::sqrt(g.integrate(f.square()));
    return n;
}

ScalarNorms field_norms(const Grid2& g, const Eigen::ArrayXXd& f) {
    ScalarNorms n;
    n.sup = f.abs().maxCoeff();
    n.l2 = std::sqrt(g.integrate(f.square()));
    return n;
}

// ---------------------------------------------------------------- beam ----

BeamResidualReport interior_residual(const BeamFieldState& s,
                                     const MultiplierField& mult,
                                     const ModelSpec& m) {
    if (m.variant != Variant::BeamEta2 && m.variant != Variant::BeamEta4)
        throw BadParameter("beam residual requested for a plate model");
    if (!mult.lambda) throw BadParameter("beam residual: multiplier field missing");
    if (!s.wtt || !s.utt) throw BadParameter("beam residual: accelerations missing");
    const double D = m.stiffness();
    const Profile1& lam = *mult.lambda;
    const Eigen::ArrayXd &wx = s.w(1), &wxx = s.w(2), &wxxx = s.w(3), &wxxxx = s.w(4);

    BeamResidualReport r;
    r.u_eq = (*s.utt)(0) + lam(1);

    // Stiffness terms of -D d/dx(coef * w_xx^2) + D d^2/dx^2(w_xx * factor)
    // expanded by the product rule.
    Eigen::ArrayXd stiff;
    if (m.variant == Variant::BeamEta2) {
        stiff = D * (wxxxx * (1.0 + wx.square()) + 4.0 * wx * wxx * wxxx +
                     wxx.cube());
    } else {
        stiff = D * (wxxxx * (1.0 + wx.square() + wx.square().square()) +
                     4.0 * wx * wxx * wxxx + 8.0 * wx.cube() * wxx * wxxx +
                     wxx.cube() + 6.0 * wx.square() * wxx.cube());
    }
    r.w_eq = (*s.wtt)(0) + stiff + lam(1) * wx + lam(0) * wxx;

    const ConstraintFlavor flavor = (m.variant == Variant::BeamEta2)
                                        ? ConstraintFlavor::Eta2Beam
                                        : ConstraintFlavor::Eta4Beam;
    r.constraint = constraint_residual(s, flavor);

    r.u_norms = field_norms(s.grid, r.u_eq);
    r.w_norms = field_norms(s.grid, r.w_eq);
    r.constraint_norms = field_norms(s.grid, r.constraint);
    return r;
}

BeamBoundaryReport boundary_residual(const BeamFieldState& s,
                                     const MultiplierField& mult) {
    const Grid1& g = s.grid;
    const Eigen::VectorXd rl = g.interp_row(g.length);
    const Eigen::VectorXd r0 = g.interp_row(0.0);
    auto at_end = [&](const Eigen::ArrayXd& f) { return rl.dot(f.matrix()); };

    BeamBoundaryReport b;
    const double wx = at_end(s.w(1)), wxx = at_end(s.w(2)), wxxx = at_end(s.w(3));
    b.moment = (1.0 + wx * wx) * wxx;
    b.shear = (1.0 + wx * wx) * wxxx + wx * wxx * wxx;
    b.moment_linear = wxx;
    b.shear_linear = wxxx;
    b.clamped_w = r0.dot(s.w(0).matrix());
    b.clamped_wx = r0.dot(s.w(1).matrix());
    if (mult.lambda) b.lambda_end = at_end((*mult.lambda)(0));
    return b;
}

// --------------------------------------------------------------- plate ----

namespace {

// D(Delta[(1 + |grad w|^2) Delta w] - div(|Delta w|^2 grad w)), expanded by
// the product rule on the derivative table.
Eigen::ArrayXXd stiffness_operator(const Profile2& w, double D) {
    const Eigen::ArrayXXd &wx = w(1, 0), &wy = w(0, 1);
    const Eigen::ArrayXXd &wxx = w(2, 0), &wyy = w(0, 2), &wxy = w(1, 1);
    const Eigen::ArrayXXd &wxxx = w(3, 0), &wxxy = w(2, 1), &wxyy = w(1, 2),
                          &wyyy = w(0, 3);
    const Eigen::ArrayXXd &wxxxx = w(4, 0), &wxxyy = w(2, 2), &wyyyy = w(0, 4);

    const Eigen::ArrayXXd s2 = 1.0 + wx.square() + wy.square();
    const Eigen::ArrayXXd s2x = 2.0 * (wx * wxx + wy * wxy);
    const Eigen::ArrayXXd s2y = 2.0 * (wx * wxy + wy * wyy);
    const Eigen::ArrayXXd s2xx =
        2.0 * (wxx.square() + wx * wxxx + wxy.square() + wy * wxxy);
    const Eigen::ArrayXXd s2yy =
        2.0 * (wxy.square() + wx * wxyy + wyy.square() + wy * wyyy);

    const Eigen::ArrayXXd T = wxx + wyy;
    const Eigen::ArrayXXd Tx = wxxx + wxyy;
    const Eigen::ArrayXXd Ty = wxxy + wyyy;
    const Eigen::ArrayXXd Txx = wxxxx + wxxyy;
    const Eigen::ArrayXXd Tyy = wxxyy + wyyyy;

    const Eigen::ArrayXXd lap =
        (s2xx + s2yy) * T + 2.0 * (s2x * Tx + s2y * Ty) + s2 * (Txx + Tyy);
    const Eigen::ArrayXXd div = 2.0 * T * (Tx * wx + Ty * wy) + T * T * T;
    return D * (lap - div);
}

// d/dx(l w_x) etc. from supplied multiplier derivative slots.
Eigen::ArrayXXd div_x(const Profile2& l, const Profile2& w) {
    return l(1, 0) * w(1, 0) + l(0, 0) * w(2, 0);
}
Eigen::ArrayXXd div_y(const Profile2& l, const Profile2& w) {
    return l(0, 1) * w(0, 1) + l(0, 0) * w(0, 2);
}

// In-plane equation bodies of the shear-strain model (everything except the
// multiplier gradient), reused by the multiplier boundary formulas.
Eigen::ArrayXXd shear_u_body(const PlateFieldState& s, double D, double nu,
                             double h) {
    const Profile2 &u = s.u, &w = s.w;
    const Eigen::ArrayXXd gyy =
        w(1, 2) * (w(0, 2) + nu * w(2, 0)) +
        2.0 * w(1, 1) * (w(0, 3) + nu * w(2, 1)) +
        w(1, 0) * (w(0, 4) + nu * w(2, 2));
    return (*s.utt)(0, 0) -
           (12.0 * D / (h * h)) * (1.0 - nu) * (u(0, 2) + w(1, 0) * w(0, 2)) -
           2.0 * D * gyy;
}

Eigen::ArrayXXd shear_v_body(const PlateFieldState& s, double D, double nu,
                             double h) {
    const Profile2 &v = s.v, &w = s.w;
    const Eigen::ArrayXXd gxx =
        w(2, 1) * (w(2, 0) + nu * w(0, 2)) +
        2.0 * w(1, 1) * (w(3, 0) + nu * w(1, 2)) +
        w(0, 1) * (w(4, 0) + nu * w(2, 2));
    return (*s.vtt)(0, 0) -
           (12.0 * D / (h * h)) * (1.0 - nu) * (v(2, 0) + w(2, 0) * w(0, 1)) -
           2.0 * D * gxx;
}

}  // namespace

PlateResidualReport interior_residual(const PlateFieldState& s,
                                      const MultiplierField& mult,
                                      const ModelSpec& m) {
    if (!s.utt || !s.vtt || !s.wtt)
        throw BadParameter("plate residual: accelerations missing");
    if (!mult.l1 || !mult.l2)
        throw BadParameter("plate residual: multiplier fields missing");
    if (m.variant == Variant::PlateI && !mult.l3)
        throw BadParameter("plate residual: shear multiplier missing");
    const double D = m.stiffness();
    const double nu = m.plate().poisson;
    const double h = m.plate().thickness;
    const Profile2& w = s.w;
    const Profile2 &l1 = *mult.l1, &l2 = *mult.l2;

    PlateResidualReport r;
    switch (m.variant) {
        case Variant::PlateI: {
            const Profile2& l3 = *mult.l3;
            r.u_eq = (*s.utt)(0, 0) + l1(1, 0) + l3(0, 1);
            r.v_eq = (*s.vtt)(0, 0) + l2(0, 1) + l3(1, 0);
            r.w_eq = (*s.wtt)(0, 0) + stiffness_operator(w, D) + div_x(l1, w) +
                     div_y(l2, w) +
                     (l3(1, 0) * w(0, 1) + l3(0, 1) * w(1, 0) +
                      2.0 * l3(0, 0) * w(1, 1));
            break;
        }
        case Variant::PlateII: {
            r.u_eq = (*s.utt)(0, 0) + l1(1, 0);
            r.v_eq = (*s.vtt)(0, 0) + l2(0, 1);
            r.w_eq = (*s.wtt)(0, 0) + stiffness_operator(w, D) + div_x(l1, w) +
                     div_y(l2, w);
            break;
        }
        case Variant::PlateIII: {
            r.u_eq = shear_u_body(s, D, nu, h) + l1(1, 0);
            r.v_eq = shear_v_body(s, D, nu, h) + l2(0, 1);

            const Eigen::ArrayXXd &wx = w(1, 0), &wy = w(0, 1);
            const Eigen::ArrayXXd &wxx = w(2, 0), &wyy = w(0, 2), &wxy = w(1, 1);
            const Eigen::ArrayXXd &wxxx = w(3, 0), &wxxy = w(2, 1),
                                  &wxyy = w(1, 2), &wyyy = w(0, 3);
            const Eigen::ArrayXXd wx2 = wx.square(), wy2 = wy.square();
            const Eigen::ArrayXXd bracket =
                w(4, 0) * (1.0 + wx2 - wy2) + w(0, 4) * (1.0 - wx2 + wy2) +
                2.0 * w(2, 2) * (1.0 + wx2 + wy2) - nu * w(2, 2) * (wx2 + wy2) -
                wx * s.u(0, 4) - wy * s.v(4, 0) + 4.0 * wx * wxx * wxxx +
                4.0 * wy * wyy * wyyy - wx * wyy * wxyy - wy * wxx * wxxy +
                (4.0 - 2.0 * nu) * wx * wxy * wxxy +
                (4.0 - 2.0 * nu) * wy * wxy * wxyy - 4.0 * wx * wxy * wyyy -
                4.0 * wy * wxy * wxxx - 2.0 * wxy * s.v(3, 0) -
                2.0 * wxy * s.u(0, 3) + 4.0 * (1.0 - nu) * wx * wxx * wxyy +
                4.0 * (1.0 - nu) * wy * wyy * wxxy + wxx.cube() + wyy.cube() +
                wxx * wyy.square() + wyy * wxx.square() -
                (1.0 + 3.0 * nu) * wxx * wxy.square() -
                (1.0 + 3.0 * nu) * wyy * wxy.square();
            const Eigen::ArrayXXd membrane =
                (6.0 * D / (h * h)) * (1.0 - nu) *
                (wxx * wy2 + 2.0 * wx * wy * wxy + 2.0 * s.u(0, 1) * wxy +
                 s.v(2, 0) * wy + 2.0 * s.v(1, 0) * wxy + wx2 * wyy +
                 s.u(0, 2) * wx);
            r.w_eq = (*s.wtt)(0, 0) + div_x(l1, w) + div_y(l2, w) - D * bracket +
                     membrane;
            break;
        }
        default:
            throw BadParameter("plate residual requested for a beam model");
    }
    r.u_norms = field_norms(s.grid, r.u_eq);
    r.v_norms = field_norms(s.grid, r.v_eq);
    r.w_norms = field_norms(s.grid, r.w_eq);
    return r;
}

Eigen::ArrayXXd closed_w_residual(const PlateFieldState& s, const ModelSpec& m) {
    if (m.variant != Variant::PlateII)
        throw BadParameter("closed w-equation exists for the two-constraint model");
    if (!s.utt || !s.vtt || !s.wtt)
        throw BadParameter("closed residual: accelerations missing");
    const Profile2& w = s.w;
    const Eigen::ArrayXXd& utt = (*s.utt)(0, 0);
    const Eigen::ArrayXXd& vtt = (*s.vtt)(0, 0);
    const Eigen::ArrayXXd i1 = Grid2::along_x(s.grid.gx.suffix, utt);
    const Eigen::ArrayXXd i2 = Grid2::along_y(s.grid.gy.prefix, vtt);
    return (*s.wtt)(0, 0) + stiffness_operator(w, m.stiffness()) +
           (w(2, 0) * i1 - w(1, 0) * utt) - (w(0, 2) * i2 + w(0, 1) * vtt);
}

Eigen::ArrayXXd plate_variational_w_force(const PlateFieldState& s,
                                          const ModelSpec& m) {
    const double D = m.stiffness();
    const double nu = m.plate().poisson;
    const Profile2& w = s.w;
    const Eigen::ArrayXXd &wx = w(1, 0), &wy = w(0, 1);
    const Eigen::ArrayXXd &wxx = w(2, 0), &wyy = w(0, 2), &wxy = w(1, 1);
    const Eigen::ArrayXXd &wxxx = w(3, 0), &wxxy = w(2, 1), &wxyy = w(1, 2),
                          &wyyy = w(0, 3);

    const Eigen::ArrayXXd s2 = 1.0 + wx.square() + wy.square();
    const Eigen::ArrayXXd s2x = 2.0 * (wx * wxx + wy * wxy);
    const Eigen::ArrayXXd s2y = 2.0 * (wx * wxy + wy * wyy);
    const Eigen::ArrayXXd s2xx =
        2.0 * (wxx.square() + wx * wxxx + wxy.square() + wy * wxxy);
    const Eigen::ArrayXXd s2yy =
        2.0 * (wxy.square() + wx * wxyy + wyy.square() + wy * wyyy);
    const Eigen::ArrayXXd s2xy =
        2.0 * (wxy * wxx + wx * wxxy + wyy * wxy + wy * wxyy);

    const Eigen::ArrayXXd A = wxx + nu * wyy, B = wyy + nu * wxx;
    const Eigen::ArrayXXd Ax = wxxx + nu * wxyy, Axx = w(4, 0) + nu * w(2, 2);
    const Eigen::ArrayXXd By = wyyy + nu * wxxy, Byy = w(0, 4) + nu * w(2, 2);

    const Eigen::ArrayXXd Q = wxx.square() + wyy.square() + 2.0 * nu * wxx * wyy +
                              2.0 * (1.0 - nu) * wxy.square();
    const Eigen::ArrayXXd Qx = 2.0 * wxx * wxxx + 2.0 * wyy * wxyy +
                               2.0 * nu * (wxxx * wyy + wxx * wxyy) +
                               4.0 * (1.0 - nu) * wxy * wxxy;
    const Eigen::ArrayXXd Qy = 2.0 * wxx * wxxy + 2.0 * wyy * wyyy +
                               2.0 * nu * (wxxy * wyy + wxx * wyyy) +
                               4.0 * (1.0 - nu) * wxy * wxyy;

    return D * (s2xx * A + 2.0 * s2x * Ax + s2 * Axx + s2yy * B + 2.0 * s2y * By +
                s2 * Byy +
                2.0 * (1.0 - nu) *
                    (s2xy * wxy + s2y * wxxy + s2x * wxyy + s2 * w(2, 2)) -
                (wxx * Q + wx * Qx) - (wyy * Q + wy * Qy));
}

// ------------------------------------------------------------ boundary ----

const EdgeConditionTrace& PlateBoundaryReport::find(const std::string& edge,
                                                    const std::string& name) const {
    for (const auto& c : conditions)
        if (c.edge == edge && c.name == name) return c;
    throw BadParameter("boundary report: no trace '" + name + "' on edge " + edge);
}

namespace {

struct EdgeSampler {
    Eigen::VectorXd row_e, row_w, row_n, row_s;
    const Grid2* g;

    explicit EdgeSampler(const Grid2& grid) : g(&grid) {
        row_e = grid.gx.interp_row(grid.gx.length);
        row_w = grid.gx.interp_row(0.0);
        row_n = grid.gy.interp_row(grid.gy.length);
        row_s = grid.gy.interp_row(0.0);
    }
    // Traces along the east/west edges (functions of y) and the north/south
    // edges (functions of x).
    Eigen::ArrayXd east(const Eigen::ArrayXXd& f) const {
        return (row_e.transpose() * f.matrix()).transpose().array();
    }
    Eigen::ArrayXd west(const Eigen::ArrayXXd& f) const {
        return (row_w.transpose() * f.matrix()).transpose().array();
    }
    Eigen::ArrayXd north(const Eigen::ArrayXXd& f) const {
        return (f.matrix() * row_n).array();
    }
    Eigen::ArrayXd south(const Eigen::ArrayXXd& f) const {
        return (f.matrix() * row_s).array();
    }
};

void push(PlateBoundaryReport& r, const Grid1& tangent, const std::string& edge,
          const std::string& name, Eigen::ArrayXd values) {
    EdgeConditionTrace t;
    t.edge = edge;
    t.name = name;
    t.norms = field_norms(tangent, values);
    t.values = std::move(values);
    r.conditions.push_back(std::move(t));
}

}  // namespace

PlateBoundaryReport boundary_residual(const PlateFieldState& s, const ModelSpec& m) {
    const double nu = m.plate().poisson;
    const Profile2& w = s.w;
    const EdgeSampler e(s.grid);
    const Grid1 &gx = s.grid.gx, &gy = s.grid.gy;
    PlateBoundaryReport r;

    // Linear free-plate reference conditions on every free edge.
    push(r, gy, "east", "second_order_lin", e.east(w(2, 0) + nu * w(0, 2)));
    push(r, gy, "east", "third_order_lin",
         e.east(w(3, 0) + (2.0 - nu) * w(1, 2)));
    for (const char* edge : {"north", "south"}) {
        const bool north = edge[0] == 'n';
        auto tr = [&](const Eigen::ArrayXXd& f) {
            return north ? e.north(f) : e.south(f);
        };
        push(r, gx, edge, "second_order_lin", tr(w(0, 2) + nu * w(2, 0)));
        push(r, gx, edge, "third_order_lin", tr(w(0, 3) + (2.0 - nu) * w(2, 1)));
    }
    push(r, gy, "west", "clamped_w", e.west(w(0, 0)));
    push(r, gy, "west", "clamped_wx", e.west(w(1, 0)));

    if (m.variant == Variant::PlateI || m.variant == Variant::PlateII) {
        const Eigen::ArrayXXd s2 = 1.0 + w(1, 0).square() + w(0, 1).square();
        push(r, gy, "east", "second_order", e.east(w(2, 0) + nu * w(0, 2)));
        push(r, gy, "east", "third_order",
             e.east((1.0 - nu) * ((1.0 + nu) * w(1, 0) * w(0, 2).square() -
                                  2.0 * w(1, 0) * w(1, 1).square() -
                                  4.0 * w(0, 1) * w(0, 2) * w(1, 1)) -
                    s2 * (w(3, 0) + (2.0 - nu) * w(1, 2))));
        const Eigen::ArrayXXd ns_second = w(0, 2) + nu * w(2, 0);
        const Eigen::ArrayXXd ns_third =
            (1.0 - nu) * ((1.0 + nu) * w(0, 1) * w(2, 0).square() -
                          2.0 * w(0, 1) * w(1, 1).square() -
                          4.0 * w(1, 0) * w(2, 0) * w(1, 1)) -
            s2 * (w(0, 3) + (2.0 - nu) * w(2, 1));
        push(r, gx, "south", "second_order", e.south(ns_second));
        push(r, gx, "south", "third_order", e.south(ns_third));
        push(r, gx, "north", "second_order", e.north(ns_second));
        push(r, gx, "north", "third_order", e.north(ns_third));
        return r;
    }

    if (m.variant != Variant::PlateIII)
        throw BadParameter("plate boundary residual requested for a beam model");

    const double h = m.plate().thickness;
    const double c = h * h / 6.0;
    const Eigen::ArrayXXd &wx = w(1, 0), &wy = w(0, 1);
    const Eigen::ArrayXXd &wxx = w(2, 0), &wyy = w(0, 2), &wxy = w(1, 1);
    const Eigen::ArrayXXd &wxxx = w(3, 0), &wxxy = w(2, 1), &wxyy = w(1, 2),
                          &wyyy = w(0, 3);
    const Eigen::ArrayXXd &uy = s.u(0, 1), &uyy = s.u(0, 2), &uyyy = s.u(0, 3);
    const Eigen::ArrayXXd &vx = s.v(1, 0), &vxx = s.v(2, 0), &vxxx = s.v(3, 0);
    const Eigen::ArrayXXd wx2 = wx.square(), wy2 = wy.square();
    const Eigen::ArrayXXd s2 = 1.0 + wx2 + wy2;

    push(r, gy, "east", "second_order", e.east(wxx + nu * wyy));
    push(r, gy, "east", "second_order_b",
         e.east(wxx * (1.0 + wx2 - wy2) - wy * vxx + nu * wyy - nu * wx * uyy));
    push(r, gy, "east", "third_order",
         e.east(c * wy * (wxxx + nu * wxyy) +
                (1.0 - nu) * (vx + wx * wy + uy)));
    push(r, gy, "east", "third_order_b",
         e.east(c * (-wx * wxx.square() - wx * wyy.square() - wyy * uyy -
                     (2.0 - nu) * wx * wxy.square() - wxxx * (1.0 + wx2 - wy2) +
                     2.0 * wy * wxx * wxy + wxy * vxx + wy * vxxx - nu * wxyy -
                     nu * wx2 * wxyy -
                     2.0 * (1.0 - nu) * (wxyy * s2 + 2.0 * wy * wxy * wyy)) +
                (1.0 - nu) * (wx * wy2 + uy * wy + vx * wy)));

    const Eigen::ArrayXXd ns_second = wyy + nu * wxx;
    const Eigen::ArrayXXd ns_second_b =
        wyy * (1.0 - wx2 + wy2) - wx * uyy + nu * wxx - nu * wy * vxx;
    const Eigen::ArrayXXd ns_third =
        c * wx * (wyyy + nu * wxxy) + (1.0 - nu) * (uy + wx * wy + vx);
    const Eigen::ArrayXXd ns_third_b =
        c * (-wy * wyy.square() - wy * wxx.square() - wxx * vxx -
             (2.0 - nu) * wy * wxy.square() - wyyy * (1.0 - wx2 + wy2) +
             2.0 * wx * wyy * wxy + wxy * uyy + wx * uyyy - nu * wxxy -
             nu * wy2 * wxyy -
             2.0 * (1.0 - nu) * (wxxy * s2 + 2.0 * wx * wxy * wxx)) +
        (1.0 - nu) * (wx2 * wy + uy * wx + vx * wx);
    for (const char* edge : {"south", "north"}) {
        const bool north = edge[0] == 'n';
        auto tr = [&](const Eigen::ArrayXXd& f) {
            return north ? e.north(f) : e.south(f);
        };
        push(r, gx, edge, "second_order", tr(ns_second));
        push(r, gx, edge, "second_order_b", tr(ns_second_b));
        push(r, gx, edge, "third_order", tr(ns_third));
        push(r, gx, edge, "third_order_b", tr(ns_third_b));
    }
    push(r, gy, "west", "clamped_u", e.west(s.u(0, 0)));
    push(r, gy, "west", "clamped_v", e.west(s.v(0, 0)));
    return r;
}

PlateBoundaryReport multiplier_boundary_values(const PlateFieldState& s,
                                               const MultiplierField& mult,
                                               const ModelSpec& m) {
    if (!mult.l1 || !mult.l2)
        throw BadParameter("multiplier boundary values: fields missing");
    if (!s.utt || !s.vtt)
        throw BadParameter("multiplier boundary values: accelerations missing");
    const EdgeSampler e(s.grid);
    const Grid1 &gx = s.grid.gx, &gy = s.grid.gy;
    const Profile2 &l1 = *mult.l1, &l2 = *mult.l2;
    const Eigen::ArrayXXd& utt = (*s.utt)(0, 0);
    const Eigen::ArrayXXd& vtt = (*s.vtt)(0, 0);
    PlateBoundaryReport r;

    switch (m.variant) {
        case Variant::PlateI: {
            if (!mult.l3)
                throw BadParameter("multiplier boundary values: shear field missing");
            const Profile2& l3 = *mult.l3;
            // Homogeneous free-edge conditions, returned as the field trace.
            push(r, gy, "east", "lambda1", e.east(l1(0, 0)));
            push(r, gy, "east", "lambda3", e.east(l3(0, 0)));
            push(r, gx, "south", "lambda2", e.south(l2(0, 0)));
            push(r, gx, "south", "lambda3", e.south(l3(0, 0)));
            push(r, gx, "north", "lambda2", e.north(l2(0, 0)));
            push(r, gx, "north", "lambda3", e.north(l3(0, 0)));

            // Integral formulas, returned as trace minus formula.
            const Eigen::ArrayXXd bu = utt + l3(0, 1);
            const Eigen::ArrayXXd bv = vtt + l3(1, 0);
            const Eigen::ArrayXXd sfx_bu = Grid2::along_x(gx.suffix, bu);
            const Eigen::ArrayXXd sfy_bv = Grid2::along_y(gy.suffix, bv);
            // lambda1 on the west edge: the full x-integral, a function of y.
            const Eigen::ArrayXd l1w =
                (gx.w.transpose() * bu.matrix()).transpose().array();
            push(r, gy, "west", "lambda1", e.west(l1(0, 0)) - l1w);
            push(r, gy, "west", "lambda2", e.west(l2(0, 0)) - e.west(sfy_bv));
            const Eigen::ArrayXd l3w =
                (gx.w.transpose() * (vtt + l2(0, 1)).matrix()).transpose().array();
            push(r, gy, "west", "lambda3", e.west(l3(0, 0)) - l3w);
            push(r, gx, "south", "lambda1", e.south(l1(0, 0)) - e.south(sfx_bu));
            push(r, gx, "north", "lambda1", e.north(l1(0, 0)) - e.north(sfx_bu));
            push(r, gy, "east", "lambda2", e.east(l2(0, 0)) - e.east(sfy_bv));
            return r;
        }
        case Variant::PlateII: {
            push(r, gy, "east", "lambda1", e.east(l1(0, 0)));
            push(r, gx, "south", "lambda2", e.south(l2(0, 0)));
            push(r, gx, "north", "lambda2", e.north(l2(0, 0)));

            const Eigen::ArrayXXd sfx_u = Grid2::along_x(gx.suffix, utt);
            const Eigen::ArrayXXd sfy_v = Grid2::along_y(gy.suffix, vtt);
            // West-edge lambda1 as printed: the y-integral of u_tt at x = 0,
            // constant along the edge.
            const double l1w = gy.integrate(e.west(utt));
            push(r, gy, "west", "lambda1", e.west(l1(0, 0)) - l1w);
            push(r, gy, "west", "lambda2", e.west(l2(0, 0)) - e.west(sfy_v));
            push(r, gy, "east", "lambda2", e.east(l2(0, 0)) - e.east(sfy_v));
            push(r, gx, "south", "lambda1", e.south(l1(0, 0)) - e.south(sfx_u));
            push(r, gx, "north", "lambda1", e.north(l1(0, 0)) - e.north(sfx_u));
            return r;
        }
        case Variant::PlateIII: {
            const double D = m.stiffness();
            const double nu = m.plate().poisson;
            const double h = m.plate().thickness;
            push(r, gy, "east", "lambda1", e.east(l1(0, 0)));
            push(r, gx, "south", "lambda2", e.south(l2(0, 0)));
            push(r, gx, "north", "lambda2", e.north(l2(0, 0)));

            const Eigen::ArrayXXd bu = shear_u_body(s, D, nu, h);
            const Eigen::ArrayXXd bv = shear_v_body(s, D, nu, h);
            const Eigen::ArrayXXd sfx_bu = Grid2::along_x(gx.suffix, bu);
            const Eigen::ArrayXXd sfy_bv = Grid2::along_y(gy.suffix, bv);
            const double l1w = gy.integrate(e.west(bu));
            push(r, gy, "west", "lambda1", e.west(l1(0, 0)) - l1w);
            push(r, gx, "south", "lambda1", e.south(l1(0, 0)) - e.south(sfx_bu));
            push(r, gx, "north", "lambda1", e.north(l1(0, 0)) - e.north(sfx_bu));
            push(r, gy, "west", "lambda2", e.west(l2(0, 0)) - e.west(sfy_bv));
            push(r, gy, "east", "lambda2", e.east(l2(0, 0)) - e.east(sfy_bv));
            return r;
        }
        default:
            throw BadParameter("multiplier boundary values: beam model");
    }
}

}  // namespace inext
