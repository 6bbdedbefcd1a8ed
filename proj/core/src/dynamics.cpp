#include "inext/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "inext/errors.hpp"
#include "inext/kinematics.hpp"
#include "inext/residuals.hpp"

namespace inext {

namespace {

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int j = 0; j < a.cols(); ++j)
        for (int i = 0; i < a.rows(); ++i)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Eigen::MatrixXd weighted_gram(const Eigen::MatrixXd& test, const Eigen::VectorXd& w,
                              const Eigen::MatrixXd& trial) {
    return test.transpose() * w.asDiagonal() * trial;
}

// Projection of a nodal field onto a tensor test basis, vectorized
// column-major (x index fastest), matching Eigen's default field storage.
Eigen::VectorXd tensor_project(const Eigen::MatrixXd& bx, const Grid1& gx,
                               const Eigen::MatrixXd& by, const Grid1& gy,
                               const Eigen::ArrayXXd& f) {
    Eigen::MatrixXd m = bx.transpose() * gx.w.asDiagonal() * f.matrix() *
                        gy.w.asDiagonal() * by;
    return Eigen::Map<Eigen::VectorXd>(m.data(), m.size());
}

Eigen::ArrayXXd outer_mode(const Eigen::MatrixXd& bx, int k, const Eigen::MatrixXd& by,
                           int l) {
    return (bx.col(k) * by.col(l).transpose()).array();
}

// Remove the y-average from every x-line (the rigid part of v that the
// two-constraint closure pins down).
Eigen::ArrayXXd drop_y_mean(const Grid2& g, const Eigen::ArrayXXd& f) {
    Eigen::VectorXd mean = f.matrix() * g.gy.w / g.gy.length;
    Eigen::ArrayXXd out = f;
    out.matrix().colwise() -= mean;
    return out;
}

}  // namespace

// ------------------------------------------------------------- factories ----

SemiDiscreteSystem SemiDiscreteSystem::beam(const ModelSpec& m, int n_w, int n_u,
                                            ConstraintMode mode, int quad_pts) {
    if (!inext::is_beam(m.variant))
        throw BadParameter("beam system needs a beam model");
    if (n_w < 1 || n_u < 1) throw BadParameter("mode counts must be positive");
    SemiDiscreteSystem s;
    s.model_ = m;
    s.mode_ = mode;
    s.beam_ = true;
    const double L = m.beam().length;
    const int qp = quad_pts > 0 ? quad_pts : std::max(4 * std::max(n_w, n_u), 8);
    s.bw_ = ModeBasis::clamped_free(n_w, L, qp);
    s.bu_ = ModeBasis::poly_clamped(n_u, L, qp);
    s.nw_ = n_w;
    s.ni_ = n_u;
    if (mode == ConstraintMode::Multiplier) {
        s.dim_ = n_w + n_u;
        s.m_ = n_u;
        const Grid1& g = s.bw_.grid();
        s.bu0w_ = s.bu_.samples(0).transpose() * g.w.asDiagonal();
        s.gu_ = s.bu0w_ * s.bu_.samples(1);
    } else {
        s.dim_ = n_w;
        s.m_ = 0;
    }
    return s;
}

SemiDiscreteSystem SemiDiscreteSystem::plate(const ModelSpec& m, int n_wx, int n_wy,
                                             int n_ix, int n_iy, ConstraintMode mode,
                                             int quad_x, int quad_y) {
    if (m.variant == Variant::PlateIII)
        throw UnsupportedMode("shear-strain plate model supports statics only");
    if (m.variant == Variant::PlateI && mode == ConstraintMode::Reduced)
        throw UnsupportedMode(
            "three-constraint plate model cannot eliminate the in-plane fields");
    return build_plate(m, n_wx, n_wy, n_ix, n_iy, mode, quad_x, quad_y);
}

SemiDiscreteSystem SemiDiscreteSystem::plate_statics(const ModelSpec& m, int n_wx,
                                                     int n_wy, int n_ix, int n_iy,
                                                     int quad_x, int quad_y) {
    return build_plate(m, n_wx, n_wy, n_ix, n_iy, ConstraintMode::Multiplier, quad_x,
                       quad_y);
}

SemiDiscreteSystem SemiDiscreteSystem::build_plate(const ModelSpec& m, int n_wx,
                                                   int n_wy, int n_ix, int n_iy,
                                                   ConstraintMode mode, int quad_x,
                                                   int quad_y) {
    if (!inext::is_plate(m.variant))
        throw BadParameter("plate system needs a plate model");
    if (n_wx < 1 || n_wy < 1 || n_ix < 1 || n_iy < 1)
        throw BadParameter("mode counts must be positive");
    SemiDiscreteSystem s;
    s.model_ = m;
    s.mode_ = mode;
    s.beam_ = false;
    const PlateParams& p = m.plate();
    s.pb_ = PlateBasisSet::make(n_wx, n_wy, n_ix, n_iy, p.span_x, p.span_y, quad_x,
                                quad_y);
    s.nw_ = n_wx * n_wy;
    s.ni_ = n_ix * n_iy;
    if (mode == ConstraintMode::Multiplier) {
        s.dim_ = s.nw_ + 2 * s.ni_;
        const Grid1& gx = s.pb_.grid.gx;
        const Grid1& gy = s.pb_.grid.gy;
        const int chord_rows = n_ix * (n_iy - 1);
        s.m_ = s.ni_ + chord_rows;
        if (m.variant == Variant::PlateI) s.m_ += s.ni_;
        if (m.variant == Variant::PlateII) s.m_ += n_ix;  // y-mean closure of v
        s.g1u_ = kron(weighted_gram(s.pb_.uy.samples(0), gy.w, s.pb_.uy.samples(0)),
                      weighted_gram(s.pb_.ux.samples(0), gx.w, s.pb_.ux.samples(1)));
        s.tyv_ = s.pb_.vy.samples(1).rightCols(n_iy - 1);
        s.g2v_ = kron(weighted_gram(s.tyv_, gy.w, s.pb_.vy.samples(1)),
                      weighted_gram(s.pb_.vx.samples(0), gx.w, s.pb_.vx.samples(0)));
        if (m.variant == Variant::PlateII) {
            Eigen::MatrixXd my = gy.w.transpose() * s.pb_.vy.samples(0);
            s.gcl_ = kron(my, weighted_gram(s.pb_.vx.samples(0), gx.w,
                                            s.pb_.vx.samples(0)));
        }
        if (m.variant == Variant::PlateI) {
            s.g3u_ =
                kron(weighted_gram(s.pb_.uy.samples(0), gy.w, s.pb_.uy.samples(1)),
                     weighted_gram(s.pb_.ux.samples(0), gx.w, s.pb_.ux.samples(0)));
            s.g3v_ =
                kron(weighted_gram(s.pb_.vy.samples(0), gy.w, s.pb_.vy.samples(0)),
                     weighted_gram(s.pb_.vx.samples(0), gx.w, s.pb_.vx.samples(1)));
        }
    } else {
        s.dim_ = s.nw_;
        s.m_ = 0;
    }
    return s;
}

const ModeBasis& SemiDiscreteSystem::beam_w_basis() const {
    if (!beam_) throw BadParameter("not a beam system");
    return bw_;
}
const ModeBasis& SemiDiscreteSystem::beam_u_basis() const {
    if (!beam_) throw BadParameter("not a beam system");
    return bu_;
}
const PlateBasisSet& SemiDiscreteSystem::plate_bases() const {
    if (beam_) throw BadParameter("not a plate system");
    return pb_;
}

// ---------------------------------------------------------- beam helpers ----

Eigen::ArrayXd SemiDiscreteSystem::beam_gprime(const Eigen::ArrayXd& wx) const {
    if (model_.variant == Variant::BeamEta4) return wx + 0.5 * wx.cube();
    return wx;
}

Eigen::ArrayXd SemiDiscreteSystem::beam_gc(const Eigen::ArrayXd& wx) const {
    Eigen::ArrayXd s = 0.5 * wx.square();
    if (model_.variant == Variant::BeamEta4) s += 0.125 * wx.square().square();
    return s;
}

// d(u recovered)/d(q_w) applied to rates: udot = J(q) qdot.
Eigen::MatrixXd SemiDiscreteSystem::beam_inplane_jacobian(
    const Eigen::VectorXd& qw) const {
    const Grid1& g = bw_.grid();
    Eigen::ArrayXd gp = beam_gprime((bw_.samples(1) * qw).array());
    return -(g.prefix * gp.matrix().asDiagonal() * bw_.samples(1));
}

// --------------------------------------------------------- plate helpers ----

void SemiDiscreteSystem::plate_inplane_jacobians(const Eigen::VectorXd& qw,
                                                 Eigen::MatrixXd& ju,
                                                 Eigen::MatrixXd& jv) const {
    const Grid2& g = pb_.grid;
    const int nwx = pb_.wx.size(), nwy = pb_.wy.size();
    const int nn = g.gx.size() * g.gy.size();
    Eigen::Map<const Eigen::MatrixXd> qmat(qw.data(), nwx, nwy);
    Eigen::ArrayXXd wx =
        (pb_.wx.samples(1) * qmat * pb_.wy.samples(0).transpose()).array();
    Eigen::ArrayXXd wy =
        (pb_.wx.samples(0) * qmat * pb_.wy.samples(1).transpose()).array();
    ju.resize(nn, nw_);
    jv.resize(nn, nw_);
    for (int l = 0; l < nwy; ++l)
        for (int k = 0; k < nwx; ++k) {
            Eigen::ArrayXXd du = -Grid2::along_x(
                g.gx.prefix, wx * outer_mode(pb_.wx.samples(1), k, pb_.wy.samples(0), l));
            Eigen::ArrayXXd dv = -drop_y_mean(
                g, Grid2::along_y(g.gy.prefix,
                                  wy * outer_mode(pb_.wx.samples(0), k,
                                                  pb_.wy.samples(1), l)));
            ju.col(k + nwx * l) = Eigen::Map<Eigen::VectorXd>(du.data(), nn);
            jv.col(k + nwx * l) = Eigen::Map<Eigen::VectorXd>(dv.data(), nn);
        }
}

// ---------------------------------------------------------------- forces ----

Eigen::VectorXd SemiDiscreteSystem::potential_gradient(const Eigen::VectorXd& q) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
    if (beam_) {
        out.head(nw_) = inext::potential_gradient(bw_, q.head(nw_), model_,
                                                  default_energy_variant(model_.variant));
        return out;
    }
    const int nwx = pb_.wx.size(), nwy = pb_.wy.size();
    const int nix = pb_.ux.size(), niy = pb_.uy.size();
    Eigen::Map<const Eigen::MatrixXd> qwm(q.data(), nwx, nwy);
    Eigen::MatrixXd qum = Eigen::MatrixXd::Zero(nix, niy);
    Eigen::MatrixXd qvm = Eigen::MatrixXd::Zero(nix, niy);
    if (mode_ == ConstraintMode::Multiplier) {
        qum = Eigen::Map<const Eigen::MatrixXd>(q.data() + nw_, nix, niy);
        qvm = Eigen::Map<const Eigen::MatrixXd>(q.data() + nw_ + ni_, nix, niy);
    }
    PlateGradient pg = inext::potential_gradient(pb_, qwm, qum, qvm, model_,
                                                 default_energy_variant(model_.variant));
    out.head(nw_) = Eigen::Map<const Eigen::VectorXd>(pg.dw.data(), nw_);
    if (mode_ == ConstraintMode::Multiplier && pg.du.size() > 0) {
        out.segment(nw_, ni_) = Eigen::Map<const Eigen::VectorXd>(pg.du.data(), ni_);
        out.segment(nw_ + ni_, ni_) =
            Eigen::Map<const Eigen::VectorXd>(pg.dv.data(), ni_);
    }
    return out;
}

// ----------------------------------------------------------- constraints ----

Eigen::VectorXd SemiDiscreteSystem::constraint(const Eigen::VectorXd& q) const {
    if (mode_ != ConstraintMode::Multiplier)
        return Eigen::VectorXd::Zero(0);
    if (beam_) {
        Eigen::ArrayXd wx = (bw_.samples(1) * q.head(nw_)).array();
        return gu_ * q.tail(ni_) + bu0w_ * beam_gc(wx).matrix();
    }
    const Grid2& g = pb_.grid;
    const int nwx = pb_.wx.size(), nwy = pb_.wy.size();
    Eigen::Map<const Eigen::MatrixXd> qwm(q.data(), nwx, nwy);
    Eigen::ArrayXXd wx =
        (pb_.wx.samples(1) * qwm * pb_.wy.samples(0).transpose()).array();
    Eigen::ArrayXXd wy =
        (pb_.wx.samples(0) * qwm * pb_.wy.samples(1).transpose()).array();
    const int chord = static_cast<int>(g2v_.rows());
    Eigen::VectorXd out(m_);
    out.head(ni_) = g1u_ * q.segment(nw_, ni_) +
                    tensor_project(pb_.ux.samples(0), g.gx, pb_.uy.samples(0), g.gy,
                                   0.5 * wx.square());
    out.segment(ni_, chord) =
        g2v_ * q.segment(nw_ + ni_, ni_) +
        tensor_project(pb_.vx.samples(0), g.gx, tyv_, g.gy, 0.5 * wy.square());
    if (model_.variant == Variant::PlateI)
        out.tail(ni_) = g3u_ * q.segment(nw_, ni_) + g3v_ * q.segment(nw_ + ni_, ni_) +
                        tensor_project(pb_.ux.samples(0), g.gx, pb_.uy.samples(0),
                                       g.gy, wx * wy);
    else if (model_.variant == Variant::PlateII)
        out.tail(gcl_.rows()) = gcl_ * q.segment(nw_ + ni_, ni_);
    return out;
}

Eigen::MatrixXd SemiDiscreteSystem::constraint_jacobian(const Eigen::VectorXd& q) const {
    if (mode_ != ConstraintMode::Multiplier)
        return Eigen::MatrixXd::Zero(0, dim_);
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(m_, dim_);
    if (beam_) {
        Eigen::ArrayXd wx = (bw_.samples(1) * q.head(nw_)).array();
        G.leftCols(nw_) =
            bu0w_ * beam_gprime(wx).matrix().asDiagonal() * bw_.samples(1);
        G.rightCols(ni_) = gu_;
        return G;
    }
    const Grid2& g = pb_.grid;
    const int nwx = pb_.wx.size(), nwy = pb_.wy.size();
    Eigen::Map<const Eigen::MatrixXd> qwm(q.data(), nwx, nwy);
    Eigen::ArrayXXd wx =
        (pb_.wx.samples(1) * qwm * pb_.wy.samples(0).transpose()).array();
    Eigen::ArrayXXd wy =
        (pb_.wx.samples(0) * qwm * pb_.wy.samples(1).transpose()).array();
    const int chord = static_cast<int>(g2v_.rows());
    for (int l = 0; l < nwy; ++l)
        for (int k = 0; k < nwx; ++k) {
            const int col = k + nwx * l;
            Eigen::ArrayXXd mx =
                outer_mode(pb_.wx.samples(1), k, pb_.wy.samples(0), l);
            Eigen::ArrayXXd my =
                outer_mode(pb_.wx.samples(0), k, pb_.wy.samples(1), l);
            G.block(0, col, ni_, 1) = tensor_project(
                pb_.ux.samples(0), g.gx, pb_.uy.samples(0), g.gy, wx * mx);
            G.block(ni_, col, chord, 1) =
                tensor_project(pb_.vx.samples(0), g.gx, tyv_, g.gy, wy * my);
            if (model_.variant == Variant::PlateI)
                G.block(ni_ + chord, col, ni_, 1) =
                    tensor_project(pb_.ux.samples(0), g.gx, pb_.uy.samples(0), g.gy,
                                   wy * mx + wx * my);
        }
    G.block(0, nw_, ni_, ni_) = g1u_;
    G.block(ni_, nw_ + ni_, chord, ni_) = g2v_;
    if (model_.variant == Variant::PlateI) {
        G.block(ni_ + chord, nw_, ni_, ni_) = g3u_;
        G.block(ni_ + chord, nw_ + ni_, ni_, ni_) = g3v_;
    } else if (model_.variant == Variant::PlateII) {
        G.block(ni_ + chord, nw_ + ni_, gcl_.rows(), ni_) = gcl_;
    }
    return G;
}

// ----------------------------------------------------------- reduced ODE ----

Eigen::MatrixXd SemiDiscreteSystem::mass(const Eigen::VectorXd& q) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(dim_, dim_);
    if (mode_ != ConstraintMode::Reduced || !inplane_inertia_) return m;
    if (beam_) {
        Eigen::MatrixXd j = beam_inplane_jacobian(q);
        m += j.transpose() * bw_.grid().w.asDiagonal() * j;
        return m;
    }
    Eigen::MatrixXd ju, jv;
    plate_inplane_jacobians(q, ju, jv);
    const Grid2& g = pb_.grid;
    Eigen::MatrixXd wmat = g.gx.w * g.gy.w.transpose();
    Eigen::VectorXd wvec = Eigen::Map<Eigen::VectorXd>(wmat.data(), wmat.size());
    m += ju.transpose() * wvec.asDiagonal() * ju +
         jv.transpose() * wvec.asDiagonal() * jv;
    return m;
}

Eigen::VectorXd SemiDiscreteSystem::reduced_accel(const Eigen::VectorXd& q,
                                                  const Eigen::VectorXd& qdot) const {
    if (mode_ != ConstraintMode::Reduced)
        throw BadParameter("reduced_accel requires reduced mode");
    if (beam_) {
        Eigen::VectorXd rhs = -potential_gradient(q);
        if (!inplane_inertia_) return rhs;
        const Grid1& g = bw_.grid();
        Eigen::ArrayXd wx = (bw_.samples(1) * q).array();
        Eigen::ArrayXd wxt = (bw_.samples(1) * qdot).array();
        Eigen::ArrayXd gsec = Eigen::ArrayXd::Ones(g.size());
        if (model_.variant == Variant::BeamEta4) gsec += 1.5 * wx.square();
        Eigen::VectorXd cu = -(g.prefix * (gsec * wxt.square()).matrix());
        Eigen::MatrixXd j = beam_inplane_jacobian(q);
        rhs -= j.transpose() * (g.w.array() * cu.array()).matrix();
        Eigen::MatrixXd m = Eigen::MatrixXd::Identity(dim_, dim_) +
                            j.transpose() * g.w.asDiagonal() * j;
        return m.llt().solve(rhs);
    }
    // Galerkin projection of the closed w-equation (multipliers eliminated
    // through their integral formulas). The projection keeps y-independent
    // motions exactly in the y-independent subspace, matching the continuum
    // reduction to the beam; the variational gradient alone would not, since
    // the tensor modes ignore the nonlinear free-edge conditions.
    const Grid2& g = pb_.grid;
    const int nwx = pb_.wx.size(), nwy = pb_.wy.size();
    const int nx = g.gx.size(), ny = g.gy.size();
    Eigen::Map<const Eigen::MatrixXd> qm(q.data(), nwx, nwy);
    Eigen::Map<const Eigen::MatrixXd> qdm(qdot.data(), nwx, nwy);
    Eigen::ArrayXXd wxt =
        (pb_.wx.samples(1) * qdm * pb_.wy.samples(0).transpose()).array();
    Eigen::ArrayXXd wyt =
        (pb_.wx.samples(0) * qdm * pb_.wy.samples(1).transpose()).array();
    Eigen::ArrayXXd cu = -Grid2::along_x(g.gx.prefix, wxt.square());
    Eigen::ArrayXXd cv =
        -drop_y_mean(g, Grid2::along_y(g.gy.prefix, wyt.square()));
    Eigen::MatrixXd ju, jv;
    plate_inplane_jacobians(q, ju, jv);
    if (!inplane_inertia_) {
        cu.setZero();
        cv.setZero();
        ju.setZero();
        jv.setZero();
    }

    PlateFieldState st;
    st.grid = g;
    st.w = synth(pb_.wx, pb_.wy, qm);
    st.u = Profile2::zero(nx, ny, 0, 0);
    st.v = st.u;
    st.wtt = Profile2::zero(nx, ny, 0, 0);
    st.utt = Profile2::zero(nx, ny, 0, 0);
    st.vtt = Profile2::zero(nx, ny, 0, 0);
    st.utt->at(0, 0) = cu;
    st.vtt->at(0, 0) = cv;
    auto project = [&](const Eigen::ArrayXXd& f) {
        return tensor_project(pb_.wx.samples(0), g.gx, pb_.wy.samples(0), g.gy, f);
    };
    const Eigen::VectorXd b0 = project(closed_w_residual(st, model_));
    // The residual is affine in (wtt, utt, vtt); column j probes the modal
    // acceleration direction e_j with its induced in-plane accelerations.
    Eigen::MatrixXd A(nw_, nw_);
    for (int j = 0; j < nw_; ++j) {
        st.wtt->at(0, 0) =
            outer_mode(pb_.wx.samples(0), j % nwx, pb_.wy.samples(0), j / nwx);
        st.utt->at(0, 0) =
            cu + Eigen::Map<const Eigen::ArrayXXd>(ju.col(j).data(), nx, ny);
        st.vtt->at(0, 0) =
            cv + Eigen::Map<const Eigen::ArrayXXd>(jv.col(j).data(), nx, ny);
        A.col(j) = project(closed_w_residual(st, model_)) - b0;
    }
    return A.partialPivLu().solve(-b0);
}

// ---------------------------------------------------------- acceleration ----

Eigen::VectorXd SemiDiscreteSystem::acceleration(const ModalState& s) const {
    if (mode_ == ConstraintMode::Reduced) return reduced_accel(s.q, s.qdot);
    Eigen::VectorXd grad = potential_gradient(s.q);
    Eigen::MatrixXd G = constraint_jacobian(s.q);
    Eigen::VectorXd mu = s.mu;
    if (mu.size() != m_) {
        // Consistent multipliers from the hidden acceleration constraint
        // G qddot + (dG/dt) qdot = 0 with qddot = -grad - G^T mu.
        const double eps = 1e-6;
        Eigen::MatrixXd Gp = constraint_jacobian(s.q + eps * s.qdot);
        Eigen::MatrixXd Gm = constraint_jacobian(s.q - eps * s.qdot);
        Eigen::VectorXd h = ((Gp - Gm) / (2.0 * eps)) * s.qdot;
        Eigen::MatrixXd ggt = G * G.transpose();
        mu = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(ggt).solve(
            h - G * grad);
    }
    return -grad - G.transpose() * mu;
}

// ---------------------------------------------------------- initial state ----

ModalState SemiDiscreteSystem::initial_state(const Eigen::VectorXd& qw,
                                             const Eigen::VectorXd& qw_dot) const {
    if (qw.size() != nw_ || qw_dot.size() != nw_)
        throw BadParameter("initial transverse coefficients have the wrong size");
    ModalState s;
    s.t = 0.0;
    if (mode_ == ConstraintMode::Reduced) {
        s.q = qw;
        s.qdot = qw_dot;
        return s;
    }
    s.q = Eigen::VectorXd::Zero(dim_);
    s.qdot = Eigen::VectorXd::Zero(dim_);
    s.q.head(nw_) = qw;
    s.qdot.head(nw_) = qw_dot;
    // In-plane coefficients from the weak constraints at zero in-plane state.
    Eigen::MatrixXd G = constraint_jacobian(s.q);
    Eigen::MatrixXd Gi = G.rightCols(dim_ - nw_);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod_i(Gi);
    s.q.tail(dim_ - nw_) = cod_i.solve(-constraint(s.q));
    // Touch-up over all coordinates (exact already except for the
    // three-constraint model, whose constraint set is overdetermined in the
    // in-plane block alone).
    for (int it = 0; it < 50; ++it) {
        Eigen::VectorXd g = constraint(s.q);
        if (g.lpNorm<Eigen::Infinity>() < 1e-13) break;
        Eigen::MatrixXd Gc = constraint_jacobian(s.q);
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(Gc);
        Eigen::VectorXd dq = cod.solve(-g);
        s.q += dq;
        if (it == 49 && constraint(s.q).lpNorm<Eigen::Infinity>() > 1e-10)
            throw ProjectionFailure("initial constraint projection stalled");
    }
    // Rates: solve the in-plane block of G qdot = 0, then project fully.
    Eigen::MatrixXd G0 = constraint_jacobian(s.q);
    s.qdot.tail(dim_ - nw_) =
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(
            G0.rightCols(dim_ - nw_))
            .solve(-G0.leftCols(nw_) * qw_dot);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod0(G0);
    s.qdot -= cod0.solve(G0 * s.qdot);
    // Consistent multipliers for diagnostics before the first step.
    s.mu = Eigen::VectorXd::Zero(m_);
    ModalState probe = s;
    probe.mu.resize(0);
    Eigen::VectorXd a = acceleration(probe);
    // Recover mu from a = -grad - G^T mu in the least-squares sense.
    Eigen::VectorXd grad = potential_gradient(s.q);
    s.mu = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(
               Eigen::MatrixXd(G0.transpose()))
               .solve(-a - grad);
    return s;
}

// ----------------------------------------------------------------- energy ----

EnergyReport SemiDiscreteSystem::energy(const ModalState& s) const {
    EnergyReport rep;
    if (beam_) {
        BeamFieldState f;
        f.grid = bw_.grid();
        f.w = synth(bw_, s.q.head(nw_));
        f.u = Profile1::zero(f.grid.size());
        rep = potential_energy(f, model_);
    } else {
        const int nwx = pb_.wx.size(), nwy = pb_.wy.size();
        PlateFieldState f;
        f.grid = pb_.grid;
        Eigen::Map<const Eigen::MatrixXd> qwm(s.q.data(), nwx, nwy);
        f.w = synth(pb_.wx, pb_.wy, qwm);
        if (mode_ == ConstraintMode::Multiplier &&
            model_.variant == Variant::PlateIII) {
            const int nix = pb_.ux.size(), niy = pb_.uy.size();
            Eigen::Map<const Eigen::MatrixXd> qum(s.q.data() + nw_, nix, niy);
            Eigen::Map<const Eigen::MatrixXd> qvm(s.q.data() + nw_ + ni_, nix, niy);
            f.u = synth(pb_.ux, pb_.uy, qum);
            f.v = synth(pb_.vx, pb_.vy, qvm);
        } else {
            f.u = Profile2::zero(f.grid.gx.size(), f.grid.gy.size());
            f.v = f.u;
        }
        rep = potential_energy(f, model_);
    }
    if (mode_ == ConstraintMode::Multiplier)
        rep.kinetic = 0.5 * s.qdot.squaredNorm();
    else
        rep.kinetic = 0.5 * s.qdot.dot(mass(s.q) * s.qdot);
    return rep;
}

// ------------------------------------------------------------ diagnostics ----

StepDiagnostics SemiDiscreteSystem::diagnostics(const ModalState& s) const {
    StepDiagnostics d;
    d.t = s.t;
    EnergyReport rep = energy(s);
    d.kinetic = rep.kinetic;
    d.potential = rep.potential;
    if (mode_ == ConstraintMode::Multiplier) {
        d.constraint_weak_sup = constraint(s.q).lpNorm<Eigen::Infinity>();
    }
    Eigen::VectorXd a = acceleration(s);
    if (beam_) {
        const Grid1& g = bw_.grid();
        Eigen::ArrayXd wx = (bw_.samples(1) * s.q.head(nw_)).array();
        if (mode_ == ConstraintMode::Multiplier) {
            Eigen::ArrayXd ux = (bu_.samples(1) * s.q.tail(ni_)).array();
            d.constraint_field_sup =
                (ux + beam_gc(wx)).abs().maxCoeff();
            Eigen::ArrayXd utt = (bu_.samples(0) * a.tail(ni_)).array();
            d.lambda_probe = g.integrate(utt);
        } else {
            Eigen::ArrayXd wxt = (bw_.samples(1) * s.qdot).array();
            Eigen::ArrayXd wxtt = (bw_.samples(1) * a).array();
            Eigen::ArrayXd gsec = Eigen::ArrayXd::Ones(g.size());
            if (model_.variant == Variant::BeamEta4) gsec += 1.5 * wx.square();
            Eigen::ArrayXd utt =
                -(g.prefix *
                  (gsec * wxt.square() + beam_gprime(wx) * wxtt).matrix())
                     .array();
            d.lambda_probe = g.integrate(utt);
        }
        return d;
    }
    const Grid2& g = pb_.grid;
    const int nwx = pb_.wx.size(), nwy = pb_.wy.size();
    Eigen::Map<const Eigen::MatrixXd> qwm(s.q.data(), nwx, nwy);
    Eigen::ArrayXXd wx =
        (pb_.wx.samples(1) * qwm * pb_.wy.samples(0).transpose()).array();
    Eigen::ArrayXXd utt;
    if (mode_ == ConstraintMode::Multiplier) {
        const int nix = pb_.ux.size(), niy = pb_.uy.size();
        Eigen::Map<const Eigen::MatrixXd> qum(s.q.data() + nw_, nix, niy);
        Eigen::ArrayXXd ux =
            (pb_.ux.samples(1) * qum * pb_.uy.samples(0).transpose()).array();
        d.constraint_field_sup = (ux + 0.5 * wx.square()).abs().maxCoeff();
        Eigen::Map<const Eigen::MatrixXd> qutt(a.data() + nw_, nix, niy);
        utt = (pb_.ux.samples(0) * qutt * pb_.uy.samples(0).transpose()).array();
    } else {
        Eigen::Map<const Eigen::MatrixXd> qdm(s.qdot.data(), nwx, nwy);
        Eigen::Map<const Eigen::MatrixXd> qam(a.data(), nwx, nwy);
        Eigen::ArrayXXd wxt =
            (pb_.wx.samples(1) * qdm * pb_.wy.samples(0).transpose()).array();
        Eigen::ArrayXXd wxtt =
            (pb_.wx.samples(1) * qam * pb_.wy.samples(0).transpose()).array();
        utt = -Grid2::along_x(g.gx.prefix, wxt.square() + wx * wxtt);
    }
    // Span-integrated acceleration at the mid chord: the recovered first
    // multiplier evaluated at the clamped edge.
    const int jmid = g.gy.size() / 2;
    d.lambda_probe = g.gx.integrate(utt.col(jmid));
    return d;
}

// ------------------------------------------------------------------- step ----

namespace {

// Newton with a frozen finite-difference Jacobian, one mid-course rebuild.
void newton_solve(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& F,
                  Eigen::VectorXd& z, double tol, int max_iter) {
    const int n = static_cast<int>(z.size());
    std::vector<double> trace;
    Eigen::VectorXd f = F(z);
    trace.push_back(f.lpNorm<Eigen::Infinity>());
    if (trace.back() <= tol) return;
    // Complete orthogonal decomposition: tolerates the rank-deficient
    // Jacobians of the three-constraint plate model (its weak constraints
    // carry a differential compatibility dependency) by taking the minimum-
    // norm step.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> lu;
    auto rebuild = [&](const Eigen::VectorXd& at, const Eigen::VectorXd& fat) {
        Eigen::MatrixXd J(n, n);
        Eigen::VectorXd zp = at;
        for (int j = 0; j < n; ++j) {
            const double h = 1e-7 * std::max(1.0, std::abs(at[j]));
            zp[j] = at[j] + h;
            J.col(j) = (F(zp) - fat) / h;
            zp[j] = at[j];
        }
        lu.compute(J);
    };
    rebuild(z, f);
    bool rebuilt = false;
    for (int it = 0; it < max_iter; ++it) {
        z -= lu.solve(f);
        f = F(z);
        trace.push_back(f.lpNorm<Eigen::Infinity>());
        if (trace.back() <= tol) return;
        if (!std::isfinite(trace.back()))
            throw NewtonDivergence("nonlinear solve produced non-finite residual",
                                   trace);
        if (!rebuilt && it >= max_iter / 2) {
            rebuild(z, f);
            rebuilt = true;
        }
    }
    throw NewtonDivergence("nonlinear solve did not reach tolerance", trace);
}

}  // namespace

ModalState step(const SemiDiscreteSystem& sys, const ModalState& s, double dt,
                Scheme scheme) {
    if (!(dt > 0.0)) throw BadParameter("time step must be positive");
    if (!sys.is_beam() && sys.model().variant == Variant::PlateIII)
        throw UnsupportedMode("shear-strain plate model supports statics only");
    const int n = sys.dim();
    if (scheme == Scheme::ExplicitRk4Reduced) {
        if (sys.mode() != ConstraintMode::Reduced)
            throw BadParameter("explicit scheme requires the reduced mode");
        auto acc = [&](const Eigen::VectorXd& q, const Eigen::VectorXd& v) {
            return sys.reduced_accel(q, v);
        };
        const Eigen::VectorXd &q0 = s.q, &v0 = s.qdot;
        Eigen::VectorXd k1q = v0, k1v = acc(q0, v0);
        Eigen::VectorXd k2q = v0 + 0.5 * dt * k1v,
                        k2v = acc(q0 + 0.5 * dt * k1q, v0 + 0.5 * dt * k1v);
        Eigen::VectorXd k3q = v0 + 0.5 * dt * k2v,
                        k3v = acc(q0 + 0.5 * dt * k2q, v0 + 0.5 * dt * k2v);
        Eigen::VectorXd k4q = v0 + dt * k3v,
                        k4v = acc(q0 + dt * k3q, v0 + dt * k3v);
        ModalState out;
        out.t = s.t + dt;
        out.q = q0 + (dt / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
        out.qdot = v0 + (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        return out;
    }

    // Implicit midpoint; with constraints the midpoint force carries the
    // multiplier and the end-of-step position satisfies g = 0 exactly.
    const int m = sys.constraint_dim();
    if (sys.mode() == ConstraintMode::Reduced) {
        Eigen::VectorXd z = s.qdot;  // unknown end velocity
        auto F = [&](const Eigen::VectorXd& v1) -> Eigen::VectorXd {
            Eigen::VectorXd vm = 0.5 * (s.qdot + v1);
            Eigen::VectorXd qm = s.q + 0.5 * dt * vm;
            return v1 - s.qdot - dt * sys.reduced_accel(qm, vm);
        };
        newton_solve(F, z, 1e-11, 25);
        ModalState out;
        out.t = s.t + dt;
        out.qdot = z;
        out.q = s.q + dt * 0.5 * (s.qdot + z);
        return out;
    }

    Eigen::VectorXd z(n + m);
    z.head(n) = s.qdot;
    z.tail(m) = (s.mu.size() == m) ? s.mu : Eigen::VectorXd::Zero(m);
    auto F = [&](const Eigen::VectorXd& zz) -> Eigen::VectorXd {
        Eigen::VectorXd v1 = zz.head(n);
        Eigen::VectorXd mu = zz.tail(m);
        Eigen::VectorXd q1 = s.q + 0.5 * dt * (s.qdot + v1);
        Eigen::VectorXd qm = 0.5 * (s.q + q1);
        Eigen::VectorXd out(n + m);
        out.head(n) = v1 - s.qdot +
                      dt * (sys.potential_gradient(qm) +
                            sys.constraint_jacobian(qm).transpose() * mu);
        out.tail(m) = sys.constraint(q1) / dt;
        return out;
    };
    newton_solve(F, z, 1e-11, 25);
    ModalState out;
    out.t = s.t + dt;
    out.qdot = z.head(n);
    out.mu = z.tail(m);
    out.q = s.q + 0.5 * dt * (s.qdot + out.qdot);
    // Hidden-constraint projection of the velocity.
    Eigen::MatrixXd G = sys.constraint_jacobian(out.q);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(G);
    out.qdot -= cod.solve(G * out.qdot);
    if ((G * out.qdot).lpNorm<Eigen::Infinity>() >
        1e-9 * std::max(1.0, out.qdot.lpNorm<Eigen::Infinity>()))
        throw ProjectionFailure("velocity projection left a constraint-rate residual");
    return out;
}

Trajectory simulate(const SemiDiscreteSystem& sys, const Eigen::VectorXd& qw0,
                    const Eigen::VectorXd& qw0_dot, double dt, double t_end,
                    Scheme scheme) {
    if (!(dt > 0.0) || !(t_end > 0.0))
        throw BadParameter("time step and horizon must be positive");
    Trajectory traj;
    ModalState s = sys.initial_state(qw0, qw0_dot);
    traj.states.push_back(s);
    traj.diagnostics.push_back(sys.diagnostics(s));
    const long n_steps = std::lround(t_end / dt);
    for (long k = 0; k < n_steps; ++k) {
        try {
            s = step(sys, s, dt, scheme);
        } catch (const std::exception& e) {
            traj.completed = false;
            traj.failure = "step " + std::to_string(k + 1) + ": " + e.what();
            return traj;
        }
        traj.states.push_back(s);
        traj.diagnostics.push_back(sys.diagnostics(s));
    }
    return traj;
}

double measure_period(const std::vector<double>& t, const std::vector<double>& x) {
    if (t.size() != x.size() || t.size() < 2)
        throw BadParameter("period measurement needs matching sample vectors");
    std::vector<double> crossings;
    for (size_t i = 0; i + 1 < x.size(); ++i) {
        if (x[i] < 0.0 && x[i + 1] >= 0.0) {
            const double a = -x[i] / (x[i + 1] - x[i]);
            crossings.push_back(t[i] + a * (t[i + 1] - t[i]));
        }
    }
    if (crossings.size() < 2) return std::nan("");
    return (crossings.back() - crossings.front()) /
           static_cast<double>(crossings.size() - 1);
}

}  // namespace inext
