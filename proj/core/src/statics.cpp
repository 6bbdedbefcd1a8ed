#include "inext/statics.hpp"

#include <algorithm>
#include <cmath>

#include "inext/errors.hpp"

namespace inext {

namespace {

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int j = 0; j < a.cols(); ++j)
        for (int i = 0; i < a.rows(); ++i)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Eigen::VectorXd basis_integrals(const ModeBasis& b) {
    return b.samples(0).transpose() * b.grid().w;
}

// Stationarity residual and weak constraints of the loaded problem.
struct KktResidual {
    const SemiDiscreteSystem& sys;
    Eigen::VectorXd f;

    Eigen::VectorXd operator()(const Eigen::VectorXd& z) const {
        const int n = sys.dim(), m = sys.constraint_dim();
        Eigen::VectorXd q = z.head(n), mu = z.tail(m);
        Eigen::VectorXd r(n + m);
        r.head(n) = sys.potential_gradient(q) - f +
                    sys.constraint_jacobian(q).transpose() * mu;
        r.tail(m) = sys.constraint(q);
        return r;
    }
};

void kkt_newton(const KktResidual& R, Eigen::VectorXd& z, double tol, int max_iter) {
    const int n = static_cast<int>(z.size());
    std::vector<double> trace;
    Eigen::VectorXd r = R(z);
    trace.push_back(r.lpNorm<Eigen::Infinity>());
    for (int it = 0; it < max_iter; ++it) {
        if (trace.back() <= tol) return;
        Eigen::MatrixXd J(n, n);
        Eigen::VectorXd zp = z;
        for (int j = 0; j < n; ++j) {
            const double h = 1e-7 * std::max(1.0, std::abs(z[j]));
            zp[j] = z[j] + h;
            J.col(j) = (R(zp) - r) / h;
            zp[j] = z[j];
        }
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(J);
        z -= cod.solve(r);
        r = R(z);
        trace.push_back(r.lpNorm<Eigen::Infinity>());
        if (!std::isfinite(trace.back()) || trace.back() > 1e6 * (trace.front() + 1.0))
            throw NewtonDivergence("equilibrium solve diverged", trace);
    }
    if (trace.back() > tol)
        throw NewtonDivergence("equilibrium solve did not reach tolerance", trace);
}

}  // namespace

Eigen::VectorXd load_vector(const SemiDiscreteSystem& sys, const LoadSpec& load) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(sys.dim());
    const double p = load.magnitude;
    if (sys.is_beam()) {
        const ModeBasis& bw = sys.beam_w_basis();
        switch (load.kind) {
            case LoadKind::TipForce:
                f.head(sys.w_dim()) = p * bw.eval_all(bw.length(), 0);
                break;
            case LoadKind::UniformPressure:
                f.head(sys.w_dim()) = p * basis_integrals(bw);
                break;
            case LoadKind::EdgeLineLoad:
                throw BadParameter("edge line load applies to plates only");
        }
        return f;
    }
    const PlateBasisSet& B = sys.plate_bases();
    const double lx = B.wx.length(), ly = B.wy.length();
    Eigen::VectorXd fx, fy;
    switch (load.kind) {
        case LoadKind::TipForce:
            fx = B.wx.eval_all(lx, 0);
            fy = B.wy.eval_all(0.5 * ly, 0);
            break;
        case LoadKind::EdgeLineLoad:
            fx = B.wx.eval_all(lx, 0);
            fy = basis_integrals(B.wy);
            break;
        case LoadKind::UniformPressure:
            fx = basis_integrals(B.wx);
            fy = basis_integrals(B.wy);
            break;
    }
    Eigen::MatrixXd m = p * fx * fy.transpose();
    f.head(sys.w_dim()) = Eigen::Map<Eigen::VectorXd>(m.data(), m.size());
    return f;
}

EquilibriumReport solve_static(const SemiDiscreteSystem& sys, const LoadSpec& load) {
    if (sys.mode() != ConstraintMode::Multiplier)
        throw BadParameter("equilibrium solve needs a multiplier-mode system");
    const int n = sys.dim(), m = sys.constraint_dim();
    const Eigen::VectorXd f_full = load_vector(sys, load);
    const double tol = std::max(1e-13, 1e-12 * f_full.lpNorm<Eigen::Infinity>());

    EquilibriumReport rep;
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n + m);
    double frac = 0.0, dfrac = 0.1;
    double last_converged = 0.0;
    while (frac < 1.0) {
        const double trial = std::min(1.0, frac + dfrac);
        KktResidual R{sys, trial * f_full};
        Eigen::VectorXd z_try = z;
        try {
            kkt_newton(R, z_try, tol, 60);
        } catch (const NewtonDivergence&) {
            dfrac *= 0.5;
            if (dfrac < 1e-4)
                throw ContinuationStall("load continuation stalled",
                                        last_converged * load.magnitude);
            continue;
        }
        z = z_try;
        frac = trial;
        last_converged = frac;
        rep.load_path.push_back(frac * load.magnitude);
        dfrac = std::min(1.5 * dfrac, 0.25);
    }

    rep.q = z.head(n);
    rep.mu = z.tail(m);
    rep.optimality = (sys.potential_gradient(rep.q) - f_full +
                      sys.constraint_jacobian(rep.q).transpose() * rep.mu)
                         .lpNorm<Eigen::Infinity>();
    rep.constraint_sup = sys.constraint(rep.q).lpNorm<Eigen::Infinity>();

    ModalState st;
    st.q = rep.q;
    st.qdot = Eigen::VectorXd::Zero(n);
    st.mu = rep.mu;
    rep.energy = sys.energy(st);

    if (sys.is_beam()) {
        const ModeBasis& bw = sys.beam_w_basis();
        rep.probe = bw.eval_all(bw.length(), 0).dot(rep.q.head(sys.w_dim()));
    } else {
        const PlateBasisSet& B = sys.plate_bases();
        Eigen::VectorXd fx = B.wx.eval_all(B.wx.length(), 0);
        Eigen::VectorXd fy = B.wy.eval_all(0.5 * B.wy.length(), 0);
        Eigen::Map<const Eigen::MatrixXd> qw(rep.q.data(), B.wx.size(), B.wy.size());
        rep.probe = fx.dot(qw * fy);
    }

    // Second-order probe: smallest eigenvalue of the Lagrangian Hessian on
    // the constraint tangent space.
    Eigen::MatrixXd H(n, n);
    auto grad_l = [&](const Eigen::VectorXd& q) {
        return Eigen::VectorXd(sys.potential_gradient(q) +
                               sys.constraint_jacobian(q).transpose() * rep.mu);
    };
    Eigen::VectorXd qp = rep.q;
    for (int j = 0; j < n; ++j) {
        const double h = 1e-5 * std::max(1.0, std::abs(rep.q[j]));
        qp[j] = rep.q[j] + h;
        Eigen::VectorXd gp = grad_l(qp);
        qp[j] = rep.q[j] - h;
        Eigen::VectorXd gm = grad_l(qp);
        qp[j] = rep.q[j];
        H.col(j) = (gp - gm) / (2.0 * h);
    }
    H = 0.5 * (H + H.transpose()).eval();
    Eigen::MatrixXd Z = Eigen::FullPivLU<Eigen::MatrixXd>(sys.constraint_jacobian(rep.q))
                            .kernel();
    Eigen::MatrixXd Hr = Z.transpose() * H * Z;
    if (Hr.size() > 0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Hr);
        rep.min_reduced_hessian_eig = es.eigenvalues().minCoeff();
    }
    return rep;
}

ModalReport linear_modes(const SemiDiscreteSystem& sys, int count) {
    const int nw = sys.w_dim();
    Eigen::MatrixXd K;
    if (sys.is_beam()) {
        const ModeBasis& b = sys.beam_w_basis();
        const Grid1& g = b.grid();
        K = sys.model().stiffness() *
            (b.samples(2).transpose() * g.w.asDiagonal() * b.samples(2));
    } else {
        const PlateBasisSet& B = sys.plate_bases();
        const Grid1& gx = B.grid.gx;
        const Grid1& gy = B.grid.gy;
        auto gram_x = [&](int a, int b) -> Eigen::MatrixXd {
            return B.wx.samples(a).transpose() * gx.w.asDiagonal() * B.wx.samples(b);
        };
        auto gram_y = [&](int a, int b) -> Eigen::MatrixXd {
            return B.wy.samples(a).transpose() * gy.w.asDiagonal() * B.wy.samples(b);
        };
        const double nu = sys.model().plate().poisson;
        // The shear-strain model's bending energy carries an extra factor of
        // thickness relative to the effective models (prefactor D h / 2).
        double factor = sys.model().stiffness();
        if (sys.model().variant == Variant::PlateIII)
            factor *= sys.model().plate().thickness;
        K = factor *
            (kron(gram_y(0, 0), gram_x(2, 2)) + kron(gram_y(2, 2), gram_x(0, 0)) +
             nu * (kron(gram_y(0, 2), gram_x(2, 0)) +
                   kron(gram_y(2, 0), gram_x(0, 2))) +
             2.0 * (1.0 - nu) * kron(gram_y(1, 1), gram_x(1, 1)));
    }
    K = 0.5 * (K + K.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
    const int nkeep = (count > 0 && count < nw) ? count : nw;
    ModalReport rep;
    rep.frequencies.resize(nkeep);
    rep.shapes = es.eigenvectors().leftCols(nkeep);
    for (int k = 0; k < nkeep; ++k)
        rep.frequencies[k] = std::sqrt(std::max(0.0, es.eigenvalues()[k]));
    return rep;
}

}  // namespace inext
