#include "inext/energy.hpp"

#include <cmath>

#include "inext/errors.hpp"

namespace inext {

namespace {

// Minimal forward-mode scalar: value plus one directional derivative. The
// potential densities are templated on the scalar type, so the same code
// yields both the energy value and exact partials for the modal gradient.
struct Dual {
    double v = 0.0, g = 0.0;
    Dual() = default;
    Dual(double value) : v(value) {}
    Dual(double value, double grad) : v(value), g(grad) {}
};
inline Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.g + b.g}; }
inline Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.g - b.g}; }
inline Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.g * b.v + a.v * b.g}; }
inline Dual operator-(Dual a) { return {-a.v, -a.g}; }

template <class T>
struct BeamSlots {
    T wx, wxx;
};

template <class T>
struct PlateSlots {
    T ux, uy, uxx, uyy, uxy;
    T vx, vy, vxx, vyy, vxy;
    T wx, wy, wxx, wyy, wxy;
};

template <class T>
T beam_density(const BeamSlots<T>& s, double D, bool quartic) {
    T f = 1.0 + s.wx * s.wx;
    if (quartic) f = f + s.wx * s.wx * s.wx * s.wx;
    return 0.5 * D * s.wxx * s.wxx * f;
}

template <class T>
T beam_bending_density(const BeamSlots<T>& s, double D) {
    return 0.5 * D * s.wxx * s.wxx;
}

template <class T>
T effective_density(const PlateSlots<T>& s, double D, double nu) {
    const T q = s.wxx * s.wxx + s.wyy * s.wyy + 2.0 * nu * s.wxx * s.wyy +
                2.0 * (1.0 - nu) * s.wxy * s.wxy;
    return 0.5 * D * (1.0 + s.wx * s.wx + s.wy * s.wy) * q;
}

template <class T>
T plate_bending_density(const PlateSlots<T>& s, double pref, double nu) {
    return pref * (s.wxx * s.wxx + s.wyy * s.wyy + 2.0 * nu * s.wxx * s.wyy +
                   2.0 * (1.0 - nu) * s.wxy * s.wxy);
}

// Bending density of the shear-retaining model; the slope factor attaches
// to the twist term only and the in-plane curvatures couple in.
template <class T>
T shear_bending_density(const PlateSlots<T>& s, double D, double nu, double h) {
    const double pref = 0.5 * D * h;  // (6D/h)(h^2/12)
    const T f = s.wxx * s.wxx + s.wyy * s.wyy + 2.0 * nu * s.wxx * s.wyy +
                2.0 * (1.0 - nu) * s.wxy * s.wxy *
                    (1.0 + s.wx * s.wx + s.wy * s.wy) +
                (s.wx * s.wx - s.wy * s.wy) * (s.wxx * s.wxx - s.wyy * s.wyy) -
                2.0 * s.wy * s.wxx * s.vxx - 2.0 * s.wx * s.wyy * s.uyy -
                2.0 * nu * (s.wy * s.wyy * s.vxx + s.wx * s.wxx * s.uyy);
    return pref * f;
}

template <class T>
T membrane_shear_density(const PlateSlots<T>& s, double D, double nu, double h) {
    const T sh = s.uy + s.vx + s.wx * s.wy;
    return (6.0 * D / h) * 0.5 * (1.0 - nu) * sh * sh;
}

// z-integrated reference: full membrane strains plus full curvatures, with
// the bending prefactor matching the effective model and the membrane
// prefactor matching the shear-retaining model.
template <class T>
T bulk_membrane_density(const PlateSlots<T>& s, double D, double nu, double h) {
    const T e11 = s.ux + 0.5 * (s.ux * s.ux + s.vx * s.vx + s.wx * s.wx);
    const T e22 = s.vy + 0.5 * (s.uy * s.uy + s.vy * s.vy + s.wy * s.wy);
    const T e12 = s.uy + s.vx + s.ux * s.uy + s.vx * s.vy + s.wx * s.wy;
    return (6.0 * D / h) * (e11 * e11 + e22 * e22 + 2.0 * nu * e11 * e22 +
                            0.5 * (1.0 - nu) * e12 * e12);
}

template <class T>
T bulk_bending_density(const PlateSlots<T>& s, double D, double nu) {
    const T thx = -s.vxy * s.wx - (1.0 + s.vy) * s.wxx + s.vxx * s.wy + s.vx * s.wxy;
    const T thy = -s.vyy * s.wx - (1.0 + s.vy) * s.wxy + s.vxy * s.wy + s.vx * s.wyy;
    const T psx = -s.uxx * s.wy - (1.0 + s.ux) * s.wxy + s.uxy * s.wx + s.uy * s.wxx;
    const T psy = -s.uxy * s.wy - (1.0 + s.ux) * s.wyy + s.uyy * s.wx + s.uy * s.wxy;
    const T chx = s.uxx + s.vxy + s.uxx * s.vy + s.ux * s.vxy - s.uxy * s.vx -
                  s.uy * s.vxx;
    const T chy = s.uxy + s.vyy + s.uxy * s.vy + s.ux * s.vyy - s.uyy * s.vx -
                  s.uy * s.vxy;
    const T k11 = (1.0 + s.ux) * thx + s.vx * psx + s.wx * chx;
    const T k22 = s.uy * thy + (1.0 + s.vy) * psy + s.wy * chy;
    const T k12 = (1.0 + s.ux) * thy + (1.0 + s.vy) * psx + s.uy * thx + s.vx * psy +
                  s.wx * chy + s.wy * chx;
    return 0.5 * D * (k11 * k11 + k22 * k22 + 2.0 * nu * k11 * k22 +
                      0.5 * (1.0 - nu) * k12 * k12);
}

// Full density without the membrane part (integrated separately so the
// report can split the thickness-scaled contribution off).
template <class T>
T plate_elastic_density(const PlateSlots<T>& s, EnergyVariant v, double D, double nu,
                        double h) {
    switch (v) {
        case EnergyVariant::PlateEffective:
            return effective_density(s, D, nu);
        case EnergyVariant::PlateShear:
            return shear_bending_density(s, D, nu, h);
        case EnergyVariant::PlateBulk:
            return bulk_bending_density(s, D, nu);
        default:
            throw BadParameter("plate potential requested with a beam variant");
    }
}

template <class T>
T plate_membrane_density(const PlateSlots<T>& s, EnergyVariant v, double D, double nu,
                         double h) {
    switch (v) {
        case EnergyVariant::PlateEffective:
            return T(0.0);
        case EnergyVariant::PlateShear:
            return membrane_shear_density(s, D, nu, h);
        case EnergyVariant::PlateBulk:
            return bulk_membrane_density(s, D, nu, h);
        default:
            throw BadParameter("plate potential requested with a beam variant");
    }
}

bool is_beam_variant(EnergyVariant v) {
    return v == EnergyVariant::BeamEta2 || v == EnergyVariant::BeamEta4;
}

bool needs_inplane(EnergyVariant v) {
    return v == EnergyVariant::PlateShear || v == EnergyVariant::PlateBulk;
}

PlateSlots<double> plate_slots_at(const PlateFieldState& s, EnergyVariant v, int i,
                                  int j) {
    PlateSlots<double> p{};
    p.wx = s.w(1, 0)(i, j);
    p.wy = s.w(0, 1)(i, j);
    p.wxx = s.w(2, 0)(i, j);
    p.wyy = s.w(0, 2)(i, j);
    p.wxy = s.w(1, 1)(i, j);
    if (needs_inplane(v)) {
        p.ux = s.u(1, 0)(i, j);
        p.uy = s.u(0, 1)(i, j);
        p.uxx = s.u(2, 0)(i, j);
        p.uyy = s.u(0, 2)(i, j);
        p.uxy = s.u(1, 1)(i, j);
        p.vx = s.v(1, 0)(i, j);
        p.vy = s.v(0, 1)(i, j);
        p.vxx = s.v(2, 0)(i, j);
        p.vyy = s.v(0, 2)(i, j);
        p.vxy = s.v(1, 1)(i, j);
    }
    return p;
}

}  // namespace

EnergyVariant default_energy_variant(Variant v) {
    switch (v) {
        case Variant::BeamEta2:
            return EnergyVariant::BeamEta2;
        case Variant::BeamEta4:
            return EnergyVariant::BeamEta4;
        case Variant::PlateI:
        case Variant::PlateII:
            return EnergyVariant::PlateEffective;
        case Variant::PlateIII:
            return EnergyVariant::PlateShear;
    }
    throw BadParameter("default_energy_variant: unknown model variant");
}

double kinetic_energy(const BeamFieldState& s) {
    if (!s.wt || !s.ut) throw BadParameter("kinetic_energy: velocities missing");
    return 0.5 * s.grid.integrate((*s.wt)(0).square() + (*s.ut)(0).square());
}

double kinetic_energy(const PlateFieldState& s) {
    if (!s.ut || !s.vt || !s.wt)
        throw BadParameter("kinetic_energy: velocities missing");
    return 0.5 * s.grid.integrate((*s.ut)(0, 0).square() + (*s.vt)(0, 0).square() +
                                  (*s.wt)(0, 0).square());
}

EnergyReport potential_energy(const BeamFieldState& s, const ModelSpec& m,
                              EnergyVariant v) {
    if (!is_beam_variant(v))
        throw BadParameter("beam potential requested with a plate variant");
    const double D = m.stiffness();
    const bool quartic = (v == EnergyVariant::BeamEta4);
    const int n = s.grid.size();
    Eigen::ArrayXd full(n), bend(n);
    for (int i = 0; i < n; ++i) {
        const BeamSlots<double> bs{s.w(1)(i), s.w(2)(i)};
        full[i] = beam_density(bs, D, quartic);
        bend[i] = beam_bending_density(bs, D);
    }
    EnergyReport r;
    r.bending = s.grid.integrate(bend);
    r.potential = s.grid.integrate(full);
    r.nonlinear_stiffness = r.potential - r.bending;
    return r;
}

EnergyReport potential_energy(const PlateFieldState& s, const ModelSpec& m,
                              EnergyVariant v) {
    if (is_beam_variant(v))
        throw BadParameter("plate potential requested with a beam variant");
    const double D = m.stiffness();
    const double nu = m.plate().poisson;
    const double h = m.plate().thickness;
    const int nx = s.grid.gx.size(), ny = s.grid.gy.size();
    Eigen::ArrayXXd elastic(nx, ny), bend(nx, ny), membrane(nx, ny);
    const double bend_pref =
        (v == EnergyVariant::PlateShear) ? 0.5 * D * h : 0.5 * D;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            const PlateSlots<double> ps = plate_slots_at(s, v, i, j);
            elastic(i, j) = plate_elastic_density(ps, v, D, nu, h);
            bend(i, j) = plate_bending_density(ps, bend_pref, nu);
            membrane(i, j) = plate_membrane_density(ps, v, D, nu, h);
        }
    EnergyReport r;
    r.membrane_shear = s.grid.integrate(membrane);
    const double elastic_total = s.grid.integrate(elastic);
    if (v == EnergyVariant::PlateBulk) {
        // All curvature nonlinearity stays folded into the bending entry.
        r.bending = elastic_total;
        r.nonlinear_stiffness = 0.0;
    } else {
        r.bending = s.grid.integrate(bend);
        r.nonlinear_stiffness = elastic_total - r.bending;
    }
    r.potential = elastic_total + r.membrane_shear;
    return r;
}

EnergyReport potential_energy(const BeamFieldState& s, const ModelSpec& m) {
    return potential_energy(s, m, default_energy_variant(m.variant));
}

EnergyReport potential_energy(const PlateFieldState& s, const ModelSpec& m) {
    return potential_energy(s, m, default_energy_variant(m.variant));
}

double energy_order_gap(const BeamFieldState& s, const ModelSpec& m, EnergyVariant a,
                        EnergyVariant b) {
    return std::abs(potential_energy(s, m, a).potential -
                    potential_energy(s, m, b).potential);
}

double energy_order_gap(const PlateFieldState& s, const ModelSpec& m, EnergyVariant a,
                        EnergyVariant b) {
    return std::abs(potential_energy(s, m, a).potential -
                    potential_energy(s, m, b).potential);
}

Eigen::VectorXd potential_gradient(const ModeBasis& b, const Eigen::VectorXd& qw,
                                   const ModelSpec& m, EnergyVariant v) {
    if (!is_beam_variant(v))
        throw BadParameter("beam gradient requested with a plate variant");
    const double D = m.stiffness();
    const bool quartic = (v == EnergyVariant::BeamEta4);
    const Grid1& g = b.grid();
    const int n = g.size();
    const Eigen::ArrayXd wx = (b.samples(1) * qw).array();
    const Eigen::ArrayXd wxx = (b.samples(2) * qw).array();
    Eigen::ArrayXd d_wx(n), d_wxx(n);
    for (int i = 0; i < n; ++i) {
        BeamSlots<Dual> bs{Dual(wx[i], 1.0), Dual(wxx[i])};
        d_wx[i] = beam_density(bs, D, quartic).g;
        bs.wx = Dual(wx[i]);
        bs.wxx = Dual(wxx[i], 1.0);
        d_wxx[i] = beam_density(bs, D, quartic).g;
    }
    return b.samples(1).transpose() * (g.w.array() * d_wx).matrix() +
           b.samples(2).transpose() * (g.w.array() * d_wxx).matrix();
}

PlateGradient potential_gradient(const PlateBasisSet& B, const Eigen::MatrixXd& qw,
                                 const Eigen::MatrixXd& qu, const Eigen::MatrixXd& qv,
                                 const ModelSpec& m, EnergyVariant v) {
    if (is_beam_variant(v))
        throw BadParameter("plate gradient requested with a beam variant");
    const double D = m.stiffness();
    const double nu = m.plate().poisson;
    const double h = m.plate().thickness;
    const bool inplane = needs_inplane(v);
    const int nx = B.grid.gx.size(), ny = B.grid.gy.size();

    const Profile2 w = synth(B.wx, B.wy, qw);
    Profile2 u = Profile2::zero(nx, ny), vv = Profile2::zero(nx, ny);
    if (inplane) {
        u = synth(B.ux, B.uy, qu);
        vv = synth(B.vx, B.vy, qv);
    }

    // Slot layout: field index 0/1/2 = u/v/w, each with derivative orders
    // (1,0), (0,1), (2,0), (0,2), (1,1).
    constexpr int n_slots = 15;
    Dual PlateSlots<Dual>::*slot_of[n_slots] = {
        &PlateSlots<Dual>::ux, &PlateSlots<Dual>::uy, &PlateSlots<Dual>::uxx,
        &PlateSlots<Dual>::uyy, &PlateSlots<Dual>::uxy,
        &PlateSlots<Dual>::vx, &PlateSlots<Dual>::vy, &PlateSlots<Dual>::vxx,
        &PlateSlots<Dual>::vyy, &PlateSlots<Dual>::vxy,
        &PlateSlots<Dual>::wx, &PlateSlots<Dual>::wy, &PlateSlots<Dual>::wxx,
        &PlateSlots<Dual>::wyy, &PlateSlots<Dual>::wxy};
    const int dx_of[5] = {1, 0, 2, 0, 1};
    const int dy_of[5] = {0, 1, 0, 2, 1};

    std::array<Eigen::ArrayXXd, n_slots> partials;
    for (auto& p : partials) p = Eigen::ArrayXXd::Zero(nx, ny);

    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            PlateSlots<Dual> ps;
            ps.ux = u(1, 0)(i, j);
            ps.uy = u(0, 1)(i, j);
            ps.uxx = u(2, 0)(i, j);
            ps.uyy = u(0, 2)(i, j);
            ps.uxy = u(1, 1)(i, j);
            ps.vx = vv(1, 0)(i, j);
            ps.vy = vv(0, 1)(i, j);
            ps.vxx = vv(2, 0)(i, j);
            ps.vyy = vv(0, 2)(i, j);
            ps.vxy = vv(1, 1)(i, j);
            ps.wx = w(1, 0)(i, j);
            ps.wy = w(0, 1)(i, j);
            ps.wxx = w(2, 0)(i, j);
            ps.wyy = w(0, 2)(i, j);
            ps.wxy = w(1, 1)(i, j);
            const int first = inplane ? 0 : 10;
            for (int k = first; k < n_slots; ++k) {
                (ps.*slot_of[k]).g = 1.0;
                partials[size_t(k)](i, j) =
                    (plate_elastic_density(ps, v, D, nu, h) +
                     plate_membrane_density(ps, v, D, nu, h))
                        .g;
                (ps.*slot_of[k]).g = 0.0;
            }
        }

    const Eigen::MatrixXd W = B.grid.gx.w * B.grid.gy.w.transpose();
    auto project = [&](const ModeBasis& bx, const ModeBasis& by,
                       const Eigen::ArrayXXd& f, int dx, int dy) -> Eigen::MatrixXd {
        return bx.samples(dx).transpose() * (f * W.array()).matrix() * by.samples(dy);
    };

    PlateGradient grad;
    grad.dw = Eigen::MatrixXd::Zero(qw.rows(), qw.cols());
    grad.du = Eigen::MatrixXd::Zero(qu.rows(), qu.cols());
    grad.dv = Eigen::MatrixXd::Zero(qv.rows(), qv.cols());
    for (int k = 0; k < 5; ++k) {
        if (inplane) {
            grad.du += project(B.ux, B.uy, partials[size_t(k)], dx_of[k], dy_of[k]);
            grad.dv +=
                project(B.vx, B.vy, partials[size_t(5 + k)], dx_of[k], dy_of[k]);
        }
        grad.dw += project(B.wx, B.wy, partials[size_t(10 + k)], dx_of[k], dy_of[k]);
    }
    return grad;
}

}  // namespace inext
