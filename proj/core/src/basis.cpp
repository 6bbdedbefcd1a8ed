#include "inext/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace inext {

namespace {

// Characteristic functions rewritten with sech to stay bounded for large
// arguments: 1 + cos(u)cosh(u) = 0  <=>  cos(u) + sech(u) = 0, and
// 1 - cos(u)cosh(u) = 0  <=>  cos(u) - sech(u) = 0.
long double char_cf(long double u) { return std::cos(u) + 1.0L / std::cosh(u); }
long double char_cf_d(long double u) {
    return -std::sin(u) - std::tanh(u) / std::cosh(u);
}
long double char_ff(long double u) { return std::cos(u) - 1.0L / std::cosh(u); }
long double char_ff_d(long double u) {
    return -std::sin(u) + std::tanh(u) / std::cosh(u);
}

double solve_root(long double lo, long double hi, long double (*f)(long double),
                  long double (*fd)(long double)) {
    long double flo = f(lo);
    for (int it = 0; it < 200 && (hi - lo) > 1e-18L * hi; ++it) {
        long double mid = 0.5L * (lo + hi);
        long double fm = f(mid);
        if ((flo < 0) == (fm < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    long double u = 0.5L * (lo + hi);
    for (int it = 0; it < 8; ++it) {
        long double du = f(u) / fd(u);
        u -= du;
        if (std::fabs(du) < 1e-20L * u) break;
    }
    return static_cast<double>(u);
}

}  // namespace

std::vector<double> clamped_free_roots(int n) {
    if (n < 1) throw std::invalid_argument("clamped_free_roots: n >= 1");
    std::vector<double> r(n);
    for (int k = 1; k <= n; ++k)
        r[k - 1] = solve_root((k - 1) * M_PI + 1e-9L, k * M_PI, char_cf, char_cf_d);
    return r;
}

std::vector<double> free_free_roots(int n) {
    if (n < 1) throw std::invalid_argument("free_free_roots: n >= 1");
    std::vector<double> r(n);
    for (int k = 1; k <= n; ++k)
        r[k - 1] = solve_root(k * M_PI, (k + 1) * M_PI, char_ff, char_ff_d);
    return r;
}

namespace {

// d-th derivative coefficients of a e^{bx} + b e^{-bx} + c cos(bx) + s sin(bx).
void differentiate_trig(double& a, double& b, double& c, double& s, double beta) {
    a *= beta;
    b *= -beta;
    const double c0 = c, s0 = s;
    c = s0 * beta;
    s = -c0 * beta;
}

double eval_trig(const double a, const double b, const double c, const double s,
                 double beta, double x) {
    return a * std::exp(beta * x) + b * std::exp(-beta * x) + c * std::cos(beta * x) +
           s * std::sin(beta * x);
}

}  // namespace

ModeBasis ModeBasis::clamped_free(int n, double length, int quad_pts) {
    if (n < 1) throw std::invalid_argument("clamped_free: n >= 1");
    ModeBasis mb;
    mb.kind_ = Kind::ClampedFree;
    mb.n_ = n;
    mb.length_ = length;
    const auto roots = clamped_free_roots(n);
    for (double u : roots) {
        const double sh = std::sinh(u), sn = std::sin(u), cs = std::cos(u);
        // 1 - sigma computed cancellation-free: sigma -> 1 for large u.
        const double one_minus_sigma = (sn - cs - std::exp(-u)) / (sh + sn);
        const double sigma = 1.0 - one_minus_sigma;
        TrigCoef tc;
        tc.beta = u / length;
        tc.a = 0.5 * one_minus_sigma;
        tc.b = 0.5 * (1.0 + sigma);
        tc.c = -1.0;
        tc.s = sigma;
        tc.scale = 1.0;
        mb.beta_.push_back(tc.beta);
        mb.trig_.push_back(tc);
    }
    mb.build_samples_with_quad(quad_pts);
    return mb;
}

ModeBasis ModeBasis::free_free(int n, double length, int quad_pts) {
    if (n < 1) throw std::invalid_argument("free_free: n >= 1");
    ModeBasis mb;
    mb.kind_ = Kind::FreeFree;
    mb.n_ = n;
    mb.length_ = length;
    mb.beta_.assign(std::min(n, 2), 0.0);
    if (n > 2) {
        const auto roots = free_free_roots(n - 2);
        for (double u : roots) {
            const double sh = std::sinh(u), sn = std::sin(u), cs = std::cos(u);
            const double one_minus_sigma = (cs - sn - std::exp(-u)) / (sh - sn);
            const double sigma = 1.0 - one_minus_sigma;
            TrigCoef tc;
            tc.beta = u / length;
            tc.a = 0.5 * one_minus_sigma;
            tc.b = 0.5 * (1.0 + sigma);
            tc.c = 1.0;
            tc.s = -sigma;
            tc.scale = 1.0;
            mb.beta_.push_back(tc.beta);
            mb.trig_.push_back(tc);
        }
    }
    mb.build_samples_with_quad(quad_pts);
    return mb;
}

ModeBasis ModeBasis::poly_clamped(int n, double length, int quad_pts) {
    if (n < 1) throw std::invalid_argument("poly_clamped: n >= 1");
    ModeBasis mb;
    mb.kind_ = Kind::PolyClamped;
    mb.n_ = n;
    mb.length_ = length;
    mb.beta_.assign(n, 0.0);
    mb.build_samples_with_quad(quad_pts);
    return mb;
}

// Seed functions for the polynomial basis: f_j(x) = x P_j(2x/L - 1).
// They vanish at x = 0 and are well conditioned for Gram-Schmidt.
double ModeBasis::poly_seed(int j, int d, double x) const {
    const double r = 2.0 / length_;
    const double t = r * x - 1.0;
    Eigen::VectorXd p;
    double val = 0.0;
    if (d >= 1) {
        legendre_derivatives(t, j, d - 1, p);
        val += d * std::pow(r, d - 1) * p[j];
    }
    legendre_derivatives(t, j, d, p);
    val += x * std::pow(r, d) * p[j];
    return val;
}

void ModeBasis::build_samples_with_quad(int quad_pts) {
    const int q = quad_pts > 0 ? quad_pts : std::max(4 * n_, 8);
    grid_ = Grid1::make(q, length_);

    for (int d = 0; d <= 4; ++d) B_[d].resize(q, n_);

    if (kind_ == Kind::PolyClamped) {
        std::array<Eigen::MatrixXd, 5> seed;
        for (int d = 0; d <= 4; ++d) {
            seed[d].resize(q, n_);
            for (int j = 0; j < n_; ++j)
                for (int i = 0; i < q; ++i) seed[d](i, j) = poly_seed(j, d, grid_.x[i]);
        }
        // Modified Gram-Schmidt in the quadrature inner product; the same
        // combinations are applied to every derivative order.
        poly_ = Eigen::MatrixXd::Identity(n_, n_);
        for (int k = 0; k < n_; ++k) {
            for (int rep = 0; rep < 2; ++rep) {
                for (int j = 0; j < k; ++j) {
                    const double r =
                        (grid_.w.array() * seed[0].col(j).array() * seed[0].col(k).array())
                            .sum();
                    for (int d = 0; d <= 4; ++d) seed[d].col(k) -= r * seed[d].col(j);
                    poly_.col(k) -= r * poly_.col(j);
                }
            }
            const double nrm = std::sqrt(
                (grid_.w.array() * seed[0].col(k).array().square()).sum());
            for (int d = 0; d <= 4; ++d) seed[d].col(k) /= nrm;
            poly_.col(k) /= nrm;
        }
        for (int d = 0; d <= 4; ++d) B_[d] = seed[d];
        return;
    }

    for (int k = 0; k < n_; ++k)
        for (int d = 0; d <= 4; ++d)
            for (int i = 0; i < q; ++i) B_[d](i, k) = eval_unnormalized(k, d, grid_.x[i]);

    // Normalize to unit L2 norm under the basis quadrature.
    for (int k = 0; k < n_; ++k) {
        const double nrm =
            std::sqrt((grid_.w.array() * B_[0].col(k).array().square()).sum());
        for (int d = 0; d <= 4; ++d) B_[d].col(k) /= nrm;
        const int ti = trig_index(k);
        if (ti >= 0)
            trig_[ti].scale = 1.0 / nrm;
        else
            rigid_scale_[k] = 1.0 / nrm;
    }
}

int ModeBasis::trig_index(int k) const {
    if (kind_ == Kind::ClampedFree) return k;
    if (kind_ == Kind::FreeFree) return k >= 2 ? k - 2 : -1;
    return -1;
}

double ModeBasis::eval_unnormalized(int k, int d, double x) const {
    if (kind_ == Kind::FreeFree && k < 2) {
        if (k == 0) return d == 0 ? 1.0 : 0.0;
        // linear rigid function, seeded as the shifted Legendre P1
        if (d == 0) return 2.0 * x / length_ - 1.0;
        if (d == 1) return 2.0 / length_;
        return 0.0;
    }
    const TrigCoef& tc = trig_[trig_index(k)];
    double a = tc.a, b = tc.b, c = tc.c, s = tc.s;
    for (int i = 0; i < d; ++i) differentiate_trig(a, b, c, s, tc.beta);
    return eval_trig(a, b, c, s, tc.beta, x);
}

double ModeBasis::eval(int k, int d, double x) const {
    if (k < 0 || k >= n_) throw std::out_of_range("ModeBasis::eval: mode index");
    if (d < 0 || d > 4) throw std::out_of_range("ModeBasis::eval: derivative order");
    if (kind_ == Kind::PolyClamped) {
        double val = 0.0;
        for (int j = 0; j < n_; ++j)
            if (poly_(j, k) != 0.0) val += poly_(j, k) * poly_seed(j, d, x);
        return val;
    }
    double scale = 1.0;
    if (kind_ == Kind::FreeFree && k < 2)
        scale = rigid_scale_[k];
    else
        scale = trig_[trig_index(k)].scale;
    return scale * eval_unnormalized(k, d, x);
}

Eigen::VectorXd ModeBasis::eval_all(double x, int d) const {
    Eigen::VectorXd out(n_);
    for (int k = 0; k < n_; ++k) out[k] = eval(k, d, x);
    return out;
}

Eigen::MatrixXd ModeBasis::eval_at(const Eigen::VectorXd& pts, int d) const {
    Eigen::MatrixXd out(pts.size(), n_);
    for (int i = 0; i < pts.size(); ++i) out.row(i) = eval_all(pts[i], d).transpose();
    return out;
}

}  // namespace inext
