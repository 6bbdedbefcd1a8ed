#include "inext/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace inext {

const Eigen::ArrayXd& Profile1::operator()(int k) const {
    if (!has(k)) throw std::out_of_range("Profile1: derivative order not available");
    return d[static_cast<size_t>(k)];
}

Profile1 Profile1::zero(int n, int max_d) {
    Profile1 p;
    p.max_d = max_d;
    for (int k = 0; k <= max_d; ++k) p.d[size_t(k)] = Eigen::ArrayXd::Zero(n);
    return p;
}

const Eigen::ArrayXXd& Profile2::operator()(int i, int j) const {
    if (!has(i, j)) throw std::out_of_range("Profile2: derivative order not available");
    return d[size_t(i)][size_t(j)];
}

Profile2 Profile2::zero(int nx, int ny, int max_dx, int max_dy) {
    Profile2 p;
    p.max_dx = max_dx;
    p.max_dy = max_dy;
    for (int i = 0; i <= max_dx; ++i)
        for (int j = 0; j <= max_dy; ++j) p.at(i, j) = Eigen::ArrayXXd::Zero(nx, ny);
    return p;
}

Profile2 Profile2::shift(int sx, int sy) const {
    Profile2 p;
    p.max_dx = max_dx - sx;
    p.max_dy = max_dy - sy;
    if (p.max_dx < 0 || p.max_dy < 0)
        throw std::out_of_range("Profile2::shift: no derivatives left");
    for (int i = 0; i <= p.max_dx; ++i)
        for (int j = 0; j <= p.max_dy; ++j) p.at(i, j) = (*this)(i + sx, j + sy);
    return p;
}

namespace {
long binom(int n, int k) {
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}
}  // namespace

Profile2 Profile2::product(const Profile2& a, const Profile2& b) {
    Profile2 p;
    p.max_dx = std::min(a.max_dx, b.max_dx);
    p.max_dy = std::min(a.max_dy, b.max_dy);
    for (int i = 0; i <= p.max_dx; ++i)
        for (int j = 0; j <= p.max_dy; ++j) {
            Eigen::ArrayXXd acc =
                Eigen::ArrayXXd::Zero(a(0, 0).rows(), a(0, 0).cols());
            for (int ii = 0; ii <= i; ++ii)
                for (int jj = 0; jj <= j; ++jj)
                    acc += double(binom(i, ii) * binom(j, jj)) *
                           (a(ii, jj) * b(i - ii, j - jj));
            p.at(i, j) = acc;
        }
    return p;
}

PlateBasisSet PlateBasisSet::make(int n_wx, int n_wy, int n_ix, int n_iy, double lx,
                                  double ly, int quad_x, int quad_y) {
    const int qx = quad_x > 0 ? quad_x : std::max(4 * std::max(n_wx, n_ix), 8);
    const int qy = quad_y > 0 ? quad_y : std::max(4 * std::max(n_wy, n_iy), 8);
    PlateBasisSet s{ModeBasis::clamped_free(n_wx, lx, qx),
                    ModeBasis::free_free(n_wy, ly, qy),
                    ModeBasis::poly_clamped(n_ix, lx, qx),
                    ModeBasis::free_free(n_iy, ly, qy),
                    ModeBasis::poly_clamped(n_ix, lx, qx),
                    ModeBasis::free_free(n_iy, ly, qy),
                    Grid2{}};
    s.grid.gx = s.wx.grid();
    s.grid.gy = s.wy.grid();
    return s;
}

Profile1 synth(const ModeBasis& b, const Eigen::VectorXd& q) {
    Profile1 p;
    p.max_d = 4;
    for (int k = 0; k <= 4; ++k) p.at(k) = (b.samples(k) * q).array();
    return p;
}

Profile2 synth(const ModeBasis& bx, const ModeBasis& by, const Eigen::MatrixXd& q) {
    Profile2 p;
    p.max_dx = 4;
    p.max_dy = 4;
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j)
            p.at(i, j) = (bx.samples(i) * q * by.samples(j).transpose()).array();
    return p;
}

}  // namespace inext
