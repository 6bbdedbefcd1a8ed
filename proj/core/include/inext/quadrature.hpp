#pragma once

#include <Eigen/Dense>

namespace inext {

// Gauss-Legendre rule with n points on [a, b]; exact for degree <= 2n-1.
void gauss_legendre(int n, double a, double b, Eigen::VectorXd& x, Eigen::VectorXd& w);

// Legendre polynomial derivative table: out(k) = P_k^(m)(t) for k = 0..nmax.
void legendre_derivatives(double t, int nmax, int m, Eigen::VectorXd& out);

// 1D Gauss-Legendre grid on [0, L] with spectral prefix/suffix integration
// and collocation differentiation operators acting on nodal data. The
// nonlocal operators integrate the degree-(n-1) interpolant exactly, so all
// cumulative integrals stay on the quadrature nodes (no re-interpolation
// onto auxiliary grids).
struct Grid1 {
    double length = 1.0;
    Eigen::VectorXd x;       // nodes, ascending
    Eigen::VectorXd w;       // weights
    Eigen::MatrixXd prefix;  // (prefix f)_i = int_0^{x_i} f
    Eigen::MatrixXd suffix;  // (suffix f)_i = int_{x_i}^{L} f
    Eigen::MatrixXd diff;    // nodal derivative of the interpolant

    static Grid1 make(int n, double length);

    int size() const { return static_cast<int>(x.size()); }
    double integrate(const Eigen::ArrayXd& f) const { return (w.array() * f).sum(); }

    // Row r with (r . f) = value of the nodal interpolant at xq.
    Eigen::VectorXd interp_row(double xq) const;

  private:
    Eigen::MatrixXd analysis_;  // nodal -> Legendre coefficients
};

// Tensor grid on [0,Lx] x [0,Ly]. Field samples are stored as
// ArrayXXd(nx, ny): row index ~ x node, column index ~ y node.
struct Grid2 {
    Grid1 gx, gy;

    static Grid2 make(int nx, double lx, int ny, double ly);

    double integrate(const Eigen::ArrayXXd& f) const {
        return gx.w.dot((f.matrix() * gy.w));
    }
    // Apply a Grid1 operator along x (per y-line) or along y (per x-line).
    static Eigen::ArrayXXd along_x(const Eigen::MatrixXd& op, const Eigen::ArrayXXd& f) {
        return (op * f.matrix()).array();
    }
    static Eigen::ArrayXXd along_y(const Eigen::MatrixXd& op, const Eigen::ArrayXXd& f) {
        return (f.matrix() * op.transpose()).array();
    }
};

}  // namespace inext
