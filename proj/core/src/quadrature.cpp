#include "inext/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace inext {

void gauss_legendre(int n, double a, double b, Eigen::VectorXd& x, Eigen::VectorXd& w) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
    x.resize(n);
    w.resize(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton on P_n from the Chebyshev-like initial guess.
        long double t = std::cos(M_PI * (i + 0.75L) / (n + 0.5L));
        long double pp = 0.0L;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1.0L, p1 = t;
            for (int k = 2; k <= n; ++k) {
                long double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (t * p1 - p0) / (t * t - 1.0L);
            long double dt = p1 / pp;
            t -= dt;
            if (std::fabs((double)dt) < 1e-17) break;
        }
        const double wi = (double)(2.0L / ((1.0L - t * t) * pp * pp));
        x[i] = mid - half * (double)t;
        x[n - 1 - i] = mid + half * (double)t;
        w[i] = w[n - 1 - i] = wi * half;
    }
}

void legendre_derivatives(double t, int nmax, int m, Eigen::VectorXd& out) {
    // Table D[j][k] = P_k^(j)(t), built by P^(j)_{k+1} = P^(j)_{k-1} + (2k+1) P^(j-1)_k.
    out.resize(nmax + 1);
    std::vector<Eigen::VectorXd> d(m + 1, Eigen::VectorXd::Zero(nmax + 1));
    d[0][0] = 1.0;
    if (nmax >= 1) d[0][1] = t;
    for (int k = 1; k < nmax; ++k)
        d[0][k + 1] = ((2 * k + 1) * t * d[0][k] - k * d[0][k - 1]) / (k + 1);
    for (int j = 1; j <= m; ++j) {
        if (nmax >= 1) d[j][1] = (j == 1) ? 1.0 : 0.0;
        for (int k = 1; k < nmax; ++k)
            d[j][k + 1] = d[j][k - 1] + (2 * k + 1) * d[j - 1][k];
    }
    out = d[m];
}

Grid1 Grid1::make(int n, double length) {
    Grid1 g;
    g.length = length;
    gauss_legendre(n, 0.0, length, g.x, g.w);

    // Analysis: nodal values -> Legendre coefficients on t = 2x/L - 1,
    // exact for the degree-(n-1) interpolant.
    Eigen::MatrixXd V(n, n);  // V(i,k) = P_k(t_i)
    Eigen::VectorXd pk;
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * g.x[i] / length - 1.0;
        legendre_derivatives(t, n - 1, 0, pk);
        V.row(i) = pk.transpose();
    }
    Eigen::MatrixXd analysis(n, n);
    for (int k = 0; k < n; ++k)
        analysis.row(k) = (2.0 * k + 1.0) / length * (V.col(k).array() * g.w.array()).transpose();
    g.analysis_ = analysis;

    // Antiderivative synthesis: int_{-1}^{t} P_0 = t + 1,
    // int_{-1}^{t} P_k = (P_{k+1} - P_{k-1}) / (2k+1) for k >= 1.
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * g.x[i] / length - 1.0;
        legendre_derivatives(t, n, 0, pk);
        A(i, 0) = t + 1.0;
        for (int k = 1; k < n; ++k) A(i, k) = (pk[k + 1] - pk[k - 1]) / (2.0 * k + 1.0);
    }
    g.prefix = (length / 2.0) * A * analysis;
    g.suffix = Eigen::VectorXd::Ones(n) * g.w.transpose() - g.prefix;

    Eigen::MatrixXd Vd(n, n);
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * g.x[i] / length - 1.0;
        legendre_derivatives(t, n - 1, 1, pk);
        Vd.row(i) = pk.transpose();
    }
    g.diff = (2.0 / length) * Vd * analysis;
    return g;
}

Eigen::VectorXd Grid1::interp_row(double xq) const {
    const int n = size();
    Eigen::VectorXd pk;
    legendre_derivatives(2.0 * xq / length - 1.0, n - 1, 0, pk);
    return analysis_.transpose() * pk;
}

Grid2 Grid2::make(int nx, double lx, int ny, double ly) {
    Grid2 g;
    g.gx = Grid1::make(nx, lx);
    g.gy = Grid1::make(ny, ly);
    return g;
}

}  // namespace inext
