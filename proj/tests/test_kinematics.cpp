#include <cmath>
#include <functional>

#include <doctest.h>

#include "inext/kinematics.hpp"

using namespace inext;

namespace {

// w = c x^p with analytic derivatives on the grid nodes.
Profile1 monomial(const Grid1& g, double c, int p) {
    Profile1 w = Profile1::zero(g.size());
    Eigen::ArrayXd x = g.x.array();
    double fact = c;
    for (int d = 0; d <= 4; ++d) {
        if (p - d >= 0) w.at(d) = fact * x.pow(p - d);
        fact *= (p - d);
    }
    return w;
}

Profile2 separable(const Grid2& g, const std::function<double(double, int)>& fx,
                   const std::function<double(double, int)>& fy) {
    const int nx = g.gx.size(), ny = g.gy.size();
    Profile2 w = Profile2::zero(nx, ny);
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j)
            for (int a = 0; a < nx; ++a)
                for (int b = 0; b < ny; ++b)
                    w.at(i, j)(a, b) = fx(g.gx.x[a], i) * fy(g.gy.x[b], j);
    return w;
}

}  // namespace

TEST_CASE("quadratic-order in-axis recovery: w = x^2 gives u = -2/3 x^3") {
    Grid1 g = Grid1::make(20, 1.0);
    Profile1 w = monomial(g, 1.0, 2);
    Profile1 u = beam_recover_u(g, w, ConstraintFlavor::Eta2Beam);
    const Eigen::ArrayXd expect = -(2.0 / 3.0) * g.x.array().cube();
    CHECK((u(0) - expect).abs().maxCoeff() < 1e-13);

    BeamFieldState s{g, w, u, {}, {}, {}, {}};
    CHECK(constraint_residual(s, ConstraintFlavor::Eta2Beam).abs().maxCoeff() <
          1e-13);
}

TEST_CASE("quartic-order recovery: w = a x^2") {
    Grid1 g = Grid1::make(24, 1.0);
    const double a = 0.3;
    Profile1 w = monomial(g, a, 2);
    Profile1 u = beam_recover_u(g, w, ConstraintFlavor::Eta4Beam);
    const Eigen::ArrayXd x = g.x.array();
    const Eigen::ArrayXd expect =
        -(2.0 / 3.0) * a * a * x.cube() - (2.0 / 5.0) * std::pow(a, 4) * x.pow(5);
    CHECK((u(0) - expect).abs().maxCoeff() < 1e-13);
}

TEST_CASE("multiplier recovery integrates the in-axis acceleration from the tip") {
    Grid1 g = Grid1::make(16, 1.0);
    Profile1 l1 = beam_recover_lambda(g, Eigen::ArrayXd::Ones(g.size()));
    CHECK((l1(0) - (1.0 - g.x.array())).abs().maxCoeff() < 1e-13);

    Profile1 l2 = beam_recover_lambda(g, g.x.array());
    CHECK((l2(0) - 0.5 * (1.0 - g.x.array().square())).abs().maxCoeff() < 1e-13);
}

TEST_CASE("plate in-plane recovery for a y-independent field") {
    Grid2 g = Grid2::make(12, 1.0, 8, 1.0);
    const double c = 0.2;
    Profile2 w = separable(
        g,
        [&](double x, int d) {
            return d == 0 ? c * x * x : d == 1 ? 2 * c * x : d == 2 ? 2.0 * c : 0.0;
        },
        [](double, int d) { return d == 0 ? 1.0 : 0.0; });
    auto [u, v] = plate_recover_inplane(g, w);
    for (int i = 0; i < g.gx.size(); ++i)
        for (int j = 0; j < g.gy.size(); ++j) {
            CHECK(u(0, 0)(i, j) ==
                  doctest::Approx(-(2.0 * c * c / 3.0) * std::pow(g.gx.x[i], 3))
                      .epsilon(1e-12));
            CHECK(std::abs(v(0, 0)(i, j)) < 1e-13);
        }
}

TEST_CASE("transverse-motion closure keeps the y-mean of v_tt at zero") {
    Grid2 g = Grid2::make(10, 1.0, 10, 1.0);
    Profile2 w = separable(
        g,
        [](double x, int d) {
            return d == 0 ? x * x : d == 1 ? 2 * x : d == 2 ? 2.0 : 0.0;
        },
        [](double y, int d) {
            return d == 0 ? 1.0 + 0.5 * y : d == 1 ? 0.5 : 0.0;
        });
    Profile2 wt = w, wtt = w;  // any smooth compatible motion
    auto [utt, vtt] = plate_vtt_closure(g, w, wt, wtt);
    const Eigen::VectorXd ymean = vtt.matrix() * g.gy.w;
    CHECK(ymean.cwiseAbs().maxCoeff() < 1e-11);
    CHECK(utt.abs().maxCoeff() > 0.0);
}

TEST_CASE("curvature truncations agree at small slope and rank by order") {
    Grid1 g = Grid1::make(16, 1.0);
    Profile1 w = monomial(g, 0.01, 2);
    const Eigen::ArrayXd exact = beam_curvature_sq(w, CurvatureVariant::BeamExact);
    const Eigen::ArrayXd k2 = beam_curvature_sq(w, CurvatureVariant::BeamEta2);
    const Eigen::ArrayXd k4 = beam_curvature_sq(w, CurvatureVariant::BeamEta4);
    CHECK((exact - k2).abs().maxCoeff() < 1e-6);
    CHECK((exact - k4).abs().maxCoeff() < (exact - k2).abs().maxCoeff());
}

TEST_CASE("gaussian curvature diagnostic") {
    Grid2 g = Grid2::make(6, 1.0, 6, 1.0);
    // w = x^2 + y^2: w_xx w_yy - w_xy^2 = 4.
    Profile2 w = Profile2::zero(6, 6);
    w.at(2, 0).setConstant(2.0);
    w.at(0, 2).setConstant(2.0);
    CHECK((gaussian_curvature_diagnostic(w) - 4.0).abs().maxCoeff() < 1e-14);
    // w = x y: w_xx w_yy - w_xy^2 = -1.
    Profile2 w2 = Profile2::zero(6, 6);
    w2.at(1, 1).setConstant(1.0);
    CHECK((gaussian_curvature_diagnostic(w2) + 1.0).abs().maxCoeff() < 1e-14);
}
