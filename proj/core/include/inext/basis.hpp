#pragma once

#include <array>
#include <vector>

#include "inext/quadrature.hpp"

namespace inext {

// Roots beta_k * L of the clamped-free characteristic equation
// 1 + cos(b) cosh(b) = 0, strictly increasing (values for L = 1).
std::vector<double> clamped_free_roots(int n);

// Positive roots of the free-free characteristic equation
// 1 - cos(b) cosh(b) = 0 (elastic modes only; the double root at 0 is the
// rigid pair and is handled separately).
std::vector<double> free_free_roots(int n);

// 1D mode basis with precomputed samples of derivative orders 0..4 at the
// quadrature nodes. All bases are L2-orthonormal on [0, L] (to quadrature
// tolerance). Plate bases are tensor products of these.
class ModeBasis {
  public:
    enum class Kind {
        ClampedFree,  // phi(0) = phi'(0) = 0, phi''(L) = phi'''(L) = 0
        FreeFree,     // two rigid functions (1, linear) first, then elastic modes
        PolyClamped,  // orthonormalized polynomials vanishing at 0
    };

    static ModeBasis clamped_free(int n_modes, double length, int quad_pts = -1);
    static ModeBasis free_free(int n_modes, double length, int quad_pts = -1);
    static ModeBasis poly_clamped(int n_modes, double length, int quad_pts = -1);

    Kind kind() const { return kind_; }
    int size() const { return n_; }
    double length() const { return length_; }
    const Grid1& grid() const { return grid_; }
    double beta(int k) const { return beta_.at(k); }

    // Q x n sample matrix of the d-th derivative at quadrature nodes.
    const Eigen::MatrixXd& samples(int d) const { return B_.at(d); }

    double eval(int k, int d, double x) const;
    Eigen::VectorXd eval_all(double x, int d) const;  // over modes, fixed point
    Eigen::MatrixXd eval_at(const Eigen::VectorXd& pts, int d) const;

  private:
    Kind kind_ = Kind::ClampedFree;
    int n_ = 0;
    double length_ = 1.0;
    std::vector<double> beta_;  // 0 for rigid / polynomial modes
    Grid1 grid_;
    std::array<Eigen::MatrixXd, 5> B_;

    // Analytic modes: scale * (a e^{bx} + b e^{-bx} + c cos(bx) + s sin(bx)).
    struct TrigCoef { double a, b, c, s, beta, scale; };
    std::vector<TrigCoef> trig_;             // ClampedFree / FreeFree elastic
    std::array<double, 2> rigid_scale_{1.0, 1.0};
    Eigen::MatrixXd poly_;                   // PolyClamped: mode = seed * poly_ column

    void build_samples_with_quad(int quad_pts);
    int trig_index(int k) const;
    double eval_unnormalized(int k, int d, double x) const;
    double poly_seed(int j, int d, double x) const;
};

}  // namespace inext
