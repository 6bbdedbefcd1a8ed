#pragma once

#include <array>
#include <optional>

#include "inext/basis.hpp"
#include "inext/quadrature.hpp"

namespace inext {

// Scalar 1D field sampled at quadrature nodes with derivatives 0..max_d.
struct Profile1 {
    int max_d = 4;
    std::array<Eigen::ArrayXd, 5> d;

    bool has(int k) const { return k >= 0 && k <= max_d; }
    const Eigen::ArrayXd& operator()(int k) const;
    Eigen::ArrayXd& at(int k) { return d[static_cast<size_t>(k)]; }

    static Profile1 zero(int n, int max_d = 4);
};

// Scalar 2D field on a tensor grid; (i, j) holds the mixed derivative of
// order i in x and j in y. Validity is rectangular: i <= max_dx, j <= max_dy.
struct Profile2 {
    int max_dx = 4, max_dy = 4;
    std::array<std::array<Eigen::ArrayXXd, 5>, 5> d;

    bool has(int i, int j) const { return i >= 0 && j >= 0 && i <= max_dx && j <= max_dy; }
    const Eigen::ArrayXXd& operator()(int i, int j) const;
    Eigen::ArrayXXd& at(int i, int j) { return d[size_t(i)][size_t(j)]; }

    static Profile2 zero(int nx, int ny, int max_dx = 4, int max_dy = 4);

    // Derivative-shifted view: result(i,j) = (*this)(i+sx, j+sy).
    Profile2 shift(int sx, int sy) const;
    // Leibniz product; validity is the intersection of the factors'.
    static Profile2 product(const Profile2& a, const Profile2& b);
};

// Synthesis from modal coefficients (all derivative slots valid).
Profile1 synth(const ModeBasis& b, const Eigen::VectorXd& q);
Profile2 synth(const ModeBasis& bx, const ModeBasis& by, const Eigen::MatrixXd& q);

struct BeamFieldState {
    Grid1 grid;
    Profile1 w, u;
    std::optional<Profile1> wt, ut;    // velocities
    std::optional<Profile1> wtt, utt;  // accelerations
};

struct PlateFieldState {
    Grid2 grid;
    Profile2 u, v, w;
    std::optional<Profile2> ut, vt, wt;
    std::optional<Profile2> utt, vtt, wtt;
};

// Tensor-product bases for the three plate fields on one shared quadrature
// grid: w = clamped-free(x) x free-free(y), u and v = clamped polynomial(x)
// x free-free(y). All six 1D bases are sampled on the same Grid1 pair so
// energies, residuals and dynamics assemble on identical nodes.
struct PlateBasisSet {
    ModeBasis wx, wy, ux, uy, vx, vy;
    Grid2 grid;

    static PlateBasisSet make(int n_wx, int n_wy, int n_ix, int n_iy, double lx,
                              double ly, int quad_x = -1, int quad_y = -1);
};

// Lagrange multiplier samples; presence of the optional entries encodes
// which multipliers the variant carries (beam: lambda; plate II: l1, l2;
// plate I: l1, l2, l3). First derivatives ride along for the strong form.
struct MultiplierField {
    std::optional<Profile1> lambda;
    std::optional<Profile2> l1, l2, l3;
};

}  // namespace inext
