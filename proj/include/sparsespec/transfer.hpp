#pragma once

#include "sparsespec/lattice.hpp"
#include "sparsespec/mat2.hpp"

#include <span>
#include <vector>

namespace sparsespec::transfer {

using lattice::Index;
using lattice::SystemSpec;

/// ξ_0 forced by ψ(0) = 0, normalized by ψ′(0) = 1.
inline constexpr Vec2d dirichlet_start{0.0, 1.0};

/// Propagator of (ψ, ψ′) across a free interval of length d at energy λ > 0.
Mat2d fundamental_matrix(double lambda, double d);

/// [[1,0],[α,1]] for δ, [[1,α],[0,1]] for δ′.
Mat2d jump_matrix(Kind kind, double alpha);

/// Λ_n = J(α_n) M_λ(Δx_{n-1}), n >= 1. Throws OverflowError when Δx_{n-1}
/// is not representable; callers needing large n go through the growth module.
Mat2d step_matrix(const SystemSpec& spec, double lambda, Index n);

/// ξ_0..ξ_N with ξ_n = Λ_n ξ_{n-1}. No renormalization; the first lattice
/// index at which an entry stops being finite is reported via OverflowError.
std::vector<Vec2d> propagate(const SystemSpec& spec, double lambda, Vec2d xi0, Index N);

struct Diagonalizer {
    Mat2c u;      ///< U_λ = [[1, 1], [i√λ, -i√λ]]
    Mat2c u_inv;  ///< U_λ⁻¹ = [[1/2, -i/(2√λ)], [1/2, i/(2√λ)]]
};

Diagonalizer diagonalizer(double lambda);

/// Closed form of Λ̃⁻¹ = U⁻¹ M_λ(-Δx) J(-α) U:
///   δ:  diag(e^{-i√λΔx}, e^{i√λΔx}) (I + iα/(2√λ) [[1,1],[-1,-1]])
///   δ′: diag(e^{-i√λΔx}, e^{i√λΔx}) (I + iα√λ/2 [[-1,1],[-1,1]])
Mat2c tilde_inverse_step(Kind kind, double lambda, double dx, double alpha);

/// Closed form of Λ̃ itself. The nilpotent part squares to zero, so
/// Λ̃ = (I - iβK) diag(e^{i√λΔx}, e^{-i√λΔx}).
Mat2c tilde_step(Kind kind, double lambda, double dx, double alpha);

/// ξ̃_0..ξ̃_N in diagonalized coordinates, built from `tilde_step`.
std::vector<Vec2c> propagate_tilde(const SystemSpec& spec, double lambda, Vec2c xi0, Index N);

/// Spectral norm (largest singular value), closed form from the Gram matrix.
double operator_norm(const Mat2d& m);
double operator_norm(const Mat2c& m);

/// C_λ = sup_d ‖M_λ(d)‖, maximized numerically over one period of d.
double fundamental_norm_bound(double lambda);

struct SolutionPoint {
    double x = 0.0;
    double psi = 0.0;
    double dpsi = 0.0;
};

struct SolutionSample {
    std::vector<SolutionPoint> points;
    Index intervals = 0;  ///< N, the lattice index bounding the grid
};

/// (ψ(x), ψ′(x)) = M_λ(x - x_n) ξ_n on (x_n, x_{n+1}); lattice points take
/// the right limit ξ_n. Grid values must lie in [0, x_N] for a reachable N.
SolutionSample sample_solution(const SystemSpec& spec, double lambda, Vec2d xi0,
                               std::span<const double> grid);

}  // namespace sparsespec::transfer
