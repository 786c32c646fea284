#include "sparsespec/transfer.hpp"

#include "sparsespec/error.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace sparsespec::transfer {

namespace {

void require_positive_energy(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw DomainError("energy must be a finite positive number, got " + std::to_string(lambda));
}

// Nilpotent direction K with scale β such that Λ̃⁻¹ = D (I + iβK).
Mat2c nilpotent_part(Kind kind, double lambda, double alpha, double& beta) {
    const double k = std::sqrt(lambda);
    if (kind == Kind::delta) {
        beta = alpha / (2.0 * k);
        return {1.0, 1.0, -1.0, -1.0};
    }
    beta = alpha * k / 2.0;
    return {-1.0, 1.0, -1.0, 1.0};
}

inline double conjugate(double x) { return x; }
inline Complex conjugate(const Complex& x) { return std::conj(x); }

template <typename T>
double spectral_norm(const Mat2<T>& m) {
    const double scale = max_abs_entry(m);
    if (scale == 0.0) return 0.0;
    if (!std::isfinite(scale)) return scale;
    const Mat2<T> s = (T(1.0 / scale)) * m;
    // Eigenvalues of s s*: rows p, q and cross term r; the discriminant is a
    // sum of squares, so near-isometries do not cancel.
    const double p = std::norm(s.a) + std::norm(s.b);
    const double q = std::norm(s.c) + std::norm(s.d);
    const double r = std::abs(s.a * conjugate(s.c) + s.b * conjugate(s.d));
    const double fro2 = p + q;
    const double disc = (p - q) * (p - q) + 4.0 * r * r;
    return scale * std::sqrt(0.5 * (fro2 + std::sqrt(disc)));
}

}  // namespace

Mat2d fundamental_matrix(double lambda, double d) {
    require_positive_energy(lambda);
    const double k = std::sqrt(lambda);
    if (d == 0.0) return Mat2d::identity();
    const double c = std::cos(d * k);
    const double s = std::sin(d * k);
    return {c, s / k, -k * s, c};
}

Mat2d jump_matrix(Kind kind, double alpha) {
    return kind == Kind::delta ? Mat2d{1.0, 0.0, alpha, 1.0} : Mat2d{1.0, alpha, 0.0, 1.0};
}

Mat2d step_matrix(const SystemSpec& spec, double lambda, Index n) {
    require_positive_energy(lambda);
    if (n < 1) throw RangeError("step matrices are indexed from 1");
    const double dx = spec.lattice().gap(n - 1);
    if (!std::isfinite(dx))
        throw OverflowError(n, "gap before lattice index " + std::to_string(n) +
                                   " is not representable; use the log-domain growth path");
    return jump_matrix(spec.kind(), spec.strength(n)) * fundamental_matrix(lambda, dx);
}

std::vector<Vec2d> propagate(const SystemSpec& spec, double lambda, Vec2d xi0, Index N) {
    require_positive_energy(lambda);
    if (xi0.first == 0.0 && xi0.second == 0.0) throw ArgumentError("initial boundary vector is zero");
    if (N > spec.max_index()) throw RangeError("propagation length beyond system range");
    std::vector<Vec2d> xi;
    xi.reserve(N + 1);
    xi.push_back(xi0);
    for (Index n = 1; n <= N; ++n) {
        const Vec2d next = step_matrix(spec, lambda, n) * xi.back();
        if (!is_finite(next))
            throw OverflowError(n, "boundary vector overflow at lattice index " + std::to_string(n));
        xi.push_back(next);
    }
    return xi;
}

Diagonalizer diagonalizer(double lambda) {
    require_positive_energy(lambda);
    const double k = std::sqrt(lambda);
    const Complex i{0.0, 1.0};
    Diagonalizer out;
    out.u = {1.0, 1.0, i * k, -i * k};
    out.u_inv = {0.5, -i / (2.0 * k), 0.5, i / (2.0 * k)};
    return out;
}

Mat2c tilde_inverse_step(Kind kind, double lambda, double dx, double alpha) {
    require_positive_energy(lambda);
    double beta = 0.0;
    const Mat2c nil = nilpotent_part(kind, lambda, alpha, beta);
    const double phase = std::sqrt(lambda) * dx;
    const Mat2c rotation = Mat2c::diagonal(std::polar(1.0, -phase), std::polar(1.0, phase));
    return rotation * (Mat2c::identity() + Complex{0.0, beta} * nil);
}

Mat2c tilde_step(Kind kind, double lambda, double dx, double alpha) {
    require_positive_energy(lambda);
    double beta = 0.0;
    const Mat2c nil = nilpotent_part(kind, lambda, alpha, beta);
    const double phase = std::sqrt(lambda) * dx;
    const Mat2c rotation = Mat2c::diagonal(std::polar(1.0, phase), std::polar(1.0, -phase));
    return (Mat2c::identity() - Complex{0.0, beta} * nil) * rotation;
}

std::vector<Vec2c> propagate_tilde(const SystemSpec& spec, double lambda, Vec2c xi0, Index N) {
    require_positive_energy(lambda);
    if (N > spec.max_index()) throw RangeError("propagation length beyond system range");
    std::vector<Vec2c> xi;
    xi.reserve(N + 1);
    xi.push_back(xi0);
    for (Index n = 1; n <= N; ++n) {
        const double dx = spec.lattice().gap(n - 1);
        if (!std::isfinite(dx))
            throw OverflowError(n, "gap before lattice index " + std::to_string(n) + " is not representable");
        const Vec2c next = tilde_step(spec.kind(), lambda, dx, spec.strength(n)) * xi.back();
        if (!is_finite(next))
            throw OverflowError(n, "boundary vector overflow at lattice index " + std::to_string(n));
        xi.push_back(next);
    }
    return xi;
}

double operator_norm(const Mat2d& m) { return spectral_norm(m); }
double operator_norm(const Mat2c& m) { return spectral_norm(m); }

double fundamental_norm_bound(double lambda) {
    require_positive_energy(lambda);
    // M_λ(d + π/√λ) = -M_λ(d), so one half-period covers every norm value.
    const double period = std::numbers::pi / std::sqrt(lambda);
    const auto neg_norm = [lambda](double d) { return -operator_norm(fundamental_matrix(lambda, d)); };

    constexpr int samples = 256;
    const double step = period / samples;
    int best = 0;
    double best_value = neg_norm(0.0);
    for (int i = 1; i < samples; ++i) {
        const double v = neg_norm(i * step);
        if (v < best_value) {
            best_value = v;
            best = i;
        }
    }
    const double lo = (best - 1) * step;
    const double hi = (best + 1) * step;
    const auto refined = boost::math::tools::brent_find_minima(neg_norm, lo, hi, 52);
    return std::max(-best_value, -refined.second);
}

SolutionSample sample_solution(const SystemSpec& spec, double lambda, Vec2d xi0,
                               std::span<const double> grid) {
    require_positive_energy(lambda);
    SolutionSample sample;
    if (grid.empty()) return sample;

    const auto [min_it, max_it] = std::minmax_element(grid.begin(), grid.end());
    if (*min_it < 0.0) throw ArgumentError("sample grid must lie in [0, x_N]");
    const lattice::SparseSet& lat = spec.lattice();

    std::vector<double> positions{lat.position(0)};
    while (positions.back() < *max_it) {
        const Index n = positions.size();
        if (n > spec.max_index())
            throw RangeError("sample grid extends beyond the system range");
        const double x = lat.position(n);
        if (!std::isfinite(x))
            throw OverflowError(n, "lattice position " + std::to_string(n) + " is not representable");
        positions.push_back(x);
    }
    const Index N = positions.size() - 1;
    sample.intervals = N;
    const std::vector<Vec2d> xi = propagate(spec, lambda, xi0, N);

    sample.points.reserve(grid.size());
    for (double x : grid) {
        // Last lattice point not exceeding x.
        const auto it = std::upper_bound(positions.begin(), positions.end(), x);
        const Index n = static_cast<Index>(std::distance(positions.begin(), it)) - 1;
        const Vec2d v = fundamental_matrix(lambda, x - positions[n]) * xi[n];
        sample.points.push_back({x, v.first, v.second});
    }
    return sample;
}

}  // namespace sparsespec::transfer
