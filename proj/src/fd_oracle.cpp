#include "sparsespec/error.hpp"
#include "sparsespec/spectrum.hpp"

#include <lapacke.h>

#include <cmath>
#include <string>
#include <vector>

namespace sparsespec::spectrum {

namespace {

// Lumped-mass linear finite elements: stiffness K and diagonal mass m give
// the symmetric tridiagonal T = m^{-1/2} K m^{-1/2}. A δ interaction adds α to
// K at its node; a δ′ interaction splits its node into a left/right pair of
// half-mass nodes coupled through the jump form (1/α)|u_R - u_L|^2.
struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> off;  ///< off[i] couples unknowns i and i+1
    std::vector<double> mass;

    Index add_node(double m) {
        diag.push_back(0.0);
        mass.push_back(m);
        if (diag.size() > 1) off.push_back(0.0);
        return diag.size() - 1;
    }
    // Adds the form w |u_i - u_{i+1}|^2.
    void couple(Index i, double w) {
        diag[i] += w;
        diag[i + 1] += w;
        off[i] -= w;
    }
    void symmetrize() {
        for (Index i = 0; i < diag.size(); ++i) diag[i] /= mass[i];
        for (Index i = 0; i < off.size(); ++i) off[i] /= std::sqrt(mass[i] * mass[i + 1]);
    }
};

}  // namespace

EigenvalueList fd_oracle_eigenvalues(const SystemSpec& spec, Index N, const FdOptions& options) {
    const double h = options.h;
    if (!(h > 0.0)) throw ConfigError("finite-difference mesh size must be positive");
    if (N < 1 || N > spec.max_index()) throw RangeError("truncation index outside the system range");

    const auto& lat = spec.lattice();
    std::vector<Index> node_of(N + 1);
    for (Index n = 0; n <= N; ++n) {
        const double x = lat.position(n);
        if (!std::isfinite(x)) throw OverflowError(n, "lattice position not representable");
        const double j = std::round(x / h);
        if (std::abs(x - j * h) > options.alignment_tolerance * h)
            throw ConfigError("lattice point x_" + std::to_string(n) + " = " + std::to_string(x) +
                              " misaligned with mesh h = " + std::to_string(h));
        node_of[n] = static_cast<Index>(j);
        if (n > 0 && node_of[n] <= node_of[n - 1])
            throw ConfigError("mesh h = " + std::to_string(h) + " does not resolve gap " + std::to_string(n - 1));
    }
    const Index last = node_of[N];
    if (last + N > options.max_nodes)
        throw ConfigError("finite-difference mesh too large: " + std::to_string(last) + " nodes");

    const bool neumann_end = spec.kind() == Kind::delta_prime;
    const double edge = 1.0 / h;
    Tridiagonal t;
    Index next_point = 1;
    bool have_prev = false;  // node 0 carries ψ(0) = 0 and is eliminated
    Index prev = 0;
    for (Index j = 1; j <= last; ++j) {
        const bool is_end = j == last;
        if (is_end && !neumann_end) {
            if (have_prev) t.diag[prev] += edge;  // edge into the Dirichlet end
            break;
        }
        const bool at_point = next_point < N && node_of[next_point] == j;
        const double alpha = at_point ? spec.strength(next_point) : 0.0;
        if (at_point) ++next_point;
        const bool split = at_point && spec.kind() == Kind::delta_prime && alpha != 0.0;

        const double m = (split || is_end) ? 0.5 * h : h;
        const Index left = t.add_node(m);
        if (have_prev)
            t.couple(prev, edge);
        else
            t.diag[left] += edge;
        if (at_point && spec.kind() == Kind::delta) t.diag[left] += alpha;
        prev = left;
        if (split) {
            prev = t.add_node(0.5 * h);
            t.couple(left, 1.0 / alpha);
        }
        have_prev = true;
    }
    t.symmetrize();

    const auto n = static_cast<lapack_int>(t.diag.size());
    const lapack_int want = static_cast<lapack_int>(std::min<Index>(options.count, t.diag.size()));
    EigenvalueList out;
    if (want == 0) return out;
    std::vector<double> w(static_cast<std::size_t>(n));
    std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
    lapack_int found = 0;
    double dummy_z = 0.0;
    t.off.resize(static_cast<std::size_t>(n));  // dstevr workspace convention: length n
    const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'N', 'I', n, t.diag.data(), t.off.data(), 0.0, 0.0,
                                           1, want, 0.0, &found, w.data(), &dummy_z, 1, support.data());
    if (info != 0) throw Error(ErrorCode::numeric, "tridiagonal eigensolver failed, info = " + std::to_string(info));
    for (lapack_int i = 0; i < found; ++i) out.values.push_back({w[static_cast<std::size_t>(i)], 0.0, 0.0});
    return out;
}

}  // namespace sparsespec::spectrum
