#pragma once

#include "sparsespec/growth.hpp"
#include "sparsespec/lattice.hpp"

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sparsespec::spectrum {

using lattice::Index;
using lattice::SystemSpec;

/// Real interval; `hi` may be +inf, in which case the upper end is open.
struct Interval {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    bool lo_closed = true;
    bool hi_closed = false;

    static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }
    static Interval half_line(double lo, bool lo_closed = true) {
        return {lo, std::numeric_limits<double>::infinity(), lo_closed, false};
    }

    /// "[1,inf)", "[0,0.5]", ...
    std::string text() const;
    bool contains(const Interval& other) const;

    friend bool operator==(const Interval&, const Interval&) = default;
};

std::string format_number(double x);

enum class CaseTag { case_i_delta, case_i_delta_prime, case_ii, no_conclusion };
enum class AcStatus { empty, unknown };
enum class NegativeAxis { excluded_by_positivity, unknown };

std::string_view to_string(CaseTag tag);
std::string_view to_string(AcStatus status);
std::string_view to_string(NegativeAxis status);

/// Geometrically spaced λ0 values in [min, max].
std::vector<double> geometric_grid(double min, double max, Index count);

struct ClassifyOptions {
    Index window_start = 100;
    Index window_end = 10000;
    lattice::AEstimateOptions a_options;
    growth::VerdictOptions verdict;
    /// a-estimates below this count as a = 0.
    double zero_threshold = 1e-6;
    /// Smallest tail sparseness ratio accepted as "Δx_n/Δx_{n-1} → ∞".
    double sparse_threshold = 10.0;
    std::vector<double> lambda0_grid = geometric_grid(0.01, 100.0, 81);
};

struct SpectralClassification {
    CaseTag tag = CaseTag::no_conclusion;
    Kind kind = Kind::delta;
    lattice::AEstimate a;

    bool sparse = false;
    bool strengths_growing = false;
    bool strengths_positive = false;

    /// Unset optionals mean "empty" for pp_window in case (ii) and "not
    /// concluded" everywhere else.
    std::optional<Interval> pp_window;
    std::optional<Interval> sc_contains;
    std::optional<Interval> sc_within;
    std::optional<Interval> sigma;  ///< whole spectrum, case (ii) only
    std::optional<Interval> essential;
    AcStatus ac = AcStatus::unknown;
    NegativeAxis negative_axis = NegativeAxis::unknown;

    /// Bound on σ_pp ∩ ℝ₊ implied by the diverging λ0 grid points: the
    /// smallest such λ0 for δ, the largest for δ′.
    std::optional<double> grid_pp_bound;
    Index grid_diverging = 0;

    std::vector<std::string> diagnostics;
    std::vector<std::string> caveats;
};

SpectralClassification classify(const SystemSpec& spec, const ClassifyOptions& options = {});

struct Exclusion {
    growth::DivergenceVerdict series;
    /// Part of ℝ₊ free of point spectrum, when the series diverges.
    std::optional<Interval> excluded;
    /// Part of ℝ₊ where σ_p ∩ ℝ₊ may live.
    std::optional<Interval> allowed;

    bool diverges() const noexcept { return series.verdict == growth::Verdict::diverges; }
};

/// δ: σ_p ∩ ℝ₊ ⊂ [0, λ0); δ′: σ_p ∩ ℝ₊ ⊂ (λ0, ∞) once the series diverges.
Exclusion point_spectrum_exclusion(const SystemSpec& spec, double lambda0, Index window_start,
                                   Index window_end, const growth::VerdictOptions& options = {});

struct Eigenvalue {
    double lambda = 0.0;
    double residual = 0.0;
    double bracket_width = 0.0;
};

struct EigenvalueList {
    std::vector<Eigenvalue> values;
    /// Set when sign-change accounting suggests roots were missed.
    bool unresolved = false;
    Index suspected_misses = 0;
    Index expected_count = 0;

    std::vector<double> lambdas() const;
    Index size() const noexcept { return values.size(); }
};

/// (πk/l)^2 for k = 1..k_max.
EigenvalueList dirichlet_eigenvalues(double l, Index k_max);
/// (πk/l)^2 for k = 0..k_max.
EigenvalueList neumann_eigenvalues(double l, Index k_max);

/// λ_{s,n} = (π ⌈√s Δx/π⌉ / Δx)^2, the smallest Dirichlet eigenvalue of an
/// interval of length Δx that is >= s.
double lambda_s_n(double s, double dx);
/// (π/Δx)(2√s + π/Δx): one ceiling step above s.
double lambda_s_n_bound(double s, double dx);

struct ShootingOptions {
    double lambda_min = 0.1;
    double lambda_max = 100.0;
    Index grid_intervals = 2000;
    double tol = 1e-10;
};

/// Closure function on [0, x_N]: ψ(x_N; λ) for δ (Dirichlet), ψ′(x_N; λ) for δ′
/// (Neumann), from ξ_0 = (0, 1).
double boundary_function(const SystemSpec& spec, Index N, double lambda);

/// Zeros of ψ(·; λ) in (0, x_N), i.e. the number of Dirichlet eigenvalues
/// below λ for δ systems.
Index oscillation_count(const SystemSpec& spec, Index N, double lambda);

/// Shooting eigensolver for the truncation to [0, x_N].
EigenvalueList truncated_eigenvalues(const SystemSpec& spec, Index N, const ShootingOptions& options = {});

struct FdOptions {
    double h = 1e-3;
    Index count = 5;
    /// Largest accepted distance from a lattice point to its mesh node, in units of h.
    double alignment_tolerance = 0.5;
    Index max_nodes = 100000;
};

/// Second-order finite-difference eigenvalues on [0, x_N], Dirichlet at 0
/// and the kind's closure at x_N. Independent of the transfer-matrix path.
EigenvalueList fd_oracle_eigenvalues(const SystemSpec& spec, Index N, const FdOptions& options = {});

struct ProbeRow {
    Index n = 0;
    double dx = 0.0;
    double lambda = 0.0;
    double distance = 0.0;  ///< λ_{s,n} - s
    double bound = 0.0;
    bool within_bound = false;
};

struct ProbeSeries {
    double s = 0.0;
    std::vector<ProbeRow> rows;
    bool all_above = true;      ///< λ_{s,n} >= s at every n
    bool all_within = true;     ///< one-ceiling-step bound at every n
    bool decreasing = true;     ///< distance strictly decreasing in n
};

/// λ_{s,n} over lattice gaps n = first..last for each s.
std::vector<ProbeSeries> essential_spectrum_probe(const SystemSpec& spec, std::span<const double> s_values,
                                                  Index first, Index last);

}  // namespace sparsespec::spectrum
