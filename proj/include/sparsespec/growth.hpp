#pragma once

#include "sparsespec/lattice.hpp"
#include "sparsespec/mat2.hpp"
#include "sparsespec/transfer.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace sparsespec::growth {

using lattice::Index;
using lattice::SystemSpec;
using lattice::Trend;

/// ln A_n(λ) = Σ_{i=1}^n ln(1 + |α_i|/√λ). Kind-agnostic: δ′ callers pass 1/λ.
double log_A_n(const SystemSpec& spec, double lambda, Index n);

/// ln of the product controlling decay for the system's kind:
/// A_n(λ) for δ, A_n(1/λ) for δ′.
double log_decay_product(const SystemSpec& spec, double lambda, Index n);

/// Per-index growth data for n = 0..N at a fixed energy λ0.
struct GrowthProfile {
    double lambda0 = 1.0;
    Kind kind = Kind::delta;
    std::vector<double> log_A;     ///< log_decay_product(n)
    std::vector<double> log_gap;   ///< ln Δx_n
    std::vector<double> term;      ///< ln Δx_n - 2 ln A_n
    /// ln ‖ξ_n‖ from ξ_0 = (0,1), present only when every gap up to N is representable.
    std::optional<std::vector<double>> log_norm_xi;

    Index size() const noexcept { return term.size(); }
};

/// Terms of Σ Δx_n / A_n(λ0)^2 (δ) or Σ Δx_n / A_n(1/λ0)^2 (δ′), in log form.
GrowthProfile series_terms(const SystemSpec& spec, double lambda0, Index N);

/// ln of the consecutive-term ratio Δx_n A_{n-1}^2 / (Δx_{n-1} A_n^2).
double log_dalembert_ratio(const SystemSpec& spec, double lambda0, Index n);
double dalembert_ratio(const SystemSpec& spec, double lambda0, Index n);

enum class Verdict { diverges, inconclusive };

std::string_view to_string(Verdict verdict);

struct VerdictOptions {
    double margin = 0.05;
    double tail_fraction = 0.1;
};

struct DivergenceVerdict {
    Verdict verdict = Verdict::inconclusive;
    double liminf_ratio_estimate = 0.0;  ///< minimum ratio over the tail
    double last_ratio = 0.0;
    Trend trend = Trend::mixed;
    Index window_start = 0;
    Index window_end = 0;
    Index tail_start = 0;
    VerdictOptions options;
};

/// Windowed d'Alembert test. Diverges only when the tail minimum exceeds
/// 1 + margin and the tail is nondecreasing; never reports convergence.
DivergenceVerdict series_verdict(const SystemSpec& spec, double lambda0, Index window_start,
                                 Index window_end, const VerdictOptions& options = {});

/// c_λ = (‖U_λ‖ ‖U_λ⁻¹‖)⁻¹
double bound_constant(double lambda);

struct BoundCheck {
    double c_lambda = 0.0;
    double min_slack = 0.0;  ///< min_n ‖ξ_n‖ A_n / (c_λ ‖ξ_0‖)
    Index argmin = 0;
    bool pass = false;
};

/// Checks ‖ξ_n‖ >= c_λ ‖ξ_0‖ / A_n for n = 1..N, A_n per kind.
BoundCheck lower_bound_check(const SystemSpec& spec, double lambda, Index N,
                             Vec2d xi0 = transfer::dirichlet_start, double tolerance = 1e-9);

/// ln ‖ξ_n‖ for n = 0..N via renormalized propagation, so growth of the
/// boundary vectors never overflows. Gaps must still be representable.
std::vector<double> log_norm_profile(const SystemSpec& spec, double lambda, Vec2d xi0, Index N);

/// ln Σ_{n=0}^N Δx_n ‖ξ_n‖^2
double weighted_norm_sum(const SystemSpec& spec, double lambda, Index N,
                         Vec2d xi0 = transfer::dirichlet_start);

double log_sum_exp(std::span<const double> logs);

}  // namespace sparsespec::growth
