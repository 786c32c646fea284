#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace sparsespec {

enum class Kind { delta, delta_prime };

std::string_view to_string(Kind kind);

namespace lattice {

using Index = std::size_t;

/// Cap on the index range of analytic generators.
inline constexpr Index default_max_index = 1'000'000'000;

// Position generators. x_0 = 0 is always index 0; the formulas apply for n >= 1.

/// x_n = n!
struct Factorial {
    friend bool operator==(const Factorial&, const Factorial&) = default;
};

/// x_n = c * n^p, c > 0, p >= 1.
struct PowerLaw {
    double c = 1.0;
    double p = 2.0;

    friend bool operator==(const PowerLaw&, const PowerLaw&) = default;
};

/// x_n = c * exp(q * n^r), c, q, r > 0.
struct Exponential {
    double c = 1.0;
    double q = 1.0;
    double r = 1.0;

    friend bool operator==(const Exponential&, const Exponential&) = default;
};

/// Finite ascending list. A leading 0 is inserted when absent.
struct ExplicitPoints {
    std::vector<double> points;

    friend bool operator==(const ExplicitPoints&, const ExplicitPoints&) = default;
};

using PositionGenerator = std::variant<Factorial, PowerLaw, Exponential, ExplicitPoints>;

/// The lattice X = {x_n}. Positions x_0..x_{max_index()} are addressable,
/// so gaps are defined for 0 <= n < max_index().
///
/// Every gap accessor has a log-domain twin computed analytically from the
/// generator; ratios are always formed from logs so that factorial lattices
/// remain usable far beyond the point where n! overflows a double.
class SparseSet {
public:
    explicit SparseSet(PositionGenerator generator, Index max_index = default_max_index);

    const PositionGenerator& generator() const noexcept { return generator_; }
    Index max_index() const noexcept { return max_index_; }

    /// x_n, or +inf when not representable.
    double position(Index n) const;
    /// Δx_n = x_{n+1} - x_n, or +inf when not representable.
    double gap(Index n) const;
    /// ln Δx_n, never formed by exponentiating first.
    double log_gap(Index n) const;
    /// Δx_n / Δx_{n-1} as exp(log_gap(n) - log_gap(n-1)); may be +inf.
    double sparseness_ratio(Index n) const;

private:
    void check_gap_index(Index n) const;

    PositionGenerator generator_;
    Index max_index_;
};

/// α_n = c * n^p
struct PowerStrength {
    double c = 1.0;
    double p = 0.5;

    friend bool operator==(const PowerStrength&, const PowerStrength&) = default;
};

/// α_n = c
struct ConstantStrength {
    double c = 0.0;

    friend bool operator==(const ConstantStrength&, const ConstantStrength&) = default;
};

/// values[i] is α_{i+1}.
struct ExplicitStrengths {
    std::vector<double> values;

    friend bool operator==(const ExplicitStrengths&, const ExplicitStrengths&) = default;
};

using StrengthGenerator = std::variant<PowerStrength, ConstantStrength, ExplicitStrengths>;

/// The coupling sequence α = {α_n}, n >= 1. Real values of either sign.
class StrengthSequence {
public:
    explicit StrengthSequence(StrengthGenerator generator);

    const StrengthGenerator& generator() const noexcept { return generator_; }

    /// α_n for n >= 1.
    double operator()(Index n) const;
    /// Number of defined strengths, when finite.
    std::optional<Index> length() const;
    /// True when α_i > 0 for every i in [first, last].
    bool all_positive(Index first, Index last) const;

private:
    StrengthGenerator generator_;
};

class SystemSpec {
public:
    SystemSpec(Kind kind, SparseSet lattice, StrengthSequence strengths);

    Kind kind() const noexcept { return kind_; }
    const SparseSet& lattice() const noexcept { return lattice_; }
    const StrengthSequence& strengths() const noexcept { return strengths_; }

    double strength(Index n) const { return strengths_(n); }
    /// Largest lattice index that carries a defined strength.
    Index max_index() const noexcept;

private:
    Kind kind_;
    SparseSet lattice_;
    StrengthSequence strengths_;
};

/// Δx_n / (Δx_{n-1} α_n^2), log-safe. +inf when α_n = 0.
double a_ratio(const SystemSpec& spec, Index n);
/// ln of a_ratio; +inf when α_n = 0.
double log_a_ratio(const SystemSpec& spec, Index n);

enum class Trend { increasing, decreasing, constant, mixed };

std::string_view to_string(Trend trend);

struct AEstimateOptions {
    double infinity_threshold = 1e6;
    /// Tail log-log slope above which growth counts as unbounded.
    double min_growth_exponent = 0.1;
    /// Fraction of the window treated as its tail, at least three indices.
    double tail_fraction = 0.1;
};

struct AEstimate {
    double value = 0.0;  ///< windowed minimum of a_ratio
    Index argmin = 0;
    bool infinite = false;   ///< every ratio in the window was +inf
    bool diverging = false;  ///< tail heuristic says a = +inf
    Trend trend = Trend::mixed;
    double tail_growth_exponent = 0.0;
    double last_value = 0.0;
    Index window_start = 0;
    Index window_end = 0;
    Index tail_start = 0;
    AEstimateOptions options;
};

/// Windowed liminf proxy for a over [window_start, window_end].
AEstimate estimate_a(const SystemSpec& spec, Index window_start, Index window_end,
                     const AEstimateOptions& options = {});

/// Summary of a sequence tail: step-wise trend and log-log slope.
struct TailReport {
    Trend trend = Trend::mixed;
    double growth_exponent = 0.0;
    Index tail_start = 0;
};

/// `values[i]` belongs to index `first + i`; values are positive or +inf.
TailReport tail_report(std::span<const double> values, Index first, double tail_fraction);

}  // namespace lattice
}  // namespace sparsespec
