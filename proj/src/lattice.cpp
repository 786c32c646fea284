#include "sparsespec/lattice.hpp"

#include "sparsespec/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace sparsespec {

std::string_view to_string(Kind kind) {
    return kind == Kind::delta ? "delta" : "delta_prime";
}

namespace lattice {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr Index max_factorial_table = 171;

const std::array<double, max_factorial_table>& factorial_table() {
    static const auto table = [] {
        std::array<double, max_factorial_table> t{};
        t[0] = 1.0;
        for (Index k = 1; k < t.size(); ++k) t[k] = t[k - 1] * static_cast<double>(k);
        return t;
    }();
    return table;
}

double factorial(Index n) {
    return n < max_factorial_table ? factorial_table()[n] : inf;
}

// (n+1)^r - n^r relative to n^r, i.e. (1 + 1/n)^r - 1, for n >= 1.
double relative_power_step(Index n, double r) {
    return std::expm1(r * std::log1p(1.0 / static_cast<double>(n)));
}

std::vector<double> normalize_points(std::vector<double> points) {
    if (points.empty() || points.front() != 0.0) points.insert(points.begin(), 0.0);
    if (points.size() < 2) throw ArgumentError("explicit lattice needs at least one point besides 0");
    for (Index i = 1; i < points.size(); ++i) {
        if (!std::isfinite(points[i]) || !(points[i] > points[i - 1]))
            throw ArgumentError("explicit lattice points must be finite and strictly increasing from 0");
    }
    return points;
}

struct LogGap {
    Index n;
    double operator()(const Factorial&) const {
        if (n == 0) return 0.0;  // Δx_0 = 1! - 0
        const double nd = static_cast<double>(n);
        return std::log(nd) + std::lgamma(nd + 1.0);
    }
    double operator()(const PowerLaw& g) const {
        if (n == 0) return std::log(g.c);
        const double nd = static_cast<double>(n);
        return std::log(g.c) + g.p * std::log(nd) + std::log(relative_power_step(n, g.p));
    }
    double operator()(const Exponential& g) const {
        if (n == 0) return std::log(g.c) + g.q;
        const double nr = std::pow(static_cast<double>(n), g.r);
        const double exponent_step = g.q * nr * relative_power_step(n, g.r);
        return std::log(g.c) + g.q * nr + std::log(std::expm1(exponent_step));
    }
    double operator()(const ExplicitPoints& g) const {
        return std::log(g.points[n + 1] - g.points[n]);
    }
};

struct Gap {
    Index n;
    double operator()(const Factorial&) const {
        if (n == 0) return 1.0;
        return static_cast<double>(n) * factorial(n);
    }
    double operator()(const ExplicitPoints& g) const { return g.points[n + 1] - g.points[n]; }
    template <typename G>
    double operator()(const G& g) const {
        return std::exp(LogGap{n}(g));
    }
};

struct Position {
    Index n;
    double operator()(const Factorial&) const { return n == 0 ? 0.0 : factorial(n); }
    double operator()(const PowerLaw& g) const {
        return g.c * std::pow(static_cast<double>(n), g.p);
    }
    double operator()(const Exponential& g) const {
        return n == 0 ? 0.0 : g.c * std::exp(g.q * std::pow(static_cast<double>(n), g.r));
    }
    double operator()(const ExplicitPoints& g) const { return g.points[n]; }
};

}  // namespace

SparseSet::SparseSet(PositionGenerator generator, Index max_index)
    : generator_(std::move(generator)), max_index_(max_index) {
    std::visit(
        [this](auto& g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, PowerLaw>) {
                if (!(g.c > 0.0) || !(g.p >= 1.0) || !std::isfinite(g.c) || !std::isfinite(g.p))
                    throw ArgumentError("power lattice needs c > 0 and p >= 1");
            } else if constexpr (std::is_same_v<G, Exponential>) {
                if (!(g.c > 0.0) || !(g.q > 0.0) || !(g.r > 0.0))
                    throw ArgumentError("exponential lattice needs c, q, r > 0");
            } else if constexpr (std::is_same_v<G, ExplicitPoints>) {
                g.points = normalize_points(std::move(g.points));
                max_index_ = std::min(max_index_, g.points.size() - 1);
            }
        },
        generator_);
    if (max_index_ < 1) throw ArgumentError("lattice needs max_index >= 1");
}

void SparseSet::check_gap_index(Index n) const {
    if (n >= max_index_)
        throw RangeError("gap index " + std::to_string(n) + " beyond lattice range (max_index " +
                         std::to_string(max_index_) + ")");
}

double SparseSet::position(Index n) const {
    if (n > max_index_)
        throw RangeError("position index " + std::to_string(n) + " beyond lattice range");
    return std::visit(Position{n}, generator_);
}

double SparseSet::gap(Index n) const {
    check_gap_index(n);
    return std::visit(Gap{n}, generator_);
}

double SparseSet::log_gap(Index n) const {
    check_gap_index(n);
    return std::visit(LogGap{n}, generator_);
}

double SparseSet::sparseness_ratio(Index n) const {
    if (n < 1) throw RangeError("sparseness ratio needs n >= 1");
    return std::exp(log_gap(n) - log_gap(n - 1));
}

StrengthSequence::StrengthSequence(StrengthGenerator generator) : generator_(std::move(generator)) {
    std::visit(
        [](const auto& g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, PowerStrength>) {
                if (!std::isfinite(g.c) || !std::isfinite(g.p))
                    throw ArgumentError("power strengths need finite c and p");
            } else if constexpr (std::is_same_v<G, ConstantStrength>) {
                if (!std::isfinite(g.c)) throw ArgumentError("constant strength must be finite");
            } else {
                for (double v : g.values)
                    if (!std::isfinite(v)) throw ArgumentError("explicit strengths must be finite");
            }
        },
        generator_);
}

double StrengthSequence::operator()(Index n) const {
    if (n < 1) throw RangeError("strengths are indexed from 1");
    return std::visit(
        [n](const auto& g) -> double {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, PowerStrength>) {
                return g.c * std::pow(static_cast<double>(n), g.p);
            } else if constexpr (std::is_same_v<G, ConstantStrength>) {
                return g.c;
            } else {
                if (n > g.values.size())
                    throw RangeError("strength index " + std::to_string(n) +
                                     " beyond explicit list of length " +
                                     std::to_string(g.values.size()));
                return g.values[n - 1];
            }
        },
        generator_);
}

std::optional<Index> StrengthSequence::length() const {
    if (const auto* e = std::get_if<ExplicitStrengths>(&generator_)) return e->values.size();
    return std::nullopt;
}

bool StrengthSequence::all_positive(Index first, Index last) const {
    if (const auto* p = std::get_if<PowerStrength>(&generator_)) return p->c > 0.0;
    if (const auto* c = std::get_if<ConstantStrength>(&generator_)) return c->c > 0.0;
    for (Index i = std::max<Index>(first, 1); i <= last; ++i)
        if (!((*this)(i) > 0.0)) return false;
    return true;
}

SystemSpec::SystemSpec(Kind kind, SparseSet lattice, StrengthSequence strengths)
    : kind_(kind), lattice_(std::move(lattice)), strengths_(std::move(strengths)) {}

Index SystemSpec::max_index() const noexcept {
    const Index n = lattice_.max_index();
    if (const auto len = strengths_.length()) return std::min(n, *len);
    return n;
}

double log_a_ratio(const SystemSpec& spec, Index n) {
    if (n < 1) throw RangeError("a-ratio needs n >= 1");
    const double alpha = spec.strength(n);
    const double log_ratio = spec.lattice().log_gap(n) - spec.lattice().log_gap(n - 1);
    if (alpha == 0.0) return inf;
    return log_ratio - 2.0 * std::log(std::abs(alpha));
}

double a_ratio(const SystemSpec& spec, Index n) {
    return std::exp(log_a_ratio(spec, n));
}

std::string_view to_string(Trend trend) {
    switch (trend) {
        case Trend::increasing: return "increasing";
        case Trend::decreasing: return "decreasing";
        case Trend::constant: return "constant";
        case Trend::mixed: break;
    }
    return "mixed";
}

TailReport tail_report(std::span<const double> values, Index first, double tail_fraction) {
    TailReport report;
    const Index len = values.size();
    if (len == 0) return report;
    Index tail_len = static_cast<Index>(std::ceil(tail_fraction * static_cast<double>(len)));
    tail_len = std::min(len, std::max<Index>(tail_len, 3));
    const Index offset = len - tail_len;
    report.tail_start = first + offset;

    bool up = false;
    bool down = false;
    for (Index i = offset + 1; i < len; ++i) {
        if (values[i] > values[i - 1]) up = true;
        if (values[i] < values[i - 1]) down = true;
    }
    report.trend = up && down ? Trend::mixed
                 : up         ? Trend::increasing
                 : down       ? Trend::decreasing
                              : Trend::constant;

    const double v0 = values[offset];
    const double v1 = values[len - 1];
    const double n0 = static_cast<double>(report.tail_start);
    const double n1 = static_cast<double>(first + len - 1);
    if (tail_len < 2 || n0 <= 0.0 || v0 == v1) {
        report.growth_exponent = 0.0;
    } else if (std::isinf(v1)) {
        report.growth_exponent = inf;
    } else if (std::isinf(v0)) {
        report.growth_exponent = -inf;
    } else {
        report.growth_exponent = (std::log(v1) - std::log(v0)) / (std::log(n1) - std::log(n0));
    }
    return report;
}

AEstimate estimate_a(const SystemSpec& spec, Index window_start, Index window_end,
                     const AEstimateOptions& options) {
    if (window_start < 1 || window_end <= window_start)
        throw ArgumentError("a-estimate window must satisfy 1 <= start < end");
    if (window_end >= spec.lattice().max_index() || window_end > spec.max_index())
        throw RangeError("a-estimate window end " + std::to_string(window_end) +
                         " beyond lattice/strength range");

    std::vector<double> ratios(window_end - window_start + 1);
    AEstimate est;
    est.options = options;
    est.window_start = window_start;
    est.window_end = window_end;
    est.value = inf;
    est.argmin = window_start;
    for (Index n = window_start; n <= window_end; ++n) {
        const double r = a_ratio(spec, n);
        ratios[n - window_start] = r;
        if (r < est.value) {
            est.value = r;
            est.argmin = n;
        }
    }
    est.infinite = std::isinf(est.value);
    est.last_value = ratios.back();

    const TailReport tail = tail_report(ratios, window_start, options.tail_fraction);
    est.trend = tail.trend;
    est.tail_growth_exponent = tail.growth_exponent;
    est.tail_start = tail.tail_start;
    est.diverging = est.infinite ||
                    (tail.trend == Trend::increasing &&
                     (est.last_value > options.infinity_threshold ||
                      tail.growth_exponent >= options.min_growth_exponent));
    return est;
}

}  // namespace lattice
}  // namespace sparsespec
