#include "sparsespec/growth.hpp"

#include "sparsespec/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sparsespec::growth {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void require_positive_energy(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw DomainError("energy must be a finite positive number, got " + std::to_string(lambda));
}

// ln(1 + |α|/√λ) for δ, ln(1 + |α|√λ) for δ′.
double log_factor(Kind kind, double lambda, double alpha) {
    const double k = std::sqrt(lambda);
    return std::log1p(kind == Kind::delta ? std::abs(alpha) / k : std::abs(alpha) * k);
}

}  // namespace

double log_A_n(const SystemSpec& spec, double lambda, Index n) {
    require_positive_energy(lambda);
    double sum = 0.0;
    for (Index i = 1; i <= n; ++i) sum += log_factor(Kind::delta, lambda, spec.strength(i));
    return sum;
}

double log_decay_product(const SystemSpec& spec, double lambda, Index n) {
    return spec.kind() == Kind::delta ? log_A_n(spec, lambda, n) : log_A_n(spec, 1.0 / lambda, n);
}

GrowthProfile series_terms(const SystemSpec& spec, double lambda0, Index N) {
    require_positive_energy(lambda0);
    if (N >= spec.lattice().max_index() || N > spec.max_index())
        throw RangeError("series length " + std::to_string(N) + " beyond system range");
    GrowthProfile profile;
    profile.lambda0 = lambda0;
    profile.kind = spec.kind();
    profile.log_A.resize(N + 1);
    profile.log_gap.resize(N + 1);
    profile.term.resize(N + 1);

    double log_a = 0.0;
    for (Index n = 0; n <= N; ++n) {
        if (n > 0) log_a += log_factor(spec.kind(), lambda0, spec.strength(n));
        profile.log_A[n] = log_a;
        profile.log_gap[n] = spec.lattice().log_gap(n);
        profile.term[n] = profile.log_gap[n] - 2.0 * log_a;
    }

    try {
        profile.log_norm_xi = log_norm_profile(spec, lambda0, transfer::dirichlet_start, N);
    } catch (const OverflowError&) {
        profile.log_norm_xi.reset();
    }
    return profile;
}

double log_dalembert_ratio(const SystemSpec& spec, double lambda0, Index n) {
    require_positive_energy(lambda0);
    if (n < 1) throw RangeError("d'Alembert ratio needs n >= 1");
    const auto& lat = spec.lattice();
    return lat.log_gap(n) - lat.log_gap(n - 1) - 2.0 * log_factor(spec.kind(), lambda0, spec.strength(n));
}

double dalembert_ratio(const SystemSpec& spec, double lambda0, Index n) {
    return std::exp(log_dalembert_ratio(spec, lambda0, n));
}

std::string_view to_string(Verdict verdict) {
    return verdict == Verdict::diverges ? "diverges" : "inconclusive";
}

DivergenceVerdict series_verdict(const SystemSpec& spec, double lambda0, Index window_start,
                                 Index window_end, const VerdictOptions& options) {
    require_positive_energy(lambda0);
    if (window_start < 1 || window_end < window_start)
        throw ArgumentError("verdict window must satisfy 1 <= start <= end");

    std::vector<double> ratios(window_end - window_start + 1);
    for (Index n = window_start; n <= window_end; ++n)
        ratios[n - window_start] = dalembert_ratio(spec, lambda0, n);

    const auto tail = lattice::tail_report(ratios, window_start, options.tail_fraction);
    DivergenceVerdict v;
    v.options = options;
    v.window_start = window_start;
    v.window_end = window_end;
    v.tail_start = tail.tail_start;
    v.trend = tail.trend;
    v.last_ratio = ratios.back();
    v.liminf_ratio_estimate =
        *std::min_element(ratios.begin() + static_cast<std::ptrdiff_t>(tail.tail_start - window_start),
                          ratios.end());
    const bool nondecreasing = tail.trend == Trend::increasing || tail.trend == Trend::constant;
    v.verdict = (nondecreasing && v.liminf_ratio_estimate > 1.0 + options.margin) ? Verdict::diverges
                                                                                  : Verdict::inconclusive;
    return v;
}

double bound_constant(double lambda) {
    const auto d = transfer::diagonalizer(lambda);
    return 1.0 / (transfer::operator_norm(d.u) * transfer::operator_norm(d.u_inv));
}

BoundCheck lower_bound_check(const SystemSpec& spec, double lambda, Index N, Vec2d xi0, double tolerance) {
    const std::vector<Vec2d> xi = transfer::propagate(spec, lambda, xi0, N);
    BoundCheck check;
    check.c_lambda = bound_constant(lambda);
    const double norm0 = norm(xi0);
    const double decay_lambda = spec.kind() == Kind::delta ? lambda : 1.0 / lambda;

    check.min_slack = inf;
    double log_a = 0.0;
    for (Index n = 1; n <= N; ++n) {
        log_a += log_factor(Kind::delta, decay_lambda, spec.strength(n));
        const double slack = norm(xi[n]) * std::exp(log_a) / (check.c_lambda * norm0);
        if (slack < check.min_slack) {
            check.min_slack = slack;
            check.argmin = n;
        }
    }
    if (N == 0) check.min_slack = 1.0 / check.c_lambda;
    check.pass = check.min_slack >= 1.0 - tolerance;
    return check;
}

std::vector<double> log_norm_profile(const SystemSpec& spec, double lambda, Vec2d xi0, Index N) {
    if (xi0.first == 0.0 && xi0.second == 0.0) throw ArgumentError("initial boundary vector is zero");
    if (N > spec.max_index()) throw RangeError("propagation length beyond system range");
    std::vector<double> out;
    out.reserve(N + 1);
    double scale = norm(xi0);
    Vec2d v{xi0.first / scale, xi0.second / scale};
    double log_scale = std::log(scale);
    out.push_back(log_scale);
    for (Index n = 1; n <= N; ++n) {
        v = transfer::step_matrix(spec, lambda, n) * v;
        const double s = norm(v);
        if (!std::isfinite(s) || s == 0.0)
            throw OverflowError(n, "renormalized propagation failed at lattice index " + std::to_string(n));
        v = {v.first / s, v.second / s};
        log_scale += std::log(s);
        out.push_back(log_scale);
    }
    return out;
}

double weighted_norm_sum(const SystemSpec& spec, double lambda, Index N, Vec2d xi0) {
    const std::vector<double> log_norms = log_norm_profile(spec, lambda, xi0, N);
    std::vector<double> logs(N + 1);
    for (Index n = 0; n <= N; ++n) logs[n] = spec.lattice().log_gap(n) + 2.0 * log_norms[n];
    return log_sum_exp(logs);
}

double log_sum_exp(std::span<const double> logs) {
    if (logs.empty()) return -inf;
    const double m = *std::max_element(logs.begin(), logs.end());
    if (std::isinf(m)) return m;
    double sum = 0.0;
    for (double l : logs) sum += std::exp(l - m);
    return m + std::log(sum);
}

}  // namespace sparsespec::growth
