#include "sparsespec/spectrum.hpp"

#include "sparsespec/error.hpp"
#include "sparsespec/transfer.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

namespace sparsespec::spectrum {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

bool nondecreasing(lattice::Trend t) {
    return t == lattice::Trend::increasing || t == lattice::Trend::constant;
}

}  // namespace

std::string format_number(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string Interval::text() const {
    std::string out;
    out += lo_closed ? '[' : '(';
    out += format_number(lo);
    out += ',';
    out += format_number(hi);
    out += (hi_closed && std::isfinite(hi)) ? ']' : ')';
    return out;
}

bool Interval::contains(const Interval& other) const {
    if (other.lo < lo || other.hi > hi) return false;
    if (other.lo == lo && other.lo_closed && !lo_closed) return false;
    if (other.hi == hi && other.hi_closed && !hi_closed) return false;
    return true;
}

std::string_view to_string(CaseTag tag) {
    switch (tag) {
        case CaseTag::case_i_delta: return "case_i_delta";
        case CaseTag::case_i_delta_prime: return "case_i_delta_prime";
        case CaseTag::case_ii: return "case_ii";
        case CaseTag::no_conclusion: break;
    }
    return "no_conclusion";
}

std::string_view to_string(AcStatus status) { return status == AcStatus::empty ? "empty" : "unknown"; }

std::string_view to_string(NegativeAxis status) {
    return status == NegativeAxis::excluded_by_positivity ? "excluded_by_positivity" : "unknown";
}

std::vector<double> geometric_grid(double min, double max, Index count) {
    if (!(min > 0.0) || !(max >= min) || count == 0)
        throw ArgumentError("geometric grid needs 0 < min <= max and count >= 1");
    std::vector<double> grid(count);
    if (count == 1) {
        grid[0] = min;
        return grid;
    }
    const double step = std::log(max / min) / static_cast<double>(count - 1);
    for (Index i = 0; i < count; ++i) grid[i] = min * std::exp(step * static_cast<double>(i));
    grid.back() = max;
    return grid;
}

Exclusion point_spectrum_exclusion(const SystemSpec& spec, double lambda0, Index window_start,
                                   Index window_end, const growth::VerdictOptions& options) {
    Exclusion out;
    out.series = growth::series_verdict(spec, lambda0, window_start, window_end, options);
    if (!out.diverges()) return out;
    if (spec.kind() == Kind::delta) {
        out.excluded = Interval::half_line(lambda0);
        out.allowed = Interval{0.0, lambda0, true, false};
    } else {
        out.excluded = Interval::closed(0.0, lambda0);
        out.allowed = Interval::half_line(lambda0, false);
    }
    return out;
}

SpectralClassification classify(const SystemSpec& spec, const ClassifyOptions& options) {
    SpectralClassification out;
    out.kind = spec.kind();
    const Index start = options.window_start;
    const Index end = options.window_end;
    out.caveats.push_back("liminf a estimated as the minimum of the a-ratio over the finite window [" +
                          std::to_string(start) + ", " + std::to_string(end) + "]");
    out.caveats.push_back("a = +inf inferred from the tail trend heuristic (increasing, and above the "
                          "infinity threshold or with tail growth exponent >= min_growth_exponent)");

    try {
        const auto& lat = spec.lattice();
        std::vector<double> sparseness(end - start + 1);
        std::vector<double> abs_alpha(end - start + 1);
        for (Index n = start; n <= end; ++n) {
            sparseness[n - start] = lat.sparseness_ratio(n);
            abs_alpha[n - start] = std::abs(spec.strength(n));
        }
        const auto sparse_tail = lattice::tail_report(sparseness, start, options.a_options.tail_fraction);
        out.sparse = nondecreasing(sparse_tail.trend) && sparseness.back() >= options.sparse_threshold;
        const auto alpha_tail = lattice::tail_report(abs_alpha, start, options.a_options.tail_fraction);
        out.strengths_growing =
            alpha_tail.trend == lattice::Trend::increasing && abs_alpha.back() > abs_alpha.front();
        out.strengths_positive = spec.strengths().all_positive(1, end);
        out.a = lattice::estimate_a(spec, start, end, options.a_options);
    } catch (const Error& e) {
        out.diagnostics.push_back(std::string("window evaluation failed: ") + e.what());
        return out;
    }

    if (!out.sparse)
        out.diagnostics.push_back("lattice not sparse over window: sparseness ratio tail is not "
                                  "nondecreasing above the sparse threshold");
    if (!out.strengths_growing)
        out.diagnostics.push_back("strengths do not grow over window: |alpha_n| -> inf not supported");

    if (out.strengths_positive) out.negative_axis = NegativeAxis::excluded_by_positivity;
    if (!out.sparse || !out.strengths_growing) return out;

    const Interval half_line = Interval::half_line(0.0);
    out.essential = half_line;

    if (out.a.diverging) {
        if (!out.strengths_positive) {
            out.diagnostics.push_back("a = +inf but some alpha_n <= 0 in window; case (ii) needs positive strengths");
            return out;
        }
        out.tag = CaseTag::case_ii;
        out.sigma = half_line;
        out.sc_contains = half_line;
        out.sc_within = half_line;
        out.pp_window.reset();
        out.ac = AcStatus::empty;
    } else if (out.a.value < options.zero_threshold) {
        out.diagnostics.push_back("a estimate " + format_number(out.a.value) +
                                  " below zero threshold; a = 0 yields no conclusion");
        return out;
    } else {
        const double a = out.a.value;
        out.sc_within = half_line;
        out.ac = AcStatus::empty;
        if (spec.kind() == Kind::delta) {
            out.tag = CaseTag::case_i_delta;
            out.pp_window = Interval::closed(0.0, 1.0 / a);
            out.sc_contains = Interval::half_line(1.0 / a);
        } else {
            out.tag = CaseTag::case_i_delta_prime;
            out.pp_window = Interval::half_line(a);
            out.sc_contains = Interval::closed(0.0, a);
        }
        out.caveats.push_back("pp_window is where point spectrum may live; whether it is nonempty is not decided");
    }
    out.caveats.push_back("absolutely continuous spectrum reported empty by the classification rule, not certified numerically");

    for (double lambda0 : options.lambda0_grid) {
        const auto ex = point_spectrum_exclusion(spec, lambda0, start, end, options.verdict);
        if (!ex.diverges()) continue;
        ++out.grid_diverging;
        if (spec.kind() == Kind::delta)
            out.grid_pp_bound = std::min(out.grid_pp_bound.value_or(inf), lambda0);
        else
            out.grid_pp_bound = std::max(out.grid_pp_bound.value_or(0.0), lambda0);
    }
    return out;
}

std::vector<double> EigenvalueList::lambdas() const {
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(v.lambda);
    return out;
}

EigenvalueList dirichlet_eigenvalues(double l, Index k_max) {
    if (!(l > 0.0)) throw ArgumentError("interval length must be positive");
    EigenvalueList out;
    for (Index k = 1; k <= k_max; ++k) {
        const double root = pi * static_cast<double>(k) / l;
        out.values.push_back({root * root, 0.0, 0.0});
    }
    return out;
}

EigenvalueList neumann_eigenvalues(double l, Index k_max) {
    if (!(l > 0.0)) throw ArgumentError("interval length must be positive");
    EigenvalueList out;
    for (Index k = 0; k <= k_max; ++k) {
        const double root = pi * static_cast<double>(k) / l;
        out.values.push_back({root * root, 0.0, 0.0});
    }
    return out;
}

double lambda_s_n(double s, double dx) {
    if (!(s > 0.0) || !(dx > 0.0) || !std::isfinite(dx))
        throw ArgumentError("lambda_s_n needs s > 0 and finite dx > 0");
    const double t = std::sqrt(s) * dx / pi;
    const double nearest = std::round(t);
    // An integer √s Δx/π means s itself is a Dirichlet eigenvalue.
    if (nearest >= 1.0 && std::abs(t - nearest) <= 8.0 * std::numeric_limits<double>::epsilon() * t) return s;
    const double root = pi * std::ceil(t) / dx;
    return root * root;
}

double lambda_s_n_bound(double s, double dx) {
    const double step = pi / dx;
    return step * (2.0 * std::sqrt(s) + step);
}

namespace {

// Boundary data just left of x_N, from ξ_0 = (0, 1).
Vec2d left_limit_at(const SystemSpec& spec, Index N, double lambda) {
    if (N < 1) throw RangeError("truncation needs N >= 1");
    Vec2d v = transfer::dirichlet_start;
    for (Index n = 1; n < N; ++n) v = transfer::step_matrix(spec, lambda, n) * v;
    const double dx = spec.lattice().gap(N - 1);
    if (!std::isfinite(dx)) throw OverflowError(N, "gap before truncation point is not representable");
    return transfer::fundamental_matrix(lambda, dx) * v;
}

// Zeros of A cos(kt) + (B/k) sin(kt) for t in (0, dx).
Index interval_zeros(const Vec2d& xi, double k, double dx) {
    const double phi = std::atan2(xi.first, xi.second / k);
    const double lo = phi / pi;
    const double hi = (k * dx + phi) / pi;
    const double count = std::ceil(hi) - std::floor(lo) - 1.0;
    return count > 0.0 ? static_cast<Index>(count) : 0;
}

}  // namespace

double boundary_function(const SystemSpec& spec, Index N, double lambda) {
    const Vec2d v = left_limit_at(spec, N, lambda);
    return spec.kind() == Kind::delta ? v.first : v.second;
}

Index oscillation_count(const SystemSpec& spec, Index N, double lambda) {
    if (N < 1) throw RangeError("truncation needs N >= 1");
    const double k = std::sqrt(lambda);
    Vec2d v = transfer::dirichlet_start;
    Index zeros = 0;
    for (Index n = 0; n < N; ++n) {
        if (n > 0) {
            v = transfer::step_matrix(spec, lambda, n) * v;
            if (v.first == 0.0) ++zeros;
        }
        zeros += interval_zeros(v, k, spec.lattice().gap(n));
    }
    return zeros;
}

EigenvalueList truncated_eigenvalues(const SystemSpec& spec, Index N, const ShootingOptions& options) {
    const double lo = options.lambda_min;
    const double hi = options.lambda_max;
    if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi))
        throw ArgumentError("shooting needs a nonempty energy range 0 < lambda_min < lambda_max");
    if (options.grid_intervals < 1) throw ArgumentError("shooting grid needs at least one interval");
    if (N > spec.max_index() || N < 1) throw RangeError("truncation index outside the system range");

    const auto b = [&](double lambda) { return boundary_function(spec, N, lambda); };
    const Index m = options.grid_intervals;
    const double step = (hi - lo) / static_cast<double>(m);

    EigenvalueList out;
    double prev_x = lo;
    double prev_b = b(lo);
    const auto tol = [t = options.tol](double a, double c) { return std::abs(c - a) <= t; };
    for (Index i = 1; i <= m; ++i) {
        const double x = i == m ? hi : lo + step * static_cast<double>(i);
        const double bx = b(x);
        if (prev_b == 0.0) {
            out.values.push_back({prev_x, 0.0, 0.0});
        } else if ((prev_b < 0.0) != (bx < 0.0) && bx != 0.0) {
            const auto [r0, r1] = boost::math::tools::bisect(b, prev_x, x, tol);
            const double root = 0.5 * (r0 + r1);
            out.values.push_back({root, std::abs(b(root)), r1 - r0});
        }
        prev_x = x;
        prev_b = bx;
    }

    if (spec.kind() == Kind::delta) {
        const Index above = oscillation_count(spec, N, hi);
        const Index below = oscillation_count(spec, N, lo);
        out.expected_count = above > below ? above - below : 0;
    } else {
        // Free Neumann-closed problem has ((k+1/2)π/x_N)^2; each interior δ′ point is
        // a rank-one resolvent perturbation and shifts an interval count by at most 2.
        const double length = spec.lattice().position(N);
        Index weyl = 0;
        for (Index k = 0;; ++k) {
            const double root = (static_cast<double>(k) + 0.5) * pi / length;
            const double e = root * root;
            if (e >= hi) break;
            if (e >= lo) ++weyl;
        }
        Index interior = 0;
        for (Index n = 1; n < N; ++n)
            if (spec.strength(n) != 0.0) ++interior;
        out.expected_count = weyl > 2 * interior ? weyl - 2 * interior : 0;
    }
    if (out.expected_count > out.values.size()) {
        out.suspected_misses = out.expected_count - out.values.size();
        out.unresolved = true;
    }
    return out;
}

std::vector<ProbeSeries> essential_spectrum_probe(const SystemSpec& spec, std::span<const double> s_values,
                                                  Index first, Index last) {
    if (last < first) throw ArgumentError("probe range must satisfy first <= last");
    std::vector<ProbeSeries> out;
    for (double s : s_values) {
        if (!(s > 0.0)) throw ArgumentError("probe energies must be positive");
        ProbeSeries series;
        series.s = s;
        for (Index n = first; n <= last; ++n) {
            ProbeRow row;
            row.n = n;
            row.dx = spec.lattice().gap(n);
            row.lambda = lambda_s_n(s, row.dx);
            row.distance = row.lambda - s;
            row.bound = lambda_s_n_bound(s, row.dx);
            row.within_bound = row.distance <= row.bound;
            if (row.lambda < s) series.all_above = false;
            if (!row.within_bound) series.all_within = false;
            if (!series.rows.empty() && !(row.distance < series.rows.back().distance)) series.decreasing = false;
            series.rows.push_back(row);
        }
        out.push_back(std::move(series));
    }
    return out;
}

}  // namespace sparsespec::spectrum
