// Acceptance suite. `acceptance` runs every criterion; `acceptance 3 7` runs a subset.
// Each criterion prints one PASS/FAIL line and the process exits nonzero on any failure.
#include "sparsespec/growth.hpp"
#include "sparsespec/lattice.hpp"
#include "sparsespec/spectrum.hpp"
#include "sparsespec/transfer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace sparsespec;
using lattice::Index;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

struct Criterion {
    int id;
    const char* title;
    double time_limit_s;
    std::function<void(Outcome&)> body;
};

lattice::SystemSpec factorial_system(Kind kind, double p) {
    return {kind, lattice::SparseSet(lattice::Factorial{}), lattice::StrengthSequence(lattice::PowerStrength{1.0, p})};
}

lattice::SystemSpec explicit_system(Kind kind, const std::vector<double>& gaps, const std::vector<double>& alphas) {
    std::vector<double> points{0.0};
    for (double g : gaps) points.push_back(points.back() + g);
    return {kind, lattice::SparseSet(lattice::ExplicitPoints{points}),
            lattice::StrengthSequence(lattice::ExplicitStrengths{alphas})};
}

bool near(double x, double target, double tol) { return std::abs(x - target) <= tol; }

void criterion_1(Outcome& out) {
    const auto spec = factorial_system(Kind::delta, 0.25);
    const auto c = spectrum::classify(spec);
    const spectrum::Interval half = spectrum::Interval::half_line(0.0);
    out.require(c.tag == spectrum::CaseTag::case_ii, "case tag is " + std::string(spectrum::to_string(c.tag)));
    out.require(c.sigma && *c.sigma == half, "sigma = [0,inf)");
    out.require(c.sc_contains && *c.sc_contains == half, "sc = [0,inf)");
    out.require(c.sc_within && *c.sc_within == half, "sc within [0,inf)");
    out.require(!c.pp_window, "no point-spectrum window");
    out.require(c.ac == spectrum::AcStatus::empty, "ac empty");
    const double ratio = lattice::a_ratio(spec, 10000);
    const double expected = 1e8 / (1e6 - 1e2);
    out.require(near(ratio, expected, 0.01), "a-ratio at 1e4");
    out.detail << " case=" << spectrum::to_string(c.tag) << " sigma=" << (c.sigma ? c.sigma->text() : "-")
               << " sc=" << (c.sc_contains ? c.sc_contains->text() : "-") << " a_ratio(1e4)=" << ratio
               << " expected=" << expected;
}

void criterion_2(Outcome& out) {
    const auto spec = factorial_system(Kind::delta, 0.5);
    const auto c = spectrum::classify(spec);
    out.require(c.tag == spectrum::CaseTag::case_i_delta, "case tag is " + std::string(spectrum::to_string(c.tag)));
    out.require(c.a.window_start == 100 && c.a.window_end == 10000, "window [100, 1e4]");
    out.require(c.a.value >= 0.999 && c.a.value <= 1.001, "a in [0.999, 1.001]");
    out.require(c.sc_contains && near(c.sc_contains->lo, 1.0, 1e-3) && c.sc_contains->lo_closed &&
                    std::isinf(c.sc_contains->hi),
                "sc_contains = [1,inf)");
    out.detail << " case=" << spectrum::to_string(c.tag) << " a=" << c.a.value
               << " sc_contains=" << (c.sc_contains ? c.sc_contains->text() : "-");
}

void criterion_3(Outcome& out) {
    const auto spec = factorial_system(Kind::delta_prime, 0.5);
    const auto c = spectrum::classify(spec);
    out.require(c.tag == spectrum::CaseTag::case_i_delta_prime,
                "case tag is " + std::string(spectrum::to_string(c.tag)));
    out.require(c.pp_window && near(c.pp_window->lo, 1.0, 1e-3) && c.pp_window->lo_closed &&
                    std::isinf(c.pp_window->hi),
                "pp_window = [1,inf)");
    out.require(c.sc_contains && c.sc_contains->lo == 0.0 && c.sc_contains->lo_closed &&
                    near(c.sc_contains->hi, 1.0, 1e-3) && c.sc_contains->hi_closed,
                "sc_contains = [0,1]");
    out.detail << " case=" << spectrum::to_string(c.tag) << " pp_window=" << (c.pp_window ? c.pp_window->text() : "-")
               << " sc_contains=" << (c.sc_contains ? c.sc_contains->text() : "-");
}

void criterion_4(Outcome& out) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> lam(0.1, 100.0), dx(0.1, 20.0), alpha(-20.0, 20.0);
    double worst[2] = {INFINITY, INFINITY};
    for (int i = 0; i < 10000; ++i) {
        const double l = lam(rng), d = dx(rng), a = alpha(rng);
        for (Kind kind : {Kind::delta, Kind::delta_prime}) {
            const double bound = kind == Kind::delta ? 1.0 + std::abs(a) / std::sqrt(l) : 1.0 + std::abs(a) * std::sqrt(l);
            const double n = transfer::operator_norm(transfer::tilde_inverse_step(kind, l, d, a));
            auto& w = worst[kind == Kind::delta ? 0 : 1];
            w = std::min(w, bound - n);
        }
    }
    out.require(worst[0] >= -1e-12, "delta slack");
    out.require(worst[1] >= -1e-12, "delta' slack");
    out.detail << " draws=10000 min_slack_delta=" << worst[0] << " min_slack_delta_prime=" << worst[1];
}

void criterion_5(Outcome& out) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> size(1, 12);
    std::uniform_real_distribution<double> gap(0.1, 10.0), alpha(-10.0, 10.0), lam(0.1, 100.0), unit(-1.0, 1.0);
    double worst = INFINITY;
    int failures = 0;
    for (int i = 0; i < 100; ++i) {
        const Index N = static_cast<Index>(size(rng));
        std::vector<double> gaps(N), alphas(N);
        for (auto& g : gaps) g = gap(rng);
        for (auto& a : alphas) a = alpha(rng);
        const Kind kind = i % 2 ? Kind::delta_prime : Kind::delta;
        const auto spec = explicit_system(kind, gaps, alphas);
        Vec2d xi0{unit(rng), unit(rng)};
        if (norm(xi0) < 1e-3) xi0 = transfer::dirichlet_start;
        const auto check = growth::lower_bound_check(spec, lam(rng), N, xi0);
        worst = std::min(worst, check.min_slack);
        if (check.min_slack < 1.0 - 1e-9) ++failures;
    }
    out.require(failures == 0, std::to_string(failures) + " systems below the bound");
    out.detail << " systems=100 min_slack=" << worst;
}

void criterion_6(Outcome& out) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> lam(0.1, 100.0), dx(0.0, 20.0), alpha(-20.0, 20.0);
    double det_err = 0, semigroup_err = 0, inverse_err = 0;
    for (int i = 0; i < 10000; ++i) {
        const double l = lam(rng), d1 = dx(rng), d2 = dx(rng), a = alpha(rng);
        const auto m1 = transfer::fundamental_matrix(l, d1);
        const auto m2 = transfer::fundamental_matrix(l, d2);
        const auto m12 = transfer::fundamental_matrix(l, d1 + d2);
        det_err = std::max(det_err, std::abs(m1.det() - 1.0));
        semigroup_err = std::max(semigroup_err, max_abs_diff(m2 * m1, m12) / std::max(1.0, max_abs_entry(m12)));
        inverse_err = std::max(inverse_err, max_abs_diff(m1 * transfer::fundamental_matrix(l, -d1), Mat2d::identity()));
        for (Kind kind : {Kind::delta, Kind::delta_prime}) {
            const auto j = transfer::jump_matrix(kind, a);
            det_err = std::max(det_err, std::abs(j.det() - 1.0));
            inverse_err = std::max(inverse_err, max_abs_diff(j * transfer::jump_matrix(kind, -a), Mat2d::identity()));
            const auto step = j * m1;
            det_err = std::max(det_err, std::abs(step.det() - 1.0));
            inverse_err = std::max(inverse_err, max_abs_diff(step * step.inverse(), Mat2d::identity()));
            const auto t = transfer::tilde_step(kind, l, d1, a);
            const auto ti = transfer::tilde_inverse_step(kind, l, d1, a);
            det_err = std::max(det_err, std::abs(t.det() - 1.0));
            inverse_err = std::max(inverse_err, max_abs_diff(t * ti, Mat2c::identity()) / std::max(1.0, max_abs_entry(t) * max_abs_entry(ti)));
        }
    }
    bool exact_identity = true;
    for (double l : {0.1, 1.0, 2.5, 100.0}) exact_identity = exact_identity && transfer::fundamental_matrix(l, 0.0) == Mat2d::identity();
    out.require(det_err <= 1e-11, "det = 1");
    out.require(semigroup_err <= 1e-11, "semigroup");
    out.require(inverse_err <= 1e-11, "inverse");
    out.require(exact_identity, "M(0) = I exactly");
    out.detail << " draws=10000 det_err=" << det_err << " semigroup_err=" << semigroup_err
               << " inverse_err=" << inverse_err << " M(0)=I:" << (exact_identity ? "exact" : "no");
}

// Lowest `count` positive FD eigenvalues nearest to each shooting root.
double max_relative_deviation(const std::vector<double>& shooting, const std::vector<double>& fd) {
    double worst = 0.0;
    for (double s : shooting) {
        double best = INFINITY;
        for (double f : fd) best = std::min(best, std::abs(f - s));
        worst = std::max(worst, best / std::abs(s));
    }
    return worst;
}

void criterion_7(Outcome& out) {
    constexpr Index count = 5;
    constexpr double h = 1e-3;
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> size(1, 4), gap_steps(50, 300);
    std::uniform_real_distribution<double> alpha(-8.0, 8.0);

    double worst = 0.0;
    double worst_ratio = INFINITY;
    int short_lists = 0;
    for (int i = 0; i < 20; ++i) {
        const Index N = static_cast<Index>(size(rng));
        std::vector<double> gaps(N), alphas(N);
        for (auto& g : gaps) g = gap_steps(rng) / 100.0;
        for (auto& a : alphas) a = alpha(rng);
        const Kind kind = i % 2 ? Kind::delta_prime : Kind::delta;
        const auto spec = explicit_system(kind, gaps, alphas);
        const double length = spec.lattice().position(N);

        spectrum::ShootingOptions so;
        so.lambda_min = 1e-6;
        so.lambda_max = std::pow((count + 3) * std::numbers::pi / length, 2) + 20.0;
        so.grid_intervals = 20000;
        auto roots = spectrum::truncated_eigenvalues(spec, N, so).lambdas();
        if (roots.size() < count) {
            ++short_lists;
            continue;
        }
        roots.resize(count);

        spectrum::FdOptions fo;
        fo.count = count + 2 * N + 2;
        fo.h = h;
        const auto fine = spectrum::fd_oracle_eigenvalues(spec, N, fo).lambdas();
        fo.h = 2 * h;
        const auto coarse = spectrum::fd_oracle_eigenvalues(spec, N, fo).lambdas();
        const double e_fine = max_relative_deviation(roots, fine);
        const double e_coarse = max_relative_deviation(roots, coarse);
        worst = std::max(worst, e_fine);
        if (e_fine > 1e-12) worst_ratio = std::min(worst_ratio, e_coarse / e_fine);
    }

    // Free case on a random interval, and its FD halving ratio.
    std::uniform_real_distribution<double> len(0.5, 12.0);
    double free_err = 0.0;
    double free_ratio = 0.0;
    for (int i = 0; i < 5; ++i) {
        const double length = std::round(len(rng) * 100.0) / 100.0;
        const auto spec = explicit_system(Kind::delta, {length}, {0.0});
        spectrum::ShootingOptions so;
        so.lambda_min = 1e-3;
        so.lambda_max = std::pow((count + 0.5) * std::numbers::pi / length, 2);
        so.grid_intervals = 4000;
        const auto roots = spectrum::truncated_eigenvalues(spec, 1, so).lambdas();
        const auto exact = spectrum::dirichlet_eigenvalues(length, count).lambdas();
        if (roots.size() != exact.size()) {
            free_err = INFINITY;
            continue;
        }
        for (Index k = 0; k < exact.size(); ++k) free_err = std::max(free_err, std::abs(roots[k] - exact[k]) / exact[k]);
        if (i == 0) {
            spectrum::FdOptions fo;
            fo.count = 1;
            fo.h = length / 500.0;
            const double e1 = std::abs(spectrum::fd_oracle_eigenvalues(spec, 1, fo).values[0].lambda - exact[0]);
            fo.h = length / 1000.0;
            const double e2 = std::abs(spectrum::fd_oracle_eigenvalues(spec, 1, fo).values[0].lambda - exact[0]);
            free_ratio = e1 / e2;
        }
    }

    out.require(short_lists == 0, std::to_string(short_lists) + " systems with fewer than 5 roots");
    out.require(worst <= 1e-3, "shooting vs FD");
    out.require(free_ratio > 3.5 && free_ratio < 4.5, "free-case halving ratio near 4");
    out.require(worst_ratio > 3.0, "randomized halving ratio");
    out.require(free_err <= 1e-8, "free case (pi k / x_N)^2");
    out.detail << " systems=20 max_rel_dev=" << worst << " min_halving_ratio=" << worst_ratio
               << " free_halving_ratio=" << free_ratio << " free_rel_err=" << free_err;
}

void criterion_8(Outcome& out) {
    const auto spec = factorial_system(Kind::delta, 0.5);
    const std::vector<double> s_values{0.5, 1.0, 2.0, 5.0};
    const auto probes = spectrum::essential_spectrum_probe(spec, s_values, 3, 12);
    for (const auto& p : probes) {
        out.require(p.all_above, "lambda_{s,n} >= s for s=" + spectrum::format_number(p.s));
        out.require(p.all_within, "one-ceiling-step bound for s=" + spectrum::format_number(p.s));
        out.require(p.decreasing, "decreasing distance for s=" + spectrum::format_number(p.s));
        out.detail << " s=" << p.s << ":" << (p.decreasing ? "decreasing" : "not-decreasing");
        if (!p.decreasing) {
            for (Index i = 1; i < p.rows.size(); ++i)
                if (!(p.rows[i].distance < p.rows[i - 1].distance))
                    out.detail << "(n=" << p.rows[i - 1].n << "->" << p.rows[i].n << ": " << p.rows[i - 1].distance
                               << "->" << p.rows[i].distance << ")";
        }
    }
}

void criterion_9(Outcome& out) {
    const auto spec = factorial_system(Kind::delta, 0.5);
    for (double l0 : {2.0, 4.0, 10.0}) {
        const auto v = growth::series_verdict(spec, l0, 100, 10000);
        out.require(v.verdict == growth::Verdict::diverges, "diverges at lambda0=" + spectrum::format_number(l0));
        out.detail << " lambda0=" << l0 << ":" << growth::to_string(v.verdict) << "(" << v.liminf_ratio_estimate << ")";
    }
    const auto v = growth::series_verdict(spec, 0.5, 100, 10000);
    out.require(v.verdict == growth::Verdict::inconclusive, "inconclusive at lambda0=0.5");
    out.detail << " lambda0=0.5:" << growth::to_string(v.verdict) << "(" << v.liminf_ratio_estimate << ")";
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "factorial lattice, n^{1/4} strengths, delta: case (ii)", 1.0, criterion_1},
        {2, "factorial lattice, n^{1/2} strengths, delta: case (i), a = 1", 1.0, criterion_2},
        {3, "delta prime mirror: pp_window [1,inf), sc_contains [0,1]", 1.0, criterion_3},
        {4, "norm bound on inverse diagonalized steps", 5.0, criterion_4},
        {5, "lower growth bound on boundary vectors", 5.0, criterion_5},
        {6, "transfer algebra identities", 60.0, criterion_6},
        {7, "shooting eigenvalues against finite differences", 60.0, criterion_7},
        {8, "comparison eigenvalues approach s", 1.0, criterion_8},
        {9, "ratio-test verdicts on the lambda0 threshold", 1.0, criterion_9},
    };

    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

    int failed = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
        Outcome out;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(out);
        } catch (const std::exception& e) {
            out.require(false, std::string("exception: ") + e.what());
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.require(elapsed < c.time_limit_s, "runtime limit " + spectrum::format_number(c.time_limit_s) + " s");
        if (!out.pass) ++failed;
        std::printf("%s criterion %d: %s (%.3f s)%s\n", out.pass ? "PASS" : "FAIL", c.id, c.title, elapsed,
                    out.detail.str().c_str());
    }
    return failed == 0 ? 0 : 1;
}
