#include "sparsespec/error.hpp"
#include "sparsespec/growth.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

using namespace sparsespec;
using namespace sparsespec::growth;
using lattice::SparseSet;
using lattice::StrengthSequence;
using Catch::Approx;

namespace {

SystemSpec factorial_power(double p, Kind kind = Kind::delta) {
    return {kind, SparseSet(lattice::Factorial{}), StrengthSequence(lattice::PowerStrength{1.0, p})};
}

SystemSpec explicit_system(Kind kind, std::vector<double> points, std::vector<double> alphas) {
    return {kind, SparseSet(lattice::ExplicitPoints{std::move(points)}),
            StrengthSequence(lattice::ExplicitStrengths{std::move(alphas)})};
}

}  // namespace

TEST_CASE("growth products") {
    const SystemSpec constant(Kind::delta, SparseSet(lattice::Factorial{}), StrengthSequence(lattice::ConstantStrength{-3.0}));
    CHECK(log_A_n(constant, 4.0, 0) == 0.0);
    CHECK(log_A_n(constant, 4.0, 5) == Approx(5 * std::log(2.5)));

    const auto dp = factorial_power(0.5, Kind::delta_prime);
    CHECK(log_decay_product(dp, 4.0, 7) == Approx(log_A_n(dp, 0.25, 7)));
    const auto d = factorial_power(0.5);
    CHECK(log_decay_product(d, 4.0, 7) == Approx(log_A_n(d, 4.0, 7)));
    CHECK_THROWS_AS(log_A_n(d, 0.0, 3), DomainError);
}

TEST_CASE("series terms") {
    const auto spec = factorial_power(0.5);
    const auto profile = series_terms(spec, 4.0, 40);
    REQUIRE(profile.size() == 41);
    CHECK(profile.log_A[0] == 0.0);
    CHECK(profile.log_gap[0] == 0.0);
    for (Index n = 0; n <= 40; ++n) {
        CHECK(profile.term[n] == Approx(profile.log_gap[n] - 2 * profile.log_A[n]));
        CHECK(profile.log_A[n] == Approx(log_A_n(spec, 4.0, n)).margin(1e-12));
    }
    REQUIRE(profile.log_norm_xi);
    const auto xi = transfer::propagate(spec, 4.0, transfer::dirichlet_start, 40);
    for (Index n = 0; n <= 40; ++n)
        CHECK((*profile.log_norm_xi)[n] == Approx(std::log(norm(xi[n]))).margin(1e-10));

    // Gaps past 170! are not representable; logs still are.
    const auto long_profile = series_terms(spec, 4.0, 500);
    CHECK_FALSE(long_profile.log_norm_xi);
    CHECK(std::isfinite(long_profile.term[500]));
}

TEST_CASE("d'Alembert ratio equals the term difference") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> lam(0.05, 20.0), p(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const auto spec = factorial_power(p(rng), i % 2 ? Kind::delta_prime : Kind::delta);
        const double l0 = lam(rng);
        const auto profile = series_terms(spec, l0, 300);
        for (Index n = 1; n <= 300; n += 13)
            CHECK(log_dalembert_ratio(spec, l0, n) == Approx(profile.term[n] - profile.term[n - 1]).margin(1e-9));
    }
}

TEST_CASE("d'Alembert ratio tends to lambda0 times a") {
    const auto spec = factorial_power(0.5);
    for (double l0 : {0.5, 2.0, 4.0, 10.0}) {
        const double r = dalembert_ratio(spec, l0, 100000000);
        CHECK(r == Approx(l0).epsilon(2e-3));
    }
    // δ′ tends to a / λ0.
    const auto dp = factorial_power(0.5, Kind::delta_prime);
    CHECK(dalembert_ratio(dp, 0.5, 100000000) == Approx(2.0).epsilon(2e-3));
    CHECK_THROWS_AS(dalembert_ratio(spec, 1.0, 0), RangeError);
}

TEST_CASE("series verdicts") {
    const auto spec = factorial_power(0.5);
    CHECK(series_verdict(spec, 2.0, 100, 10000).verdict == Verdict::diverges);
    CHECK(series_verdict(spec, 0.5, 100, 10000).verdict == Verdict::inconclusive);
    // Ratio tends to 1 from below: inconclusive, and never reported as convergent.
    CHECK(series_verdict(spec, 1.0, 100, 10000).verdict == Verdict::inconclusive);

    const auto dp = factorial_power(0.5, Kind::delta_prime);
    CHECK(series_verdict(dp, 0.5, 100, 10000).verdict == Verdict::diverges);
    CHECK(series_verdict(dp, 2.0, 100, 10000).verdict == Verdict::inconclusive);

    const SystemSpec free(Kind::delta, SparseSet(lattice::Factorial{}), StrengthSequence(lattice::ConstantStrength{0.0}));
    const auto v = series_verdict(free, 1.0, 10, 1000);
    CHECK(v.verdict == Verdict::diverges);
    CHECK(v.trend == lattice::Trend::increasing);
    CHECK(v.window_start == 10);
    CHECK(v.window_end == 1000);
    CHECK_THROWS_AS(series_verdict(spec, 1.0, 0, 10), ArgumentError);
}

TEST_CASE("verdict margin is respected") {
    const auto spec = factorial_power(0.5);
    VerdictOptions strict;
    strict.margin = 1.0;
    CHECK(series_verdict(spec, 2.0, 100, 10000, strict).verdict == Verdict::inconclusive);
    CHECK(series_verdict(spec, 4.0, 100, 10000, strict).verdict == Verdict::diverges);
}

TEST_CASE("bound constant") {
    CHECK(bound_constant(1.0) == Approx(1.0));
    for (double l : {0.1, 0.5, 3.0, 100.0})
        CHECK(bound_constant(l) == Approx(std::min(std::sqrt(l), 1 / std::sqrt(l))).epsilon(1e-12));
}

TEST_CASE("property: lower growth bound") {
    std::mt19937_64 rng(32);
    std::uniform_int_distribution<int> size(1, 12);
    std::uniform_real_distribution<double> gap(0.1, 10.0), alpha(-10.0, 10.0), lam(0.1, 100.0), unit(-1.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        const int N = size(rng);
        std::vector<double> points{0.0}, alphas;
        for (int k = 0; k < N; ++k) {
            points.push_back(points.back() + gap(rng));
            alphas.push_back(alpha(rng));
        }
        const auto spec = explicit_system(i % 2 ? Kind::delta_prime : Kind::delta, points, alphas);
        const Vec2d xi0{unit(rng), unit(rng) + 2.0};
        const auto check = lower_bound_check(spec, lam(rng), static_cast<Index>(N), xi0);
        CHECK(check.pass);
        CHECK(check.min_slack >= 1.0 - 1e-9);
        CHECK(check.argmin >= 1);
    }
}

TEST_CASE("renormalized norms agree with direct propagation and extend past overflow") {
    const auto spec = factorial_power(0.25);
    const auto logs = log_norm_profile(spec, 2.0, transfer::dirichlet_start, 150);
    const auto xi = transfer::propagate(spec, 2.0, transfer::dirichlet_start, 30);
    for (Index n = 0; n <= 30; ++n) CHECK(logs[n] == Approx(std::log(norm(xi[n]))).margin(1e-10));
    CHECK(std::isfinite(logs[150]));
    CHECK_THROWS_AS(log_norm_profile(spec, 2.0, {0.0, 0.0}, 5), ArgumentError);
}

TEST_CASE("weighted norm sum") {
    const auto spec = explicit_system(Kind::delta, {0, 1, 3, 4}, {1, -2, 0.5});
    const auto xi = transfer::propagate(spec, 1.5, transfer::dirichlet_start, 3);
    double direct = 0.0;
    for (Index n = 0; n < 3; ++n) direct += spec.lattice().gap(n) * std::pow(norm(xi[n]), 2);
    CHECK(weighted_norm_sum(spec, 1.5, 2) == Approx(std::log(direct)));
}

TEST_CASE("log-sum-exp") {
    const double inf = std::numeric_limits<double>::infinity();
    const std::vector<double> v{std::log(1.0), std::log(2.0), std::log(3.0)};
    CHECK(log_sum_exp(v) == Approx(std::log(6.0)));
    const std::vector<double> big{1000.0, 1000.0};
    CHECK(log_sum_exp(big) == Approx(1000.0 + std::log(2.0)));
    const std::vector<double> with_neg_inf{-inf, 0.0};
    CHECK(log_sum_exp(with_neg_inf) == Approx(0.0));
    CHECK(log_sum_exp(std::vector<double>{}) == -inf);
}
