#include <doctest.h>

#include "../support/bridge.hpp"

#include "graver/classical.hpp"
#include "graver/optimizer.hpp"

#include <cmath>
#include <random>

using namespace graver;

namespace {

Problem four_coin() {
    Problem p;
    p.a = bridge::fixture_matrix("fourcoin.mat");
    p.b = IntVector{21, 156};
    p.l = IntVector(4, 0);
    p.u = IntVector(4, 21);
    p.f = std::make_shared<SeparableAbs>(IntVector(4, 5));
    return p;
}

}  // namespace

TEST_CASE("first-improvement walk from (1,15,3,2)") {
    const Problem p = four_coin();
    const VectorSet g = bridge::golden("fourcoin.graver");
    const AugmentationTrace t = augment(p, g, IntVector{1, 15, 3, 2});
    CHECK(t.start_cost == 19);
    REQUIRE(t.steps.size() == 5);
    const IntVector g1{0, 3, -4, 1}, g2{5, -9, 4, 0}, g3{5, -6, 0, 1}, g5{5, 0, -8, 3};
    CHECK(t.steps[0].g == -g1);
    CHECK(t.steps[1].g == g2);
    CHECK(t.steps[2].g == g5);
    CHECK(t.steps[3].g == -g3);
    CHECK(t.steps[4].g == -g1);
    const std::vector<double> costs{17, 13, 11, 9, 7};
    for (std::size_t i = 0; i < 5; ++i) CHECK(t.steps[i].cost == costs[i]);
    CHECK(t.terminal == IntVector{6, 6, 7, 2});
    CHECK(t.terminal_cost == 7);
    CHECK(IntVector{1, 15, 3, 2} - g1 == IntVector{1, 12, 7, 1});
}

TEST_CASE("best-improvement reaches the same optimum") {
    const Problem p = four_coin();
    AugmentConfig cfg;
    cfg.policy = AugmentPolicy::best_improvement;
    const AugmentationTrace t = augment(p, bridge::golden("fourcoin.graver"), IntVector{1, 15, 3, 2}, cfg);
    CHECK(t.terminal_cost == 7);
    CHECK(t.steps.size() <= 5);
    for (std::size_t i = 1; i < t.steps.size(); ++i) CHECK(t.steps[i].cost < t.steps[i - 1].cost);
}

TEST_CASE("solve on the four-coin instance") {
    const Problem p = four_coin();
    SolveConfig cfg;
    cfg.classical = true;
    cfg.feasible.sampler.seed = 5;
    const SolveResult r = solve(p, cfg);
    CHECK(r.x == IntVector{6, 6, 7, 2});
    CHECK(r.cost == 7);
    REQUIRE_FALSE(r.report.starts.empty());
    for (const auto& s : r.report.starts) CHECK(p.feasible(s));
    for (const auto& t : r.report.runs.traces) CHECK(t.terminal_cost == 7);
    CHECK(std::is_sorted(r.report.start_costs.begin(), r.report.start_costs.end()));
    CHECK(certify(p, r.report.graver, r.x));
    CHECK_FALSE(certify(p, r.report.graver, IntVector{1, 15, 3, 2}));
}

TEST_CASE("solve matches brute force on random instances") {
    std::mt19937_64 rng(404);
    int checked = 0;
    for (int t = 0; t < 40 && checked < 15; ++t) {
        const std::size_t m = 1 + t % 2, n = 3 + t % 2;
        const auto a = oracle::random_matrix(rng, m, n, -2, 3);
        oracle::Vec lo(n, 0), hi(n, 3), x0(n), c(n);
        for (std::size_t i = 0; i < n; ++i) x0[i] = static_cast<long long>(rng() % 4), c[i] = static_cast<long long>(rng() % 5) - 1;
        const auto b = oracle::mul(a, x0);
        const auto f = [&](const oracle::Vec& x) {
            double s = 0;
            for (std::size_t i = 0; i < n; ++i) s += static_cast<double>((x[i] - c[i]) * (x[i] - c[i]));
            return s;
        };
        const auto best = oracle::brute_minimum(a, b, lo, hi, f);
        REQUIRE(best.x.has_value());

        Problem p{bridge::to_matrix(a), bridge::to_vector(b), bridge::to_vector(lo), bridge::to_vector(hi),
                  std::make_shared<SeparableQuadratic>(bridge::to_vector(c), IntVector(n, 1))};
        if (rank(p.a) == n) continue;
        SolveConfig cfg;
        cfg.classical = true;
        const SolveResult r = solve(p, cfg);
        CHECK(r.cost == best.value);
        CHECK(p.feasible(r.x));
        ++checked;
    }
    CHECK(checked >= 10);
}

TEST_CASE("objectives") {
    const SeparableAbs abs_f(IntVector{1, -1});
    CHECK(abs_f(IntVector{3, 0}) == 3);
    CHECK(abs_f.integer_valued());
    const SeparableQuadratic q(IntVector{0, 2}, IntVector{3, 1});
    CHECK(q(IntVector{1, 0}) == 3 + 4);
    CHECK_THROWS(SeparableQuadratic(IntVector{0}, IntVector{-1}));

    const std::vector<double> mu{0.5, 0.25}, sigma{0.1, 0.2};
    const CapitalBudget cb(mu, sigma, 0.01);
    const double expect = -(0.5 * 2 + 0.25 * 1) + std::sqrt(99.0 * (0.01 * 4 + 0.04 * 1));
    CHECK(cb(IntVector{2, 1}) == doctest::Approx(expect).epsilon(1e-15));
    CHECK_FALSE(cb.integer_valued());
    CHECK_THROWS(CapitalBudget(mu, sigma, 0.0));
    CHECK_THROWS(CapitalBudget(mu, sigma, 1.0));
    CHECK_THROWS(CapitalBudget({1.0}, sigma, 0.5));
}

TEST_CASE("improvement test") {
    const SeparableAbs ints(IntVector{0});
    CHECK(improves(6, 7, ints, 1e-12));
    CHECK_FALSE(improves(7, 7, ints, 1e-12));
    const CapitalBudget real({1.0}, {1.0}, 0.5);
    CHECK(improves(0.9, 1.0, real, 1e-12));
    CHECK_FALSE(improves(1.0 - 1e-14, 1.0, real, 1e-12));
    CHECK(improves(-1e-11, 0.0, real, 1e-12));
}

TEST_CASE("feasible points") {
    const Problem p = four_coin();
    FeasibleConfig cfg;
    cfg.sampler.backend = Backend::exhaustive;
    const EncodingSpec enc = box_encoding(p.l, p.u);
    CHECK(enc.lower(0) == 0);
    CHECK(enc.upper(0) >= 21);
    CHECK(enc.length(0) == 5);
    cfg.sampler.exhaustive_bit_cap = 20;
    const VectorSet pts = find_feasible(p, enc, cfg);
    const auto all = oracle::brute_minimum(bridge::from_matrix(p.a), bridge::from_vector(p.b), oracle::Vec(4, 0),
                                           oracle::Vec(4, 21), [](const oracle::Vec&) { return 0.0; });
    CHECK(pts.size() == all.feasible);
    for (const auto& x : pts) CHECK(p.feasible(x));
}

TEST_CASE("infeasible and malformed problems") {
    Problem p;
    p.a = IntMatrix{{2, 2}};
    p.b = IntVector{1};
    p.l = IntVector(2, 0);
    p.u = IntVector(2, 3);
    p.f = std::make_shared<SeparableAbs>(IntVector(2, 0));
    SolveConfig cfg;
    cfg.classical = true;
    CHECK_THROWS_AS(solve(p, cfg), InfeasibleError);

    Problem bad = p;
    bad.u = IntVector{3};
    CHECK_THROWS(bad.validate());
    bad = p;
    bad.l = IntVector{4, 0};
    CHECK_THROWS(bad.validate());
    bad = p;
    bad.f = nullptr;
    CHECK_THROWS(bad.validate());
}

TEST_CASE("serial objectives give the same result as parallel ones") {
    Problem p = four_coin();
    const VectorSet g = bridge::golden("fourcoin.graver");
    const std::vector<IntVector> starts{{1, 15, 3, 2}, {11, 3, 3, 4}, {6, 0, 15, 0}};
    const auto par = multi_augment(p, g, starts, {}, 4);
    p.f = std::make_shared<FunctionObjective>(
        [](const IntVector& x) {
            double s = 0;
            for (Int v : x) s += std::fabs(static_cast<double>(v - 5));
            return s;
        },
        true, false);
    const auto ser = multi_augment(p, g, starts, {}, 4);
    REQUIRE(par.traces.size() == ser.traces.size());
    for (std::size_t i = 0; i < par.traces.size(); ++i) {
        CHECK(par.traces[i].terminal == ser.traces[i].terminal);
        CHECK(par.traces[i].steps.size() == ser.traces[i].steps.size());
    }
    CHECK(par.best == ser.best);
}

TEST_CASE("capital budgeting generator") {
    const auto a = generate_capital_budget(3, 8, 2, 42);
    const auto b = generate_capital_budget(3, 8, 2, 42);
    CHECK(a.problem.a == b.problem.a);
    CHECK(a.mu == b.mu);
    CHECK(a.sigma == b.sigma);
    CHECK(generate_capital_budget(3, 8, 2, 43).mu != a.mu);
    for (std::size_t i = 0; i < 3; ++i) {
        Int row = 0;
        for (std::size_t j = 0; j < 8; ++j) {
            CHECK(a.problem.a(i, j) >= 0);
            CHECK(a.problem.a(i, j) <= 2);
            row += a.problem.a(i, j);
        }
        CHECK(a.problem.b[i] == (row + 1) / 2);
    }
    for (std::size_t j = 0; j < 8; ++j) {
        CHECK(a.mu[j] >= 0.0);
        CHECK(a.mu[j] < 1.0);
        CHECK(a.sigma[j] >= 0.0);
        CHECK(a.sigma[j] <= a.mu[j]);
    }
    CHECK(a.problem.l == IntVector(8, 0));
    CHECK(a.problem.u == IntVector(8, 1));
    CHECK(parse_policy("best") == AugmentPolicy::best_improvement);
    CHECK_THROWS(parse_policy("steepest"));
}
