#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "plandscape/errors.hpp"
#include "plandscape/performance.hpp"

using namespace plandscape;

namespace {

BudgetSpec budget_of(double total, int alphabet = 5) {
    BudgetSpec b;
    b.alphabet = alphabet;
    b.total_budget = total;
    return b;
}

// One target fed by one policy with the given coefficient.
InteractionMatrix single_edge(double c) {
    InteractionMatrix m(1, 1);
    m.add_edge(0, 0, c);
    return m;
}

ImportanceWeights weights_of(std::vector<int> w) {
    ImportanceWeights out;
    out.weights = std::move(w);
    for (const int v : out.weights) out.sigma += v;
    return out;
}

}  // namespace

TEST_CASE("cost sums the allocation levels") {
    CHECK(cost({2, 0, 0}) == 2);
    CHECK(cost({0, 0, 0}) == 0);
    CHECK(cost({4, 4, 4}) == 12);
    CHECK(cost({}) == 0);
}

TEST_CASE("feasibility compares an integer cost against a real ceiling") {
    CHECK_FALSE(is_feasible({4, 4, 4}, budget_of(9.5)));
    CHECK(is_feasible({2, 4, 3}, budget_of(9.5)));
    CHECK(is_feasible({0, 0, 0}, budget_of(0.0)));
    CHECK(is_feasible({3, 3, 3}, budget_of(9.0)));
    CHECK_FALSE(is_feasible({3, 3, 4}, budget_of(9.9)));
}

TEST_CASE("feasible state counts match brute force on the 3-policy space") {
    CHECK(count_feasible(3, budget_of(9.5)) == 115);
    CHECK(count_feasible(3, budget_of(12.0)) == 125);
    CHECK(count_feasible(3, budget_of(0.0)) == 1);
    CHECK(count_feasible(3, budget_of(4.0)) == 35);
}

TEST_CASE("feasible counting refuses oversized spaces") {
    CHECK_THROWS_AS(count_feasible(30, budget_of(10.0)), ValidationError);
}

TEST_CASE("budget and params validation name their fields") {
    CHECK_THROWS_AS(budget_of(10.0, 1).validate(), ValidationError);
    CHECK_THROWS_AS(budget_of(-1.0).validate(), ValidationError);
    PerformanceParams p;
    p.eta = 0.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("weights are integer grades with a matching sum") {
    RngStream rng(21, 0);
    const auto w = sample_weights(200, 8.0, 15.0, rng);
    REQUIRE(w.weights.size() == 200);
    int sum = 0;
    for (const int g : w.weights) {
        CHECK(g >= 1);
        CHECK(g <= 10);
        sum += g;
    }
    CHECK(w.sigma == sum);
}

TEST_CASE("single-target weight sum equals the lone draw") {
    RngStream rng(22, 0);
    const auto w = sample_weights(1, 8.0, 15.0, rng);
    CHECK(w.sigma == w.weights[0]);
}

TEST_CASE("weight sample mean tracks mu_w") {
    RngStream rng(23, 0);
    const auto w = sample_weights(100000, 8.0, 15.0, rng);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const int g : w.weights) {
        sum += g;
        sum_sq += static_cast<double>(g) * g;
    }
    const double n = 100000.0;
    const double mean = sum / n;
    const double var = (sum_sq - sum * sum / n) / (n - 1.0);
    CHECK(std::abs(mean - 8.0) < 3.0 * std::sqrt(var / n));
}

TEST_CASE("weight sampling rejects out-of-range means") {
    RngStream rng(24, 0);
    CHECK_THROWS_AS(sample_weights(5, 1.0, 15.0, rng), ValidationError);
    CHECK_THROWS_AS(sample_weights(5, 10.0, 15.0, rng), ValidationError);
    CHECK_THROWS_AS(sample_weights(5, 8.0, 0.0, rng), ValidationError);
}

TEST_CASE("individual performance matches the closed form on one edge") {
    const PerformanceParams params;
    const auto budget = budget_of(100.0);

    const auto pos = single_edge(1.0);
    const double f_pos = individual_performance(pos, 0, {4}, params, budget);
    CHECK(f_pos == doctest::Approx(0.9975273768433652).epsilon(1e-12));

    const auto neg = single_edge(-1.0);
    const double f_neg = individual_performance(neg, 0, {4}, params, budget);
    CHECK(f_pos + f_neg == doctest::Approx(1.0).epsilon(1e-14));

    CHECK(individual_performance(pos, 0, {0}, params, budget) == 0.5);
}

TEST_CASE("an unconnected target scores the neutral value exactly") {
    InteractionMatrix m(2, 1);
    m.add_edge(0, 0, 0.7);
    const PerformanceParams params;
    const auto budget = budget_of(100.0);
    for (const int level : {0, 1, 2, 3, 4}) {
        CHECK(individual_performance(m, 1, {level}, params, budget) == 0.5);
    }
    CHECK(activation(123.0, 0, 3.0, 5) == 0.5);
}

TEST_CASE("performance array deviates only where edges exist") {
    InteractionMatrix m(3, 2);
    m.add_edge(1, 0, 0.9);
    const PerformanceParams params;
    const auto budget = budget_of(100.0);

    const auto at_zero = performance_array(m, {0, 0}, params, budget);
    CHECK(at_zero == std::vector<double>{0.5, 0.5, 0.5});

    const auto scores = performance_array(m, {3, 4}, params, budget);
    CHECK(scores[0] == 0.5);
    CHECK(scores[1] > 0.5);
    CHECK(scores[2] == 0.5);
    for (const double f : scores) {
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
    }
}

TEST_CASE("individual performance is monotone in the allocation") {
    const PerformanceParams params;
    const auto budget = budget_of(100.0);
    const auto up = single_edge(0.8);
    const auto down = single_edge(-0.8);
    double prev_up = -1.0;
    double prev_down = 2.0;
    for (int level = 0; level <= 4; ++level) {
        const double fu = individual_performance(up, 0, {level}, params, budget);
        const double fd = individual_performance(down, 0, {level}, params, budget);
        CHECK(fu > prev_up);
        CHECK(fd < prev_down);
        prev_up = fu;
        prev_down = fd;
    }
}

TEST_CASE("overall performance is the sigma-normalised weighted mean") {
    const std::vector<double> half{0.5, 0.5, 0.5};
    CHECK(overall_performance(half, weights_of({3, 9, 1})) == doctest::Approx(0.5));

    const std::vector<double> f{0.0, 1.0};
    CHECK(overall_performance(f, weights_of({1, 3})) == doctest::Approx(0.75));

    const std::vector<double> mixed{0.2, 0.4, 0.9};
    CHECK(overall_performance(mixed, weights_of({2, 2, 2})) ==
          doctest::Approx((0.2 + 0.4 + 0.9) / 3.0));
}

TEST_CASE("scaling every weight by a common factor changes nothing") {
    const std::vector<double> f{0.12, 0.95, 0.4, 0.66};
    const auto w = weights_of({1, 7, 3, 10});
    const auto w3 = weights_of({3, 21, 9, 30});
    CHECK(overall_performance(f, w) == doctest::Approx(overall_performance(f, w3)).epsilon(1e-15));
}

TEST_CASE("overall performance rejects shape and weight-sum violations") {
    const std::vector<double> f{0.5, 0.5};
    CHECK_THROWS_AS(overall_performance(f, weights_of({1})), ValidationError);
    ImportanceWeights zero;
    zero.weights = {0, 0};
    CHECK_THROWS_AS(overall_performance(f, zero), ValidationError);
}

TEST_CASE("initial conditions always respect the budget") {
    for (const double total : {0.0, 1.0, 9.5, 40.0, 400.0}) {
        const auto budget = budget_of(total);
        for (int r = 0; r < 2000; ++r) {
            RngStream rng(31, static_cast<std::uint64_t>(r));
            const auto x = sample_initial_condition(10, budget, rng);
            REQUIRE(x.size() == 10);
            CHECK(is_feasible(x, budget));
            for (const int level : x) {
                CHECK(level >= 0);
                CHECK(level <= 4);
            }
        }
    }
}

TEST_CASE("a zero budget forces the zero array") {
    RngStream rng(32, 0);
    const auto x = sample_initial_condition(6, budget_of(0.0), rng);
    CHECK(x == PolicyArray(6, 0));
}

TEST_CASE("an unconstrained budget leaves draws uniform per coordinate") {
    std::vector<int> level_counts(5, 0);
    const int draws = 20000;
    const auto budget = budget_of(1e9);
    for (int r = 0; r < draws; ++r) {
        RngStream rng(33, static_cast<std::uint64_t>(r));
        const auto x = sample_initial_condition(1, budget, rng);
        level_counts[static_cast<std::size_t>(x[0])] += 1;
    }
    const double expected = draws / 5.0;
    double chi2 = 0.0;
    for (const int c : level_counts) {
        const double d = c - expected;
        chi2 += d * d / expected;
    }
    // df = 4; 18.5 is the 0.999 quantile.
    CHECK(chi2 < 18.5);
}
