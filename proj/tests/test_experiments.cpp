#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "plandscape/errors.hpp"
#include "plandscape/experiments.hpp"

using namespace plandscape;

namespace {

ExperimentConfig small_cfg() {
    ExperimentConfig cfg;
    cfg.network.n_policies = 8;
    cfg.network.n_targets = 10;
    cfg.network.mu_k = 4.0;
    cfg.budget.total_budget = 16.0;
    cfg.n_sims = 12;
    cfg.base_seed = 99;
    return cfg;
}

bool same_ensemble(const EnsembleResult& a, const EnsembleResult& b) {
    if (a.per_sim.size() != b.per_sim.size()) return false;
    for (std::size_t i = 0; i < a.per_sim.size(); ++i) {
        const auto& x = a.per_sim[i];
        const auto& y = b.per_sim[i];
        if (x.sim_index != y.sim_index || x.final_performance != y.final_performance ||
            x.final_cost != y.final_cost || x.steps != y.steps ||
            x.converged != y.converged) {
            return false;
        }
    }
    return a.performance.q25 == b.performance.q25 &&
           a.performance.median == b.performance.median &&
           a.performance.q75 == b.performance.q75;
}

}  // namespace

TEST_CASE("stream ids partition into per-simulation blocks") {
    CHECK(stream_id_for(0, kNetworkRole) == 0);
    CHECK(stream_id_for(0, kWeightsRole) == 1);
    CHECK(stream_id_for(0, kInitialRole) == 2);
    CHECK(stream_id_for(1, kNetworkRole) == 4);
    CHECK(stream_id_for(25, kInitialRole) == 102);
    CHECK_THROWS_AS(stream_id_for(-1, 0), ValidationError);
    CHECK_THROWS_AS(stream_id_for(0, 4), ValidationError);
}

TEST_CASE("quartiles interpolate between order statistics") {
    const auto single = quartiles({0.5});
    CHECK(single.q25 == 0.5);
    CHECK(single.median == 0.5);
    CHECK(single.q75 == 0.5);

    const auto four = quartiles({1.0, 2.0, 3.0, 4.0});
    CHECK(four.q25 == doctest::Approx(1.75));
    CHECK(four.median == doctest::Approx(2.5));
    CHECK(four.q75 == doctest::Approx(3.25));

    const auto shuffled = quartiles({3.0, 1.0, 4.0, 2.0});
    CHECK(shuffled.q25 == four.q25);
    CHECK(shuffled.median == four.median);
    CHECK(shuffled.q75 == four.q75);

    CHECK_THROWS_AS(quartiles({}), ValidationError);
}

TEST_CASE("config validation names harness fields") {
    ExperimentConfig cfg = small_cfg();
    cfg.n_sims = 0;
    try {
        cfg.validate();
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("n_sims") != std::string::npos);
    }
    cfg = small_cfg();
    cfg.workers = -1;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = small_cfg();
    cfg.max_steps = -1;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = small_cfg();
    cfg.weights.mu_w = 10.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("ensembles stay inside bounds and converge at this scale") {
    const auto result = run_ensemble_serial(small_cfg());
    REQUIRE(result.per_sim.size() == 12);
    for (std::size_t i = 0; i < result.per_sim.size(); ++i) {
        const auto& sim = result.per_sim[i];
        CHECK(sim.sim_index == static_cast<int>(i));
        CHECK(sim.final_performance >= 0.0);
        CHECK(sim.final_performance <= 1.0);
        CHECK(sim.final_cost <= 16);
        CHECK(sim.converged);
    }
    CHECK(result.performance.q25 <= result.performance.median);
    CHECK(result.performance.median <= result.performance.q75);
}

TEST_CASE("parallel execution reproduces the serial reference bitwise") {
    const auto serial = run_ensemble_serial(small_cfg());
    for (const int workers : {1, 3, 8}) {
        ExperimentConfig cfg = small_cfg();
        cfg.workers = workers;
        CHECK(same_ensemble(serial, run_ensemble(cfg)));
    }
}

TEST_CASE("a single-simulation ensemble collapses its quartiles") {
    ExperimentConfig cfg = small_cfg();
    cfg.n_sims = 1;
    const auto result = run_ensemble(cfg);
    const double f = result.per_sim[0].final_performance;
    CHECK(result.performance.q25 == f);
    CHECK(result.performance.median == f);
    CHECK(result.performance.q75 == f);
}

TEST_CASE("identical configs replay identical ensembles") {
    const auto a = run_ensemble(small_cfg());
    const auto b = run_ensemble(small_cfg());
    CHECK(same_ensemble(a, b));
}

TEST_CASE("shared weights mirror simulation zero when fixed") {
    ExperimentConfig cfg = small_cfg();
    cfg.fix_weights = true;
    const auto w0 = run_simulation_full(cfg, 0).weights;
    const auto w5 = run_simulation_full(cfg, 5).weights;
    CHECK(w0.weights == w5.weights);

    cfg.fix_weights = false;
    const auto w5_free = run_simulation_full(cfg, 5).weights;
    CHECK(w5_free.weights != w0.weights);
}

TEST_CASE("sweep points pair their realizations through shared streams") {
    const std::vector<double> budgets{10.0, 16.0};
    const auto points = budget_sweep(small_cfg(), budgets);
    REQUIRE(points.size() == 2);
    for (std::size_t p = 0; p < points.size(); ++p) {
        ExperimentConfig cfg = small_cfg();
        cfg.budget.total_budget = budgets[p];
        CHECK(points[p].budget == budgets[p]);
        CHECK(same_ensemble(points[p].ensemble, run_ensemble(cfg)));
    }
}

TEST_CASE("budgets at or past the spend ceiling are indistinguishable") {
    ExperimentConfig cfg = small_cfg();
    // Ceiling is N * (A - 1) = 32.
    const auto points = budget_sweep(cfg, {32.0, 40.0});
    CHECK(same_ensemble(points[0].ensemble, points[1].ensemble));
}

TEST_CASE("sweeps insist on ascending budgets") {
    CHECK_THROWS_AS(budget_sweep(small_cfg(), {}), ValidationError);
    CHECK_THROWS_AS(budget_sweep(small_cfg(), {10.0, 10.0}), ValidationError);
    CHECK_THROWS_AS(budget_sweep(small_cfg(), {16.0, 10.0}), ValidationError);
}

TEST_CASE("axis overrides route to the right parameters") {
    ExperimentConfig cfg = small_cfg();
    apply_axis(cfg, "N", 20.0);
    CHECK(cfg.network.n_policies == 20);
    apply_axis(cfg, "M", 15.0);
    CHECK(cfg.network.n_targets == 15);
    apply_axis(cfg, "A", 3.0);
    CHECK(cfg.budget.alphabet == 3);
    apply_axis(cfg, "B_T", 9.5);
    CHECK(cfg.budget.total_budget == 9.5);
    apply_axis(cfg, "mu_k", 6.5);
    CHECK(cfg.network.mu_k == 6.5);
    apply_axis(cfg, "beta_k", 15.0);
    CHECK(cfg.network.beta_k == 15.0);
    apply_axis(cfg, "mu_c", -0.25);
    CHECK(cfg.network.mu_c == -0.25);
    apply_axis(cfg, "beta_c", 8.0);
    CHECK(cfg.network.beta_c == 8.0);
    apply_axis(cfg, "mu_w", 4.0);
    CHECK(cfg.weights.mu_w == 4.0);
    apply_axis(cfg, "beta_w", 2.0);
    CHECK(cfg.weights.beta_w == 2.0);
    apply_axis(cfg, "eta", 1.5);
    CHECK(cfg.params.eta == 1.5);

    CHECK_THROWS_AS(apply_axis(cfg, "N", 20.5), ValidationError);
    CHECK_THROWS_AS(apply_axis(cfg, "rho", 0.1), ValidationError);
}

TEST_CASE("a degenerate grid reduces to a plain ensemble") {
    ExperimentConfig cfg = small_cfg();
    const AxisSpec axis1{"mu_c", {0.2}};
    const AxisSpec axis2{"beta_c", {4.0}};
    const auto grid = sensitivity_grid(cfg, axis1, axis2, false);
    REQUIRE(grid.cells.size() == 1);
    CHECK(grid.cells[0].value1 == 0.2);
    CHECK(grid.cells[0].value2 == 4.0);

    ExperimentConfig direct = cfg;
    direct.network.mu_c = 0.2;
    direct.network.beta_c = 4.0;
    CHECK(same_ensemble(grid.cells[0].ensemble, run_ensemble(direct)));
}

TEST_CASE("grid cells enumerate row-major with axis1 outermost") {
    const AxisSpec axis1{"mu_c", {0.1, 0.3}};
    const AxisSpec axis2{"beta_c", {2.0, 4.0, 8.0}};
    const auto grid = sensitivity_grid(small_cfg(), axis1, axis2, false);
    REQUIRE(grid.cells.size() == 6);
    CHECK(grid.cells[0].value1 == 0.1);
    CHECK(grid.cells[0].value2 == 2.0);
    CHECK(grid.cells[2].value1 == 0.1);
    CHECK(grid.cells[2].value2 == 8.0);
    CHECK(grid.cells[3].value1 == 0.3);
    CHECK(grid.cells[3].value2 == 2.0);
    CHECK(grid.axis1.name == "mu_c");
    CHECK(grid.axis2.name == "beta_c");
}

TEST_CASE("fixing the density rescales the mean outdegree with M") {
    ExperimentConfig base = small_cfg();
    // Base density is mu_k / M = 0.4; the M = 20 cell must use mu_k = 8.
    const AxisSpec axis1{"M", {20.0}};
    const AxisSpec axis2{"eta", {3.0}};
    const auto grid = sensitivity_grid(base, axis1, axis2, true);

    ExperimentConfig direct = base;
    direct.network.n_targets = 20;
    direct.network.mu_k = 8.0;
    CHECK(same_ensemble(grid.cells[0].ensemble, run_ensemble(direct)));

    const auto unfixed = sensitivity_grid(base, axis1, axis2, false);
    ExperimentConfig direct_unfixed = base;
    direct_unfixed.network.n_targets = 20;
    CHECK(same_ensemble(unfixed.cells[0].ensemble, run_ensemble(direct_unfixed)));
}

TEST_CASE("grids reject duplicate or empty axes") {
    const AxisSpec a{"mu_c", {0.1}};
    const AxisSpec b{"mu_c", {0.2}};
    const AxisSpec empty{"beta_c", {}};
    CHECK_THROWS_AS(sensitivity_grid(small_cfg(), a, b, false), ValidationError);
    CHECK_THROWS_AS(sensitivity_grid(small_cfg(), a, empty, false), ValidationError);
}
