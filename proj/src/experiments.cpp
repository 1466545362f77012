#include "plandscape/experiments.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "plandscape/errors.hpp"

namespace plandscape {
namespace {

double interpolated_quantile(const std::vector<double>& sorted, double q) {
    const double rank = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(rank);
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = rank - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

Quartiles summarize(const std::vector<SimResult>& per_sim) {
    std::vector<double> finals(per_sim.size());
    for (std::size_t i = 0; i < per_sim.size(); ++i) {
        finals[i] = per_sim[i].final_performance;
    }
    return quartiles(std::move(finals));
}

SimResult to_result(int sim, const Trajectory& t) {
    SimResult r;
    r.sim_index = sim;
    r.final_performance = t.performances.back();
    r.final_cost = cost(t.states.back());
    r.steps = t.steps;
    r.converged = t.converged;
    return r;
}

[[noreturn]] void rethrow_annotated(std::exception_ptr error, int sim) {
    const std::string prefix = "sim " + std::to_string(sim) + ": ";
    try {
        std::rethrow_exception(error);
    } catch (const ValidationError& e) {
        throw ValidationError(prefix + e.what());
    } catch (const IoError& e) {
        throw IoError(prefix + e.what());
    } catch (const std::exception& e) {
        throw std::runtime_error(prefix + e.what());
    }
}

}  // namespace

std::uint64_t stream_id_for(int sim, int role) {
    if (sim < 0) throw ValidationError("sim index must be nonnegative");
    if (role < 0 || role > 3) throw ValidationError("stream role outside {0, ..., 3}");
    return static_cast<std::uint64_t>(sim) * 4 + static_cast<std::uint64_t>(role);
}

void WeightSpec::validate() const {
    if (!(mu_w > static_cast<double>(kWeightFloor) &&
          mu_w < static_cast<double>(kWeightCeiling))) {
        throw ValidationError("mu_w: mean weight must lie strictly inside (1, 10) (got " +
                              std::to_string(mu_w) + ")");
    }
    if (!(beta_w > 0.0)) {
        throw ValidationError("beta_w: must be positive (got " + std::to_string(beta_w) + ")");
    }
}

void ExperimentConfig::validate() const {
    network.validate();
    budget.validate();
    weights.validate();
    params.validate();
    if (n_sims < 1) {
        throw ValidationError("n_sims: need at least one simulation (got " +
                              std::to_string(n_sims) + ")");
    }
    if (max_steps < 0) {
        throw ValidationError("max_steps: must be nonnegative (got " +
                              std::to_string(max_steps) + ")");
    }
    if (workers < 0) {
        throw ValidationError("workers: must be nonnegative (got " +
                              std::to_string(workers) + ")");
    }
}

Quartiles quartiles(std::vector<double> values) {
    if (values.empty()) throw ValidationError("quartiles of an empty sample");
    std::sort(values.begin(), values.end());
    Quartiles q;
    q.q25 = interpolated_quantile(values, 0.25);
    q.median = interpolated_quantile(values, 0.50);
    q.q75 = interpolated_quantile(values, 0.75);
    return q;
}

SimArtifacts run_simulation_full(const ExperimentConfig& config, int sim) {
    config.validate();
    RngStream net_rng(config.base_seed, stream_id_for(sim, kNetworkRole));
    const int weight_sim = config.fix_weights ? 0 : sim;
    RngStream weight_rng(config.base_seed, stream_id_for(weight_sim, kWeightsRole));
    RngStream init_rng(config.base_seed, stream_id_for(sim, kInitialRole));

    InteractionMatrix matrix = build_network(config.network, net_rng);
    ImportanceWeights weights = sample_weights(config.network.n_targets, config.weights.mu_w,
                                               config.weights.beta_w, weight_rng);
    PolicyArray initial =
        sample_initial_condition(config.network.n_policies, config.budget, init_rng);
    Trajectory trajectory =
        climb(matrix, initial, weights, config.params, config.budget, config.max_steps);
    return SimArtifacts{std::move(matrix), std::move(weights), std::move(initial),
                        std::move(trajectory)};
}

SimResult run_simulation(const ExperimentConfig& config, int sim) {
    const SimArtifacts a = run_simulation_full(config, sim);
    return to_result(sim, a.trajectory);
}

EnsembleResult run_ensemble_serial(const ExperimentConfig& config) {
    config.validate();
    EnsembleResult result;
    result.per_sim.reserve(static_cast<std::size_t>(config.n_sims));
    for (int sim = 0; sim < config.n_sims; ++sim) {
        result.per_sim.push_back(run_simulation(config, sim));
    }
    result.performance = summarize(result.per_sim);
    return result;
}

EnsembleResult run_ensemble(const ExperimentConfig& config) {
    config.validate();
    const int n = config.n_sims;
    const int threads = config.workers > 0 ? config.workers : omp_get_max_threads();
    std::vector<SimResult> per_sim(static_cast<std::size_t>(n));
    std::exception_ptr first_error;
    int first_error_sim = std::numeric_limits<int>::max();

// Exceptions must not cross the parallel region; the lowest failing sim
// index is kept so reruns report the same error regardless of scheduling.
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int sim = 0; sim < n; ++sim) {
        try {
            per_sim[static_cast<std::size_t>(sim)] = run_simulation(config, sim);
        } catch (...) {
#pragma omp critical(plandscape_ensemble_error)
            {
                if (sim < first_error_sim) {
                    first_error_sim = sim;
                    first_error = std::current_exception();
                }
            }
        }
    }
    if (first_error) rethrow_annotated(first_error, first_error_sim);

    EnsembleResult result;
    result.per_sim = std::move(per_sim);
    result.performance = summarize(result.per_sim);
    return result;
}

std::vector<SweepPoint> budget_sweep(const ExperimentConfig& base,
                                     const std::vector<double>& budgets) {
    base.validate();
    if (budgets.empty()) throw ValidationError("budgets: need at least one value");
    for (std::size_t i = 1; i < budgets.size(); ++i) {
        if (!(budgets[i] > budgets[i - 1])) {
            throw ValidationError("budgets: values must be strictly ascending");
        }
    }
    std::vector<SweepPoint> points;
    points.reserve(budgets.size());
    for (const double b : budgets) {
        ExperimentConfig cfg = base;
        cfg.budget.total_budget = b;
        SweepPoint point;
        point.budget = b;
        point.ensemble = run_ensemble(cfg);
        points.push_back(std::move(point));
    }
    return points;
}

void apply_axis(ExperimentConfig& config, const std::string& name, double value) {
    const auto as_int = [&](const char* field) {
        if (value != std::floor(value) || std::abs(value) > 1e9) {
            throw ValidationError(std::string(field) + ": axis value " +
                                  std::to_string(value) + " is not an integer");
        }
        return static_cast<int>(value);
    };
    if (name == "N") {
        config.network.n_policies = as_int("N");
    } else if (name == "M") {
        config.network.n_targets = as_int("M");
    } else if (name == "A") {
        config.budget.alphabet = as_int("A");
    } else if (name == "B_T") {
        config.budget.total_budget = value;
    } else if (name == "mu_k") {
        config.network.mu_k = value;
    } else if (name == "beta_k") {
        config.network.beta_k = value;
    } else if (name == "mu_c") {
        config.network.mu_c = value;
    } else if (name == "beta_c") {
        config.network.beta_c = value;
    } else if (name == "mu_w") {
        config.weights.mu_w = value;
    } else if (name == "beta_w") {
        config.weights.beta_w = value;
    } else if (name == "eta") {
        config.params.eta = value;
    } else {
        throw ValidationError("axis: unknown parameter name \"" + name + "\"");
    }
}

GridResult sensitivity_grid(const ExperimentConfig& base, const AxisSpec& axis1,
                            const AxisSpec& axis2, bool fix_rho) {
    base.validate();
    if (axis1.values.empty() || axis2.values.empty()) {
        throw ValidationError("axis: need at least one value per axis");
    }
    if (axis1.name == axis2.name) {
        throw ValidationError("axis: the two axes must name different parameters");
    }
    const double rho_base = base.network.mu_k / static_cast<double>(base.network.n_targets);
    GridResult grid;
    grid.axis1 = axis1;
    grid.axis2 = axis2;
    grid.cells.reserve(axis1.values.size() * axis2.values.size());
    for (const double v1 : axis1.values) {
        for (const double v2 : axis2.values) {
            ExperimentConfig cfg = base;
            apply_axis(cfg, axis1.name, v1);
            apply_axis(cfg, axis2.name, v2);
            if (fix_rho) {
                cfg.network.mu_k = rho_base * static_cast<double>(cfg.network.n_targets);
            }
            GridCell cell;
            cell.value1 = v1;
            cell.value2 = v2;
            cell.ensemble = run_ensemble(cfg);
            grid.cells.push_back(std::move(cell));
        }
    }
    return grid;
}

}  // namespace plandscape
