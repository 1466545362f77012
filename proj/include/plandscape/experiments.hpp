#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plandscape/optimizer.hpp"

namespace plandscape {

// Stream roles within one simulation. Four ids are reserved per simulation
// so the layout stays stable if another role is added later.
inline constexpr int kNetworkRole = 0;
inline constexpr int kWeightsRole = 1;
inline constexpr int kInitialRole = 2;

// Deterministic stream id for a given simulation and role. Simulations own
// disjoint id blocks, so any subset of sims can be replayed independently.
std::uint64_t stream_id_for(int sim, int role);

// Mean and concentration of the importance-weight distribution.
struct WeightSpec {
    double mu_w = 8.0;
    double beta_w = 15.0;

    void validate() const;
};

// Everything needed to reproduce one ensemble: generative parameters plus
// seed, simulation count, and execution knobs. Only base_seed and the
// parameter fields affect results; workers never does.
struct ExperimentConfig {
    NetworkConfig network;
    BudgetSpec budget;
    WeightSpec weights;
    PerformanceParams params;
    int n_sims = 100;
    std::uint64_t base_seed = 1;
    int max_steps = 0;        // 0 selects the default cap
    int workers = 0;          // 0 uses every available thread
    bool fix_weights = false; // all sims share simulation 0's weight draw

    void validate() const;
};

struct SimResult {
    int sim_index = 0;
    double final_performance = 0.0;
    int final_cost = 0;
    int steps = 0;
    bool converged = false;
};

struct Quartiles {
    double q25 = 0.0;
    double median = 0.0;
    double q75 = 0.0;
};

struct EnsembleResult {
    std::vector<SimResult> per_sim;
    Quartiles performance;
};

// Full per-simulation state, used where the drawn objects themselves are
// wanted and not just the outcome summary.
struct SimArtifacts {
    InteractionMatrix matrix;
    ImportanceWeights weights;
    PolicyArray initial;
    Trajectory trajectory;
};

// Sample quartiles with linear interpolation between order statistics at
// rank (n - 1) * q. Rejects an empty input.
Quartiles quartiles(std::vector<double> values);

SimArtifacts run_simulation_full(const ExperimentConfig& config, int sim);
SimResult run_simulation(const ExperimentConfig& config, int sim);

// Plain-loop reference implementation.
EnsembleResult run_ensemble_serial(const ExperimentConfig& config);

// Parallel ensemble. Results are written into per-simulation slots keyed by
// sim index, so the outcome is identical to the serial reference for any
// worker count. The first failing simulation (lowest index) wins if several
// throw, and its message is rethrown annotated with the sim index.
EnsembleResult run_ensemble(const ExperimentConfig& config);

struct SweepPoint {
    double budget = 0.0;
    EnsembleResult ensemble;
};

// One ensemble per budget value, with network, weights, and initial draws
// paired across budget points through shared per-sim streams. Budgets must
// be strictly ascending.
std::vector<SweepPoint> budget_sweep(const ExperimentConfig& base,
                                     const std::vector<double>& budgets);

struct AxisSpec {
    std::string name;
    std::vector<double> values;
};

struct GridCell {
    double value1 = 0.0;
    double value2 = 0.0;
    EnsembleResult ensemble;
};

struct GridResult {
    AxisSpec axis1;
    AxisSpec axis2;
    std::vector<GridCell> cells;  // row-major, axis1 outermost
};

// Applies one named parameter override. Valid names: N, M, A, B_T, mu_k,
// beta_k, mu_c, beta_c, mu_w, beta_w, eta. Integer-valued fields reject
// fractional inputs.
void apply_axis(ExperimentConfig& config, const std::string& name, double value);

// Cross product of two parameter axes, one ensemble per cell, realizations
// paired across cells. With fix_rho the mean outdegree is rescaled after the
// axes apply so the edge density mu_k / M matches the base configuration.
GridResult sensitivity_grid(const ExperimentConfig& base, const AxisSpec& axis1,
                            const AxisSpec& axis2, bool fix_rho);

}  // namespace plandscape
