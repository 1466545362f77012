#pragma once

#include <vector>

#include "plandscape/network.hpp"
#include "plandscape/performance.hpp"

namespace plandscape {

// Record of one greedy climb. states[0] is the initial condition, each later
// entry differs from its predecessor in exactly one coordinate by one level,
// and performances holds the overall score at every recorded state.
struct Trajectory {
    std::vector<PolicyArray> states;
    std::vector<double> performances;
    bool converged = false;
    int steps = 0;
};

struct OptimumResult {
    PolicyArray x;
    double performance = 0.0;
};

struct LandscapeRow {
    PolicyArray x;
    int cost = 0;
    double performance = 0.0;
    bool feasible = false;
    bool local_optimum = false;
};

// Candidate states in canonical order: the state itself first, then for each
// index ascending its decrement (if above zero) and increment (if below the
// top level). Budget feasibility is not applied here.
std::vector<PolicyArray> neighbors(const PolicyArray& x, const BudgetSpec& budget);

// Same order with increments that would break the budget removed. The input
// itself must be feasible.
std::vector<PolicyArray> feasible_neighbors(const PolicyArray& x, const BudgetSpec& budget);

// Applies the best strictly improving feasible single-coordinate move to x.
// Returns false, leaving x untouched, when no such move exists. Ties between
// improving moves go to the earliest candidate in canonical order.
bool step(const InteractionMatrix& matrix, PolicyArray& x, const ImportanceWeights& w,
          const PerformanceParams& params, const BudgetSpec& budget);

// Repeats step until convergence or until max_steps moves were taken.
// max_steps <= 0 selects default_max_steps. Strict ascent bounds the walk,
// so converged = false past the cap signals a runaway configuration.
Trajectory climb(const InteractionMatrix& matrix, PolicyArray initial,
                 const ImportanceWeights& w, const PerformanceParams& params,
                 const BudgetSpec& budget, int max_steps = 0);

bool is_local_optimum(const InteractionMatrix& matrix, const PolicyArray& x,
                      const ImportanceWeights& w, const PerformanceParams& params,
                      const BudgetSpec& budget);

// Exhaustive feasible-state argmax, first maximum in lexicographic order
// wins ties. Guarded against alphabet^N exceeding 1e7 states.
OptimumResult brute_force_optimum(const InteractionMatrix& matrix, const ImportanceWeights& w,
                                  const PerformanceParams& params, const BudgetSpec& budget);

// Every state with its cost, score, and flags. Guarded at 1e6 states.
std::vector<LandscapeRow> enumerate_landscape(const InteractionMatrix& matrix,
                                              const ImportanceWeights& w,
                                              const PerformanceParams& params,
                                              const BudgetSpec& budget);

int default_max_steps(int n_policies, int alphabet);

}  // namespace plandscape
