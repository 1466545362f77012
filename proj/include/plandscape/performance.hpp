#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "plandscape/network.hpp"
#include "plandscape/rng.hpp"

namespace plandscape {

// One intervention level per policy, each in {0, ..., alphabet - 1}.
using PolicyArray = std::vector<int>;

// Priority grades run from lowest to highest importance.
inline constexpr int kWeightFloor = 1;
inline constexpr int kWeightCeiling = 10;

// Discrete intervention alphabet and the total spend ceiling. The ceiling is
// real-valued so fractional budgets sit strictly between integer cost levels.
struct BudgetSpec {
    int alphabet = 5;
    double total_budget = 300.0;

    int max_level() const { return alphabet - 1; }
    void validate() const;
};

// Per-target priority grades, each in {1, ..., 10}, plus their cached sum.
struct ImportanceWeights {
    std::vector<int> weights;
    int sigma = 0;
};

struct PerformanceParams {
    double eta = 3.0;

    void validate() const;
};

// Sum of intervention levels.
int cost(const PolicyArray& x);

// Real-valued comparison: cost may sit strictly below a fractional ceiling.
bool is_feasible(const PolicyArray& x, const BudgetSpec& budget);

// Number of feasible arrays of length n over the given alphabet, by direct
// enumeration. Guarded against alphabet^n exceeding 1e7 states.
long long count_feasible(int n, const BudgetSpec& budget);

// Independent grades from a rescaled beta-binomial on {1, ..., 10} with mean
// mu_w; sigma is their sum.
ImportanceWeights sample_weights(int n_targets, double mu_w, double beta_w, RngStream& rng);

// Squashed per-target score. Targets with no incoming edges score exactly
// the neutral 0.5 regardless of the policy array.
inline double activation(double dot, int k_in, double eta, int alphabet) {
    if (k_in == 0) return 0.5;
    const double scale = static_cast<double>(alphabet - 1) * static_cast<double>(k_in);
    return 0.5 + 0.5 * std::tanh(eta * dot / scale);
}

double individual_performance(const InteractionMatrix& matrix, int target,
                              const PolicyArray& x, const PerformanceParams& params,
                              const BudgetSpec& budget);

std::vector<double> performance_array(const InteractionMatrix& matrix, const PolicyArray& x,
                                      const PerformanceParams& params,
                                      const BudgetSpec& budget);

// Weighted mean of the per-target scores, normalised by sigma.
double overall_performance(std::span<const double> scores, const ImportanceWeights& w);
double overall_performance(const InteractionMatrix& matrix, const PolicyArray& x,
                           const ImportanceWeights& w, const PerformanceParams& params,
                           const BudgetSpec& budget);

// Uniform levels per policy, then random single-level decrements until the
// budget constraint holds. Always terminates: cost strictly decreases and
// the all-zero array is feasible for any nonnegative ceiling.
PolicyArray sample_initial_condition(int n_policies, const BudgetSpec& budget,
                                     RngStream& rng);

}  // namespace plandscape
