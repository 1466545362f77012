#include "plandscape/performance.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "plandscape/distributions.hpp"
#include "plandscape/errors.hpp"

namespace plandscape {

void BudgetSpec::validate() const {
    if (alphabet < 2) {
        throw ValidationError("A: alphabet needs at least two levels (got " +
                              std::to_string(alphabet) + ")");
    }
    if (!(total_budget >= 0.0)) {
        throw ValidationError("B_T: total budget must be nonnegative (got " +
                              std::to_string(total_budget) + ")");
    }
}

void PerformanceParams::validate() const {
    if (!(eta > 0.0)) {
        throw ValidationError("eta: must be positive (got " + std::to_string(eta) + ")");
    }
}

int cost(const PolicyArray& x) {
    int total = 0;
    for (const int level : x) total += level;
    return total;
}

bool is_feasible(const PolicyArray& x, const BudgetSpec& budget) {
    return static_cast<double>(cost(x)) <= budget.total_budget;
}

long long count_feasible(int n, const BudgetSpec& budget) {
    budget.validate();
    if (n < 1) throw ValidationError("n: need at least one policy");
    const double states = std::pow(static_cast<double>(budget.alphabet), n);
    if (states > 1e7) {
        throw ValidationError("state space too large to enumerate (A^N > 1e7)");
    }
    PolicyArray x(static_cast<std::size_t>(n), 0);
    long long feasible = 0;
    for (;;) {
        if (is_feasible(x, budget)) ++feasible;
        int pos = n - 1;
        while (pos >= 0 && x[pos] == budget.max_level()) {
            x[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++x[pos];
    }
    return feasible;
}

ImportanceWeights sample_weights(int n_targets, double mu_w, double beta_w, RngStream& rng) {
    if (n_targets < 1) throw ValidationError("M: need at least one target");
    if (!(mu_w > static_cast<double>(kWeightFloor) &&
          mu_w < static_cast<double>(kWeightCeiling))) {
        throw ValidationError("mu_w: mean weight must lie strictly inside (1, 10) (got " +
                              std::to_string(mu_w) + ")");
    }
    if (!(beta_w > 0.0)) {
        throw ValidationError("beta_w: must be positive (got " + std::to_string(beta_w) + ")");
    }
    const BetaBinomialTable table(
        ScaledBetaBinomialSpec{beta_w, mu_w, kWeightFloor, kWeightCeiling});
    ImportanceWeights w;
    w.weights.resize(static_cast<std::size_t>(n_targets));
    for (auto& grade : w.weights) {
        grade = table.sample(rng);
        w.sigma += grade;
    }
    return w;
}

double individual_performance(const InteractionMatrix& matrix, int target,
                              const PolicyArray& x, const PerformanceParams& params,
                              const BudgetSpec& budget) {
    assert(target >= 0 && target < matrix.n_targets());
    assert(static_cast<int>(x.size()) == matrix.n_policies());
    const int k_in = matrix.indegree(target);
    if (k_in == 0) return 0.5;
    const auto row = matrix.row(target);
    double dot = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        dot += row[i] * static_cast<double>(x[i]);
    }
    return activation(dot, k_in, params.eta, budget.alphabet);
}

std::vector<double> performance_array(const InteractionMatrix& matrix, const PolicyArray& x,
                                      const PerformanceParams& params,
                                      const BudgetSpec& budget) {
    std::vector<double> scores(static_cast<std::size_t>(matrix.n_targets()));
    for (int j = 0; j < matrix.n_targets(); ++j) {
        scores[static_cast<std::size_t>(j)] =
            individual_performance(matrix, j, x, params, budget);
    }
    return scores;
}

double overall_performance(std::span<const double> scores, const ImportanceWeights& w) {
    if (scores.size() != w.weights.size()) {
        throw ValidationError("score/weight length mismatch (" +
                              std::to_string(scores.size()) + " vs " +
                              std::to_string(w.weights.size()) + ")");
    }
    if (w.sigma <= 0) {
        throw ValidationError("sigma: weight sum must be positive");
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < scores.size(); ++j) {
        acc += static_cast<double>(w.weights[j]) * scores[j];
    }
    return acc / static_cast<double>(w.sigma);
}

double overall_performance(const InteractionMatrix& matrix, const PolicyArray& x,
                           const ImportanceWeights& w, const PerformanceParams& params,
                           const BudgetSpec& budget) {
    const auto scores = performance_array(matrix, x, params, budget);
    return overall_performance(scores, w);
}

PolicyArray sample_initial_condition(int n_policies, const BudgetSpec& budget,
                                     RngStream& rng) {
    budget.validate();
    if (n_policies < 1) throw ValidationError("N: need at least one policy");
    PolicyArray x(static_cast<std::size_t>(n_policies));
    for (auto& level : x) {
        level = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(budget.alphabet)));
    }
    while (!is_feasible(x, budget)) {
        const auto i = static_cast<std::size_t>(
            rng.next_below(static_cast<std::uint64_t>(n_policies)));
        if (x[i] > 0) --x[i];
    }
    return x;
}

}  // namespace plandscape
