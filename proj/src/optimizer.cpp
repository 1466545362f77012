#include "plandscape/optimizer.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "plandscape/errors.hpp"

namespace plandscape {
namespace {

// Raw interaction sums, one per target, for the current policy array.
std::vector<double> compute_dots(const InteractionMatrix& matrix, const PolicyArray& x) {
    std::vector<double> dots(static_cast<std::size_t>(matrix.n_targets()));
    for (int j = 0; j < matrix.n_targets(); ++j) {
        const auto row = matrix.row(j);
        double dot = 0.0;
        for (std::size_t i = 0; i < row.size(); ++i) {
            dot += row[i] * static_cast<double>(x[i]);
        }
        dots[static_cast<std::size_t>(j)] = dot;
    }
    return dots;
}

struct Move {
    int policy = -1;
    int delta = 0;
    double gain = 0.0;
};

// Scans candidates in canonical order and keeps the first strict maximum of
// the score change. Staying put has gain zero, so a returned policy of -1
// means no move improves strictly. Only targets downstream of the touched
// policy contribute to a candidate's gain, which keeps the scan cheap.
Move best_move(const InteractionMatrix& matrix, const PolicyArray& x,
               const std::vector<double>& dots, const ImportanceWeights& w,
               const PerformanceParams& params, const BudgetSpec& budget) {
    Move best;
    const bool can_spend = cost(x) + 1.0 <= budget.total_budget;
    for (int i = 0; i < matrix.n_policies(); ++i) {
        const int level = x[static_cast<std::size_t>(i)];
        for (const int delta : {-1, +1}) {
            const int next = level + delta;
            if (next < 0 || next > budget.max_level()) continue;
            if (delta > 0 && !can_spend) continue;
            double gain = 0.0;
            for (const int j : matrix.column_targets(i)) {
                const double c = matrix.coefficient(j, i);
                const int k_in = matrix.indegree(j);
                const double before = activation(dots[static_cast<std::size_t>(j)], k_in,
                                                 params.eta, budget.alphabet);
                const double after = activation(dots[static_cast<std::size_t>(j)] + delta * c,
                                                k_in, params.eta, budget.alphabet);
                gain += w.weights[static_cast<std::size_t>(j)] * (after - before);
            }
            gain /= w.sigma;
            if (gain > best.gain) best = Move{i, delta, gain};
        }
    }
    return best;
}

void require_feasible(const PolicyArray& x, const BudgetSpec& budget) {
    if (!is_feasible(x, budget)) {
        throw ValidationError("policy array cost " + std::to_string(cost(x)) +
                              " exceeds budget " + std::to_string(budget.total_budget));
    }
}

void require_shapes(const InteractionMatrix& matrix, const PolicyArray& x,
                    const ImportanceWeights& w) {
    if (static_cast<int>(x.size()) != matrix.n_policies()) {
        throw ValidationError("policy array length " + std::to_string(x.size()) +
                              " does not match N=" + std::to_string(matrix.n_policies()));
    }
    if (static_cast<int>(w.weights.size()) != matrix.n_targets()) {
        throw ValidationError("weight vector length " + std::to_string(w.weights.size()) +
                              " does not match M=" + std::to_string(matrix.n_targets()));
    }
}

void check_levels(const PolicyArray& x, const BudgetSpec& budget) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 0 || x[i] > budget.max_level()) {
            throw ValidationError("level " + std::to_string(x[i]) + " at index " +
                                  std::to_string(i) + " outside {0, ..., " +
                                  std::to_string(budget.max_level()) + "}");
        }
    }
}

}  // namespace

std::vector<PolicyArray> neighbors(const PolicyArray& x, const BudgetSpec& budget) {
    budget.validate();
    check_levels(x, budget);
    std::vector<PolicyArray> out;
    out.reserve(1 + 2 * x.size());
    out.push_back(x);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0) {
            out.push_back(x);
            out.back()[i] -= 1;
        }
        if (x[i] < budget.max_level()) {
            out.push_back(x);
            out.back()[i] += 1;
        }
    }
    return out;
}

std::vector<PolicyArray> feasible_neighbors(const PolicyArray& x, const BudgetSpec& budget) {
    require_feasible(x, budget);
    auto all = neighbors(x, budget);
    std::erase_if(all, [&](const PolicyArray& c) { return !is_feasible(c, budget); });
    return all;
}

bool step(const InteractionMatrix& matrix, PolicyArray& x, const ImportanceWeights& w,
          const PerformanceParams& params, const BudgetSpec& budget) {
    budget.validate();
    params.validate();
    require_shapes(matrix, x, w);
    check_levels(x, budget);
    require_feasible(x, budget);
    const auto dots = compute_dots(matrix, x);
    const Move move = best_move(matrix, x, dots, w, params, budget);
    if (move.policy < 0) return false;
    x[static_cast<std::size_t>(move.policy)] += move.delta;
    return true;
}

Trajectory climb(const InteractionMatrix& matrix, PolicyArray initial,
                 const ImportanceWeights& w, const PerformanceParams& params,
                 const BudgetSpec& budget, int max_steps) {
    budget.validate();
    params.validate();
    require_shapes(matrix, initial, w);
    check_levels(initial, budget);
    require_feasible(initial, budget);
    if (max_steps <= 0) max_steps = default_max_steps(matrix.n_policies(), budget.alphabet);

    Trajectory t;
    t.states.push_back(initial);
    t.performances.push_back(overall_performance(matrix, initial, w, params, budget));
    PolicyArray x = std::move(initial);
    for (;;) {
        const auto dots = compute_dots(matrix, x);
        const Move move = best_move(matrix, x, dots, w, params, budget);
        if (move.policy < 0) {
            t.converged = true;
            break;
        }
        if (t.steps == max_steps) break;
        x[static_cast<std::size_t>(move.policy)] += move.delta;
        t.steps += 1;
        t.states.push_back(x);
        t.performances.push_back(overall_performance(matrix, x, w, params, budget));
    }
    return t;
}

bool is_local_optimum(const InteractionMatrix& matrix, const PolicyArray& x,
                      const ImportanceWeights& w, const PerformanceParams& params,
                      const BudgetSpec& budget) {
    budget.validate();
    params.validate();
    require_shapes(matrix, x, w);
    check_levels(x, budget);
    require_feasible(x, budget);
    const auto dots = compute_dots(matrix, x);
    return best_move(matrix, x, dots, w, params, budget).policy < 0;
}

OptimumResult brute_force_optimum(const InteractionMatrix& matrix, const ImportanceWeights& w,
                                  const PerformanceParams& params, const BudgetSpec& budget) {
    budget.validate();
    params.validate();
    const int n = matrix.n_policies();
    if (static_cast<int>(w.weights.size()) != matrix.n_targets()) {
        throw ValidationError("weight vector length does not match M");
    }
    if (std::pow(static_cast<double>(budget.alphabet), n) > 1e7) {
        throw ValidationError("state space too large to enumerate (A^N > 1e7)");
    }
    OptimumResult best;
    best.performance = -std::numeric_limits<double>::infinity();
    PolicyArray x(static_cast<std::size_t>(n), 0);
    for (;;) {
        if (is_feasible(x, budget)) {
            const double f = overall_performance(matrix, x, w, params, budget);
            // Strict comparison keeps the lexicographically first argmax.
            if (f > best.performance) {
                best.performance = f;
                best.x = x;
            }
        }
        int pos = n - 1;
        while (pos >= 0 && x[static_cast<std::size_t>(pos)] == budget.max_level()) {
            x[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++x[static_cast<std::size_t>(pos)];
    }
    return best;
}

std::vector<LandscapeRow> enumerate_landscape(const InteractionMatrix& matrix,
                                              const ImportanceWeights& w,
                                              const PerformanceParams& params,
                                              const BudgetSpec& budget) {
    budget.validate();
    params.validate();
    const int n = matrix.n_policies();
    if (static_cast<int>(w.weights.size()) != matrix.n_targets()) {
        throw ValidationError("weight vector length does not match M");
    }
    const double states = std::pow(static_cast<double>(budget.alphabet), n);
    if (states > 1e6) {
        throw ValidationError("state space too large to tabulate (A^N > 1e6)");
    }
    std::vector<LandscapeRow> rows;
    rows.reserve(static_cast<std::size_t>(states));
    PolicyArray x(static_cast<std::size_t>(n), 0);
    for (;;) {
        LandscapeRow row;
        row.x = x;
        row.cost = cost(x);
        row.performance = overall_performance(matrix, x, w, params, budget);
        row.feasible = is_feasible(x, budget);
        row.local_optimum =
            row.feasible && is_local_optimum(matrix, x, w, params, budget);
        rows.push_back(std::move(row));
        int pos = n - 1;
        while (pos >= 0 && x[static_cast<std::size_t>(pos)] == budget.max_level()) {
            x[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++x[static_cast<std::size_t>(pos)];
    }
    return rows;
}

int default_max_steps(int n_policies, int alphabet) {
    return n_policies * (alphabet - 1) * 100;
}

}  // namespace plandscape
