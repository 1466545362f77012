#include "plandscape/network.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <numeric>
#include <string>

#include "plandscape/distributions.hpp"
#include "plandscape/errors.hpp"

namespace plandscape {

void NetworkConfig::validate() const {
    if (n_policies < 1) {
        throw ValidationError("N: need at least one policy (got " +
                              std::to_string(n_policies) + ")");
    }
    if (n_targets < 1) {
        throw ValidationError("M: need at least one target (got " +
                              std::to_string(n_targets) + ")");
    }
    if (!(mu_k > 1.0 && mu_k < static_cast<double>(n_targets))) {
        throw ValidationError("mu_k: mean outdegree must lie strictly inside (1, M) (got " +
                              std::to_string(mu_k) + " with M=" + std::to_string(n_targets) +
                              ")");
    }
    if (!(beta_k > 0.0)) {
        throw ValidationError("beta_k: must be positive (got " + std::to_string(beta_k) + ")");
    }
    if (!(mu_c > -1.0 && mu_c < 1.0)) {
        throw ValidationError("mu_c: mean coefficient must lie strictly inside (-1, 1) (got " +
                              std::to_string(mu_c) + ")");
    }
    if (!(beta_c > 0.0)) {
        throw ValidationError("beta_c: must be positive (got " + std::to_string(beta_c) + ")");
    }
}

int EdgeSet::edge_count() const {
    int total = 0;
    for (const auto& t : targets_of) total += static_cast<int>(t.size());
    return total;
}

InteractionMatrix::InteractionMatrix(int n_targets, int n_policies)
    : rows_(n_targets),
      cols_(n_policies),
      data_(static_cast<std::size_t>(n_targets) * n_policies, 0.0),
      present_(static_cast<std::size_t>(n_targets) * n_policies, 0),
      indeg_(n_targets, 0),
      col_targets_(n_policies) {
    if (n_targets < 1 || n_policies < 1) {
        throw ValidationError("matrix dimensions must be positive");
    }
}

void InteractionMatrix::add_edge(int target, int policy, double coefficient) {
    if (target < 0 || target >= rows_ || policy < 0 || policy >= cols_) {
        throw ValidationError("edge (" + std::to_string(target) + ", " +
                              std::to_string(policy) + ") out of range");
    }
    const auto idx = static_cast<std::size_t>(target) * cols_ + policy;
    if (present_[idx]) {
        throw ValidationError("duplicate edge (" + std::to_string(target) + ", " +
                              std::to_string(policy) + ")");
    }
    present_[idx] = 1;
    data_[idx] = coefficient;
    indeg_[target] += 1;
    col_targets_[policy].push_back(target);
    edge_count_ += 1;
}

double InteractionMatrix::density() const {
    return static_cast<double>(edge_count_) /
           (static_cast<double>(rows_) * static_cast<double>(cols_));
}

void InteractionMatrix::warn_if_isolated_targets() const {
    static std::atomic<bool> warned{false};
    for (int j = 0; j < rows_; ++j) {
        if (indeg_[j] == 0) {
            if (!warned.exchange(true)) {
                std::fprintf(stderr,
                             "warning: target %d has no incoming edges; its performance "
                             "score stays at 0.5 (reported once per process)\n",
                             j);
            }
            return;
        }
    }
}

OutdegreeSequence sample_outdegrees(const NetworkConfig& config, RngStream& rng) {
    config.validate();
    const ScaledBetaBinomialSpec spec{config.beta_k, config.mu_k, 1, config.n_targets};
    const BetaBinomialTable table(spec);
    OutdegreeSequence out(static_cast<std::size_t>(config.n_policies));
    for (auto& k : out) k = table.sample(rng);
    return out;
}

EdgeSet assign_edges(const NetworkConfig& config, const OutdegreeSequence& outdegrees,
                     RngStream& rng) {
    config.validate();
    if (static_cast<int>(outdegrees.size()) != config.n_policies) {
        throw ValidationError("outdegree sequence length " +
                              std::to_string(outdegrees.size()) + " does not match N=" +
                              std::to_string(config.n_policies));
    }
    std::vector<int> pool(static_cast<std::size_t>(config.n_targets));
    EdgeSet edges;
    edges.targets_of.resize(outdegrees.size());
    for (std::size_t i = 0; i < outdegrees.size(); ++i) {
        const int k = outdegrees[i];
        if (k < 1 || k > config.n_targets) {
            throw ValidationError("outdegree " + std::to_string(k) + " for policy " +
                                  std::to_string(i) + " outside {1, ..., M}");
        }
        // Partial Fisher-Yates: k swaps from a fresh identity pool give a
        // uniform k-subset and consume exactly k draws.
        std::iota(pool.begin(), pool.end(), 0);
        for (int s = 0; s < k; ++s) {
            const auto r = s + static_cast<int>(rng.next_below(
                                   static_cast<std::uint64_t>(config.n_targets - s)));
            std::swap(pool[s], pool[r]);
        }
        auto& targets = edges.targets_of[i];
        targets.assign(pool.begin(), pool.begin() + k);
        std::sort(targets.begin(), targets.end());
    }
    return edges;
}

InteractionMatrix sample_coefficients(const NetworkConfig& config, const EdgeSet& edges,
                                      RngStream& rng) {
    config.validate();
    if (static_cast<int>(edges.targets_of.size()) != config.n_policies) {
        throw ValidationError("edge set has " + std::to_string(edges.targets_of.size()) +
                              " policies, expected " + std::to_string(config.n_policies));
    }
    const ScaledBetaSpec spec{config.beta_c, config.mu_c, -1.0, 1.0};
    InteractionMatrix matrix(config.n_targets, config.n_policies);
    for (int i = 0; i < config.n_policies; ++i) {
        for (const int j : edges.targets_of[i]) {
            double c = sample_scaled_beta(spec, rng);
            if (c == 0.0) {
                // A zero value would read as an absent edge; resample once.
                // A second exact zero is kept (and logged): the edge stays
                // present in the degree bookkeeping with weight zero.
                std::fprintf(stderr,
                             "warning: resampled zero coefficient on edge (%d, %d)\n", j, i);
                c = sample_scaled_beta(spec, rng);
            }
            matrix.add_edge(j, i, c);
        }
    }
    matrix.warn_if_isolated_targets();
    return matrix;
}

InteractionMatrix build_network(const NetworkConfig& config, RngStream& rng) {
    const auto outdegrees = sample_outdegrees(config, rng);
    const auto edges = assign_edges(config, outdegrees, rng);
    return sample_coefficients(config, edges, rng);
}

}  // namespace plandscape
