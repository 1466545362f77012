#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "plandscape/rng.hpp"

namespace plandscape {

// Shape and distribution parameters for one policy-target network draw.
//
// N policies influence M performance targets. Each policy i receives an
// outdegree in {1, ..., M} from a rescaled beta-binomial with mean mu_k,
// its targets are chosen uniformly without replacement, and each realised
// edge carries a coefficient in (-1, 1) from a rescaled beta with mean mu_c.
struct NetworkConfig {
    int n_policies = 100;
    int n_targets = 30;
    double mu_k = 5.0;
    double beta_k = 2.0;
    double mu_c = 1.0 / 3.0;
    double beta_c = 2.0;

    void validate() const;
};

// Per-policy outdegrees, each in {1, ..., n_targets}.
using OutdegreeSequence = std::vector<int>;

// Adjacency as target lists: targets_of[i] holds the row indices policy i
// points at, sorted ascending, no duplicates.
struct EdgeSet {
    std::vector<std::vector<int>> targets_of;

    int edge_count() const;
};

// Signed weighted adjacency, dense row-major M x N. Entry (j, i) is the
// coefficient on the edge policy i -> target j, zero when absent. Edge
// presence is tracked separately from the stored value, so degree queries
// stay correct even in the logged corner case of a zero-weight edge.
class InteractionMatrix {
public:
    InteractionMatrix(int n_targets, int n_policies);

    int n_targets() const { return rows_; }
    int n_policies() const { return cols_; }
    int edge_count() const { return edge_count_; }

    // Rejects duplicate (target, policy) pairs.
    void add_edge(int target, int policy, double coefficient);

    double coefficient(int target, int policy) const {
        return data_[static_cast<std::size_t>(target) * cols_ + policy];
    }
    std::span<const double> row(int target) const {
        return {data_.data() + static_cast<std::size_t>(target) * cols_,
                static_cast<std::size_t>(cols_)};
    }
    // Rows with at least one edge from the given policy, sorted ascending.
    const std::vector<int>& column_targets(int policy) const { return col_targets_[policy]; }

    int indegree(int target) const { return indeg_[target]; }
    const std::vector<int>& indegrees() const { return indeg_; }

    // Realised edge fraction, edge_count / (M * N).
    double density() const;

    // Emits a once-per-process stderr warning if any target has indegree
    // zero (its performance score is then pinned at the neutral value).
    void warn_if_isolated_targets() const;

private:
    int rows_;
    int cols_;
    int edge_count_ = 0;
    std::vector<double> data_;
    std::vector<unsigned char> present_;
    std::vector<int> indeg_;
    std::vector<std::vector<int>> col_targets_;
};

OutdegreeSequence sample_outdegrees(const NetworkConfig& config, RngStream& rng);

// Uniform distinct targets per policy; consumes rng only for the choices it
// makes, so equal outdegree sequences replay to equal edge sets.
EdgeSet assign_edges(const NetworkConfig& config, const OutdegreeSequence& outdegrees,
                     RngStream& rng);

InteractionMatrix sample_coefficients(const NetworkConfig& config, const EdgeSet& edges,
                                      RngStream& rng);

// Full pipeline: outdegrees, edge assignment, coefficients, all from the
// single stream in that order.
InteractionMatrix build_network(const NetworkConfig& config, RngStream& rng);

}  // namespace plandscape
