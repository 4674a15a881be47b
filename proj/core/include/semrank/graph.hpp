#pragma once

#include <cstddef>
#include <map>
#include <vector>

namespace semrank {

// Sparse graph with non-negative edge weights. Undirected graphs store each
// edge in both directions with the same weight. Zero-weight edges are never
// stored, and self-loops are rejected.
class WeightedGraph {
 public:
  explicit WeightedGraph(std::size_t node_count = 0, bool directed = false);

  // Sets (replaces) the weight of i -> j, and j -> i when undirected. A
  // zero weight removes the edge. Throws kInvalidArgument for self-loops,
  // out-of-range nodes or negative weights, kNonFiniteWeight for NaN/inf.
  void set_edge(std::size_t from, std::size_t to, double weight = 1.0);

  std::size_t node_count() const noexcept { return out_.size(); }
  bool directed() const noexcept { return directed_; }
  std::size_t edge_count() const;  // stored directed entries

  double weight(std::size_t from, std::size_t to) const;
  const std::map<std::size_t, double>& out_edges(std::size_t node) const { return out_.at(node); }
  double out_weight_sum(std::size_t node) const;

 private:
  bool directed_;
  std::vector<std::map<std::size_t, double>> out_;
};

struct RankOptions {
  double damping = 0.85;
  double tolerance = 1e-6;
  std::size_t max_iterations = 100;

  void validate() const;
};

struct RankVector {
  std::vector<double> scores;
  std::size_t iterations_used = 0;
  bool converged = false;
  double residual = 0.0;                 // max |change| of the last iteration
  std::vector<double> residual_history;  // one entry per iteration
};

// S(i) = (1-d) + d * sum_{j in In(i)} S(j) / |Out(j)|, synchronous updates
// from S = 1, until the max change is <= tolerance or max_iterations is hit.
// Dangling nodes contribute nothing. Throws kEmptyGraph on zero nodes.
RankVector pagerank(const WeightedGraph& graph, const RankOptions& options = {});

// W(i) = (1-d) + d * sum_{j in In(i)} w_ji / (sum_{k in Out(j)} w_jk) * W(j),
// same iteration and convergence rule as pagerank.
RankVector weighted_rank(const WeightedGraph& graph, const RankOptions& options = {});

}  // namespace semrank
