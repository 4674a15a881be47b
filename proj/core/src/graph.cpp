#include "semrank/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "semrank/error.hpp"

namespace semrank {
namespace {

struct InLink {
  std::size_t from;
  double coefficient;
};

RankVector iterate(const std::vector<std::vector<InLink>>& in_links, const RankOptions& options) {
  const std::size_t n = in_links.size();
  RankVector result;
  result.scores.assign(n, 1.0);
  std::vector<double> next(n);
  const double base = 1.0 - options.damping;

  while (result.iterations_used < options.max_iterations) {
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (const auto& link : in_links[i]) sum += link.coefficient * result.scores[link.from];
      next[i] = base + options.damping * sum;
      residual = std::max(residual, std::abs(next[i] - result.scores[i]));
    }
    result.scores.swap(next);
    ++result.iterations_used;
    result.residual = residual;
    result.residual_history.push_back(residual);
    if (residual <= options.tolerance) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace

WeightedGraph::WeightedGraph(std::size_t node_count, bool directed) : directed_(directed), out_(node_count) {}

void WeightedGraph::set_edge(std::size_t from, std::size_t to, double weight) {
  if (from >= out_.size() || to >= out_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "edge endpoint out of range");
  }
  if (from == to) throw Error(ErrorCode::kInvalidArgument, "self-loop on node " + std::to_string(from));
  if (!std::isfinite(weight)) throw Error(ErrorCode::kNonFiniteWeight, "non-finite edge weight");
  if (weight < 0.0) throw Error(ErrorCode::kInvalidArgument, "negative edge weight");

  const auto assign = [&](std::size_t a, std::size_t b) {
    if (weight == 0.0) {
      out_[a].erase(b);
    } else {
      out_[a][b] = weight;
    }
  };
  assign(from, to);
  if (!directed_) assign(to, from);
}

std::size_t WeightedGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& edges : out_) n += edges.size();
  return n;
}

double WeightedGraph::weight(std::size_t from, std::size_t to) const {
  const auto& edges = out_.at(from);
  const auto it = edges.find(to);
  return it == edges.end() ? 0.0 : it->second;
}

double WeightedGraph::out_weight_sum(std::size_t node) const {
  double sum = 0.0;
  for (const auto& [to, w] : out_.at(node)) sum += w;
  return sum;
}

void RankOptions::validate() const {
  if (!(damping > 0.0 && damping < 1.0)) throw Error(ErrorCode::kInvalidArgument, "damping must lie in (0, 1)");
  if (!(tolerance > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  if (max_iterations == 0) throw Error(ErrorCode::kInvalidArgument, "max_iterations must be positive");
}

RankVector pagerank(const WeightedGraph& graph, const RankOptions& options) {
  options.validate();
  if (graph.node_count() == 0) throw Error(ErrorCode::kEmptyGraph, "cannot rank an empty graph");
  std::vector<std::vector<InLink>> in_links(graph.node_count());
  for (std::size_t j = 0; j < graph.node_count(); ++j) {
    const auto& out = graph.out_edges(j);
    if (out.empty()) continue;
    const double share = 1.0 / static_cast<double>(out.size());
    for (const auto& [i, w] : out) in_links[i].push_back({j, share});
  }
  return iterate(in_links, options);
}

RankVector weighted_rank(const WeightedGraph& graph, const RankOptions& options) {
  options.validate();
  if (graph.node_count() == 0) throw Error(ErrorCode::kEmptyGraph, "cannot rank an empty graph");
  std::vector<std::vector<InLink>> in_links(graph.node_count());
  for (std::size_t j = 0; j < graph.node_count(); ++j) {
    const auto& out = graph.out_edges(j);
    if (out.empty()) continue;
    const double total = graph.out_weight_sum(j);
    if (!std::isfinite(total)) throw Error(ErrorCode::kNonFiniteWeight, "out-weight sum overflows");
    for (const auto& [i, w] : out) in_links[i].push_back({j, w / total});
  }
  return iterate(in_links, options);
}

}  // namespace semrank
