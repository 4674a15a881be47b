#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "semrank/graph.hpp"

namespace semrank::test {

struct GraphFixture {
  std::string name;
  std::size_t nodes;
  bool directed;
  std::vector<std::tuple<std::size_t, std::size_t, double>> edges;

  WeightedGraph build(bool uniform = false, double scale = 1.0) const {
    WeightedGraph g(nodes, directed);
    for (const auto& [from, to, w] : edges) g.set_edge(from, to, (uniform ? 1.0 : w) * scale);
    return g;
  }

  // weights[j][i] is the weight of j -> i, mirrored when undirected.
  std::vector<std::vector<double>> dense(bool uniform = false) const {
    std::vector<std::vector<double>> m(nodes, std::vector<double>(nodes, 0.0));
    for (const auto& [from, to, w] : edges) {
      m[from][to] = uniform ? 1.0 : w;
      if (!directed) m[to][from] = uniform ? 1.0 : w;
    }
    return m;
  }
};

inline std::vector<GraphFixture> graph_fixtures() {
  return {
      {"isolated node", 1, true, {}},
      {"mutual pair", 2, true, {{0, 1, 1.0}, {1, 0, 1.0}}},
      {"directed chain", 3, true, {{0, 1, 1.0}, {1, 2, 1.0}}},
      {"weighted square", 4, false, {{0, 1, 1.0}, {0, 2, 2.0}, {1, 2, 0.5}, {2, 3, 3.0}}},
      {"directed cycle", 5, true, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}, {4, 0, 1.0}}},
      {"dangling hub", 5, true, {{1, 0, 1.0}, {2, 0, 2.0}, {3, 0, 0.5}, {4, 0, 1.5}, {4, 1, 1.0}}},
      {"two components", 5, false, {{0, 1, 0.3}, {1, 2, 0.9}, {3, 4, 2.0}}},
      {"complete four", 4, false, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {1, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}}},
      {"directed six with sink",
       6,
       true,
       {{0, 1, 1.0}, {0, 2, 4.0}, {1, 3, 2.0}, {2, 3, 1.0}, {3, 4, 1.0}, {4, 0, 0.2}, {4, 5, 3.0}, {2, 5, 1.0}}},
      {"weighted directed five",
       5,
       true,
       {{0, 1, 0.7}, {1, 0, 0.2}, {1, 2, 1.1}, {2, 3, 0.4}, {3, 1, 2.2}, {3, 4, 0.9}, {4, 2, 1.3}}},
      {"undirected six with isolate",
       6,
       false,
       {{0, 1, 0.25}, {1, 2, 0.75}, {2, 0, 1.5}, {3, 4, 0.6}, {0, 4, 0.05}}},
      {"dense directed six",
       6,
       true,
       {{0, 1, 1.0}, {0, 2, 2.0}, {0, 5, 0.5}, {1, 2, 1.0}, {1, 4, 3.0}, {2, 0, 0.8}, {2, 3, 1.7},
        {3, 5, 2.5}, {4, 3, 0.1}, {4, 0, 0.4}, {5, 1, 1.9}, {5, 4, 0.6}}},
  };
}

}  // namespace semrank::test
