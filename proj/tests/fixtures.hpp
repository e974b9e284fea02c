#pragma once

#include <random>
#include <string>
#include <vector>

#include "flowcat/graph.hpp"

namespace fixtures {

using flowcat::Bundle;
using flowcat::DirectedGraph;
using flowcat::Edge;

inline DirectedGraph loop1() { return DirectedGraph({"u"}, {{"l", "u", "u"}}); }

inline DirectedGraph loop2() {
  return DirectedGraph({"u"}, {{"l1", "u", "u"}, {"l2", "u", "u"}});
}

inline DirectedGraph vw() {
  return DirectedGraph({"v", "w"}, {{"e", "v", "w"}, {"f", "w", "v"}, {"g", "w", "w"}});
}

// Adjacency [[2,1,0],[1,1,1],[0,1,1]].
inline DirectedGraph cuntz_h() {
  return DirectedGraph({"v1", "v2", "v3"}, {{"a1", "v1", "v1"},
                                            {"a2", "v1", "v1"},
                                            {"b", "v1", "v2"},
                                            {"c", "v2", "v1"},
                                            {"d", "v2", "v2"},
                                            {"x", "v2", "v3"},
                                            {"y", "v3", "v2"},
                                            {"z", "v3", "v3"}});
}

inline DirectedGraph acyclic2() {
  return DirectedGraph({"a", "b", "c"}, {{"e", "a", "c"}, {"f", "b", "c"}});
}

inline DirectedGraph h_graph() { return DirectedGraph({"lo", "hi"}, {}, {{"lo", "hi"}}); }

inline DirectedGraph edgeless(int n) {
  std::vector<std::string> vs;
  for (int i = 0; i < n; ++i) vs.push_back("p" + std::to_string(i));
  return DirectedGraph(vs, {});
}

inline DirectedGraph single_edge() { return DirectedGraph({"v", "w"}, {{"e", "v", "w"}}); }

/// Random multigraph; each ordered pair gets 0..max_mult parallel edges with
/// probability `density`.
inline DirectedGraph random_graph(std::mt19937_64& rng, int n, int max_mult, double density,
                                  bool allow_loops = true) {
  std::vector<std::string> vs;
  for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
  std::vector<Edge> es;
  std::bernoulli_distribution coin(density);
  std::uniform_int_distribution<int> mult(1, max_mult);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j && !allow_loops) continue;
      if (!coin(rng)) continue;
      int m = mult(rng);
      for (int k = 0; k < m; ++k)
        es.push_back({"e" + std::to_string(es.size()), vs[i], vs[j]});
    }
  return DirectedGraph(vs, es);
}

/// Random acyclic graph: edges only from lower to higher index.
inline DirectedGraph random_acyclic(std::mt19937_64& rng, int n, double density) {
  std::vector<std::string> vs;
  for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
  std::vector<Edge> es;
  std::bernoulli_distribution coin(density);
  std::uniform_int_distribution<int> mult(1, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) {
        int m = mult(rng);
        for (int k = 0; k < m; ++k)
          es.push_back({"e" + std::to_string(es.size()), vs[i], vs[j]});
      }
  return DirectedGraph(vs, es);
}

}  // namespace fixtures
