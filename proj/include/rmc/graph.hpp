#pragma once

#include <cstddef>
#include <vector>

namespace rmc {

/// Adjacency-list digraph on nodes 0..n-1. Parallel edges are allowed.
using Digraph = std::vector<std::vector<std::size_t>>;

struct SccDecomposition {
  /// component_of[v] is the index of v's component in `components`.
  std::vector<std::size_t> component_of;
  /// Components in reverse topological order of the condensation (sinks
  /// first), each listing its nodes in increasing order.
  std::vector<std::vector<std::size_t>> components;
  /// terminal[c]: no edge leaves component c.
  std::vector<bool> terminal;

  std::size_t count() const { return components.size(); }
  bool is_terminal_node(std::size_t v) const { return terminal[component_of[v]]; }
};

/// Tarjan's algorithm, iterative so that million-node walk graphs do not
/// overflow the call stack.
SccDecomposition strongly_connected_components(const Digraph& graph);

/// Period of a strongly connected digraph: gcd of the lengths of all cycles
/// through `start`, computed from BFS levels as gcd(level(u) + 1 - level(v))
/// over the edges u -> v.
std::size_t period(const Digraph& graph, std::size_t start = 0);

}  // namespace rmc
