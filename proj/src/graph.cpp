#include "rmc/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>

namespace rmc {

SccDecomposition strongly_connected_components(const Digraph& graph) {
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
  const std::size_t n = graph.size();
  std::vector<std::size_t> index(n, kUnvisited);
  std::vector<std::size_t> lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  SccDecomposition out;
  out.component_of.assign(n, kUnvisited);

  struct Frame {
    std::size_t node;
    std::size_t next_edge;
  };
  std::vector<Frame> call_stack;
  std::size_t counter = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call_stack.push_back({root, 0});
    index[root] = lowlink[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call_stack.empty()) {
      Frame& frame = call_stack.back();
      const std::size_t v = frame.node;
      if (frame.next_edge < graph[v].size()) {
        const std::size_t w = graph[v][frame.next_edge++];
        if (index[w] == kUnvisited) {
          index[w] = lowlink[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call_stack.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }
      if (lowlink[v] == index[v]) {
        std::vector<std::size_t> component;
        std::size_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          out.component_of[w] = out.components.size();
          component.push_back(w);
        } while (w != v);
        std::sort(component.begin(), component.end());
        out.components.push_back(std::move(component));
      }
      call_stack.pop_back();
      if (!call_stack.empty()) {
        const std::size_t parent = call_stack.back().node;
        lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
      }
    }
  }

  out.terminal.assign(out.components.size(), true);
  for (std::size_t v = 0; v < n; ++v) {
    for (const std::size_t w : graph[v]) {
      if (out.component_of[w] != out.component_of[v]) out.terminal[out.component_of[v]] = false;
    }
  }
  return out;
}

std::size_t period(const Digraph& graph, std::size_t start) {
  constexpr auto kUnseen = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> level(graph.size(), kUnseen);
  std::deque<std::size_t> queue{start};
  level[start] = 0;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (const std::size_t w : graph[v]) {
      if (level[w] == kUnseen) {
        level[w] = level[v] + 1;
        queue.push_back(w);
      }
    }
  }
  std::int64_t g = 0;
  for (std::size_t v = 0; v < graph.size(); ++v) {
    if (level[v] == kUnseen) continue;
    for (const std::size_t w : graph[v]) {
      if (level[w] == kUnseen) continue;
      g = std::gcd(g, level[v] + 1 - level[w]);
    }
  }
  return static_cast<std::size_t>(g);
}

}  // namespace rmc
