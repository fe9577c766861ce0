#include "rmc/accordability.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>
#include <unordered_map>

#include "rmc/errors.hpp"
#include "rmc/kernel.hpp"

namespace rmc {

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

/// BFS distance to MERGED for every pair-graph node.
std::vector<std::size_t> merge_distances(const PairGraph& graph) {
  const std::size_t nodes = graph.pairs.size() + 1;
  Digraph reverse(nodes);
  for (std::size_t v = 0; v < graph.pairs.size(); ++v) {
    for (const std::size_t w : graph.successor[v]) reverse[w].push_back(v);
  }
  std::vector<std::size_t> dist(nodes, kUnreached);
  dist[graph.merged()] = 0;
  std::deque<std::size_t> queue{graph.merged()};
  while (!queue.empty()) {
    const std::size_t w = queue.front();
    queue.pop_front();
    for (const std::size_t v : reverse[w]) {
      if (dist[v] == kUnreached) {
        dist[v] = dist[w] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

/// Follows strictly decreasing distances, smallest map index first, and
/// returns the word in composition order.
Word merging_word(const PairGraph& graph, const std::vector<std::size_t>& dist,
                  std::size_t node) {
  Word applied;
  while (node != graph.merged()) {
    const auto& next = graph.successor[node];
    std::size_t h = 0;
    while (dist[next[h]] + 1 != dist[node]) ++h;
    applied.push_back(h);
    node = next[h];
  }
  std::reverse(applied.begin(), applied.end());
  return applied;
}

void bron_kerbosch(const std::vector<StateSet>& adjacent, StateSet clique, StateSet candidates,
                   StateSet excluded, StateSet& best) {
  if (candidates == 0 && excluded == 0) {
    if (set_size(clique) > set_size(best)) best = clique;
    return;
  }
  if (set_size(clique) + set_size(candidates) <= set_size(best)) return;
  const StateSet pool = candidates | excluded;
  std::size_t pivot = static_cast<std::size_t>(std::countr_zero(pool));
  std::size_t pivot_degree = 0;
  for (const std::size_t u : members(pool)) {
    const std::size_t deg = set_size(candidates & adjacent[u]);
    if (deg > pivot_degree) {
      pivot = u;
      pivot_degree = deg;
    }
  }
  for (const std::size_t v : members(candidates & ~adjacent[pivot])) {
    bron_kerbosch(adjacent, clique | singleton(v), candidates & adjacent[v],
                  excluded & adjacent[v], best);
    candidates &= ~singleton(v);
    excluded |= singleton(v);
  }
}

}  // namespace

void require_state_cap(const RandomMapSystem& system, std::size_t cap, std::string_view purpose) {
  if (cap > kMaxStates) {
    throw InputError("state cap " + std::to_string(cap) + " exceeds the hard limit " +
                     std::to_string(kMaxStates));
  }
  if (system.degree() > cap) {
    throw CapExceeded(std::string(purpose) + " needs at most " + std::to_string(cap) +
                      " states; system has " + std::to_string(system.degree()));
  }
}

std::size_t PairGraph::node_of(std::size_t x, std::size_t y) const {
  if (x == y) return merged();
  if (x > y) std::swap(x, y);
  // Pairs are listed row by row: (0,1), (0,2), ..., (1,2), ...
  return x * degree - x * (x + 1) / 2 + (y - x - 1);
}

PairGraph build_pair_graph(const RandomMapSystem& system) {
  PairGraph graph;
  graph.degree = system.degree();
  for (std::size_t x = 0; x < graph.degree; ++x) {
    for (std::size_t y = x + 1; y < graph.degree; ++y) graph.pairs.emplace_back(x, y);
  }
  graph.successor.resize(graph.pairs.size() + 1);
  for (std::size_t v = 0; v < graph.pairs.size(); ++v) {
    const auto [x, y] = graph.pairs[v];
    for (const auto& entry : system.maps()) {
      graph.successor[v].push_back(graph.node_of(entry.map(x), entry.map(y)));
    }
  }
  graph.successor[graph.merged()].assign(system.map_count(), graph.merged());
  return graph;
}

PairVerdict accordable(const RandomMapSystem& system, std::size_t x, std::size_t y) {
  if (x >= system.degree() || y >= system.degree()) {
    throw InputError("state index out of range");
  }
  if (x == y) return {true, Word{}};
  const PairGraph graph = build_pair_graph(system);
  const auto dist = merge_distances(graph);
  const std::size_t node = graph.node_of(x, y);
  if (dist[node] == kUnreached) return {false, std::nullopt};
  return {true, merging_word(graph, dist, node)};
}

Relation accordability_relation(const RandomMapSystem& system) {
  const std::size_t d = system.degree();
  const PairGraph graph = build_pair_graph(system);
  const auto dist = merge_distances(graph);
  Relation relation(d, std::vector<bool>(d, false));
  for (std::size_t x = 0; x < d; ++x) relation[x][x] = true;
  for (std::size_t v = 0; v < graph.pairs.size(); ++v) {
    if (dist[v] == kUnreached) continue;
    const auto [x, y] = graph.pairs[v];
    relation[x][y] = relation[y][x] = true;
  }
  return relation;
}

AccordReport max_non_accordable(const RandomMapSystem& system, std::size_t state_cap) {
  require_state_cap(system, state_cap, "maximum non-accordable set");
  const std::size_t d = system.degree();
  const PairGraph graph = build_pair_graph(system);
  const auto dist = merge_distances(graph);

  AccordReport report;
  report.relation.assign(d, std::vector<bool>(d, false));
  for (std::size_t x = 0; x < d; ++x) report.relation[x][x] = true;
  for (std::size_t v = 0; v < graph.pairs.size(); ++v) {
    if (dist[v] == kUnreached) continue;
    const auto [x, y] = graph.pairs[v];
    report.relation[x][y] = report.relation[y][x] = true;
    report.witnesses.emplace(graph.pairs[v], merging_word(graph, dist, v));
  }

  std::vector<StateSet> non_accordable(d, 0);
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t y = 0; y < d; ++y) {
      if (!report.relation[x][y]) non_accordable[x] |= singleton(y);
    }
  }
  StateSet best = 0;
  bron_kerbosch(non_accordable, 0, full_set(d), 0, best);
  report.witness_set = members(best);
  report.m = report.witness_set.size();
  return report;
}

Digraph coupled_support(const RandomMapSystem& system) {
  const std::size_t d = system.degree();
  Digraph graph(d * d);
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t y = 0; y < d; ++y) {
      auto& out = graph[x * d + y];
      for (const auto& entry : system.maps()) out.push_back(entry.map(x) * d + entry.map(y));
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
  }
  return graph;
}

DiagonalCheck diagonal_recurrence_check(const RandomMapSystem& system) {
  const std::size_t d = system.degree();
  const auto sccs = strongly_connected_components(coupled_support(system));
  DiagonalCheck check;
  for (std::size_t node = 0; node < d * d; ++node) {
    const std::size_t x = node / d;
    const std::size_t y = node % d;
    if (x != y && sccs.is_terminal_node(node)) check.offenders.emplace_back(x, y);
  }
  check.holds = check.offenders.empty();
  return check;
}

RankWitness min_rank(const RandomMapSystem& system, std::size_t state_cap) {
  require_state_cap(system, state_cap, "minimal rank search");
  struct Parent {
    StateSet from;
    std::size_t map;
  };
  const StateSet start = full_set(system.degree());
  std::unordered_map<StateSet, Parent> parent;
  parent.emplace(start, Parent{start, 0});
  std::deque<StateSet> queue{start};
  StateSet best = start;
  while (!queue.empty() && set_size(best) > 1) {
    const StateSet current = queue.front();
    queue.pop_front();
    for (std::size_t h = 0; h < system.map_count(); ++h) {
      const StateSet next = system.transformation(h).image_of(current);
      if (!parent.emplace(next, Parent{current, h}).second) continue;
      if (set_size(next) < set_size(best)) best = next;
      queue.push_back(next);
    }
  }
  // Parent links run from the newest map back to the first one applied,
  // which is exactly composition order.
  RankWitness out{set_size(best), {}};
  for (StateSet s = best; s != start; s = parent.at(s).from) out.witness.push_back(parent.at(s).map);
  return out;
}

DeterminationVerdict innovations_determine(const RandomMapSystem& system, std::size_t state_cap) {
  require_irreducible(build_kernel(system), "accordability / coupled-chain equivalence");
  DeterminationVerdict verdict;
  const Relation relation = accordability_relation(system);
  verdict.all_pairs_accordable = true;
  for (const auto& row : relation) {
    for (const bool v : row) verdict.all_pairs_accordable = verdict.all_pairs_accordable && v;
  }
  verdict.diagonal = diagonal_recurrence_check(system);
  verdict.diagonal_absorbs = verdict.diagonal.holds;
  verdict.rank = min_rank(system, state_cap);
  verdict.synchronizing = verdict.rank.rank == 1;
  if (verdict.all_pairs_accordable != verdict.diagonal_absorbs ||
      verdict.all_pairs_accordable != verdict.synchronizing) {
    throw ConsistencyError(
        std::string("determination routes disagree: pairwise accordable=") +
        (verdict.all_pairs_accordable ? "true" : "false") +
        ", diagonal absorbs=" + (verdict.diagonal_absorbs ? "true" : "false") +
        ", synchronizing=" + (verdict.synchronizing ? "true" : "false"));
  }
  verdict.determined = verdict.all_pairs_accordable;
  return verdict;
}

}  // namespace rmc
