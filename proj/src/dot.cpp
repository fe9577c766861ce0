#include "rmc/dot.hpp"

#include <sstream>

namespace rmc {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string pair_label(const RandomMapSystem& system, std::size_t x, std::size_t y) {
  return "{" + system.states().label(x) + "," + system.states().label(y) + "}";
}

}  // namespace

std::string pair_graph_dot(const RandomMapSystem& system) {
  const PairGraph graph = build_pair_graph(system);
  const Relation relation = accordability_relation(system);
  std::ostringstream out;
  out << "digraph pair_graph {\n  rankdir=LR;\n";
  out << "  merged [label=\"MERGED\", shape=doublecircle];\n";
  for (std::size_t v = 0; v < graph.pairs.size(); ++v) {
    const auto [x, y] = graph.pairs[v];
    out << "  p" << v << " [label=" << quoted(pair_label(system, x, y)) << ", shape=box"
        << (relation[x][y] ? ", style=filled, fillcolor=lightgrey" : "") << "];\n";
  }
  auto node = [&](std::size_t v) {
    return v == graph.merged() ? std::string("merged") : "p" + std::to_string(v);
  };
  for (std::size_t v = 0; v < graph.pairs.size(); ++v) {
    for (std::size_t h = 0; h < system.map_count(); ++h) {
      out << "  " << node(v) << " -> " << node(graph.successor[v][h])
          << " [label=" << quoted(system.map(h).name) << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string relation_dot(const RandomMapSystem& system, const Relation& relation) {
  std::ostringstream out;
  out << "graph accordability {\n";
  for (std::size_t x = 0; x < system.degree(); ++x) {
    out << "  s" << x << " [label=" << quoted(system.states().label(x)) << "];\n";
  }
  for (std::size_t x = 0; x < system.degree(); ++x) {
    for (std::size_t y = x + 1; y < system.degree(); ++y) {
      if (relation[x][y]) out << "  s" << x << " -- s" << y << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string walk_graph_dot(const RandomMapSystem& system, const SemigroupTable& table,
                           const WalkGraph& walk) {
  std::ostringstream out;
  out << "digraph walk {\n  start [label=\"id (start)\", shape=diamond];\n";
  for (std::size_t c = 0; c < walk.components.count(); ++c) {
    const auto& nodes = walk.components.components[c];
    if (nodes.size() == 1 && nodes.front() == walk.start) continue;
    const bool closed = walk.components.terminal[c];
    out << "  subgraph cluster_" << c << " {\n    label=" << quoted(closed ? "closed class" : "transient")
        << ";\n" << (closed ? "    style=\"bold,filled\"; fillcolor=lightyellow;\n" : "");
    for (const std::size_t s : nodes) {
      out << "    e" << s << " [label="
          << quoted(system.word_to_string(table.word(s)) + "\\n" + to_string(table.element(s)))
          << "];\n";
    }
    out << "  }\n";
  }
  for (std::size_t v = 0; v < walk.edges.size(); ++v) {
    for (std::size_t h = 0; h < walk.edges[v].size(); ++h) {
      out << "  " << (v == walk.start ? std::string("start") : "e" + std::to_string(v)) << " -> e"
          << walk.edges[v][h] << " [label=" << quoted(system.map(h).name) << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace rmc
