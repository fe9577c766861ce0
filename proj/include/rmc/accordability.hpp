#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "rmc/graph.hpp"
#include "rmc/system.hpp"

namespace rmc {

/// Default bound on the state count for analyses that walk the 2^d subset
/// lattice or search for cliques. Callers may raise it up to kMaxStates.
inline constexpr std::size_t kDefaultStateCap = 16;

/// Throws CapExceeded if the system is larger than `cap`, or InputError if
/// `cap` itself exceeds kMaxStates.
void require_state_cap(const RandomMapSystem& system, std::size_t cap, std::string_view purpose);

/// Unordered pairs {x, y}, x < y, plus one absorbing MERGED node. Every map
/// sends {x, y} to {h(x), h(y)}, or to MERGED when the images coincide.
struct PairGraph {
  std::size_t degree = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  /// successor[node][h]; MERGED maps to itself.
  std::vector<std::vector<std::size_t>> successor;

  std::size_t merged() const { return pairs.size(); }
  std::size_t node_of(std::size_t x, std::size_t y) const;
};

PairGraph build_pair_graph(const RandomMapSystem& system);

using Relation = std::vector<std::vector<bool>>;

struct PairVerdict {
  bool accordable = false;
  /// Shortest merging word, when accordable; empty for x == y.
  std::optional<Word> witness;
};

/// x and y are accordable when some word maps them to the same state.
PairVerdict accordable(const RandomMapSystem& system, std::size_t x, std::size_t y);

/// Symmetric, reflexive relation from one backward BFS out of MERGED.
Relation accordability_relation(const RandomMapSystem& system);

struct AccordReport {
  Relation relation;
  /// Maximum number of pairwise non-accordable states.
  std::size_t m = 0;
  std::vector<std::size_t> witness_set;
  /// Shortest merging word for each accordable pair (x < y).
  std::map<std::pair<std::size_t, std::size_t>, Word> witnesses;
};

/// Exact maximum clique in the non-accordability graph (Bron–Kerbosch with
/// pivoting over bitmasks).
AccordReport max_non_accordable(const RandomMapSystem& system,
                                std::size_t state_cap = kDefaultStateCap);

struct DiagonalCheck {
  bool holds = false;
  /// Off-diagonal ordered pairs lying in closed classes of the coupled chain.
  std::vector<std::pair<std::size_t, std::size_t>> offenders;
};

/// Every closed communicating class of the coupled chain on E × E lies on the
/// diagonal. On a finite space the stationary laws of the coupled chain are
/// exactly the mixtures of laws carried by closed classes.
DiagonalCheck diagonal_recurrence_check(const RandomMapSystem& system);

/// Support digraph of the coupled kernel on E × E; node (x, y) is x·d + y.
Digraph coupled_support(const RandomMapSystem& system);

struct RankWitness {
  std::size_t rank = 0;
  Word witness;
};

/// Minimum |s(E)| over the subset automaton A -> h(A) started from E, with a
/// shortest realizing word. Rank 1 means the witness is synchronizing.
RankWitness min_rank(const RandomMapSystem& system, std::size_t state_cap = kDefaultStateCap);

struct DeterminationVerdict {
  bool determined = false;
  bool all_pairs_accordable = false;
  bool diagonal_absorbs = false;
  bool synchronizing = false;
  DiagonalCheck diagonal;
  RankWitness rank;
};

/// Decides whether the innovations determine the stationary chain by three
/// independent routes: pairwise accordability, closed classes of the coupled
/// chain, and existence of a constant composition. Requires an irreducible
/// kernel; throws ConsistencyError if the routes disagree.
DeterminationVerdict innovations_determine(const RandomMapSystem& system,
                                           std::size_t state_cap = kDefaultStateCap);

}  // namespace rmc
