#pragma once

#include <string>

#include "rmc/accordability.hpp"
#include "rmc/semigroup.hpp"
#include "rmc/system.hpp"

namespace rmc {

/// Pair graph; pairs that can merge are filled, MERGED is a double circle.
std::string pair_graph_dot(const RandomMapSystem& system);

/// Undirected accordability relation (self-loops omitted).
std::string relation_dot(const RandomMapSystem& system, const Relation& relation);

/// Walk graph on S plus the identity start; one cluster per strongly
/// connected class, closed classes drawn bold and filled.
std::string walk_graph_dot(const RandomMapSystem& system, const SemigroupTable& table,
                           const WalkGraph& walk);

}  // namespace rmc
