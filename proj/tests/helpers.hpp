#pragma once

#include <functional>

#include "rmc/catalog.hpp"
#include "rmc/kernel.hpp"
#include "rmc/system.hpp"

namespace testing {

/// Draws random systems until `count` of them satisfy `keep`, calling `body`
/// on each. Deterministic in `seed`.
inline void for_random_systems(std::uint64_t seed, int count,
                               const std::function<bool(const rmc::RandomMapSystem&)>& keep,
                               const std::function<void(const rmc::RandomMapSystem&)>& body,
                               rmc::RandomSystemOptions options = {}) {
  rmc::Rng rng(seed);
  int done = 0;
  while (done < count) {
    const auto system = rmc::random_system(rng, options);
    if (!keep(system)) continue;
    body(system);
    ++done;
  }
}

inline bool irreducible(const rmc::RandomMapSystem& system) {
  return rmc::classify_kernel(rmc::build_kernel(system)).irreducible;
}

inline bool ergodic(const rmc::RandomMapSystem& system) {
  const auto c = rmc::classify_kernel(rmc::build_kernel(system));
  return c.irreducible && c.aperiodic;
}

inline bool any(const rmc::RandomMapSystem&) { return true; }

}  // namespace testing
