#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "rmc/accordability.hpp"
#include "rmc/graph.hpp"
#include "rmc/system.hpp"

namespace rmc {

inline constexpr std::size_t kDefaultSemigroupCap = 1'000'000;

/// The semigroup S generated by the maps, closed under right multiplication
/// s -> s ∘ h. Element i < map_count() is generator i.
class SemigroupTable {
 public:
  std::size_t size() const { return elements_.size(); }
  const Transformation& element(std::size_t i) const { return elements_[i]; }
  const std::vector<Transformation>& elements() const { return elements_; }
  /// right(s, h) = index of element(s) ∘ h.
  std::size_t right(std::size_t s, std::size_t h) const { return right_[s][h]; }
  std::size_t generator_count() const { return generator_count_; }
  /// A shortest word (composition order) producing element i.
  Word word(std::size_t i) const;
  std::optional<std::size_t> find(const Transformation& t) const;

 private:
  friend SemigroupTable enumerate_semigroup(const RandomMapSystem&, std::size_t);

  std::vector<Transformation> elements_;
  std::vector<std::vector<std::size_t>> right_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> last_;
  std::size_t generator_count_ = 0;
  std::unordered_map<Transformation, std::size_t, TransformationHash> index_;
};

/// Breadth-first closure. Throws CapExceeded (with the partial size) rather
/// than truncating.
SemigroupTable enumerate_semigroup(const RandomMapSystem& system,
                                   std::size_t cap = kDefaultSemigroupCap);

/// Right-multiplication walk T_{n+1} = T_n ∘ h on S, started from the
/// identity (node `start`, which is not an element of S unless generated).
struct WalkGraph {
  std::size_t start = 0;
  Digraph edges;
  SccDecomposition components;
  /// recurrent[i]: element i lies in a closed class of the walk.
  std::vector<bool> recurrent;

  std::vector<std::size_t> recurrent_elements() const;
};

WalkGraph walk_structure(const SemigroupTable& table);

struct RecurrentElementCheck {
  std::size_t element = 0;
  StateSet image = 0;
  bool rank_matches = false;
  bool pairwise_non_accordable = false;
};

struct RecurrentImageReport {
  bool ok = false;
  std::size_t m = 0;
  std::size_t semigroup_size = 0;
  /// min over all s in S of |s(E)|.
  std::size_t min_rank_over_semigroup = 0;
  std::vector<RecurrentElementCheck> details;
};

/// Every recurrent element r of the walk has |r(E)| = M with r(E) pairwise
/// non-accordable, and M is the minimal rank over S. Requires an irreducible
/// aperiodic kernel.
RecurrentImageReport check_recurrent_images(const RandomMapSystem& system,
                                            std::size_t semigroup_cap = kDefaultSemigroupCap,
                                            std::size_t state_cap = kDefaultStateCap);

struct BackwardTrace {
  std::uint64_t seed = 0;
  /// Sampled map indices, newest innovation first (composition order).
  Word word;
  /// images[n] = T_n(E); images[0] = E.
  std::vector<StateSet> images;
  std::size_t target_rank = 0;
  bool stabilized = false;
  /// First n with |T_n(E)| = target rank, when reached.
  std::optional<std::size_t> stabilization_index;
  /// images[stabilization_index] when stabilized, else the last image.
  StateSet limit_image = 0;
};

/// Samples the backward walk until its image shrinks to the minimal rank
/// (at which point it equals the limit set R0) or the horizon runs out.
class BackwardWalker {
 public:
  BackwardWalker(const RandomMapSystem& system, std::size_t target_rank);
  /// Target rank from min_rank().
  static BackwardWalker with_min_rank(const RandomMapSystem& system,
                                      std::size_t state_cap = kDefaultStateCap);

  BackwardTrace run(std::uint64_t seed, std::size_t horizon) const;
  std::size_t target_rank() const { return target_rank_; }

 private:
  const RandomMapSystem* system_;
  MapSampler sampler_;
  std::size_t target_rank_;
};

BackwardTrace sample_backward_walk(const RandomMapSystem& system, std::uint64_t seed,
                                   std::size_t horizon);

}  // namespace rmc
