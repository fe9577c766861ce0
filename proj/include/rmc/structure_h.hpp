#pragma once

// Uniform-invariance hypothesis: some positive reweighting α of the maps
// satisfies Σ_h α_h · |h^{-1}{y}| = 1 for every state y, i.e. the uniform law
// is invariant for the chain driven by α. Under it, together with an
// irreducible aperiodic kernel, the maximal number M of pairwise
// non-accordable states and the maximal number N of simultaneously
// accordable states satisfy M · N = |E|.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rmc/accordability.hpp"
#include "rmc/system.hpp"

namespace rmc {

struct HFeasibility {
  bool feasible = false;
  /// Optimal α, present iff feasible.
  std::optional<std::vector<Rational>> alpha;
  /// Optimal positivity margin; absent when no nonnegative α exists at all.
  std::optional<Rational> t_star;
};

/// maximize t s.t. α_h ≥ t, Σ α_h = 1, Σ_h α_h |h^{-1}{y}| = 1 for all y.
/// Feasible iff the optimum is strictly positive.
HFeasibility solve_h_feasibility(const RandomMapSystem& system);

/// Independent exact re-check of a certificate, without the LP.
bool verify_h_certificate(const RandomMapSystem& system, std::span<const Rational> alpha);

struct HReport {
  bool feasible = false;
  std::optional<std::vector<Rational>> alpha;
  std::optional<Rational> t_star;
  std::size_t n = 0;
  std::size_t m = 0;
  bool product_check = false;
  bool m_divides_d = false;
};

HReport check_hypothesis_h(const RandomMapSystem& system, std::size_t state_cap = kDefaultStateCap);

/// Sets collapsible to one point by some word. Only maximal preimages
/// w^{-1}{c} are stored; every subset of a stored set is collapsible too.
struct CollapsibleSets {
  struct Entry {
    Word word;
    std::size_t value = 0;
  };
  std::size_t n = 0;
  std::unordered_map<StateSet, Entry> sets;

  /// Stored sets of size n, in increasing mask order.
  std::vector<StateSet> maximal() const;
  /// True iff `set` is contained in some stored set.
  bool collapsible(StateSet set) const;
};

/// Backward BFS from singletons over the subset lattice via B -> h^{-1}(B).
CollapsibleSets collapsible_sets(const RandomMapSystem& system,
                                 std::size_t state_cap = kDefaultStateCap);

std::size_t simultaneous_accordability_number(const RandomMapSystem& system,
                                              std::size_t state_cap = kDefaultStateCap);

struct PreimageCheck {
  bool ok = false;
  std::size_t n = 0;
  std::size_t sets_checked = 0;
  std::size_t words_checked = 0;
  std::optional<std::string> counterexample;
};

/// Every preimage of a maximal collapsible set, by a generator and by
/// `deep_words` random words, again has exactly N simultaneously accordable
/// states. Requires the hypothesis and an irreducible aperiodic kernel.
PreimageCheck check_preimage_stability(const RandomMapSystem& system, std::uint64_t seed = 0,
                                       std::size_t deep_words = 200,
                                       std::size_t state_cap = kDefaultStateCap);

/// Disjoint blocks, one word constant on each block, block values.
struct Partition {
  std::vector<StateSet> blocks;
  Word collapsing_word;
  std::vector<std::size_t> block_values;

  StateSet covered() const;
};

/// One maximal collapsible set with its collapsing word.
Partition seed_partition(const RandomMapSystem& system, std::size_t state_cap = kDefaultStateCap);

/// Adds one block: pick a outside the blocks, c = s(a), a word t with
/// t(c_1) = a, and take the preimages of the values under s∘t∘s. The result
/// is verified before it is returned.
Partition extend_partition(const RandomMapSystem& system, const Partition& partial,
                           std::size_t state_cap = kDefaultStateCap);

/// Blocks of size n, disjoint, word constant on each with the recorded value,
/// values pairwise non-accordable. Throws ConsistencyError with the witness.
void verify_partition(const RandomMapSystem& system, const Partition& partition, std::size_t n,
                      const Relation& relation);

struct FullPartition {
  Partition partition;
  std::size_t extension_steps = 0;
};

/// Seeds and extends until the blocks cover E.
FullPartition build_full_partition(const RandomMapSystem& system,
                                   std::size_t state_cap = kDefaultStateCap);

enum class PrimeBranch { all_bijections, all_collapsible };

const char* to_string(PrimeBranch branch);

struct ProductCheck {
  std::size_t d = 0;
  std::size_t m = 0;
  std::size_t n = 0;
  bool mn_equals_d = false;
  /// Every fiber of a minimal-rank element has exactly n states.
  bool fiber_check = false;
  RankWitness minimal_rank;
  /// Set when d is prime.
  std::optional<PrimeBranch> prime_branch;
  /// The branch's consequence was confirmed: uniform filtered laws for
  /// bijections, a synchronizing word otherwise.
  bool branch_verified = false;
};

ProductCheck check_product_formula(const RandomMapSystem& system,
                                   std::size_t state_cap = kDefaultStateCap);

}  // namespace rmc
