#pragma once

// Exact filtering of the stationary law through backward compositions.
//
// For the two-sided stationary chain, X_{-n} is independent of the n most
// recent innovations and X_0 = T_n(X_{-n}). The law of X_0 given those
// innovations is therefore the pushforward π ∘ T_n^{-1}. Conditioning on the
// whole innovation sequence is replaced by this growing finite window; the
// window laws form a martingale that converges to the uniform law on R0.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "rmc/kernel.hpp"
#include "rmc/system.hpp"

namespace rmc {

/// weight(y) = Σ_{x : t(x) = y} law(x).
Distribution pushforward(std::span<const Rational> law, const Transformation& t);

/// Law of X_0 given the innovations in `word` (newest first). Requires an
/// irreducible kernel.
Distribution filtered_law(const RandomMapSystem& system, std::span<const std::size_t> word);

StateSet support_of(std::span<const Rational> law);

/// TV distance between `law` and the uniform law on its own support.
double tv_to_uniform_on_support(std::span<const Rational> law);

/// Exact tower identity: law(w) = Σ_h weight(h) · law(w·h), where w·h
/// appends one older innovation.
bool tower_property_holds(const RandomMapSystem& system, std::span<const Rational> stationary,
                          std::span<const std::size_t> word);

struct FilteredStep {
  std::size_t n = 0;
  StateSet support = 0;
  Distribution law;
  double tv_to_uniform = 0.0;
  std::size_t atom_count = 0;
};

struct FilteredTrace {
  std::uint64_t seed = 0;
  Word word;
  /// steps[n] is the law given the n most recent innovations, n = 0..horizon.
  std::vector<FilteredStep> steps;
};

/// Samples innovations one at a time and records the exact filtered law.
class ConditionalLawTracer {
 public:
  /// Requires an irreducible aperiodic kernel.
  explicit ConditionalLawTracer(const RandomMapSystem& system);

  FilteredTrace run(std::uint64_t seed, std::size_t horizon) const;
  const Distribution& stationary() const { return stationary_; }

 private:
  const RandomMapSystem* system_;
  MapSampler sampler_;
  Distribution stationary_;
};

FilteredTrace convergence_trace(const RandomMapSystem& system, std::uint64_t seed,
                                std::size_t horizon);

struct AtomProfile {
  std::size_t final_count = 0;
  bool nonincreasing = false;
  /// Final masses pairwise equal within the tolerance after float conversion.
  bool equal_masses_at_limit = false;
  bool matches_m = false;
};

AtomProfile atom_profile(const FilteredTrace& trace, std::size_t m, double tolerance = 1e-6);

/// One row per step: n, support labels, law as rational strings, tv.
void write_trace_csv(std::ostream& out, const RandomMapSystem& system, const FilteredTrace& trace);

}  // namespace rmc
