#pragma once

// Coupling from the past over the full state space.
//
// Innovations are indexed backwards from time 0: word[i] drives the step
// from time -i-1 to -i. The horizon doubles (1, 2, 4, ...) and every
// doubling REUSES the innovations already drawn for the recent times; only
// older ones are new. Redrawing them, or running forward until the maps
// coalesce, biases the output.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rmc/accordability.hpp"
#include "rmc/system.hpp"

namespace rmc {

inline constexpr std::size_t kDefaultCftpDepthCap = std::size_t{1} << 24;

struct CftpResult {
  std::size_t sample = 0;
  /// Horizon at which the composition of word[0..depth) became constant.
  std::size_t coalescence_depth = 0;
  /// All innovations drawn, newest first; word.size() == coalescence_depth.
  Word word;
};

/// Exact sampler of the stationary law. Requires that the innovations
/// determine the chain (minimal rank 1) and an irreducible aperiodic kernel.
class CftpSampler {
 public:
  explicit CftpSampler(const RandomMapSystem& system, std::size_t depth_cap = kDefaultCftpDepthCap,
                       std::size_t state_cap = kDefaultStateCap);

  CftpResult sample(std::uint64_t seed) const;

 private:
  const RandomMapSystem* system_;
  MapSampler sampler_;
  std::size_t depth_cap_;
};

CftpResult cftp_sample(const RandomMapSystem& system, std::uint64_t seed);

struct ResidualSample {
  /// The limit image R0 of the sampled innovations (sorted states).
  std::vector<std::size_t> r0;
  std::size_t sample = 0;
  std::size_t stabilization_index = 0;
};

/// Runs the backward walk until its image shrinks to the minimal rank M,
/// which is then R0, and picks a uniform point of R0 with an independent
/// auxiliary stream. Works for any M; the marginal law is stationary.
class ResidualSampler {
 public:
  explicit ResidualSampler(const RandomMapSystem& system, std::size_t horizon_cap = 1'000'000,
                           std::size_t state_cap = kDefaultStateCap);

  ResidualSample sample(std::uint64_t seed, std::uint64_t aux_seed) const;
  std::size_t rank() const { return rank_; }

 private:
  const RandomMapSystem* system_;
  MapSampler sampler_;
  std::size_t rank_;
  std::size_t horizon_cap_;
};

ResidualSample cftp_residual_sample(const RandomMapSystem& system, std::uint64_t seed,
                                    std::uint64_t aux_seed);

}  // namespace rmc
