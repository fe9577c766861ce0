#include "rmc/cftp.hpp"

#include <string>

#include "rmc/errors.hpp"
#include "rmc/kernel.hpp"

namespace rmc {

CftpSampler::CftpSampler(const RandomMapSystem& system, std::size_t depth_cap,
                         std::size_t state_cap)
    : system_(&system), sampler_(system), depth_cap_(depth_cap) {
  require_irreducible_aperiodic(build_kernel(system), "coupling from the past");
  const DeterminationVerdict verdict = innovations_determine(system, state_cap);
  if (!verdict.determined) {
    throw PreconditionError("coupling from the past needs innovations that determine the chain; "
                            "minimal composition rank is " + std::to_string(verdict.rank.rank));
  }
}

CftpResult CftpSampler::sample(std::uint64_t seed) const {
  Rng rng(seed);
  CftpResult result;
  for (std::size_t depth = 1;; depth *= 2) {
    if (depth > depth_cap_) {
      throw CapExceeded("no coalescence within depth " + std::to_string(depth_cap_));
    }
    while (result.word.size() < depth) result.word.push_back(sampler_.draw(rng));
    const Transformation composed = system_->compose_word(result.word);
    if (composed.is_constant()) {
      result.sample = composed(0);
      result.coalescence_depth = depth;
      return result;
    }
  }
}

CftpResult cftp_sample(const RandomMapSystem& system, std::uint64_t seed) {
  return CftpSampler(system).sample(seed);
}

ResidualSampler::ResidualSampler(const RandomMapSystem& system, std::size_t horizon_cap,
                                 std::size_t state_cap)
    : system_(&system), sampler_(system), rank_(0), horizon_cap_(horizon_cap) {
  require_irreducible_aperiodic(build_kernel(system), "uniform pick on the limit set");
  rank_ = min_rank(system, state_cap).rank;
}

ResidualSample ResidualSampler::sample(std::uint64_t seed, std::uint64_t aux_seed) const {
  Rng rng(seed);
  Transformation composed = Transformation::identity(system_->degree());
  std::size_t n = 0;
  while (composed.rank() != rank_) {
    if (n == horizon_cap_) {
      throw CapExceeded("backward walk did not reach rank " + std::to_string(rank_) + " within " +
                        std::to_string(horizon_cap_) + " steps");
    }
    composed = compose(composed, system_->transformation(sampler_.draw(rng)));
    ++n;
  }
  ResidualSample out;
  out.r0 = members(composed.image());
  out.stabilization_index = n;
  Rng aux(aux_seed);
  out.sample = out.r0[uniform_index(aux, out.r0.size())];
  return out;
}

ResidualSample cftp_residual_sample(const RandomMapSystem& system, std::uint64_t seed,
                                    std::uint64_t aux_seed) {
  return ResidualSampler(system).sample(seed, aux_seed);
}

}  // namespace rmc
