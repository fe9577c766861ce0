#include "rmc/semigroup.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "rmc/errors.hpp"
#include "rmc/kernel.hpp"

namespace rmc {

namespace {
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
}

Word SemigroupTable::word(std::size_t i) const {
  Word out;
  for (std::size_t node = i; node != kNone; node = parent_[node]) out.push_back(last_[node]);
  std::reverse(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> SemigroupTable::find(const Transformation& t) const {
  const auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SemigroupTable enumerate_semigroup(const RandomMapSystem& system, std::size_t cap) {
  if (cap == 0) throw InputError("semigroup cap must be at least 1");
  SemigroupTable table;
  const std::size_t k = system.map_count();
  table.generator_count_ = k;
  auto insert = [&](Transformation t, std::size_t parent, std::size_t last) {
    const auto [it, fresh] = table.index_.emplace(t, table.elements_.size());
    if (fresh) {
      if (table.elements_.size() == cap) {
        throw CapExceeded("semigroup exceeds cap " + std::to_string(cap) + " (partial size " +
                          std::to_string(table.elements_.size()) + ")");
      }
      table.elements_.push_back(std::move(t));
      table.parent_.push_back(parent);
      table.last_.push_back(last);
    }
    return it->second;
  };
  for (std::size_t h = 0; h < k; ++h) insert(system.transformation(h), kNone, h);
  for (std::size_t s = 0; s < table.elements_.size(); ++s) {
    std::vector<std::size_t> row(k);
    for (std::size_t h = 0; h < k; ++h) {
      row[h] = insert(compose(table.elements_[s], system.transformation(h)), s, h);
    }
    table.right_.push_back(std::move(row));
  }
  return table;
}

std::vector<std::size_t> WalkGraph::recurrent_elements() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < recurrent.size(); ++i) {
    if (recurrent[i]) out.push_back(i);
  }
  return out;
}

WalkGraph walk_structure(const SemigroupTable& table) {
  WalkGraph walk;
  const std::size_t n = table.size();
  walk.start = n;
  walk.edges.resize(n + 1);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t h = 0; h < table.generator_count(); ++h) walk.edges[s].push_back(table.right(s, h));
  }
  for (std::size_t h = 0; h < table.generator_count(); ++h) walk.edges[n].push_back(h);
  walk.components = strongly_connected_components(walk.edges);
  walk.recurrent.resize(n);
  for (std::size_t s = 0; s < n; ++s) walk.recurrent[s] = walk.components.is_terminal_node(s);
  return walk;
}

RecurrentImageReport check_recurrent_images(const RandomMapSystem& system,
                                            std::size_t semigroup_cap, std::size_t state_cap) {
  require_irreducible_aperiodic(build_kernel(system), "recurrent-image structure of the walk");
  const AccordReport accord = max_non_accordable(system, state_cap);
  const SemigroupTable table = enumerate_semigroup(system, semigroup_cap);
  const WalkGraph walk = walk_structure(table);

  RecurrentImageReport report;
  report.m = accord.m;
  report.semigroup_size = table.size();
  report.min_rank_over_semigroup = system.degree();
  for (const auto& element : table.elements()) {
    report.min_rank_over_semigroup = std::min(report.min_rank_over_semigroup, element.rank());
  }
  report.ok = report.min_rank_over_semigroup == report.m;
  for (const std::size_t r : walk.recurrent_elements()) {
    RecurrentElementCheck check;
    check.element = r;
    check.image = table.element(r).image();
    check.rank_matches = set_size(check.image) == accord.m;
    check.pairwise_non_accordable = true;
    const auto points = members(check.image);
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        if (accord.relation[points[i]][points[j]]) check.pairwise_non_accordable = false;
      }
    }
    report.ok = report.ok && check.rank_matches && check.pairwise_non_accordable;
    report.details.push_back(check);
  }
  return report;
}

BackwardWalker::BackwardWalker(const RandomMapSystem& system, std::size_t target_rank)
    : system_(&system), sampler_(system), target_rank_(target_rank) {}

BackwardWalker BackwardWalker::with_min_rank(const RandomMapSystem& system, std::size_t state_cap) {
  return BackwardWalker(system, min_rank(system, state_cap).rank);
}

BackwardTrace BackwardWalker::run(std::uint64_t seed, std::size_t horizon) const {
  BackwardTrace trace;
  trace.seed = seed;
  trace.target_rank = target_rank_;
  Rng rng(seed);
  Transformation composed = Transformation::identity(system_->degree());
  trace.images.push_back(composed.image());
  for (std::size_t n = 0;; ++n) {
    if (set_size(trace.images.back()) == target_rank_) {
      trace.stabilized = true;
      trace.stabilization_index = n;
      break;
    }
    if (n == horizon) break;
    const std::size_t h = sampler_.draw(rng);
    trace.word.push_back(h);
    composed = compose(composed, system_->transformation(h));
    trace.images.push_back(composed.image());
  }
  trace.limit_image = trace.images.back();
  return trace;
}

BackwardTrace sample_backward_walk(const RandomMapSystem& system, std::uint64_t seed,
                                   std::size_t horizon) {
  return BackwardWalker::with_min_rank(system).run(seed, horizon);
}

}  // namespace rmc
