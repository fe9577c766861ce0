#include "rmc/structure_h.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "rmc/conditional_law.hpp"
#include "rmc/errors.hpp"
#include "rmc/exact_lp.hpp"
#include "rmc/kernel.hpp"

namespace rmc {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::string set_to_string(const RandomMapSystem& system, StateSet set) {
  std::string out = "{";
  bool first = true;
  for (const std::size_t x : members(set)) {
    out += (first ? "" : ",") + system.states().label(x);
    first = false;
  }
  return out + "}";
}

void require_structure(const RandomMapSystem& system, const std::string& purpose) {
  require_irreducible_aperiodic(build_kernel(system), purpose);
  if (!solve_h_feasibility(system).feasible) {
    throw PreconditionError("uniform-invariance hypothesis required (" + purpose +
                            "); no positive reweighting makes the uniform law invariant");
  }
}

/// Shortest nonempty word t with t(from) = to, by BFS over states.
std::optional<Word> word_sending(const RandomMapSystem& system, std::size_t from, std::size_t to) {
  const std::size_t d = system.degree();
  std::vector<std::size_t> parent(d, kNone);
  std::vector<std::size_t> via(d, kNone);
  std::vector<bool> seen(d, false);
  std::deque<std::size_t> queue;
  for (std::size_t h = 0; h < system.map_count(); ++h) {
    const std::size_t y = system.transformation(h)(from);
    if (seen[y]) continue;
    seen[y] = true;
    via[y] = h;
    queue.push_back(y);
  }
  while (!queue.empty() && !seen[to]) {
    const std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t h = 0; h < system.map_count(); ++h) {
      const std::size_t y = system.transformation(h)(x);
      if (seen[y]) continue;
      seen[y] = true;
      parent[y] = x;
      via[y] = h;
      queue.push_back(y);
    }
  }
  if (!seen[to]) return std::nullopt;
  Word word;  // newest map first
  for (std::size_t y = to; y != kNone; y = parent[y]) word.push_back(via[y]);
  return word;
}

Word concat(const Word& a, const Word& b, const Word& c) {
  Word out(a);
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

}  // namespace

HFeasibility solve_h_feasibility(const RandomMapSystem& system) {
  const std::size_t k = system.map_count();
  const std::size_t d = system.degree();
  // Columns: α_0..α_{k-1}, t, slack_0..slack_{k-1}.
  const std::size_t t_col = k;
  const std::size_t width = 2 * k + 1;
  LinearProgram lp;
  lp.c.assign(width, Rational(0));
  lp.c[t_col] = 1;
  for (std::size_t h = 0; h < k; ++h) {
    std::vector<Rational> row(width, Rational(0));
    row[h] = 1;
    row[t_col] = -1;
    row[t_col + 1 + h] = -1;
    lp.a.push_back(std::move(row));
    lp.b.push_back(0);
  }
  {
    std::vector<Rational> row(width, Rational(0));
    for (std::size_t h = 0; h < k; ++h) row[h] = 1;
    lp.a.push_back(std::move(row));
    lp.b.push_back(1);
  }
  for (std::size_t y = 0; y < d; ++y) {
    std::vector<Rational> row(width, Rational(0));
    for (std::size_t h = 0; h < k; ++h) {
      row[h] = static_cast<long long>(system.transformation(h).preimage_size(y));
    }
    lp.a.push_back(std::move(row));
    lp.b.push_back(1);
  }

  const LpResult result = solve_lp(lp);
  HFeasibility out;
  if (result.status != LpStatus::optimal) return out;
  out.t_star = result.objective;
  if (result.objective > 0) {
    out.feasible = true;
    out.alpha = std::vector<Rational>(result.x.begin(), result.x.begin() + static_cast<std::ptrdiff_t>(k));
    if (!verify_h_certificate(system, *out.alpha)) {
      throw ConsistencyError("LP optimum fails the exact certificate check");
    }
  }
  return out;
}

bool verify_h_certificate(const RandomMapSystem& system, std::span<const Rational> alpha) {
  if (alpha.size() != system.map_count()) return false;
  Rational total = 0;
  for (const auto& a : alpha) {
    if (a <= 0) return false;
    total += a;
  }
  if (total != 1) return false;
  for (std::size_t y = 0; y < system.degree(); ++y) {
    Rational mass = 0;
    for (std::size_t h = 0; h < alpha.size(); ++h) {
      mass += alpha[h] * static_cast<long long>(system.transformation(h).preimage_size(y));
    }
    if (mass != 1) return false;
  }
  return true;
}

HReport check_hypothesis_h(const RandomMapSystem& system, std::size_t state_cap) {
  const HFeasibility lp = solve_h_feasibility(system);
  HReport report;
  report.feasible = lp.feasible;
  report.alpha = lp.alpha;
  report.t_star = lp.t_star;
  report.n = simultaneous_accordability_number(system, state_cap);
  report.m = max_non_accordable(system, state_cap).m;
  report.product_check = report.m * report.n == system.degree();
  report.m_divides_d = system.degree() % report.m == 0;
  return report;
}

std::vector<StateSet> CollapsibleSets::maximal() const {
  std::vector<StateSet> out;
  for (const auto& [set, entry] : sets) {
    if (set_size(set) == n) out.push_back(set);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool CollapsibleSets::collapsible(StateSet set) const {
  if (set_size(set) <= 1) return true;
  return std::any_of(sets.begin(), sets.end(),
                     [&](const auto& kv) { return (set & ~kv.first) == 0; });
}

CollapsibleSets collapsible_sets(const RandomMapSystem& system, std::size_t state_cap) {
  require_state_cap(system, state_cap, "simultaneous accordability search");
  CollapsibleSets out;
  std::deque<StateSet> queue;
  for (std::size_t c = 0; c < system.degree(); ++c) {
    out.sets.emplace(singleton(c), CollapsibleSets::Entry{{}, c});
    queue.push_back(singleton(c));
  }
  out.n = 1;
  while (!queue.empty()) {
    const StateSet current = queue.front();
    queue.pop_front();
    const CollapsibleSets::Entry entry = out.sets.at(current);
    for (std::size_t h = 0; h < system.map_count(); ++h) {
      const StateSet pre = system.transformation(h).preimage_of(current);
      if (pre == 0 || out.sets.contains(pre)) continue;
      Word word = entry.word;
      word.push_back(h);
      out.sets.emplace(pre, CollapsibleSets::Entry{std::move(word), entry.value});
      out.n = std::max(out.n, set_size(pre));
      queue.push_back(pre);
    }
  }
  return out;
}

std::size_t simultaneous_accordability_number(const RandomMapSystem& system,
                                              std::size_t state_cap) {
  return collapsible_sets(system, state_cap).n;
}

PreimageCheck check_preimage_stability(const RandomMapSystem& system, std::uint64_t seed,
                                       std::size_t deep_words, std::size_t state_cap) {
  require_structure(system, "preimage stability of maximal collapsible sets");
  const CollapsibleSets collapsible = collapsible_sets(system, state_cap);
  PreimageCheck check;
  check.n = collapsible.n;
  auto test = [&](StateSet block, const Transformation& s, const std::string& what) {
    const StateSet pre = s.preimage_of(block);
    if (set_size(pre) != collapsible.n || !collapsible.collapsible(pre)) {
      check.counterexample = "preimage of " + set_to_string(system, block) + " under " + what +
                             " is " + set_to_string(system, pre);
      return false;
    }
    return true;
  };
  const auto blocks = collapsible.maximal();
  for (const StateSet block : blocks) {
    ++check.sets_checked;
    for (std::size_t h = 0; h < system.map_count(); ++h) {
      if (!test(block, system.transformation(h), system.map(h).name)) return check;
    }
  }
  Rng rng(seed);
  const MapSampler sampler(system);
  for (std::size_t i = 0; i < deep_words; ++i) {
    Word word(1 + uniform_index(rng, 40));
    for (auto& letter : word) letter = sampler.draw(rng);
    const Transformation s = system.compose_word(word);
    const StateSet block = blocks[uniform_index(rng, blocks.size())];
    ++check.words_checked;
    if (!test(block, s, system.word_to_string(word))) return check;
  }
  check.ok = true;
  return check;
}

StateSet Partition::covered() const {
  StateSet out = 0;
  for (const StateSet b : blocks) out |= b;
  return out;
}

Partition seed_partition(const RandomMapSystem& system, std::size_t state_cap) {
  const CollapsibleSets collapsible = collapsible_sets(system, state_cap);
  const StateSet block = collapsible.maximal().front();
  const auto& entry = collapsible.sets.at(block);
  return Partition{{block}, entry.word, {entry.value}};
}

void verify_partition(const RandomMapSystem& system, const Partition& partition, std::size_t n,
                      const Relation& relation) {
  auto fail = [&](const std::string& why) {
    std::string blocks;
    for (const StateSet b : partition.blocks) blocks += set_to_string(system, b);
    throw ConsistencyError("partition check failed: " + why + "; blocks " + blocks + ", word " +
                           system.word_to_string(partition.collapsing_word));
  };
  if (partition.blocks.size() != partition.block_values.size()) fail("blocks and values differ in count");
  const Transformation s = system.compose_word(partition.collapsing_word);
  StateSet seen = 0;
  for (std::size_t i = 0; i < partition.blocks.size(); ++i) {
    const StateSet block = partition.blocks[i];
    if (set_size(block) != n) fail("block of size " + std::to_string(set_size(block)));
    if (block & seen) fail("blocks overlap");
    seen |= block;
    if (s.image_of(block) != singleton(partition.block_values[i])) fail("word not constant on a block");
    for (std::size_t j = 0; j < i; ++j) {
      if (relation[partition.block_values[i]][partition.block_values[j]]) {
        fail("block values are accordable");
      }
    }
  }
}

Partition extend_partition(const RandomMapSystem& system, const Partition& partial,
                           std::size_t state_cap) {
  require_structure(system, "partition extension");
  const std::size_t n = simultaneous_accordability_number(system, state_cap);
  const Relation relation = accordability_relation(system);
  verify_partition(system, partial, n, relation);
  const StateSet uncovered = full_set(system.degree()) & ~partial.covered();
  if (uncovered == 0) throw PreconditionError("partition already covers every state");

  const std::size_t a = static_cast<std::size_t>(std::countr_zero(uncovered));
  const Transformation s = system.compose_word(partial.collapsing_word);
  const std::size_t c_first = partial.block_values.front();
  const auto t = word_sending(system, c_first, a);
  if (!t) {
    throw ConsistencyError("no word sends " + system.states().label(c_first) + " to " +
                           system.states().label(a) + " in an irreducible system");
  }
  Partition next;
  next.collapsing_word = concat(partial.collapsing_word, *t, partial.collapsing_word);
  next.block_values = partial.block_values;
  next.block_values.push_back(s(a));
  const Transformation u = system.compose_word(next.collapsing_word);
  for (const std::size_t c : next.block_values) next.blocks.push_back(u.preimage_of(singleton(c)));
  verify_partition(system, next, n, relation);
  return next;
}

FullPartition build_full_partition(const RandomMapSystem& system, std::size_t state_cap) {
  FullPartition out{seed_partition(system, state_cap), 0};
  while (out.partition.covered() != full_set(system.degree())) {
    out.partition = extend_partition(system, out.partition, state_cap);
    ++out.extension_steps;
    if (out.extension_steps > system.degree()) {
      throw ConsistencyError("partition construction does not terminate");
    }
  }
  return out;
}

const char* to_string(PrimeBranch branch) {
  return branch == PrimeBranch::all_bijections ? "all_bijections" : "all_collapsible";
}

ProductCheck check_product_formula(const RandomMapSystem& system, std::size_t state_cap) {
  require_structure(system, "product formula M·N = |E|");
  ProductCheck check;
  check.d = system.degree();
  check.m = max_non_accordable(system, state_cap).m;
  check.n = simultaneous_accordability_number(system, state_cap);
  check.mn_equals_d = check.m * check.n == check.d;
  check.minimal_rank = min_rank(system, state_cap);
  const Transformation s = system.compose_word(check.minimal_rank.witness);
  check.fiber_check = true;
  for (const std::size_t c : members(s.image())) {
    if (s.preimage_size(c) != check.n) check.fiber_check = false;
  }
  if (is_prime(check.d)) {
    if (system.all_bijections()) {
      check.prime_branch = PrimeBranch::all_bijections;
      const Distribution uniform = uniform_distribution(check.d);
      const Distribution pi = stationary_distribution(build_kernel(system));
      check.branch_verified = pi == uniform;
      Rng rng(check.d);
      const MapSampler sampler(system);
      for (std::size_t i = 0; i < 64 && check.branch_verified; ++i) {
        Word word(uniform_index(rng, 16));
        for (auto& letter : word) letter = sampler.draw(rng);
        check.branch_verified = pushforward(pi, system.compose_word(word)) == uniform;
      }
    } else if (check.n == check.d) {
      check.prime_branch = PrimeBranch::all_collapsible;
      check.branch_verified = check.m == 1 && innovations_determine(system, state_cap).determined;
    } else {
      throw ConsistencyError("prime state count with neither all bijections nor full collapse");
    }
  }
  return check;
}

}  // namespace rmc
