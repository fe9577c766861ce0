#include "rmc/conditional_law.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "rmc/errors.hpp"

namespace rmc {

Distribution pushforward(std::span<const Rational> law, const Transformation& t) {
  Distribution out(law.size(), Rational(0));
  for (std::size_t x = 0; x < law.size(); ++x) out[t(x)] += law[x];
  return out;
}

Distribution filtered_law(const RandomMapSystem& system, std::span<const std::size_t> word) {
  const Distribution pi = stationary_distribution(build_kernel(system));
  return pushforward(pi, system.compose_word(word));
}

StateSet support_of(std::span<const Rational> law) {
  StateSet out = 0;
  for (std::size_t y = 0; y < law.size(); ++y) {
    if (law[y] > 0) out |= singleton(y);
  }
  return out;
}

double tv_to_uniform_on_support(std::span<const Rational> law) {
  const StateSet support = support_of(law);
  const double uniform = 1.0 / static_cast<double>(set_size(support));
  double sum = 0.0;
  for (const std::size_t y : members(support)) sum += std::abs(to_double(law[y]) - uniform);
  return 0.5 * sum;
}

bool tower_property_holds(const RandomMapSystem& system, std::span<const Rational> stationary,
                          std::span<const std::size_t> word) {
  const Distribution lhs = pushforward(stationary, system.compose_word(word));
  Distribution rhs(stationary.size(), Rational(0));
  Word extended(word.begin(), word.end());
  extended.push_back(0);
  for (std::size_t h = 0; h < system.map_count(); ++h) {
    extended.back() = h;
    const Distribution law = pushforward(stationary, system.compose_word(extended));
    for (std::size_t y = 0; y < law.size(); ++y) rhs[y] += system.map(h).weight * law[y];
  }
  return lhs == rhs;
}

ConditionalLawTracer::ConditionalLawTracer(const RandomMapSystem& system)
    : system_(&system), sampler_(system) {
  const Kernel kernel = build_kernel(system);
  require_irreducible_aperiodic(kernel, "conditional law given the innovations");
  stationary_ = stationary_distribution(kernel);
}

FilteredTrace ConditionalLawTracer::run(std::uint64_t seed, std::size_t horizon) const {
  FilteredTrace trace;
  trace.seed = seed;
  Rng rng(seed);
  Transformation composed = Transformation::identity(system_->degree());
  for (std::size_t n = 0;; ++n) {
    FilteredStep step;
    step.n = n;
    step.law = pushforward(stationary_, composed);
    step.support = support_of(step.law);
    step.atom_count = set_size(step.support);
    step.tv_to_uniform = tv_to_uniform_on_support(step.law);
    trace.steps.push_back(std::move(step));
    if (n == horizon) break;
    const std::size_t h = sampler_.draw(rng);
    trace.word.push_back(h);
    composed = compose(composed, system_->transformation(h));
  }
  return trace;
}

FilteredTrace convergence_trace(const RandomMapSystem& system, std::uint64_t seed,
                                std::size_t horizon) {
  return ConditionalLawTracer(system).run(seed, horizon);
}

AtomProfile atom_profile(const FilteredTrace& trace, std::size_t m, double tolerance) {
  AtomProfile profile;
  if (trace.steps.empty()) return profile;
  profile.nonincreasing = true;
  for (std::size_t i = 1; i < trace.steps.size(); ++i) {
    if (trace.steps[i].atom_count > trace.steps[i - 1].atom_count) profile.nonincreasing = false;
  }
  const FilteredStep& last = trace.steps.back();
  profile.final_count = last.atom_count;
  profile.matches_m = profile.final_count == m;
  profile.equal_masses_at_limit = true;
  const auto atoms = members(last.support);
  for (const std::size_t y : atoms) {
    if (std::abs(to_double(last.law[y]) - to_double(last.law[atoms.front()])) > tolerance) {
      profile.equal_masses_at_limit = false;
    }
  }
  return profile;
}

void write_trace_csv(std::ostream& out, const RandomMapSystem& system, const FilteredTrace& trace) {
  out << "n,support,law,tv_to_uniform\n";
  for (const auto& step : trace.steps) {
    out << step.n << ',';
    bool first = true;
    for (const std::size_t y : members(step.support)) {
      out << (first ? "" : ";") << system.states().label(y);
      first = false;
    }
    out << ',';
    for (std::size_t y = 0; y < step.law.size(); ++y) out << (y ? ";" : "") << to_string(step.law[y]);
    char tv[32];
    std::snprintf(tv, sizeof tv, "%.12e", step.tv_to_uniform);
    out << ',' << tv << '\n';
  }
}

}  // namespace rmc
