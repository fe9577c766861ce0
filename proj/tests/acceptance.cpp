// Acceptance suite: one PASS/FAIL line per criterion. Exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rmc/accordability.hpp"
#include "rmc/catalog.hpp"
#include "rmc/cftp.hpp"
#include "rmc/conditional_law.hpp"
#include "rmc/errors.hpp"
#include "rmc/kernel.hpp"
#include "rmc/report.hpp"
#include "rmc/semigroup.hpp"
#include "rmc/stats.hpp"
#include "rmc/structure_h.hpp"

using namespace rmc;

namespace {

/// Collects failures for one criterion; the first few are printed.
struct Outcome {
  std::vector<std::string> failures;
  std::string summary;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

bool is_ergodic(const RandomMapSystem& system) {
  const auto c = classify_kernel(build_kernel(system));
  return c.irreducible && c.aperiodic;
}

bool is_irreducible(const RandomMapSystem& system) {
  return classify_kernel(build_kernel(system)).irreducible;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

/// Systems shared between criteria; criterion 8 sweeps all of them.
struct Corpus {
  std::vector<RandomMapSystem> random_irreducible;  // criterion 3
  std::vector<RandomMapSystem> random_semigroup;    // criterion 4
  std::vector<RandomMapSystem> colored;             // criterion 6
  std::vector<std::vector<Rational>> colored_certificates;
  std::vector<RandomMapSystem> synchronizing;       // criteria 5 and 7
  std::vector<std::string> synchronizing_names;
};

Corpus build_corpus() {
  Corpus corpus;
  Rng rng(20240901);
  while (corpus.random_irreducible.size() < 200) {
    auto system = random_system(rng);
    if (is_irreducible(system)) corpus.random_irreducible.push_back(std::move(system));
  }
  Rng rng4(20240902);
  while (corpus.random_semigroup.size() < 50) {
    auto system = random_system(rng4);
    if (!is_ergodic(system)) continue;
    try {
      enumerate_semigroup(system, 100'000);
    } catch (const CapExceeded&) {
      continue;
    }
    corpus.random_semigroup.push_back(std::move(system));
  }
  const std::size_t degrees[] = {4, 6, 8};
  const std::size_t colors[] = {2, 3};
  for (std::uint64_t seed = 1; corpus.colored.size() < 30; ++seed) {
    const std::size_t i = corpus.colored.size();
    auto graph = gen_colored_graph_with_certificate(degrees[i % 3], colors[(i / 3) % 2], seed);
    if (!is_ergodic(graph.system)) continue;
    corpus.colored.push_back(std::move(graph.system));
    corpus.colored_certificates.push_back(std::move(graph.uniform_certificate));
  }
  corpus.synchronizing.push_back(counterexample_truncated(4));
  corpus.synchronizing_names.push_back("counterexample-truncated(4)");
  RandomSystemOptions options;
  options.min_states = 4;
  options.max_states = 6;
  Rng rng5(20240905);
  while (corpus.synchronizing.size() < 3) {
    auto system = random_system(rng5, options);
    if (!is_ergodic(system) || min_rank(system).rank != 1) continue;
    if (system.compose_word(Word{0}).is_constant()) continue;  // keep coalescence non-trivial
    corpus.synchronizing_names.push_back("random d=" + std::to_string(system.degree()) +
                                         " |H|=" + std::to_string(system.map_count()));
    corpus.synchronizing.push_back(std::move(system));
  }
  return corpus;
}

Outcome criterion_non_h() {
  Outcome out;
  const auto system = non_h_example();
  const auto relation = accordability_relation(system);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < 4; ++x) {
    for (std::size_t y = x + 1; y < 4; ++y) {
      if (relation[x][y]) pairs.emplace_back(x, y);
    }
  }
  out.expect(pairs == std::vector<std::pair<std::size_t, std::size_t>>{{2, 3}},
             "accordable pairs are not exactly {3,4}");
  const auto h = check_hypothesis_h(system);
  out.expect(h.m == 3, "M = " + std::to_string(h.m));
  out.expect(h.n == 2, "N = " + std::to_string(h.n));
  out.expect(!h.feasible, "uniform-invariance LP reported feasible");
  out.expect(!h.m_divides_d, "M reported as dividing |E|");
  const auto report = analyze(system);
  out.expect(!report.m_divides_d && render_text(report).find("M does not divide |E|") != std::string::npos,
             "report does not state that M does not divide |E|");
  out.summary = "pairs {3,4}, M=" + std::to_string(h.m) + ", N=" + std::to_string(h.n) +
                ", LP infeasible, M does not divide 4";
  return out;
}

Outcome criterion_vinokourov() {
  Outcome out;
  const auto system = vinokourov();
  const Distribution half{Rational(1, 2), Rational(1, 2)};
  out.expect(stationary_distribution(build_kernel(system)) == half, "stationary law is not (1/2,1/2)");
  const auto m = max_non_accordable(system).m;
  out.expect(m == 2, "M = " + std::to_string(m));
  const auto verdict = innovations_determine(system);
  out.expect(!verdict.determined && !verdict.all_pairs_accordable && !verdict.diagonal_absorbs &&
                 !verdict.synchronizing,
             "some determination condition holds");
  // Every word up to length 12, exhaustively.
  std::size_t words = 0;
  for (std::size_t length = 0; length <= 12; ++length) {
    for (std::size_t bits = 0; bits < (std::size_t{1} << length); ++bits) {
      Word word(length);
      for (std::size_t i = 0; i < length; ++i) word[i] = (bits >> i) & 1;
      ++words;
      if (filtered_law(system, word) != half) out.expect(false, "filtered law not uniform for " + system.word_to_string(word));
    }
  }
  const ResidualSampler sampler(system);
  std::vector<std::size_t> counts(2, 0);
  for (std::uint64_t seed = 0; seed < 20000; ++seed) ++counts[sampler.sample(seed, seed + (1ull << 40)).sample];
  const double tv = total_variation(empirical_law(counts), to_doubles(half));
  out.expect(tv < 0.02, "residual marginal TV " + fmt(tv));
  out.summary = "M=2, determination false on all three routes, " + std::to_string(words) +
                " words uniform, residual TV=" + fmt(tv);
  return out;
}

Outcome criterion_determination(const Corpus& corpus) {
  Outcome out;
  std::size_t determined = 0;
  for (std::size_t i = 0; i < corpus.random_irreducible.size(); ++i) {
    const auto& system = corpus.random_irreducible[i];
    const auto relation = accordability_relation(system);
    bool all_pairs = true;
    for (const auto& row : relation) {
      for (const bool v : row) all_pairs = all_pairs && v;
    }
    const bool diagonal = diagonal_recurrence_check(system).holds;
    const bool rank_one = min_rank(system).rank == 1;
    const bool oracle_pairs = oracle::max_non_accordable(system) == 1;
    const bool oracle_diagonal = oracle::diagonal_absorbs(system);
    const bool oracle_rank = oracle::min_rank(system) == 1;
    if (!(all_pairs == diagonal && diagonal == rank_one && rank_one == oracle_pairs &&
          oracle_pairs == oracle_diagonal && oracle_diagonal == oracle_rank)) {
      out.expect(false, "disagreement on system " + std::to_string(i) + ":\n" + serialize(system));
    }
    if (all_pairs) ++determined;
  }
  out.summary = std::to_string(corpus.random_irreducible.size()) + " irreducible systems (" +
                std::to_string(determined) + " determined), " + std::to_string(out.failures.size()) +
                " disagreements";
  return out;
}

Outcome criterion_recurrent(const Corpus& corpus) {
  Outcome out;
  std::size_t elements = 0;
  for (std::size_t i = 0; i < corpus.random_semigroup.size(); ++i) {
    const auto& system = corpus.random_semigroup[i];
    const auto report = check_recurrent_images(system, 100'000);
    elements += report.details.size();
    out.expect(report.ok, "recurrent-image check failed on system " + std::to_string(i));
    out.expect(report.min_rank_over_semigroup == report.m,
               "min rank over S differs from M on system " + std::to_string(i));
    for (const auto& d : report.details) {
      out.expect(d.rank_matches && d.pairwise_non_accordable,
                 "recurrent element " + std::to_string(d.element) + " of system " + std::to_string(i));
    }
  }
  out.summary = std::to_string(corpus.random_semigroup.size()) + " systems, " + std::to_string(elements) +
                " recurrent elements checked";
  return out;
}

Outcome criterion_convergence(const Corpus& corpus) {
  Outcome out;
  std::ostringstream summary;
  std::size_t prefixes = 0;
  for (std::size_t s = 0; s < corpus.synchronizing.size(); ++s) {
    const auto& system = corpus.synchronizing[s];
    const auto m = max_non_accordable(system).m;
    const ConditionalLawTracer tracer(system);
    const auto& pi = tracer.stationary();
    std::size_t stabilized = 0;
    std::vector<double> final_tv;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto trace = tracer.run(seed, 500);
      if (trace.steps.back().atom_count == m) {
        ++stabilized;
        final_tv.push_back(trace.steps.back().tv_to_uniform);
      }
      // Tower identity on every prefix, rebuilding T_n incrementally.
      Transformation composed = Transformation::identity(system.degree());
      for (std::size_t n = 0; n < trace.steps.size(); ++n) {
        Distribution mixture(system.degree(), Rational(0));
        for (std::size_t h = 0; h < system.map_count(); ++h) {
          const auto law = pushforward(pi, compose(composed, system.transformation(h)));
          for (std::size_t y = 0; y < law.size(); ++y) mixture[y] += system.map(h).weight * law[y];
        }
        if (mixture != trace.steps[n].law) {
          out.expect(false, "tower identity fails: system " + std::to_string(s) + " seed " +
                                std::to_string(seed) + " n " + std::to_string(n));
        }
        ++prefixes;
        if (n < 16) {
          const Word prefix(trace.word.begin(), trace.word.begin() + static_cast<std::ptrdiff_t>(n));
          out.expect(tower_property_holds(system, pi, prefix), "library tower check fails");
        }
        if (n < trace.word.size()) composed = compose(composed, system.transformation(trace.word[n]));
      }
    }
    double median = 1.0;
    if (!final_tv.empty()) {
      std::sort(final_tv.begin(), final_tv.end());
      median = final_tv[final_tv.size() / 2];
    }
    out.expect(stabilized >= 95, corpus.synchronizing_names[s] + ": only " + std::to_string(stabilized) +
                                     "/100 traces stabilized");
    out.expect(median < 1e-3, corpus.synchronizing_names[s] + ": median final TV " + fmt(median));
    summary << corpus.synchronizing_names[s] << ": " << stabilized << "/100 stabilized, median TV "
            << fmt(median) << "; ";
  }
  summary << prefixes << " prefixes with exact tower identity";
  out.summary = summary.str();
  return out;
}

Outcome criterion_product(const Corpus& corpus) {
  Outcome out;
  std::size_t blocks = 0;
  for (std::size_t i = 0; i < corpus.colored.size(); ++i) {
    const auto& system = corpus.colored[i];
    const std::string tag = "colored graph " + std::to_string(i) + " (d=" + std::to_string(system.degree()) + ")";
    try {
      // Uniform color law, counted from the color tables by the generator.
      out.expect(verify_h_certificate(system, corpus.colored_certificates[i]), tag + ": uniform certificate rejected");
      const auto lp = solve_h_feasibility(system);
      out.expect(lp.feasible && lp.alpha && verify_h_certificate(system, *lp.alpha),
                 tag + ": LP certificate missing or rejected");
      const auto product = check_product_formula(system);
      out.expect(product.mn_equals_d, tag + ": M*N != d");
      out.expect(product.m == oracle::max_non_accordable(system) && product.n == oracle::max_collapsible(system),
                 tag + ": M or N differs from brute force");
      out.expect(product.fiber_check, tag + ": fiber of a minimal-rank element has the wrong size");
      const auto full = build_full_partition(system);
      const auto& part = full.partition;
      StateSet seen = 0;
      bool disjoint = true;
      for (const auto block : part.blocks) {
        if (seen & block || set_size(block) != product.n) disjoint = false;
        seen |= block;
      }
      out.expect(part.blocks.size() == product.m && disjoint && seen == full_set(system.degree()),
                 tag + ": partition is not M disjoint blocks of size N covering E");
      blocks += part.blocks.size();
    } catch (const std::exception& e) {
      out.expect(false, tag + ": " + e.what());
    }
  }
  out.summary = std::to_string(corpus.colored.size()) + " colored graphs, " + std::to_string(blocks) +
                " partition blocks verified";
  return out;
}

Outcome criterion_cftp(const Corpus& corpus) {
  Outcome out;
  std::ostringstream summary;
  for (std::size_t s = 0; s < corpus.synchronizing.size(); ++s) {
    const auto& system = corpus.synchronizing[s];
    const auto pi = to_doubles(stationary_distribution(build_kernel(system)));
    const CftpSampler sampler(system);
    std::vector<std::size_t> counts(system.degree(), 0);
    double tv_small = 0.0;
    ChiSquare chi;
    for (std::uint64_t seed = 0; seed < 80000; ++seed) {
      ++counts[sampler.sample(seed).sample];
      if (seed + 1 == 20000) {
        tv_small = total_variation(empirical_law(counts), pi);
        chi = chi_square_test(counts, pi);
      }
    }
    const double tv_large = total_variation(empirical_law(counts), pi);
    const auto& name = corpus.synchronizing_names[s];
    out.expect(chi.p_value > 0.01, name + ": chi-square p " + fmt(chi.p_value));
    out.expect(tv_small < 0.02, name + ": TV " + fmt(tv_small));
    out.expect(tv_large < tv_small, name + ": TV did not decrease at 4x samples");
    summary << name << ": p=" << fmt(chi.p_value) << " TV=" << fmt(tv_small) << "->" << fmt(tv_large) << "; ";
  }
  out.summary = summary.str();
  return out;
}

Outcome criterion_mixing(const Corpus& corpus) {
  Outcome out;
  // Desk systems: the builtin catalog and the checked-in data corpus.
  std::vector<std::pair<std::string, RandomMapSystem>> desk;
  for (const auto& name : builtin_names()) desk.emplace_back(name, builtin(name));
  for (std::size_t k = 1; k <= 8; ++k) {
    desk.emplace_back("counterexample-truncated(" + std::to_string(k) + ")", counterexample_truncated(k));
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(RMC_DATA_DIR)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) desk.emplace_back(path.filename().string(), load_system_file(path));
  out.expect(!files.empty(), "no data corpus found in " + std::string(RMC_DATA_DIR));

  std::size_t checked = 0;
  std::size_t worst = 0;
  for (const auto& [name, system] : desk) {
    if (!is_ergodic(system)) continue;
    ++checked;
    const auto kernel = build_kernel(system);
    const auto profile = mixing_profile(kernel, 500);
    for (std::size_t n = 1; n < profile.size(); ++n) {
      if (profile[n] > profile[n - 1] + 1e-15) out.expect(false, name + ": d(n) increases at n=" + std::to_string(n));
    }
    const auto n = mixing_time(kernel, 1e-8, 500);
    out.expect(n.has_value(), name + ": d(500) = " + fmt(profile.back()));
    if (n) worst = std::max(worst, *n);
  }

  // Generated systems are reported, not judged: a random chain can sit
  // arbitrarily close to periodic and mix arbitrarily slowly.
  std::size_t generated = 0;
  std::size_t generated_mixed = 0;
  auto sweep = [&](const std::vector<RandomMapSystem>& systems) {
    for (const auto& system : systems) {
      if (!is_ergodic(system)) continue;
      ++generated;
      if (mixing_time(build_kernel(system), 1e-8, 500)) ++generated_mixed;
    }
  };
  sweep(corpus.random_irreducible);
  sweep(corpus.random_semigroup);
  sweep(corpus.colored);
  sweep(corpus.synchronizing);
  out.summary = std::to_string(checked) + " desk systems, slowest reaches 1e-8 at n=" + std::to_string(worst) +
                " [info: " + std::to_string(generated_mixed) + "/" + std::to_string(generated) +
                " generated suite systems also mix within 500]";
  return out;
}

Outcome criterion_reference_elements() {
  Outcome out;
  const auto system = non_h_example();
  const auto table = enumerate_semigroup(system);
  for (const auto& text : non_h_listed_elements()) {
    out.expect(table.find(system.compose_word(system.parse_word(text))).has_value(),
               "listed element " + text + " missing from S");
  }
  AnalysisOptions options;
  options.reference_elements = non_h_listed_elements();
  const auto report = analyze(system, options);
  out.expect(report.reference_elements_contained == std::optional<bool>(true), "report: containment not recorded");
  out.expect(report.semigroup_size == std::optional<std::size_t>(table.size()), "report: |S| not recorded");
  if (table.size() != non_h_listed_elements().size()) {
    out.expect(!report.semigroup_note.empty(), "report: no note on the differing |S|");
  }
  out.summary = "listed 5 elements contained; |S| = " + std::to_string(table.size()) + "; note: " +
                report.semigroup_note;
  return out;
}

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds; 0 means none stated
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  const auto corpus_start = clock::now();
  const Corpus corpus = build_corpus();
  std::printf("corpus built in %.2f s\n",
              std::chrono::duration<double>(clock::now() - corpus_start).count());

  const std::vector<Criterion> criteria = {
      {1, "non-h example exactness", 1.0, criterion_non_h},
      {2, "vinokourov exactness", 10.0, criterion_vinokourov},
      {3, "determination equivalence on 200 systems", 30.0, [&] { return criterion_determination(corpus); }},
      {4, "recurrent elements have rank M", 0.0, [&] { return criterion_recurrent(corpus); }},
      {5, "conditional-law convergence", 0.0, [&] { return criterion_convergence(corpus); }},
      {6, "product structure on colored graphs", 0.0, [&] { return criterion_product(corpus); }},
      {7, "coupling-from-the-past exactness", 60.0, [&] { return criterion_cftp(corpus); }},
      {8, "mixing below 1e-8 within 500 steps", 0.0, [&] { return criterion_mixing(corpus); }},
      {9, "semigroup reference elements", 0.0, criterion_reference_elements},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.failures.push_back(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(clock::now() - start).count();
    if (c.time_limit > 0 && seconds >= c.time_limit) {
      outcome.failures.push_back("runtime " + fmt(seconds) + " s exceeds " + fmt(c.time_limit) + " s");
    }
    const bool pass = outcome.failures.empty();
    if (!pass) ++failed;
    std::printf("%s [%d] %s (%.2f s): %s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), seconds,
                outcome.summary.c_str());
    for (std::size_t i = 0; i < outcome.failures.size() && i < 5; ++i) {
      std::printf("    %s\n", outcome.failures[i].c_str());
    }
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
