// Command-line front end. Exit status: 0 success, 1 analysis refused
// (a hypothesis does not hold or a cap was hit), 2 input error.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rmc/accordability.hpp"
#include "rmc/catalog.hpp"
#include "rmc/cftp.hpp"
#include "rmc/conditional_law.hpp"
#include "rmc/dot.hpp"
#include "rmc/errors.hpp"
#include "rmc/kernel.hpp"
#include "rmc/report.hpp"
#include "rmc/semigroup.hpp"
#include "rmc/stats.hpp"
#include "rmc/structure_h.hpp"

using namespace rmc;
using nlohmann::ordered_json;

namespace {

constexpr int kExitRefused = 1;
constexpr int kExitInput = 2;

std::string fixed(double v, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

std::string set_text(const RandomMapSystem& system, StateSet set) {
  std::string out = "{";
  bool first = true;
  for (const auto x : members(set)) {
    out += (first ? "" : ",") + system.states().label(x);
    first = false;
  }
  return out + "}";
}

ordered_json set_json(const RandomMapSystem& system, StateSet set) {
  ordered_json out = ordered_json::array();
  for (const auto x : members(set)) out.push_back(system.states().label(x));
  return out;
}

/// Runs body(i) for i in [0, count) on up to `threads` workers. Results are
/// written by index, so output order never depends on scheduling.
template <typename Body>
void parallel_for(std::size_t count, std::size_t threads, Body body) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::size_t default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// ---------------------------------------------------------------- analyze

int cmd_analyze(const std::string& file, bool json, std::size_t state_cap, std::size_t semigroup_cap) {
  const auto system = load_system_file(file);
  AnalysisOptions options;
  options.state_cap = state_cap;
  options.semigroup_cap = semigroup_cap;
  if (serialize(system) == serialize(non_h_example())) options.reference_elements = non_h_listed_elements();
  const Report report = analyze(system, options);
  if (const auto problem = report_inconsistency(report)) throw ConsistencyError(*problem);
  if (json) {
    std::cout << to_json(report).dump(2) << '\n';
  } else {
    std::cout << render_text(report);
  }
  return 0;
}

// ---------------------------------------------------------------- accord

int cmd_accord(const std::string& file, const std::vector<std::string>& pair, bool witness,
               const std::string& dot_path, bool json, std::size_t state_cap) {
  const auto system = load_system_file(file);
  const auto& states = system.states();
  if (!pair.empty()) {
    const auto x = states.index_of(pair[0]);
    const auto y = states.index_of(pair[1]);
    const auto verdict = accordable(system, x, y);
    if (json) {
      ordered_json doc{{"pair", pair}, {"accordable", verdict.accordable}};
      if (witness) doc["witness"] = verdict.witness ? ordered_json(system.word_to_string(*verdict.witness)) : ordered_json();
      std::cout << doc.dump(2) << '\n';
    } else {
      std::cout << "{" << pair[0] << "," << pair[1] << "}: " << (verdict.accordable ? "accordable" : "not accordable")
                << '\n';
      if (witness && verdict.witness) std::cout << "witness: " << system.word_to_string(*verdict.witness) << '\n';
    }
    return 0;
  }
  const auto report = max_non_accordable(system, state_cap);
  if (!dot_path.empty()) write_file(dot_path, relation_dot(system, report.relation));
  if (json) {
    ordered_json pairs = ordered_json::array();
    for (const auto& [p, word] : report.witnesses) {
      ordered_json entry{{"pair", {states.label(p.first), states.label(p.second)}}};
      if (witness) entry["witness"] = system.word_to_string(word);
      pairs.push_back(entry);
    }
    ordered_json set = ordered_json::array();
    for (const auto x : report.witness_set) set.push_back(states.label(x));
    std::cout << ordered_json{{"accordable_pairs", pairs}, {"m", report.m}, {"non_accordable_set", set}}.dump(2)
              << '\n';
    return 0;
  }
  std::cout << "accordability relation (1 = accordable):\n   ";
  for (const auto& label : states.labels()) std::cout << ' ' << label;
  std::cout << '\n';
  for (std::size_t x = 0; x < system.degree(); ++x) {
    std::cout << "  " << states.label(x);
    for (std::size_t y = 0; y < system.degree(); ++y) std::cout << ' ' << (report.relation[x][y] ? '1' : '0');
    std::cout << '\n';
  }
  for (const auto& [p, word] : report.witnesses) {
    std::cout << "{" << states.label(p.first) << "," << states.label(p.second) << "}";
    if (witness) std::cout << " by " << system.word_to_string(word);
    std::cout << '\n';
  }
  std::cout << "M = " << report.m << ", e.g. {";
  for (std::size_t i = 0; i < report.witness_set.size(); ++i) {
    std::cout << (i ? "," : "") << states.label(report.witness_set[i]);
  }
  std::cout << "}\n";
  return 0;
}

// ---------------------------------------------------------------- semigroup

int cmd_semigroup(const std::string& file, std::size_t cap, const std::string& dot_path, bool json) {
  const auto system = load_system_file(file);
  const auto table = enumerate_semigroup(system, cap);
  const auto walk = walk_structure(table);
  if (!dot_path.empty()) write_file(dot_path, walk_graph_dot(system, table, walk));
  std::size_t min_rank_value = system.degree();
  for (const auto& t : table.elements()) min_rank_value = std::min(min_rank_value, t.rank());
  if (json) {
    ordered_json elements = ordered_json::array();
    for (std::size_t i = 0; i < table.size(); ++i) {
      ordered_json image = ordered_json::array();
      for (std::size_t x = 0; x < system.degree(); ++x) image.push_back(system.states().label(table.element(i)(x)));
      elements.push_back({{"word", system.word_to_string(table.word(i))},
                          {"table", image},
                          {"rank", table.element(i).rank()},
                          {"recurrent", static_cast<bool>(walk.recurrent[i])}});
    }
    std::cout << ordered_json{{"size", table.size()}, {"min_rank", min_rank_value}, {"elements", elements}}.dump(2)
              << '\n';
    return 0;
  }
  std::cout << "|S| = " << table.size() << ", minimal rank " << min_rank_value << ", "
            << walk.recurrent_elements().size() << " recurrent elements\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    std::cout << "  " << (walk.recurrent[i] ? '*' : ' ') << ' ' << to_string(table.element(i)) << "  rank "
              << table.element(i).rank() << "  " << system.word_to_string(table.word(i)) << '\n';
  }
  std::cout << "(* = recurrent for the walk s -> s o h from the identity)\n";
  return 0;
}

// ---------------------------------------------------------------- conditional

int cmd_conditional(const std::string& file, std::uint64_t seed, std::size_t horizon, std::size_t reps,
                    const std::string& csv_path, bool json, std::size_t threads, std::size_t state_cap) {
  const auto system = load_system_file(file);
  const ConditionalLawTracer tracer(system);
  const auto m = max_non_accordable(system, state_cap).m;
  std::vector<FilteredTrace> traces(reps);
  parallel_for(reps, threads, [&](std::size_t i) { traces[i] = tracer.run(seed + i, horizon); });

  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw InputError("cannot write '" + csv_path + "'");
    write_trace_csv(out, system, traces.front());
  }
  std::size_t reached = 0;
  ordered_json runs = ordered_json::array();
  for (const auto& trace : traces) {
    const auto profile = atom_profile(trace, m);
    const auto& last = trace.steps.back();
    std::optional<std::size_t> first_at_m;
    for (const auto& step : trace.steps) {
      if (step.atom_count == m) {
        first_at_m = step.n;
        break;
      }
    }
    if (profile.matches_m) ++reached;
    if (json) {
      ordered_json law = ordered_json::array();
      for (const auto& p : last.law) law.push_back(to_string(p));
      runs.push_back({{"seed", trace.seed},
                      {"support_reached_m_at", first_at_m ? ordered_json(*first_at_m) : ordered_json()},
                      {"final_support", set_json(system, last.support)},
                      {"final_law", law},
                      {"final_tv_to_uniform", sci(last.tv_to_uniform)}});
    } else {
      std::cout << "seed " << trace.seed << ": support " << set_text(system, last.support) << " ("
                << last.atom_count << " atoms";
      if (first_at_m) std::cout << ", reached M at n=" << *first_at_m;
      std::cout << "), tv to uniform " << sci(last.tv_to_uniform) << '\n';
    }
  }
  if (json) {
    std::cout << ordered_json{{"m", m}, {"horizon", horizon}, {"runs", runs}, {"reached_m", reached}}.dump(2) << '\n';
  } else {
    std::cout << reached << "/" << reps << " runs reached M = " << m << " atoms within horizon " << horizon << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- cftp

int cmd_cftp(const std::string& file, std::size_t samples, std::uint64_t seed, bool residual,
             std::uint64_t aux_seed, bool json, std::size_t threads, std::size_t state_cap) {
  const auto system = load_system_file(file);
  const auto pi = stationary_distribution(build_kernel(system));
  const auto pi_d = to_doubles(pi);
  std::vector<std::size_t> values(samples);
  std::vector<std::size_t> depths(samples);
  if (residual) {
    const ResidualSampler sampler(system, 1'000'000, state_cap);
    parallel_for(samples, threads, [&](std::size_t i) {
      const auto s = sampler.sample(seed + i, aux_seed + i);
      values[i] = s.sample;
      depths[i] = s.stabilization_index;
    });
  } else {
    const CftpSampler sampler(system, kDefaultCftpDepthCap, state_cap);
    parallel_for(samples, threads, [&](std::size_t i) {
      const auto s = sampler.sample(seed + i);
      values[i] = s.sample;
      depths[i] = s.coalescence_depth;
    });
  }
  std::vector<std::size_t> counts(system.degree(), 0);
  for (const auto v : values) ++counts[v];
  const auto empirical = empirical_law(counts);
  const auto chi = chi_square_test(counts, pi_d);
  const double tv = total_variation(empirical, pi_d);
  if (json) {
    ordered_json hist = ordered_json::array();
    for (std::size_t y = 0; y < system.degree(); ++y) {
      hist.push_back({{"state", system.states().label(y)},
                      {"count", counts[y]},
                      {"empirical", fixed(empirical[y])},
                      {"exact", to_string(pi[y])}});
    }
    ordered_json per_seed = ordered_json::array();
    for (std::size_t i = 0; i < samples; ++i) {
      per_seed.push_back({{"seed", seed + i}, {"sample", system.states().label(values[i])}, {"depth", depths[i]}});
    }
    std::cout << ordered_json{{"sampler", residual ? "residual" : "cftp"},
                              {"samples", samples},
                              {"histogram", hist},
                              {"tv", sci(tv)},
                              {"chi_square", {{"statistic", fixed(chi.statistic)},
                                              {"degrees_of_freedom", chi.degrees_of_freedom},
                                              {"p_value", fixed(chi.p_value)}}},
                              {"runs", per_seed}}
                     .dump(2)
              << '\n';
    return 0;
  }
  std::cout << "state  count  empirical  exact\n";
  for (std::size_t y = 0; y < system.degree(); ++y) {
    std::cout << system.states().label(y) << "  " << counts[y] << "  " << fixed(empirical[y]) << "  "
              << to_string(pi[y]) << " (" << fixed(pi_d[y]) << ")\n";
  }
  const auto max_depth = samples ? *std::max_element(depths.begin(), depths.end()) : 0;
  double mean_depth = 0.0;
  for (const auto d : depths) mean_depth += static_cast<double>(d) / static_cast<double>(std::max<std::size_t>(1, samples));
  std::cout << "TV " << sci(tv) << ", chi-square " << fixed(chi.statistic, 3) << " on " << chi.degrees_of_freedom
            << " df, p = " << fixed(chi.p_value, 4) << '\n'
            << (residual ? "stabilization" : "coalescence") << " depth: mean " << fixed(mean_depth, 2) << ", max "
            << max_depth << '\n';
  return 0;
}

// ---------------------------------------------------------------- check-h

int cmd_check_h(const std::string& file, bool json, std::size_t state_cap) {
  const auto system = load_system_file(file);
  const auto h = check_hypothesis_h(system, state_cap);
  const auto kernel = build_kernel(system);
  const auto classes = classify_kernel(kernel);
  std::optional<ProductCheck> product;
  std::optional<PreimageCheck> preimages;
  std::string structure = "not checked: ";
  if (!h.feasible) {
    structure += "no positive reweighting makes the uniform law invariant";
  } else if (!classes.irreducible || !classes.aperiodic) {
    structure += "kernel is not irreducible and aperiodic";
  } else {
    product = check_product_formula(system, state_cap);
    preimages = check_preimage_stability(system, 0, 200, state_cap);
    structure = "checked";
  }
  if (json) {
    ordered_json alpha;
    if (h.alpha) {
      alpha = ordered_json::array();
      for (const auto& a : *h.alpha) alpha.push_back(to_string(a));
    }
    ordered_json doc{{"feasible", h.feasible},
                     {"alpha", alpha},
                     {"t_star", h.t_star ? ordered_json(to_string(*h.t_star)) : ordered_json()},
                     {"m", h.m},
                     {"n", h.n},
                     {"d", system.degree()},
                     {"mn_equals_d", h.product_check},
                     {"m_divides_d", h.m_divides_d},
                     {"structure", structure}};
    if (product) {
      doc["fiber_check"] = product->fiber_check;
      doc["prime_branch"] = product->prime_branch ? ordered_json(to_string(*product->prime_branch)) : ordered_json();
      doc["branch_verified"] = product->branch_verified;
    }
    if (preimages) {
      doc["preimage_stability"] = preimages->ok;
      if (preimages->counterexample) doc["counterexample"] = *preimages->counterexample;
    }
    std::cout << doc.dump(2) << '\n';
    return 0;
  }
  std::cout << "uniform-invariance reweighting: " << (h.feasible ? "feasible" : "infeasible") << '\n';
  if (h.alpha) {
    std::cout << "alpha:";
    for (std::size_t i = 0; i < h.alpha->size(); ++i) {
      std::cout << ' ' << system.map(i).name << '=' << to_string((*h.alpha)[i]);
    }
    std::cout << '\n';
  }
  if (h.t_star) std::cout << "optimal margin t* = " << to_string(*h.t_star) << '\n';
  std::cout << "M = " << h.m << ", N = " << h.n << ", M*N = " << h.m * h.n << " vs |E| = " << system.degree()
            << (h.product_check ? " (equal)" : " (differ)") << '\n'
            << "M " << (h.m_divides_d ? "divides" : "does not divide") << " |E|\n"
            << "structure: " << structure << '\n';
  if (product) {
    std::cout << "fibers of a minimal-rank element all have N states: " << (product->fiber_check ? "yes" : "no") << '\n';
    if (product->prime_branch) {
      std::cout << "prime |E| branch: " << to_string(*product->prime_branch)
                << (product->branch_verified ? " (verified)" : " (NOT verified)") << '\n';
    }
  }
  if (preimages) {
    std::cout << "preimages of maximal collapsible sets stay maximal: " << (preimages->ok ? "yes" : "no") << " ("
              << preimages->sets_checked << " sets, " << preimages->words_checked << " words)\n";
    if (preimages->counterexample) std::cout << "  counterexample: " << *preimages->counterexample << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- partition

int cmd_partition(const std::string& file, bool json, std::size_t state_cap) {
  const auto system = load_system_file(file);
  const auto full = build_full_partition(system, state_cap);
  const auto& part = full.partition;
  if (json) {
    ordered_json blocks = ordered_json::array();
    for (std::size_t b = 0; b < part.blocks.size(); ++b) {
      blocks.push_back({{"block", set_json(system, part.blocks[b])},
                        {"value", system.states().label(part.block_values[b])}});
    }
    std::cout << ordered_json{{"collapsing_word", system.word_to_string(part.collapsing_word)},
                              {"extension_steps", full.extension_steps},
                              {"blocks", blocks}}
                     .dump(2)
              << '\n';
    return 0;
  }
  std::cout << part.blocks.size() << " blocks after " << full.extension_steps << " extensions; word "
            << system.word_to_string(part.collapsing_word) << '\n';
  for (std::size_t b = 0; b < part.blocks.size(); ++b) {
    std::cout << "  " << set_text(system, part.blocks[b]) << " -> " << system.states().label(part.block_values[b])
              << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- builtin / gen

int emit(const RandomMapSystem& system, const std::string& path) {
  if (path.empty()) {
    std::cout << serialize(system);
  } else {
    write_file(path, serialize(system));
  }
  return 0;
}

/// "label:weight,label:weight" over the group's labels (or indices).
std::vector<std::pair<std::size_t, Rational>> parse_group_weights(const GroupTable& group, const std::string& text) {
  std::vector<std::pair<std::size_t, Rational>> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto colon = item.rfind(':');
    if (colon == std::string::npos) throw InputError("weight entry '" + item + "' is not label:weight");
    const std::string label = item.substr(0, colon);
    const auto it = std::find(group.labels.begin(), group.labels.end(), label);
    if (it == group.labels.end()) throw InputError("unknown group element '" + label + "'");
    out.emplace_back(static_cast<std::size_t>(it - group.labels.begin()), parse_rational(item.substr(colon + 1)));
  }
  if (out.empty()) throw InputError("no group weights given");
  return out;
}

GroupTable read_group(const std::string& table_path, std::size_t cyclic, bool s3) {
  const int chosen = (table_path.empty() ? 0 : 1) + (cyclic ? 1 : 0) + (s3 ? 1 : 0);
  if (chosen != 1) throw InputError("give exactly one of --table, --cyclic, --s3");
  if (cyclic) return cyclic_group(cyclic);
  if (s3) return symmetric_group_3();
  std::ifstream in(table_path);
  if (!in) throw InputError("cannot read '" + table_path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_group_table(buffer.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analyze random-map representations of finite Markov chains"};
  app.require_subcommand(1);

  std::string file;
  bool json = false;
  bool text = false;
  std::size_t state_cap = kDefaultStateCap;
  std::size_t semigroup_cap = kDefaultSemigroupCap;
  std::size_t threads = default_threads();

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("FILE", file, "system file (JSON)")->required();
    sub->add_option("--state-cap", state_cap, "largest state count for subset searches (max 24)");
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "full report");
  add_common(analyze_cmd);
  auto* json_flag = analyze_cmd->add_flag("--json", json, "JSON report");
  analyze_cmd->add_flag("--text", text, "text report (default)")->excludes(json_flag);
  analyze_cmd->add_option("--semigroup-cap", semigroup_cap, "largest semigroup to enumerate");

  std::vector<std::string> pair;
  bool witness = false;
  std::string dot_path;
  auto* accord_cmd = app.add_subcommand("accord", "accordability relation and M");
  add_common(accord_cmd);
  accord_cmd->add_option("--pair", pair, "two state labels")->expected(2);
  accord_cmd->add_flag("--witness", witness, "print merging words");
  accord_cmd->add_option("--dot", dot_path, "write the relation as DOT");
  accord_cmd->add_flag("--json", json, "JSON output");

  std::size_t cap = kDefaultSemigroupCap;
  auto* semigroup_cmd = app.add_subcommand("semigroup", "enumerate the generated semigroup");
  semigroup_cmd->add_option("FILE", file, "system file (JSON)")->required();
  semigroup_cmd->add_option("--cap", cap, "largest semigroup to enumerate");
  semigroup_cmd->add_option("--dot", dot_path, "write the walk graph as DOT");
  semigroup_cmd->add_flag("--json", json, "JSON output");

  std::uint64_t seed = 0;
  std::size_t horizon = 0;
  std::size_t reps = 1;
  std::string csv_path;
  auto* conditional_cmd = app.add_subcommand("conditional", "trace the law of X0 given recent innovations");
  add_common(conditional_cmd);
  conditional_cmd->add_option("--seed", seed, "first seed")->required();
  conditional_cmd->add_option("--horizon", horizon, "number of innovations")->required();
  conditional_cmd->add_option("--reps", reps, "runs with seeds seed..seed+reps-1")->check(CLI::PositiveNumber);
  conditional_cmd->add_option("--csv", csv_path, "write the first run's trace as CSV");
  conditional_cmd->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  conditional_cmd->add_flag("--json", json, "JSON output");

  std::size_t samples = 0;
  bool residual = false;
  std::uint64_t aux_seed = 1'000'003;
  auto* cftp_cmd = app.add_subcommand("cftp", "exact stationary samples by coupling from the past");
  add_common(cftp_cmd);
  cftp_cmd->add_option("--samples", samples, "number of samples")->required()->check(CLI::PositiveNumber);
  cftp_cmd->add_option("--seed", seed, "first seed")->required();
  cftp_cmd->add_flag("--residual", residual, "uniform pick on the limit set (any M)");
  cftp_cmd->add_option("--aux-seed", aux_seed, "first seed of the uniform picks (with --residual)");
  cftp_cmd->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  cftp_cmd->add_flag("--json", json, "JSON output");

  auto* check_h_cmd = app.add_subcommand("check-h", "uniform-invariance hypothesis and M*N = |E|");
  add_common(check_h_cmd);
  check_h_cmd->add_flag("--json", json, "JSON output");

  auto* partition_cmd = app.add_subcommand("partition", "partition of E into collapsible blocks");
  add_common(partition_cmd);
  partition_cmd->add_flag("--json", json, "JSON output");

  std::string name;
  std::string emit_path;
  auto* builtin_cmd = app.add_subcommand("builtin", "print or save a builtin system");
  builtin_cmd->add_option("NAME", name, "vinokourov | non-h-example | counterexample-truncated(K)")->required();
  builtin_cmd->add_option("--emit", emit_path, "write to this path instead of stdout");

  auto* gen_cmd = app.add_subcommand("gen", "generate systems");
  gen_cmd->require_subcommand(1);
  std::size_t states = 0;
  std::size_t colors = 0;
  auto* colored_cmd = gen_cmd->add_subcommand("colored-graph", "C color maps, each state receiving C edges");
  colored_cmd->add_option("--states", states, "number of states")->required();
  colored_cmd->add_option("--colors", colors, "number of colors")->required();
  colored_cmd->add_option("--seed", seed, "generator seed");
  colored_cmd->add_option("--emit", emit_path, "write to this path instead of stdout");
  std::string table_path;
  std::size_t cyclic = 0;
  bool s3 = false;
  std::string weights;
  auto* group_cmd = gen_cmd->add_subcommand("group", "left translations of a finite group");
  group_cmd->add_option("--table", table_path, "group table JSON {\"labels\": [...], \"table\": [[...]]}");
  group_cmd->add_option("--cyclic", cyclic, "cyclic group of this order (labels 0..n-1)");
  group_cmd->add_flag("--s3", s3, "symmetric group on three letters");
  group_cmd->add_option("--weights", weights, "label:weight,label:weight")->required();
  group_cmd->add_option("--emit", emit_path, "write to this path instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(file, json, state_cap, semigroup_cap);
    if (*accord_cmd) return cmd_accord(file, pair, witness, dot_path, json, state_cap);
    if (*semigroup_cmd) return cmd_semigroup(file, cap, dot_path, json);
    if (*conditional_cmd) return cmd_conditional(file, seed, horizon, reps, csv_path, json, threads, state_cap);
    if (*cftp_cmd) return cmd_cftp(file, samples, seed, residual, aux_seed, json, threads, state_cap);
    if (*check_h_cmd) return cmd_check_h(file, json, state_cap);
    if (*partition_cmd) return cmd_partition(file, json, state_cap);
    if (*builtin_cmd) return emit(builtin(name), emit_path);
    if (*colored_cmd) return emit(gen_colored_graph(states, colors, seed), emit_path);
    if (*group_cmd) {
      const auto group = read_group(table_path, cyclic, s3);
      return emit(gen_group_action(group, parse_group_weights(group, weights)), emit_path);
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const PreconditionError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kExitRefused;
  } catch (const CapExceeded& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kExitRefused;
  } catch (const ConsistencyError& e) {
    std::cerr << "internal consistency check failed: " << e.what() << '\n';
    return kExitRefused;
  }
  return 0;
}
