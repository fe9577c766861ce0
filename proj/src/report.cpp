#include "rmc/report.hpp"

#include <cstdio>
#include <sstream>

#include "rmc/errors.hpp"
#include "rmc/structure_h.hpp"

namespace rmc {

using nlohmann::ordered_json;

namespace {

std::vector<std::string> labels_of(const RandomMapSystem& system, const std::vector<std::size_t>& xs) {
  std::vector<std::string> out;
  for (const std::size_t x : xs) out.push_back(system.states().label(x));
  return out;
}

ordered_json rationals_json(const std::vector<Rational>& values) {
  ordered_json out = ordered_json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

std::vector<Rational> rationals_from(const ordered_json& doc) {
  std::vector<Rational> out;
  for (const auto& v : doc) out.push_back(parse_rational(v.get<std::string>()));
  return out;
}

ordered_json pairs_json(const std::vector<LabelPair>& pairs) {
  ordered_json out = ordered_json::array();
  for (const auto& [a, b] : pairs) out.push_back({a, b});
  return out;
}

std::vector<LabelPair> pairs_from(const ordered_json& doc) {
  std::vector<LabelPair> out;
  for (const auto& p : doc) out.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
  return out;
}

template <typename T>
ordered_json optional_json(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const ordered_json& v) {
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

}  // namespace

Report analyze(const RandomMapSystem& system, const AnalysisOptions& options) {
  Report report;
  report.states = system.states().labels();
  for (const auto& entry : system.maps()) {
    report.map_names.push_back(entry.name);
    report.weights.push_back(entry.weight);
  }

  const Kernel kernel = build_kernel(system);
  const KernelClassification cls = classify_kernel(kernel);
  report.irreducible = cls.irreducible;
  report.aperiodic = cls.aperiodic;
  report.period = cls.period;
  require_irreducible(kernel, "accordability / coupled-chain equivalence and mixing hypotheses");
  report.stationary = stationary_distribution(kernel);

  const AccordReport accord = max_non_accordable(system, options.state_cap);
  for (const auto& [pair, word] : accord.witnesses) {
    report.accordable_pairs.emplace_back(system.states().label(pair.first),
                                         system.states().label(pair.second));
    report.pair_witnesses.push_back(system.word_to_string(word));
  }
  report.m = accord.m;
  report.non_accordable_set = labels_of(system, accord.witness_set);

  const DeterminationVerdict verdict = innovations_determine(system, options.state_cap);
  report.min_rank = verdict.rank.rank;
  report.min_rank_witness = system.word_to_string(verdict.rank.witness);
  report.diagonal_absorbs = verdict.diagonal_absorbs;
  for (const auto& [x, y] : verdict.diagonal.offenders) {
    report.diagonal_offenders.emplace_back(system.states().label(x), system.states().label(y));
  }
  report.all_pairs_accordable = verdict.all_pairs_accordable;
  report.synchronizing = verdict.synchronizing;
  report.determined = verdict.determined;
  if (report.m != report.min_rank) {
    throw ConsistencyError("maximum non-accordable set size " + std::to_string(report.m) +
                           " differs from the minimal rank " + std::to_string(report.min_rank));
  }

  const HReport h = check_hypothesis_h(system, options.state_cap);
  report.h_feasible = h.feasible;
  report.alpha = h.alpha;
  report.t_star = h.t_star;
  report.n = h.n;
  report.mn_equals_d = h.product_check;
  report.m_divides_d = h.m_divides_d;

  report.mixing_epsilon = options.mixing_epsilon;
  if (!cls.aperiodic) {
    report.recurrent_images = "skipped: kernel has period " + std::to_string(*cls.period);
  } else {
    report.mixing_time = mixing_time(kernel, options.mixing_epsilon, options.mixing_horizon);
    try {
      const RecurrentImageReport rec =
          check_recurrent_images(system, options.semigroup_cap, options.state_cap);
      report.recurrent_images = rec.ok ? "ok" : "failed";
      report.semigroup_size = rec.semigroup_size;
      report.min_rank_over_semigroup = rec.min_rank_over_semigroup;
      report.recurrent_element_count = rec.details.size();
    } catch (const CapExceeded& e) {
      report.recurrent_images = std::string("skipped: ") + e.what();
    }
  }

  report.reference_elements = options.reference_elements;
  if (!options.reference_elements.empty()) {
    try {
      const SemigroupTable table = enumerate_semigroup(system, options.semigroup_cap);
      bool contained = true;
      for (const auto& text : options.reference_elements) {
        contained = contained && table.find(system.compose_word(system.parse_word(text))).has_value();
      }
      report.reference_elements_contained = contained;
      if (table.size() != options.reference_elements.size()) {
        report.semigroup_note = "enumerated semigroup has " + std::to_string(table.size()) +
                                " elements; the reference list has " +
                                std::to_string(options.reference_elements.size());
      }
    } catch (const CapExceeded& e) {
      report.semigroup_note = std::string("reference check skipped: ") + e.what();
    }
  }
  return report;
}

ordered_json to_json(const Report& r) {
  ordered_json doc;
  doc["system"] = {{"states", r.states}, {"maps", r.map_names}, {"weights", rationals_json(r.weights)}};
  doc["kernel"] = {{"irreducible", r.irreducible}, {"aperiodic", r.aperiodic}, {"period", optional_json(r.period)}};
  doc["stationary"] = rationals_json(r.stationary);

  ordered_json witnesses = ordered_json::array();
  for (std::size_t i = 0; i < r.accordable_pairs.size(); ++i) {
    witnesses.push_back({{"pair", {r.accordable_pairs[i].first, r.accordable_pairs[i].second}},
                         {"word", r.pair_witnesses[i]}});
  }
  doc["accordability"] = {{"accordable_pairs", witnesses},
                          {"m", r.m},
                          {"non_accordable_set", r.non_accordable_set}};
  doc["min_rank"] = {{"rank", r.min_rank}, {"witness", r.min_rank_witness}};
  doc["coupled_chain"] = {{"diagonal_absorbs", r.diagonal_absorbs},
                          {"offenders", pairs_json(r.diagonal_offenders)}};
  doc["determination"] = {{"determined", r.determined},
                          {"all_pairs_accordable", r.all_pairs_accordable},
                          {"diagonal_absorbs", r.diagonal_absorbs},
                          {"synchronizing", r.synchronizing}};
  ordered_json alpha = nullptr;
  if (r.alpha) {
    alpha = ordered_json::object();
    for (std::size_t h = 0; h < r.alpha->size(); ++h) alpha[r.map_names[h]] = to_string((*r.alpha)[h]);
  }
  doc["uniform_invariance"] = {{"feasible", r.h_feasible},
                               {"alpha", alpha},
                               {"t_star", r.t_star ? ordered_json(to_string(*r.t_star)) : ordered_json(nullptr)}};
  doc["counts"] = {{"m", r.m}, {"n", r.n}, {"d", r.states.size()},
                   {"mn_equals_d", r.mn_equals_d}, {"m_divides_d", r.m_divides_d}};
  doc["recurrent_images"] = {{"status", r.recurrent_images},
                             {"semigroup_size", optional_json(r.semigroup_size)},
                             {"min_rank_over_semigroup", optional_json(r.min_rank_over_semigroup)},
                             {"recurrent_elements", optional_json(r.recurrent_element_count)}};
  char eps[32];
  std::snprintf(eps, sizeof eps, "%.3e", r.mixing_epsilon);
  doc["mixing"] = {{"epsilon", eps}, {"mixing_time", optional_json(r.mixing_time)}};
  if (!r.reference_elements.empty()) {
    doc["reference_elements"] = {{"words", r.reference_elements},
                                 {"all_contained", optional_json(r.reference_elements_contained)},
                                 {"note", r.semigroup_note}};
  }
  doc["theory_map"] = {
      {"accordability", "pairs merged by some composition (diagonal reachable in the coupled chain)"},
      {"determination", "innovations determine the stationary chain iff all pairs are accordable "
                        "iff every coupled stationary law lives on the diagonal"},
      {"min_rank", "minimal image size over S equals m; recurrent walk elements attain it with "
                   "pairwise non-accordable images"},
      {"conditional_law", "law of X0 given all innovations is uniform on the limit image R0, |R0| = m"},
      {"uniform_invariance", "a positive reweighting making the uniform law invariant forces m * n = |E|"}};
  return doc;
}

Report report_from_json(const ordered_json& doc) {
  Report r;
  try {
    r.states = doc.at("system").at("states").get<std::vector<std::string>>();
    r.map_names = doc.at("system").at("maps").get<std::vector<std::string>>();
    r.weights = rationals_from(doc.at("system").at("weights"));
    r.irreducible = doc.at("kernel").at("irreducible").get<bool>();
    r.aperiodic = doc.at("kernel").at("aperiodic").get<bool>();
    r.period = optional_from<std::size_t>(doc.at("kernel").at("period"));
    r.stationary = rationals_from(doc.at("stationary"));
    for (const auto& w : doc.at("accordability").at("accordable_pairs")) {
      r.accordable_pairs.emplace_back(w.at("pair").at(0).get<std::string>(), w.at("pair").at(1).get<std::string>());
      r.pair_witnesses.push_back(w.at("word").get<std::string>());
    }
    r.m = doc.at("accordability").at("m").get<std::size_t>();
    r.non_accordable_set = doc.at("accordability").at("non_accordable_set").get<std::vector<std::string>>();
    r.min_rank = doc.at("min_rank").at("rank").get<std::size_t>();
    r.min_rank_witness = doc.at("min_rank").at("witness").get<std::string>();
    r.diagonal_absorbs = doc.at("coupled_chain").at("diagonal_absorbs").get<bool>();
    r.diagonal_offenders = pairs_from(doc.at("coupled_chain").at("offenders"));
    r.determined = doc.at("determination").at("determined").get<bool>();
    r.all_pairs_accordable = doc.at("determination").at("all_pairs_accordable").get<bool>();
    r.synchronizing = doc.at("determination").at("synchronizing").get<bool>();
    const auto& h = doc.at("uniform_invariance");
    r.h_feasible = h.at("feasible").get<bool>();
    if (!h.at("alpha").is_null()) {
      std::vector<Rational> alpha;
      for (const auto& name : r.map_names) alpha.push_back(parse_rational(h.at("alpha").at(name).get<std::string>()));
      r.alpha = std::move(alpha);
    }
    if (!h.at("t_star").is_null()) r.t_star = parse_rational(h.at("t_star").get<std::string>());
    r.n = doc.at("counts").at("n").get<std::size_t>();
    r.mn_equals_d = doc.at("counts").at("mn_equals_d").get<bool>();
    r.m_divides_d = doc.at("counts").at("m_divides_d").get<bool>();
    const auto& rec = doc.at("recurrent_images");
    r.recurrent_images = rec.at("status").get<std::string>();
    r.semigroup_size = optional_from<std::size_t>(rec.at("semigroup_size"));
    r.min_rank_over_semigroup = optional_from<std::size_t>(rec.at("min_rank_over_semigroup"));
    r.recurrent_element_count = optional_from<std::size_t>(rec.at("recurrent_elements"));
    r.mixing_epsilon = std::stod(doc.at("mixing").at("epsilon").get<std::string>());
    r.mixing_time = optional_from<std::size_t>(doc.at("mixing").at("mixing_time"));
    if (doc.contains("reference_elements")) {
      const auto& ref = doc["reference_elements"];
      r.reference_elements = ref.at("words").get<std::vector<std::string>>();
      r.reference_elements_contained = optional_from<bool>(ref.at("all_contained"));
      r.semigroup_note = ref.at("note").get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
  return r;
}

std::optional<std::string> report_inconsistency(const Report& r) {
  const std::size_t d = r.states.size();
  if (r.m != r.min_rank) return "m differs from the minimal rank";
  if (r.all_pairs_accordable != r.diagonal_absorbs || r.all_pairs_accordable != r.synchronizing) {
    return "determination routes disagree";
  }
  if (r.determined != r.all_pairs_accordable) return "determination verdict mismatch";
  if (r.determined != (r.m == 1)) return "determination verdict disagrees with m";
  if (r.mn_equals_d != (r.m * r.n == d)) return "m*n flag does not match the counts";
  if (r.non_accordable_set.size() != r.m) return "non-accordable witness set has the wrong size";
  if (r.h_feasible != r.alpha.has_value()) return "alpha present iff feasible";
  if (r.h_feasible && !r.mn_equals_d && r.aperiodic) return "uniform invariance holds but m*n != d";
  Rational total = 0;
  for (const auto& p : r.stationary) total += p;
  if (total != 1) return "stationary law does not sum to 1";
  return std::nullopt;
}

std::string render_text(const Report& r) {
  std::ostringstream out;
  auto yes = [](bool b) { return b ? "yes" : "no"; };
  out << "states: " << r.states.size() << "   maps: " << r.map_names.size() << "\n";
  for (std::size_t h = 0; h < r.map_names.size(); ++h) {
    out << "  " << r.map_names[h] << "  weight " << to_string(r.weights[h]) << "\n";
  }
  out << "kernel: irreducible " << yes(r.irreducible) << ", aperiodic " << yes(r.aperiodic);
  if (r.period) out << ", period " << *r.period;
  out << "\nstationary law:";
  for (std::size_t x = 0; x < r.stationary.size(); ++x) out << ' ' << r.states[x] << '=' << to_string(r.stationary[x]);
  out << "\naccordable pairs:";
  if (r.accordable_pairs.empty()) out << " none";
  for (std::size_t i = 0; i < r.accordable_pairs.size(); ++i) {
    out << " {" << r.accordable_pairs[i].first << ',' << r.accordable_pairs[i].second << "} by ["
        << r.pair_witnesses[i] << ']';
  }
  out << "\nM (max pairwise non-accordable): " << r.m << "  e.g. {";
  for (std::size_t i = 0; i < r.non_accordable_set.size(); ++i) out << (i ? "," : "") << r.non_accordable_set[i];
  out << "}\nminimal rank: " << r.min_rank << " by [" << r.min_rank_witness << "]\n";
  out << "coupled chain closed classes on the diagonal: " << yes(r.diagonal_absorbs) << "\n";
  out << "innovations determine the chain: " << yes(r.determined) << "\n";
  out << "uniform-invariance reweighting: " << (r.h_feasible ? "feasible" : "infeasible");
  if (r.t_star) out << " (margin " << to_string(*r.t_star) << ")";
  if (r.alpha) {
    out << "  alpha:";
    for (std::size_t h = 0; h < r.alpha->size(); ++h) out << ' ' << r.map_names[h] << '=' << to_string((*r.alpha)[h]);
  }
  out << "\nN (max simultaneously accordable): " << r.n << "\n";
  out << "M*N = " << r.m * r.n << " vs |E| = " << r.states.size() << (r.mn_equals_d ? " (equal)" : " (differ)")
      << "; M " << (r.m_divides_d ? "divides" : "does not divide") << " |E|\n";
  out << "recurrent-image check: " << r.recurrent_images;
  if (r.semigroup_size) out << " (|S| = " << *r.semigroup_size << ")";
  out << "\nmixing time to " << r.mixing_epsilon << ": ";
  if (r.mixing_time) out << *r.mixing_time; else out << "n/a";
  out << "\n";
  if (!r.reference_elements.empty()) {
    out << "reference elements contained in S: "
        << (r.reference_elements_contained ? yes(*r.reference_elements_contained) : "unknown") << "\n";
    if (!r.semigroup_note.empty()) out << "note: " << r.semigroup_note << "\n";
  }
  return out.str();
}

}  // namespace rmc
