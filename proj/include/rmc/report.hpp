#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rmc/accordability.hpp"
#include "rmc/kernel.hpp"
#include "rmc/semigroup.hpp"
#include "rmc/system.hpp"

namespace rmc {

struct AnalysisOptions {
  std::size_t state_cap = kDefaultStateCap;
  std::size_t semigroup_cap = kDefaultSemigroupCap;
  std::size_t mixing_horizon = 500;
  double mixing_epsilon = 1e-8;
  /// Words (map names) expected to belong to S; the report says whether they
  /// do and how the true |S| compares with their count.
  std::vector<std::string> reference_elements;
};

using LabelPair = std::pair<std::string, std::string>;

/// Everything `analyze` establishes about one system. All exact values are
/// kept as rationals; the JSON form writes them as "p/q" strings.
struct Report {
  std::vector<std::string> states;
  std::vector<std::string> map_names;
  std::vector<Rational> weights;

  bool irreducible = false;
  bool aperiodic = false;
  std::optional<std::size_t> period;
  Distribution stationary;

  std::vector<LabelPair> accordable_pairs;
  std::vector<std::string> pair_witnesses;  // parallel to accordable_pairs
  std::size_t m = 0;
  std::vector<std::string> non_accordable_set;
  std::size_t min_rank = 0;
  std::string min_rank_witness;
  bool diagonal_absorbs = false;
  std::vector<LabelPair> diagonal_offenders;
  bool all_pairs_accordable = false;
  bool synchronizing = false;
  bool determined = false;

  bool h_feasible = false;
  std::optional<std::vector<Rational>> alpha;
  std::optional<Rational> t_star;
  std::size_t n = 0;
  bool mn_equals_d = false;
  bool m_divides_d = false;

  /// "ok", "failed", or "skipped: <reason>".
  std::string recurrent_images = "skipped";
  std::optional<std::size_t> semigroup_size;
  std::optional<std::size_t> min_rank_over_semigroup;
  std::optional<std::size_t> recurrent_element_count;

  std::optional<std::size_t> mixing_time;
  double mixing_epsilon = 1e-8;

  std::vector<std::string> reference_elements;
  std::optional<bool> reference_elements_contained;
  std::string semigroup_note;
};

/// Full pipeline. Throws PreconditionError for reducible kernels; sections
/// needing aperiodicity are marked skipped for periodic ones.
Report analyze(const RandomMapSystem& system, const AnalysisOptions& options = {});

nlohmann::ordered_json to_json(const Report& report);
Report report_from_json(const nlohmann::ordered_json& doc);
std::string render_text(const Report& report);

/// Re-derives the cross-field identities (M = minimal rank, the three
/// determination routes agree, M·N flag matches the counts, certificate
/// shape). Returns the first violated one, if any.
std::optional<std::string> report_inconsistency(const Report& report);

}  // namespace rmc
