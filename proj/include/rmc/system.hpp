#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rmc/rational.hpp"
#include "rmc/rng.hpp"
#include "rmc/transformation.hpp"

namespace rmc {

/// Distinct state labels; states are addressed by their index.
class StateSpace {
 public:
  explicit StateSpace(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t index) const { return labels_.at(index); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> find(std::string_view label) const;
  /// Throws InputError naming the label when it is unknown.
  std::size_t index_of(std::string_view label) const;

 private:
  std::vector<std::string> labels_;
};

struct WeightedMap {
  std::string name;
  Transformation map;
  Rational weight;
};

/// A word over the map set, in composition order: word {a, b, c} denotes
/// h_a ∘ h_b ∘ h_c, so the last letter acts first. Backward walks list the
/// newest innovation first and therefore read directly as words.
using Word = std::vector<std::size_t>;

/// Finite state space plus the essential map set H with exact weights.
/// Construction merges duplicate tables (summing weights) and rejects
/// anything that is not a probability on distinct total maps.
class RandomMapSystem {
 public:
  RandomMapSystem(StateSpace states, std::vector<WeightedMap> maps);

  const StateSpace& states() const { return states_; }
  std::size_t degree() const { return states_.size(); }
  std::size_t map_count() const { return maps_.size(); }
  std::span<const WeightedMap> maps() const { return maps_; }
  const WeightedMap& map(std::size_t index) const { return maps_.at(index); }
  const Transformation& transformation(std::size_t index) const { return maps_.at(index).map; }
  std::optional<std::size_t> find_map(std::string_view name) const;

  Transformation compose_word(std::span<const std::size_t> word) const;
  bool all_bijections() const;

  /// Same maps, different positive weights (must sum to 1).
  RandomMapSystem with_weights(std::span<const Rational> weights) const;

  std::string word_to_string(std::span<const std::size_t> word) const;
  /// Whitespace-separated map names; "id" or an empty string is the empty word.
  Word parse_word(std::string_view text) const;

 private:
  StateSpace states_;
  std::vector<WeightedMap> maps_;
};

RandomMapSystem load_system(std::string_view document);
RandomMapSystem load_system_json(const nlohmann::ordered_json& document);
RandomMapSystem load_system_file(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const RandomMapSystem& system);
/// Canonical text form; load_system(serialize(s)) reproduces s exactly.
std::string serialize(const RandomMapSystem& system);

/// Draws map indices i.i.d. according to the weights. The exact weights are
/// converted to a cumulative double table once; this only affects sampling,
/// never an exact verdict.
class MapSampler {
 public:
  explicit MapSampler(const RandomMapSystem& system);
  std::size_t draw(Rng& rng) const;

 private:
  std::vector<double> cumulative_;
};

}  // namespace rmc
