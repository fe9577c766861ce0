#include "rmc/system.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "rmc/errors.hpp"

namespace rmc {

using nlohmann::ordered_json;

StateSpace::StateSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw InputError("state space must contain at least one state");
  if (labels_.size() > kMaxStates) {
    throw InputError("state space has " + std::to_string(labels_.size()) +
                     " states; the hard limit is " + std::to_string(kMaxStates));
  }
  std::set<std::string> seen;
  for (const auto& label : labels_) {
    if (!seen.insert(label).second) throw InputError("duplicate state label '" + label + "'");
  }
}

std::optional<std::size_t> StateSpace::find(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t StateSpace::index_of(std::string_view label) const {
  if (auto index = find(label)) return *index;
  throw InputError("unknown state label '" + std::string(label) + "'");
}

RandomMapSystem::RandomMapSystem(StateSpace states, std::vector<WeightedMap> maps)
    : states_(std::move(states)) {
  Rational total = 0;
  for (auto& entry : maps) {
    if (entry.map.degree() != states_.size()) {
      throw InputError("map '" + entry.name + "' is not a total function on the state space");
    }
    if (entry.weight <= 0) {
      throw InputError("map '" + entry.name + "' has non-positive weight " + to_string(entry.weight));
    }
    total += entry.weight;
    const auto same = std::find_if(maps_.begin(), maps_.end(),
                                   [&](const WeightedMap& m) { return m.map == entry.map; });
    if (same != maps_.end()) {
      same->weight += entry.weight;
      continue;
    }
    if (std::any_of(maps_.begin(), maps_.end(),
                    [&](const WeightedMap& m) { return m.name == entry.name; })) {
      throw InputError("map name '" + entry.name + "' used for two different tables");
    }
    maps_.push_back(std::move(entry));
  }
  if (maps_.empty()) throw InputError("system has no maps");
  if (total != 1) throw InputError("map weights sum to " + to_string(total) + ", not 1");
}

std::optional<std::size_t> RandomMapSystem::find_map(std::string_view name) const {
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    if (maps_[i].name == name) return i;
  }
  return std::nullopt;
}

Transformation RandomMapSystem::compose_word(std::span<const std::size_t> word) const {
  Transformation out = Transformation::identity(degree());
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    out = compose(maps_.at(*it).map, out);
  }
  return out;
}

bool RandomMapSystem::all_bijections() const {
  return std::all_of(maps_.begin(), maps_.end(),
                     [](const WeightedMap& m) { return m.map.is_bijection(); });
}

RandomMapSystem RandomMapSystem::with_weights(std::span<const Rational> weights) const {
  if (weights.size() != maps_.size()) throw InputError("weight vector has the wrong length");
  std::vector<WeightedMap> maps = maps_;
  for (std::size_t i = 0; i < maps.size(); ++i) maps[i].weight = weights[i];
  return RandomMapSystem(states_, std::move(maps));
}

std::string RandomMapSystem::word_to_string(std::span<const std::size_t> word) const {
  if (word.empty()) return "id";
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i != 0) out += ' ';
    out += maps_.at(word[i]).name;
  }
  return out;
}

Word RandomMapSystem::parse_word(std::string_view text) const {
  Word word;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (token == "id") continue;
    const auto index = find_map(token);
    if (!index) throw InputError("unknown map name '" + token + "'");
    word.push_back(*index);
  }
  return word;
}

RandomMapSystem load_system_json(const ordered_json& document) {
  if (!document.is_object()) throw InputError("system document must be an object");
  if (!document.contains("states") || !document["states"].is_array()) {
    throw InputError("system document needs a 'states' array");
  }
  if (!document.contains("maps") || !document["maps"].is_array()) {
    throw InputError("system document needs a 'maps' array");
  }
  std::vector<std::string> labels;
  for (const auto& label : document["states"]) {
    if (!label.is_string()) throw InputError("state labels must be strings");
    labels.push_back(label.get<std::string>());
  }
  StateSpace states(std::move(labels));

  std::vector<WeightedMap> maps;
  std::size_t position = 0;
  for (const auto& entry : document["maps"]) {
    ++position;
    if (!entry.is_object()) throw InputError("map entries must be objects");
    std::string name = "h" + std::to_string(position);
    if (entry.contains("name")) {
      if (!entry["name"].is_string()) throw InputError("map names must be strings");
      name = entry["name"].get<std::string>();
    }
    if (!entry.contains("weight") || !entry["weight"].is_string()) {
      throw InputError("map '" + name + "' needs a rational weight string");
    }
    const Rational weight = parse_rational(entry["weight"].get<std::string>());
    if (!entry.contains("table") || !entry["table"].is_object()) {
      throw InputError("map '" + name + "' needs a 'table' object");
    }
    const auto& table = entry["table"];
    std::vector<State> values(states.size());
    std::vector<bool> defined(states.size(), false);
    for (const auto& [from, to] : table.items()) {
      if (!to.is_string()) throw InputError("map '" + name + "' has a non-string image");
      const std::size_t x = states.index_of(from);
      if (defined[x]) throw InputError("map '" + name + "' defines '" + from + "' twice");
      defined[x] = true;
      values[x] = static_cast<State>(states.index_of(to.get<std::string>()));
    }
    for (std::size_t x = 0; x < states.size(); ++x) {
      if (!defined[x]) {
        throw InputError("map '" + name + "' is not total: no image for '" + states.label(x) + "'");
      }
    }
    maps.push_back({std::move(name), Transformation(std::move(values)), weight});
  }
  return RandomMapSystem(std::move(states), std::move(maps));
}

RandomMapSystem load_system(std::string_view document) {
  ordered_json parsed;
  try {
    parsed = ordered_json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("cannot parse system document: ") + e.what());
  }
  return load_system_json(parsed);
}

RandomMapSystem load_system_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_system(buffer.str());
}

ordered_json to_json(const RandomMapSystem& system) {
  ordered_json doc;
  doc["states"] = system.states().labels();
  doc["maps"] = ordered_json::array();
  for (const auto& entry : system.maps()) {
    ordered_json table = ordered_json::object();
    for (std::size_t x = 0; x < system.degree(); ++x) {
      table[system.states().label(x)] = system.states().label(entry.map(x));
    }
    doc["maps"].push_back(
        {{"name", entry.name}, {"weight", to_string(entry.weight)}, {"table", std::move(table)}});
  }
  return doc;
}

std::string serialize(const RandomMapSystem& system) { return to_json(system).dump(2) + "\n"; }

MapSampler::MapSampler(const RandomMapSystem& system) {
  Rational running = 0;
  for (const auto& entry : system.maps()) {
    running += entry.weight;
    cumulative_.push_back(to_double(running));
  }
  cumulative_.back() = 1.0;
}

std::size_t MapSampler::draw(Rng& rng) const {
  const double u = uniform_unit(rng);
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return static_cast<std::size_t>(it - cumulative_.begin());
}

}  // namespace rmc
