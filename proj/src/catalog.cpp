#include "rmc/catalog.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <numeric>

#include "rmc/errors.hpp"

namespace rmc {

namespace {

std::vector<std::string> numbered_labels(std::size_t first, std::size_t count) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < count; ++i) labels.push_back(std::to_string(first + i));
  return labels;
}

Transformation table_of(std::initializer_list<int> values) {
  std::vector<State> table;
  for (const int v : values) table.push_back(static_cast<State>(v));
  return Transformation(std::move(table));
}

}  // namespace

RandomMapSystem vinokourov() {
  StateSpace states({"-1", "1"});
  return RandomMapSystem(std::move(states), {{"identity", table_of({0, 1}), Rational(1, 2)},
                                             {"swap", table_of({1, 0}), Rational(1, 2)}});
}

RandomMapSystem non_h_example() {
  // States 1..4 at indices 0..3.
  return RandomMapSystem(StateSpace(numbered_labels(1, 4)),
                         {{"f1", table_of({1, 2, 0, 0}), Rational(1, 3)},
                          {"f2", table_of({1, 3, 0, 0}), Rational(1, 3)},
                          {"f3", table_of({0, 1, 2, 2}), Rational(1, 3)}});
}

std::vector<std::string> non_h_listed_elements() { return {"f1", "f2", "f3", "f1 f1", "f2 f2"}; }

RandomMapSystem counterexample_truncated(std::size_t k) {
  if (k == 0 || k + 1 > kMaxStates) {
    throw InputError("truncation level must be between 1 and " + std::to_string(kMaxStates - 1));
  }
  std::vector<State> down(k + 1);
  std::vector<State> up(k + 1);
  for (std::size_t x = 0; x <= k; ++x) {
    down[x] = static_cast<State>(x == 0 ? 0 : x - 1);
    up[x] = static_cast<State>(std::min(x + 1, k));
  }
  return RandomMapSystem(StateSpace(numbered_labels(0, k + 1)),
                         {{"f1", Transformation(std::move(down)), Rational(2, 3)},
                          {"f2", Transformation(std::move(up)), Rational(1, 3)}});
}

RandomMapSystem builtin(std::string_view name) {
  if (name == "vinokourov") return vinokourov();
  if (name == "non-h-example") return non_h_example();
  constexpr std::string_view prefix = "counterexample-truncated";
  if (name == prefix) return counterexample_truncated(4);
  if (name.starts_with(prefix) && name.size() > prefix.size() + 2 && name[prefix.size()] == '(' &&
      name.back() == ')') {
    const std::string_view digits = name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
    std::size_t k = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) return counterexample_truncated(k);
  }
  throw InputError("unknown builtin '" + std::string(name) + "'; known: vinokourov, non-h-example, " +
                   "counterexample-truncated(K)");
}

std::vector<std::string> builtin_names() {
  return {"vinokourov", "non-h-example", "counterexample-truncated(4)"};
}

ColoredGraph gen_colored_graph_with_certificate(std::size_t d, std::size_t colors,
                                                std::uint64_t seed) {
  if (d == 0 || d > kMaxStates) throw InputError("colored graph needs 1.." + std::to_string(kMaxStates) + " states");
  if (colors == 0) throw InputError("colored graph needs at least one color");
  Rng rng(seed);
  // targets[c][x]: edge of the c-th permutation leaving x.
  std::vector<std::vector<std::size_t>> targets(colors, std::vector<std::size_t>(d));
  for (auto& perm : targets) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    shuffle(std::span<std::size_t>(perm), rng);
  }
  std::vector<std::vector<State>> tables(colors, std::vector<State>(d));
  std::vector<std::size_t> order(colors);
  for (std::size_t x = 0; x < d; ++x) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle(std::span<std::size_t>(order), rng);
    for (std::size_t c = 0; c < colors; ++c) tables[order[c]][x] = static_cast<State>(targets[c][x]);
  }
  std::vector<WeightedMap> maps;
  for (std::size_t c = 0; c < colors; ++c) {
    maps.push_back({"c" + std::to_string(c + 1), Transformation(tables[c]),
                    Rational(1, static_cast<long long>(colors))});
  }
  RandomMapSystem system(StateSpace(numbered_labels(0, d)), std::move(maps));
  std::vector<Rational> certificate;
  for (const auto& entry : system.maps()) {
    const auto multiplicity = std::count_if(tables.begin(), tables.end(), [&](const auto& t) {
      return std::equal(t.begin(), t.end(), entry.map.table().begin(), entry.map.table().end());
    });
    certificate.emplace_back(static_cast<long long>(multiplicity), static_cast<long long>(colors));
  }
  return {std::move(system), std::move(certificate)};
}

RandomMapSystem gen_colored_graph(std::size_t d, std::size_t colors, std::uint64_t seed) {
  return gen_colored_graph_with_certificate(d, colors, seed).system;
}

void validate_group(const GroupTable& group) {
  const std::size_t n = group.product.size();
  if (n == 0) throw InputError("group table is empty");
  if (group.labels.size() != n) throw InputError("group labels and table differ in size");
  for (const auto& row : group.product) {
    if (row.size() != n) throw InputError("group table is not square");
    for (const std::size_t v : row) {
      if (v >= n) throw InputError("group table entry out of range");
    }
  }
  std::optional<std::size_t> identity;
  for (std::size_t e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (std::size_t g = 0; g < n && ok; ++g) ok = group.product[e][g] == g && group.product[g][e] == g;
    if (ok) identity = e;
  }
  if (!identity) throw InputError("group table has no identity element");
  for (std::size_t g = 0; g < n; ++g) {
    bool has_inverse = false;
    for (std::size_t h = 0; h < n && !has_inverse; ++h) {
      has_inverse = group.product[g][h] == *identity && group.product[h][g] == *identity;
    }
    if (!has_inverse) throw InputError("element '" + group.labels[g] + "' has no inverse");
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (group.product[group.product[a][b]][c] != group.product[a][group.product[b][c]]) {
          throw InputError("group table is not associative");
        }
      }
    }
  }
}

GroupTable cyclic_group(std::size_t order) {
  if (order == 0) throw InputError("cyclic group order must be positive");
  GroupTable group;
  group.labels = numbered_labels(0, order);
  group.product.assign(order, std::vector<std::size_t>(order));
  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t b = 0; b < order; ++b) group.product[a][b] = (a + b) % order;
  }
  return group;
}

GroupTable symmetric_group_3() {
  using Perm = std::array<std::size_t, 3>;
  const std::vector<Perm> perms = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  GroupTable group;
  group.labels = {"e", "(12)", "(13)", "(23)", "(123)", "(132)"};
  group.product.assign(6, std::vector<std::size_t>(6));
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = 0; b < 6; ++b) {
      Perm ab{};
      for (std::size_t x = 0; x < 3; ++x) ab[x] = perms[a][perms[b][x]];
      group.product[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), ab) - perms.begin());
    }
  }
  return group;
}

GroupTable load_group_table(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("cannot parse group table: ") + e.what());
  }
  GroupTable group;
  try {
    group.product = doc.at("table").get<std::vector<std::vector<std::size_t>>>();
    if (doc.contains("labels")) {
      group.labels = doc["labels"].get<std::vector<std::string>>();
    } else {
      group.labels = numbered_labels(0, group.product.size());
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed group table: ") + e.what());
  }
  validate_group(group);
  return group;
}

RandomMapSystem gen_group_action(const GroupTable& group,
                                 const std::vector<std::pair<std::size_t, Rational>>& weights) {
  validate_group(group);
  const std::size_t n = group.product.size();
  if (n > kMaxStates) throw InputError("group too large for the state limit");
  std::vector<WeightedMap> maps;
  for (const auto& [g, w] : weights) {
    if (g >= n) throw InputError("weighted element out of range");
    std::vector<State> table(n);
    for (std::size_t x = 0; x < n; ++x) table[x] = static_cast<State>(group.product[g][x]);
    maps.push_back({group.labels[g], Transformation(std::move(table)), w});
  }
  return RandomMapSystem(StateSpace(group.labels), std::move(maps));
}

RandomMapSystem random_system(Rng& rng, const RandomSystemOptions& options) {
  const std::size_t d =
      options.min_states + uniform_index(rng, options.max_states - options.min_states + 1);
  const std::size_t k = 1 + uniform_index(rng, options.max_maps);
  std::vector<long long> raw(k);
  long long total = 0;
  for (auto& w : raw) {
    w = 1 + static_cast<long long>(uniform_index(rng, static_cast<std::uint64_t>(options.max_weight_numerator)));
    total += w;
  }
  std::vector<WeightedMap> maps;
  for (std::size_t h = 0; h < k; ++h) {
    std::vector<State> table(d);
    for (auto& v : table) v = static_cast<State>(uniform_index(rng, d));
    maps.push_back({"h" + std::to_string(h + 1), Transformation(std::move(table)), Rational(raw[h], total)});
  }
  return RandomMapSystem(StateSpace(numbered_labels(0, d)), std::move(maps));
}

}  // namespace rmc
