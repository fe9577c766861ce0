#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rmc/rng.hpp"
#include "rmc/system.hpp"

namespace rmc {

/// Two states {-1, 1}, X_{n+1} = X_n V_{n+1} with V uniform on {1, -1}:
/// identity and swap with weight 1/2 each. Every verdict is the same for any
/// positive pair of weights.
RandomMapSystem vinokourov();

/// Four states and three maps with weight 1/3 each; only the pair {3, 4} is
/// accordable and no positive reweighting makes the uniform law invariant.
RandomMapSystem non_h_example();

/// Words (map names, composition order) for five elements of the semigroup
/// of non_h_example(): f1, f2, f3, f1^2, f2^2. The full semigroup has six.
std::vector<std::string> non_h_listed_elements();

/// States 0..K with f1(x) = max(x - 1, 0) (weight 2/3) and
/// f2(x) = min(x + 1, K) (weight 1/3). The reflection at K changes the
/// behaviour of the infinite chain: on the infinite line no composition is
/// constant, while here f1^K is, so the minimal rank drops to 1.
RandomMapSystem counterexample_truncated(std::size_t k);

/// "vinokourov", "non-h-example", "counterexample-truncated(K)"
/// ("counterexample-truncated" alone means K = 4). Throws InputError.
RandomMapSystem builtin(std::string_view name);
std::vector<std::string> builtin_names();

/// C color maps on d states: from each state leaves exactly one edge of
/// each color, and each state receives exactly C edges. Edges come from C
/// random permutations; at each state the C outgoing edges get a random
/// assignment of colors. Weights 1/C per color (colors with identical maps
/// are merged with summed weight).
RandomMapSystem gen_colored_graph(std::size_t d, std::size_t colors, std::uint64_t seed);

struct ColoredGraph {
  RandomMapSystem system;
  /// Uniform law on colors pushed onto the merged map set: (number of
  /// colors with that map) / C. Built from the color tables, not from the
  /// system weights.
  std::vector<Rational> uniform_certificate;
};

ColoredGraph gen_colored_graph_with_certificate(std::size_t d, std::size_t colors,
                                                std::uint64_t seed);

/// Finite group given by its multiplication table product[g][h] = g·h.
struct GroupTable {
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> product;
};

/// Throws InputError unless the table is a group (closure, identity,
/// inverses, associativity).
void validate_group(const GroupTable& group);

GroupTable cyclic_group(std::size_t order);
/// S3 as permutations of {0,1,2}, labels e, (12), (13), (23), (123), (132).
GroupTable symmetric_group_3();
GroupTable load_group_table(std::string_view document);

/// Left translations f_g(x) = g·x for the elements g carrying positive weight.
RandomMapSystem gen_group_action(const GroupTable& group,
                                 const std::vector<std::pair<std::size_t, Rational>>& weights);

struct RandomSystemOptions {
  std::size_t min_states = 2;
  std::size_t max_states = 6;
  std::size_t max_maps = 4;
  std::int64_t max_weight_numerator = 9;
};

/// Uniform random tables with random positive rational weights.
RandomMapSystem random_system(Rng& rng, const RandomSystemOptions& options = {});

}  // namespace rmc
