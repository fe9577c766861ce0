#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace rmc {

/// States are addressed by index. The hard limit on the state count keeps
/// every subset of E representable as a 32-bit mask.
using State = std::uint8_t;
using StateSet = std::uint32_t;

inline constexpr std::size_t kMaxStates = 24;

inline constexpr StateSet full_set(std::size_t degree) {
  return degree >= 32 ? ~StateSet{0} : (StateSet{1} << degree) - 1;
}
inline constexpr StateSet singleton(std::size_t x) { return StateSet{1} << x; }
inline constexpr bool contains(StateSet set, std::size_t x) { return (set >> x) & 1U; }
inline constexpr std::size_t set_size(StateSet set) {
  return static_cast<std::size_t>(std::popcount(set));
}
std::vector<std::size_t> members(StateSet set);

/// A total map E -> E stored as its value table.
class Transformation {
 public:
  Transformation() = default;
  explicit Transformation(std::vector<State> table);

  static Transformation identity(std::size_t degree);
  static Transformation constant(std::size_t degree, State value);

  std::size_t degree() const { return table_.size(); }
  State operator()(std::size_t x) const { return table_[x]; }
  std::span<const State> table() const { return table_; }

  StateSet image() const;
  StateSet image_of(StateSet set) const;
  StateSet preimage_of(StateSet set) const;
  std::size_t rank() const { return set_size(image()); }
  std::size_t preimage_size(std::size_t y) const;
  bool is_constant() const { return rank() == 1; }
  bool is_bijection() const { return rank() == degree(); }

  /// (outer ∘ inner)(x) = outer(inner(x)).
  friend Transformation compose(const Transformation& outer, const Transformation& inner);

  friend bool operator==(const Transformation&, const Transformation&) = default;
  friend auto operator<=>(const Transformation&, const Transformation&) = default;

 private:
  std::vector<State> table_;
};

std::string to_string(const Transformation& t);

struct TransformationHash {
  std::size_t operator()(const Transformation& t) const noexcept;
};

}  // namespace rmc
