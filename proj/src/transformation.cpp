#include "rmc/transformation.hpp"

#include <stdexcept>

namespace rmc {

std::vector<std::size_t> members(StateSet set) {
  std::vector<std::size_t> out;
  out.reserve(set_size(set));
  while (set != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(set)));
    set &= set - 1;
  }
  return out;
}

Transformation::Transformation(std::vector<State> table) : table_(std::move(table)) {
  if (table_.size() > kMaxStates) {
    throw std::invalid_argument("transformation degree exceeds the state limit");
  }
  for (const State v : table_) {
    if (v >= table_.size()) throw std::invalid_argument("transformation value out of range");
  }
}

Transformation Transformation::identity(std::size_t degree) {
  std::vector<State> table(degree);
  for (std::size_t x = 0; x < degree; ++x) table[x] = static_cast<State>(x);
  return Transformation(std::move(table));
}

Transformation Transformation::constant(std::size_t degree, State value) {
  return Transformation(std::vector<State>(degree, value));
}

StateSet Transformation::image() const {
  StateSet out = 0;
  for (const State v : table_) out |= singleton(v);
  return out;
}

StateSet Transformation::image_of(StateSet set) const {
  StateSet out = 0;
  for (std::size_t x = 0; x < table_.size(); ++x) {
    if (contains(set, x)) out |= singleton(table_[x]);
  }
  return out;
}

StateSet Transformation::preimage_of(StateSet set) const {
  StateSet out = 0;
  for (std::size_t x = 0; x < table_.size(); ++x) {
    if (contains(set, table_[x])) out |= singleton(x);
  }
  return out;
}

std::size_t Transformation::preimage_size(std::size_t y) const {
  std::size_t count = 0;
  for (const State v : table_) count += (v == y);
  return count;
}

Transformation compose(const Transformation& outer, const Transformation& inner) {
  std::vector<State> table(inner.degree());
  for (std::size_t x = 0; x < table.size(); ++x) table[x] = outer.table_[inner.table_[x]];
  Transformation out;
  out.table_ = std::move(table);
  return out;
}

std::string to_string(const Transformation& t) {
  std::string out = "[";
  for (std::size_t x = 0; x < t.degree(); ++x) {
    if (x != 0) out += ' ';
    out += std::to_string(t(x));
  }
  return out + "]";
}

std::size_t TransformationHash::operator()(const Transformation& t) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (const State v : t.table()) {
    h ^= v;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace rmc
