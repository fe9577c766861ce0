#pragma once

#include <vector>

#include "rmc/rational.hpp"

namespace rmc {

/// maximize c·x subject to A x = b, x ≥ 0, in exact arithmetic.
struct LinearProgram {
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<Rational> c;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  std::vector<Rational> x;
  Rational objective = 0;
};

/// Two-phase tableau simplex with Bland's rule. Exact rationals make the
/// ratio tests and optimality checks tolerance-free, and Bland's rule
/// guarantees termination on degenerate problems. Redundant equality rows
/// are detected and dropped after phase one.
LpResult solve_lp(const LinearProgram& problem);

}  // namespace rmc
