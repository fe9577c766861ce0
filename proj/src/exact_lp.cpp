#include "rmc/exact_lp.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>

namespace rmc {

namespace {

class Tableau {
 public:
  Tableau(const LinearProgram& problem) : vars_(problem.c.size()) {
    const std::size_t m = problem.a.size();
    rows_.assign(m, std::vector<Rational>(vars_ + m + 1, Rational(0)));
    basis_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (problem.a[i].size() != vars_) throw std::invalid_argument("constraint row has wrong width");
      const bool flip = problem.b[i] < 0;
      for (std::size_t j = 0; j < vars_; ++j) rows_[i][j] = flip ? -problem.a[i][j] : problem.a[i][j];
      rows_[i][vars_ + i] = 1;
      rows_[i].back() = flip ? -problem.b[i] : problem.b[i];
      basis_[i] = vars_ + i;
    }
  }

  std::size_t columns() const { return rows_.empty() ? vars_ : rows_.front().size() - 1; }
  bool artificial(std::size_t j) const { return j >= vars_; }

  /// Runs Bland's rule for `cost` (maximize) over the allowed columns.
  /// Returns false when unbounded.
  bool optimize(const std::vector<Rational>& cost, bool allow_artificial) {
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < columns() && !entering; ++j) {
        if (artificial(j) && !allow_artificial) continue;
        if (reduced_cost(cost, j) > 0) entering = j;
      }
      if (!entering) return true;
      std::optional<std::size_t> leaving;
      Rational best_ratio;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational& coeff = rows_[i][*entering];
        if (coeff <= 0) continue;
        const Rational ratio = rows_[i].back() / coeff;
        if (!leaving || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (!leaving) return false;
      pivot(*leaving, *entering);
    }
  }

  /// After phase one: move zero-level artificials out of the basis, or drop
  /// their rows when no structural column can replace them.
  void purge_artificials() {
    for (std::size_t i = 0; i < rows_.size();) {
      if (!artificial(basis_[i])) {
        ++i;
        continue;
      }
      std::optional<std::size_t> column;
      for (std::size_t j = 0; j < vars_ && !column; ++j) {
        if (rows_[i][j] != 0) column = j;
      }
      if (column) {
        pivot(i, *column);
        ++i;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  Rational objective(const std::vector<Rational>& cost) const {
    Rational value = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i) value += cost[basis_[i]] * rows_[i].back();
    return value;
  }

  std::vector<Rational> solution() const {
    std::vector<Rational> x(vars_, Rational(0));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (!artificial(basis_[i])) x[basis_[i]] = rows_[i].back();
    }
    return x;
  }

 private:
  Rational reduced_cost(const std::vector<Rational>& cost, std::size_t j) const {
    Rational r = cost[j];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i][j] != 0) r -= cost[basis_[i]] * rows_[i][j];
    }
    return r;
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = 1 / rows_[row][col];
    for (auto& v : rows_[row]) v *= inv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == row || rows_[i][col] == 0) continue;
      const Rational factor = rows_[i][col];
      for (std::size_t j = 0; j < rows_[i].size(); ++j) {
        if (rows_[row][j] != 0) rows_[i][j] -= factor * rows_[row][j];
      }
    }
    basis_[row] = col;
  }

  std::size_t vars_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& problem) {
  if (problem.a.size() != problem.b.size()) throw std::invalid_argument("A and b disagree in size");
  Tableau tableau(problem);
  const std::size_t n = problem.c.size();
  const std::size_t total = n + problem.a.size();

  std::vector<Rational> phase_one(total, Rational(0));
  for (std::size_t j = n; j < total; ++j) phase_one[j] = -1;
  tableau.optimize(phase_one, true);
  LpResult result;
  if (tableau.objective(phase_one) < 0) {
    result.status = LpStatus::infeasible;
    return result;
  }
  tableau.purge_artificials();

  std::vector<Rational> phase_two(total, Rational(0));
  for (std::size_t j = 0; j < n; ++j) phase_two[j] = problem.c[j];
  if (!tableau.optimize(phase_two, false)) {
    result.status = LpStatus::unbounded;
    return result;
  }
  result.status = LpStatus::optimal;
  result.x = tableau.solution();
  result.objective = tableau.objective(phase_two);
  return result;
}

}  // namespace rmc
