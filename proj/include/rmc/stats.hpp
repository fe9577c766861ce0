#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rmc {

std::vector<double> empirical_law(std::span<const std::size_t> counts);

struct ChiSquare {
  double statistic = 0.0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 1.0;
};

/// Pearson goodness of fit. Zero-probability cells are dropped; any count in
/// one of them gives p = 0.
ChiSquare chi_square_test(std::span<const std::size_t> counts, std::span<const double> expected);

}  // namespace rmc
