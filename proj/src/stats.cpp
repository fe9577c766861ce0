#include "rmc/stats.hpp"

#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>

namespace rmc {

std::vector<double> empirical_law(std::span<const std::size_t> counts) {
  const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::size_t{0}));
  std::vector<double> out;
  out.reserve(counts.size());
  for (const std::size_t c : counts) out.push_back(total > 0 ? static_cast<double>(c) / total : 0.0);
  return out;
}

ChiSquare chi_square_test(std::span<const std::size_t> counts, std::span<const double> expected) {
  const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::size_t{0}));
  ChiSquare out;
  std::size_t cells = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (expected[i] <= 0.0) {
      if (counts[i] > 0) {
        out.p_value = 0.0;
        return out;
      }
      continue;
    }
    const double e = expected[i] * total;
    const double diff = static_cast<double>(counts[i]) - e;
    out.statistic += diff * diff / e;
    ++cells;
  }
  if (cells < 2) return out;
  out.degrees_of_freedom = cells - 1;
  const boost::math::chi_squared_distribution<double> dist(static_cast<double>(out.degrees_of_freedom));
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  return out;
}

}  // namespace rmc
