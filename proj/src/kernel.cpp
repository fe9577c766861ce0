#include "rmc/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "rmc/errors.hpp"

namespace rmc {

Kernel build_kernel(const RandomMapSystem& system) {
  const std::size_t d = system.degree();
  Kernel kernel;
  kernel.labels = system.states().labels();
  kernel.matrix.assign(d, std::vector<Rational>(d, Rational(0)));
  for (const auto& entry : system.maps()) {
    for (std::size_t x = 0; x < d; ++x) kernel.matrix[x][entry.map(x)] += entry.weight;
  }
  kernel.support.assign(d, {});
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t y = 0; y < d; ++y) {
      if (kernel.matrix[x][y] > 0) kernel.support[x].push_back(y);
    }
  }
  return kernel;
}

KernelClassification classify_kernel(const Kernel& kernel) {
  KernelClassification out;
  out.classes = strongly_connected_components(kernel.support);
  out.irreducible = out.classes.count() == 1;
  if (out.irreducible) {
    out.period = period(kernel.support, 0);
    out.aperiodic = *out.period == 1;
  }
  return out;
}

std::string describe_classes(const Kernel& kernel, const SccDecomposition& classes) {
  std::string out;
  for (std::size_t c = 0; c < classes.count(); ++c) {
    if (c != 0) out += ' ';
    out += '{';
    for (std::size_t i = 0; i < classes.components[c].size(); ++i) {
      if (i != 0) out += ',';
      out += kernel.labels[classes.components[c][i]];
    }
    out += '}';
    if (classes.terminal[c]) out += "(closed)";
  }
  return out;
}

void require_irreducible(const Kernel& kernel, const std::string& purpose) {
  const auto cls = classify_kernel(kernel);
  if (!cls.irreducible) {
    throw PreconditionError("irreducibility required (" + purpose +
                            "); communicating classes: " + describe_classes(kernel, cls.classes));
  }
}

void require_irreducible_aperiodic(const Kernel& kernel, const std::string& purpose) {
  require_irreducible(kernel, purpose);
  const auto cls = classify_kernel(kernel);
  if (!cls.aperiodic) {
    throw PreconditionError("aperiodicity required (" + purpose + "); kernel has period " +
                            std::to_string(*cls.period));
  }
}

Distribution stationary_distribution(const Kernel& kernel) {
  require_irreducible(kernel, "unique stationary law");
  const std::size_t d = kernel.size();
  // Rows 0..d-2: (Π^T - I) π = 0; last row: Σ π = 1.
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(d + 1, Rational(0)));
  for (std::size_t y = 0; y + 1 < d; ++y) {
    for (std::size_t x = 0; x < d; ++x) a[y][x] = kernel.matrix[x][y];
    a[y][y] -= 1;
  }
  for (std::size_t x = 0; x <= d; ++x) a[d - 1][x] = 1;

  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    while (pivot < d && a[pivot][col] == 0) ++pivot;
    if (pivot == d) throw ConsistencyError("singular stationary system for an irreducible kernel");
    std::swap(a[pivot], a[col]);
    const Rational inv = 1 / a[col][col];
    for (std::size_t k = col; k <= d; ++k) a[col][k] *= inv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational factor = a[r][col];
      for (std::size_t k = col; k <= d; ++k) a[r][k] -= factor * a[col][k];
    }
  }
  Distribution pi(d);
  for (std::size_t x = 0; x < d; ++x) pi[x] = a[x][d];
  if (!is_invariant(kernel, pi)) throw ConsistencyError("stationary solve failed verification");
  return pi;
}

bool is_invariant(const Kernel& kernel, std::span<const Rational> law) {
  const std::size_t d = kernel.size();
  if (law.size() != d) return false;
  for (std::size_t y = 0; y < d; ++y) {
    Rational mass = 0;
    for (std::size_t x = 0; x < d; ++x) mass += law[x] * kernel.matrix[x][y];
    if (mass != law[y]) return false;
  }
  return true;
}

Distribution uniform_distribution(std::size_t size) {
  return Distribution(size, Rational(1, static_cast<long long>(size)));
}

std::vector<double> to_doubles(std::span<const Rational> law) {
  std::vector<double> out;
  out.reserve(law.size());
  for (const auto& w : law) out.push_back(to_double(w));
  return out;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
  return 0.5 * sum;
}

std::vector<double> mixing_profile(const Kernel& kernel, std::size_t n_max) {
  require_irreducible_aperiodic(kernel, "total-variation mixing profile");
  const std::size_t d = kernel.size();
  const std::vector<double> pi = to_doubles(stationary_distribution(kernel));
  std::vector<std::vector<double>> step(d, std::vector<double>(d));
  for (std::size_t x = 0; x < d; ++x) step[x] = to_doubles(kernel.matrix[x]);

  std::vector<std::vector<double>> power(d, std::vector<double>(d, 0.0));
  for (std::size_t x = 0; x < d; ++x) power[x][x] = 1.0;

  std::vector<double> profile;
  profile.reserve(n_max + 1);
  std::vector<std::vector<double>> next(d, std::vector<double>(d));
  for (std::size_t n = 0;; ++n) {
    double worst = 0.0;
    for (std::size_t x = 0; x < d; ++x) worst = std::max(worst, total_variation(power[x], pi));
    profile.push_back(worst);
    if (n == n_max) break;
    for (std::size_t x = 0; x < d; ++x) {
      for (std::size_t y = 0; y < d; ++y) {
        double sum = 0.0;
        for (std::size_t z = 0; z < d; ++z) sum += power[x][z] * step[z][y];
        next[x][y] = sum;
      }
    }
    std::swap(power, next);
  }
  return profile;
}

std::optional<std::size_t> mixing_time(const Kernel& kernel, double epsilon, std::size_t n_max) {
  const auto profile = mixing_profile(kernel, n_max);
  for (std::size_t n = 0; n < profile.size(); ++n) {
    if (profile[n] < epsilon) return n;
  }
  return std::nullopt;
}

}  // namespace rmc
