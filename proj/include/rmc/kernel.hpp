#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rmc/graph.hpp"
#include "rmc/rational.hpp"
#include "rmc/system.hpp"

namespace rmc {

/// Probability vector over the states, exact.
using Distribution = std::vector<Rational>;

/// Transition matrix Π(x, y) = Σ_{h : h(x) = y} weight(h) and its support.
struct Kernel {
  std::vector<std::string> labels;
  std::vector<std::vector<Rational>> matrix;
  /// support[x] lists the y with matrix[x][y] > 0, increasing.
  Digraph support;

  std::size_t size() const { return matrix.size(); }
};

Kernel build_kernel(const RandomMapSystem& system);

struct KernelClassification {
  bool irreducible = false;
  bool aperiodic = false;
  /// Set only for irreducible kernels.
  std::optional<std::size_t> period;
  SccDecomposition classes;
};

KernelClassification classify_kernel(const Kernel& kernel);

/// Human-readable list of communicating classes, terminal ones marked.
std::string describe_classes(const Kernel& kernel, const SccDecomposition& classes);

/// Throws PreconditionError unless the kernel is irreducible (and, when
/// requested, aperiodic). `purpose` names what needs the hypothesis.
void require_irreducible(const Kernel& kernel, const std::string& purpose);
void require_irreducible_aperiodic(const Kernel& kernel, const std::string& purpose);

/// Unique solution of πΠ = π, Σπ = 1 by exact Gaussian elimination.
/// Throws PreconditionError for reducible kernels.
Distribution stationary_distribution(const Kernel& kernel);

/// Exact check of πΠ = π.
bool is_invariant(const Kernel& kernel, std::span<const Rational> law);

Distribution uniform_distribution(std::size_t size);
std::vector<double> to_doubles(std::span<const Rational> law);

double total_variation(std::span<const double> p, std::span<const double> q);

/// d(n) = max_x TV(Π^n(x, ·), π) for n = 0..n_max, in double precision.
/// Requires an irreducible aperiodic kernel.
std::vector<double> mixing_profile(const Kernel& kernel, std::size_t n_max);

/// First n ≤ n_max with d(n) < epsilon.
std::optional<std::size_t> mixing_time(const Kernel& kernel, double epsilon, std::size_t n_max);

}  // namespace rmc
