#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cauchy/cauchy_kernel.hpp"
#include "cauchy/grid.hpp"
#include "cauchy/potential.hpp"
#include "cauchy/propagator.hpp"

namespace cauchy {

enum class BasisKind {
  /// index i >= 0: normalized Hermite function of degree i
  Hermite,
  /// index n >= 1: cos(n pi x / 2) for odd n, sin(n pi x / 2) for even n,
  /// on |x| < 1 and zero elsewhere
  BoxTrig,
};

std::string_view to_string(BasisKind kind);
BasisKind parse_basis_kind(std::string_view text);

/// Trial set description. gs_order lists slot positions (0-based into
/// indices) in Gram-Schmidt precedence; empty means ascending slots.
struct TrialBasis {
  BasisKind kind = BasisKind::Hermite;
  std::vector<int> indices;
  std::vector<std::size_t> gs_order;

  /// The effective precedence, validated as a permutation of the slots.
  std::vector<std::size_t> resolved_order() const;

  /// Conventional 1-based state label of each slot (Hermite i -> i+1,
  /// box n -> n).
  std::vector<int> labels() const;
};

/// Normalized Hermite function psi_i(x), by the normalized three-term
/// recurrence.
double hermite_function(int degree, double x);

/// Unnormalized box function of index n >= 1.
double box_trig_function(int n, double x);

/// Trial functions sampled on grid and normalized there.
std::vector<GridFunction> make_trial(const TrialBasis& basis, const Grid& grid);

/// Orthonormalizes fs in the given precedence: the first listed slot is only
/// normalized, every later slot is projected off all earlier ones and then
/// normalized. Output keeps the original slot positions and orientation.
/// Throws std::runtime_error("trial set degenerated ...") if a slot keeps
/// less than 1e-10 of its norm after projection.
std::vector<GridFunction> gram_schmidt_ordered(const std::vector<GridFunction>& fs,
                                               const std::vector<std::size_t>& order);

/// -(1/h) ln <f, S f> for unit-norm f. Throws std::runtime_error when the
/// expectation is not positive.
double energy_estimate(const StrangStep& s, const GridFunction& f);

struct SolverConfig {
  double h = 0.001;
  double a = 50.0;
  double dx = 0.001;
  std::size_t k_max = 3000;
  std::size_t check_every = 100;
  double energy_tol = 1e-5;
  KernelOptions kernel;
  StepOptions step;
  /// Worker threads for the per-slot step applications.
  std::size_t threads = 1;

  /// Throws std::invalid_argument on the first violated constraint.
  void validate() const;
};

struct SpectralResult {
  std::vector<int> labels;
  /// Last estimate per slot, in slot order (not re-sorted).
  std::vector<double> eigenvalues;
  /// Orthonormal states the eigenvalues belong to, largest sample positive.
  std::vector<GridFunction> eigenfunctions;
  /// energy_history[i][k] = E_i^(k), k = 0 .. iterations_used.
  std::vector<std::vector<double>> energy_history;
  std::size_t iterations_used = 0;
  std::vector<bool> converged;
  std::vector<std::string> warnings;

  std::vector<double> sorted_eigenvalues() const;
  bool all_converged() const;
};

/// Imaginary-time filtering: repeat step -> energy estimate -> ordered
/// Gram-Schmidt until every slot's estimate moved less than energy_tol over
/// the last check_every iterations, or k_max is reached.
SpectralResult solve(const SolverConfig& config, const Potential& potential,
                     const TrialBasis& basis);

/// Same loop from caller-supplied initial functions on the config's grid.
SpectralResult solve(const SolverConfig& config, const Potential& potential,
                     std::vector<GridFunction> initial, std::vector<std::size_t> gs_order,
                     std::vector<int> labels = {});

/// Sign changes between consecutive samples with |value| > node_eps, over
/// the nodes inside [lo, hi].
int count_nodes(const GridFunction& f, double lo, double hi, double node_eps = 1e-8);

}  // namespace cauchy
