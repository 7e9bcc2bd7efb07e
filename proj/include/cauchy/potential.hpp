#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "cauchy/cauchy_kernel.hpp"
#include "cauchy/grid.hpp"

namespace cauchy {

enum class PotentialKind { Harmonic, FiniteWell, Tabulated };

std::string_view to_string(PotentialKind kind);

/// Declarative V(x).
///
/// Harmonic is V(x) = x^2. FiniteWell is 0 on |x| < 1 and V0 on |x| >= 1 (the
/// edges belong to the barrier). Tabulated carries samples on a fixed grid.
class Potential {
 public:
  static Potential harmonic();
  static Potential finite_well(double depth);
  static Potential tabulated(GridFunction samples);

  PotentialKind kind() const noexcept { return kind_; }

  /// Well depth V0; 0 for other kinds.
  double depth() const noexcept { return depth_; }

  /// V at an arbitrary point. Tabulated potentials interpolate linearly and
  /// vanish outside their grid.
  double operator()(double x) const noexcept;

  /// V sampled on the nodes of grid. Throws GridMismatch when a tabulated
  /// potential lives on a different grid.
  GridFunction sample(const Grid& grid) const;

  /// Largest value of V over the grid nodes.
  double max_on(const Grid& grid) const;

  std::string describe() const;

 private:
  Potential(PotentialKind kind, double depth, std::optional<GridFunction> table);

  PotentialKind kind_;
  double depth_;
  std::optional<GridFunction> table_;
};

/// Pointwise product V(x_j) f(x_j).
GridFunction apply_potential(const Potential& v, const GridFunction& f);

/// <f, (T + V) f> for a unit-norm f. Throws std::invalid_argument when
/// |‖f‖ - 1| > 1e-6.
double expectation_energy(const CauchyKernel& kernel, const Potential& v,
                          const GridFunction& f);

}  // namespace cauchy
