#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include "cauchy/grid.hpp"

namespace cauchy {

/// Truncation radius of the jump variable z in the principal-value integral.
enum class ZMaxMode {
  TwiceHalfWidth,  // |z| <= 2a: every pair of grid nodes interacts
  HalfWidth,       // |z| <= a
};

std::string_view to_string(ZMaxMode mode);
ZMaxMode parse_z_max_mode(std::string_view text);

struct KernelOptions {
  ZMaxMode z_max_mode = ZMaxMode::HalfWidth;
  /// Adds the far tail (2/pi)/z_max to the diagonal, i.e. the |z| > z_max
  /// part of the integral with f(x+z) = 0.
  bool tail_compensation = false;
};

/// Discrete Cauchy operator T = (-Laplacian)^{1/2} on a grid:
///
///   (T f)_i = c f_i - sum_{m != 0} w_m f_{i+m},   f_j = 0 off-grid.
///
/// The off-diagonal weights come from the midpoint rule for
/// (1/pi) PV int (f(x) - f(x+z)) / z^2 dz on cells |z| >= dx/2, giving
/// w_m = 1 / (pi m^2 dx) for 0 < |m| dx <= z_max. The inner cell |z| < dx/2
/// contributes -f''(x) dx / (2 pi); f'' is taken from the 2dx-spaced central
/// difference, which folds into w_{+-2} and c. The diagonal c is the sum of
/// all weights out to z_max, so T annihilates constants away from the edges.
///
/// Copies share the precomputed transform; apply() is safe to call from
/// several threads at once.
class CauchyKernel {
 public:
  explicit CauchyKernel(const Grid& grid, KernelOptions options = {});

  const Grid& grid() const noexcept;
  const KernelOptions& options() const noexcept;
  double z_max() const noexcept;

  /// Largest offset |m| carrying a weight.
  std::size_t max_offset() const noexcept;

  /// w_m for any integer offset (zero beyond z_max and at m = 0).
  double weight(long long offset) const noexcept;

  /// Coefficient c multiplying f(x_i).
  double diagonal_term() const noexcept;

  /// Stencil symbol at the grid Nyquist frequency, c + 2 sum (-1)^{m+1} w_m.
  /// The 2dx inner correction vanishes there, so the true sup of the symbol
  /// sits slightly inside (by well under 0.1%). The linear kinetic factor
  /// (1 - hT) is stable only while h times this stays below 2.
  double nyquist_symbol() const noexcept;

  /// Transform-accelerated application.
  GridFunction apply(const GridFunction& f) const;

  /// O(N^2) summation of the same discrete operator.
  GridFunction apply_direct(const GridFunction& f) const;

  /// CSV `offset,weight` of the stencil coefficients: offset 0 carries c,
  /// offset m >= 1 carries -w_m.
  void write_weights_csv(std::ostream& out) const;

 private:
  struct State;
  std::shared_ptr<const State> state_;
};

GridFunction apply_cauchy(const CauchyKernel& kernel, const GridFunction& f);

}  // namespace cauchy
