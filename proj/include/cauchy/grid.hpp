#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cauchy {

/// Thrown when two grid-bound objects are combined across different grids.
class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Uniform node-centred partition of [-a, a], nodes x_j = -a + j*dx
/// including both endpoints.
///
/// Nodes are computed as (j - c)*dx with c = (n-1)/2, which makes the grid
/// exactly mirror-symmetric: x(n-1-j) == -x(j) in floating point.
class Grid {
 public:
  /// Throws std::invalid_argument unless a > 0, dx > 0, 2a/dx is an
  /// integer to 1e-9 relative and the grid has at least 3 nodes.
  Grid(double half_width, double spacing);

  double half_width() const noexcept { return half_width_; }
  double spacing() const noexcept { return spacing_; }
  std::size_t size() const noexcept { return size_; }

  double node(std::size_t j) const noexcept {
    return (static_cast<double>(j) - centre_) * spacing_;
  }

  /// Index of the node at x, if x is within 1e-9*dx of one.
  std::optional<std::size_t> index_of(double x) const noexcept;

  /// Index of the node nearest to x (clamped to the grid).
  std::size_t nearest_index(double x) const noexcept;

  bool contains(double x) const noexcept;

  /// Same node count, spacing and half-width to 1e-12 relative.
  friend bool operator==(const Grid& l, const Grid& r) noexcept;

 private:
  double half_width_;
  double spacing_;
  std::size_t size_;
  double centre_;
};

enum class SignConvention {
  /// Flip so that the sample of largest magnitude is positive.
  LargestPositive,
  /// Keep the orientation of the input.
  Preserve,
};

/// Real samples on a Grid; identically zero outside [-a, a].
///
/// Immutable once constructed. Construction rejects non-finite samples.
class GridFunction {
 public:
  GridFunction(Grid grid, std::vector<double> values);

  static GridFunction zeros(const Grid& grid);
  static GridFunction sample(const Grid& grid,
                             const std::function<double(double)>& fn);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t j) const noexcept { return values_[j]; }

  /// Value at an arbitrary point: linear interpolation between nodes,
  /// exactly zero outside [-a, a].
  double at(double x) const noexcept;

  /// Moves the samples out, leaving this function empty.
  std::vector<double> release() && { return std::move(values_); }

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Index of the first non-finite sample, if any.
std::optional<std::size_t> first_non_finite(std::span<const double> values);

/// Trapezoid-rule approximation of the integral of f*g over [-a, a].
double inner_product(const GridFunction& f, const GridFunction& g);

double norm(const GridFunction& f);

/// Unit-norm copy of f. Throws std::domain_error("cannot normalize null
/// vector") for the zero function.
GridFunction normalize(const GridFunction& f,
                       SignConvention sign = SignConvention::LargestPositive);

/// Sign flip so the sample of largest magnitude is positive.
GridFunction orient(const GridFunction& f);

GridFunction scaled(const GridFunction& f, double factor);

/// f + factor*g
GridFunction axpy(const GridFunction& f, double factor, const GridFunction& g);

/// Copies f onto target where nodes coincide and zero-fills elsewhere.
/// Requires identical spacing and node alignment.
GridFunction restrict_or_embed(const GridFunction& f, const Grid& target);

/// CSV with header `x,value`, 17 significant digits.
void write_csv(std::ostream& out, const GridFunction& f);
void write_csv(const std::string& path, const GridFunction& f);

/// Reads the `x,value` format back; the grid is reconstructed from the node
/// positions.
GridFunction read_csv(std::istream& in);
GridFunction read_csv(const std::string& path);

}  // namespace cauchy
