#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cauchy/cauchy_kernel.hpp"
#include "cauchy/grid.hpp"
#include "cauchy/potential.hpp"

namespace cauchy {

struct StepOptions {
  /// Keep the h^2 T^2 / 2 term of exp(-hT) in the kinetic factor. Off by
  /// default: the kinetic factor is the linear (1 - hT).
  bool quadratic_kinetic = false;
};

/// Short-time semigroup step
///
///   S(h) = exp(-hV/2) (1 - hT) exp(-hV/2).
///
/// Construction precomputes exp(-h V(x_j) / 2). Warnings are collected (not
/// thrown) when h V0 >= 1/2 for a finite well, or when h exceeds the linear
/// stability limit 2 / lambda_max of the discrete T.
class StrangStep {
 public:
  StrangStep(double h, CauchyKernel kernel, Potential potential, StepOptions options = {});

  /// h = 0 step (the identity). Only meant for tests.
  static StrangStep zero_time(CauchyKernel kernel, Potential potential);

  double h() const noexcept { return h_; }
  const CauchyKernel& kernel() const noexcept { return kernel_; }
  const Potential& potential() const noexcept { return potential_; }
  const Grid& grid() const noexcept { return kernel_.grid(); }
  const StepOptions& options() const noexcept { return options_; }
  std::span<const double> half_exp_v() const noexcept { return half_exp_v_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Throws GridMismatch for a foreign grid and std::runtime_error naming the
  /// first node if the result is not finite.
  GridFunction apply(const GridFunction& f) const;

 private:
  struct ZeroTimeTag {};
  StrangStep(ZeroTimeTag, CauchyKernel kernel, Potential potential);
  void precompute();

  double h_;
  CauchyKernel kernel_;
  Potential potential_;
  StepOptions options_;
  std::vector<double> half_exp_v_;
  std::vector<std::string> warnings_;
};

GridFunction step(const StrangStep& s, const GridFunction& f);

struct StepTelemetry {
  std::size_t k = 0;
  double norm = 0.0;
  /// -(1/h) ln(<f, S f> / <f, f>) of the state entering step k.
  double energy_estimate = 0.0;
};

/// k-fold application of the step. Throws std::invalid_argument for k == 0.
GridFunction evolve(const StrangStep& s, GridFunction f, std::size_t k,
                    const std::function<void(const StepTelemetry&)>& telemetry = {});

/// CSV `k,norm,energy_estimate`.
void write_telemetry_csv(std::ostream& out, std::span<const StepTelemetry> rows);

}  // namespace cauchy
