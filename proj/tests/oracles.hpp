// Brute-force reference constructions shared by the unit tests. None of them
// go through CauchyKernel's weight table.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "cauchy/cauchy_kernel.hpp"
#include "cauchy/grid.hpp"
#include "cauchy/potential.hpp"

namespace oracle {

// (1/pi) PV sum_{0 < |z| <= z_max} (f(x) - f(x+z)) dx / z^2 over virtual nodes
// x + m dx (zero off-grid), plus -f''(x) dx / (2 pi) with the 2dx-spaced
// second difference.
inline std::vector<double> pv_double_loop(const cauchy::Grid& grid, std::span<const double> f,
                                          double z_max, bool tail) {
  const double dx = grid.spacing();
  const long n = static_cast<long>(grid.size());
  const long reach = static_cast<long>(std::floor(z_max / dx + 1e-9));
  auto value = [&](long j) { return j < 0 || j >= n ? 0.0 : f[static_cast<std::size_t>(j)]; };
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (long i = 0; i < n; ++i) {
    const double xi = grid.node(static_cast<std::size_t>(i));
    double sum = 0.0;
    for (long m = -reach; m <= reach; ++m) {
      if (m == 0) continue;
      const double xj = xi + static_cast<double>(m) * dx;
      const double z = xj - xi;
      sum += (value(i) - value(i + m)) * dx / (z * z);
    }
    sum /= std::numbers::pi;
    const double f2 = (value(i + 2) - 2.0 * value(i) + value(i - 2)) / (4.0 * dx * dx);
    sum -= f2 * dx / (2.0 * std::numbers::pi);
    if (tail) sum += value(i) * 2.0 / (std::numbers::pi * z_max);
    out[static_cast<std::size_t>(i)] = sum;
  }
  return out;
}

// Dense T assembled column by column from the double loop.
inline Eigen::MatrixXd dense_cauchy(const cauchy::Grid& grid, double z_max, bool tail = false) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd t(n, n);
  std::vector<double> e(grid.size(), 0.0);
  for (Eigen::Index j = 0; j < n; ++j) {
    e[static_cast<std::size_t>(j)] = 1.0;
    const auto col = pv_double_loop(grid, e, z_max, tail);
    for (Eigen::Index i = 0; i < n; ++i) t(i, j) = col[static_cast<std::size_t>(i)];
    e[static_cast<std::size_t>(j)] = 0.0;
  }
  return t;
}

inline Eigen::MatrixXd dense_hamiltonian(const cauchy::Grid& grid, const cauchy::Potential& v,
                                         double z_max) {
  Eigen::MatrixXd h = dense_cauchy(grid, z_max);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const auto k = static_cast<Eigen::Index>(j);
    h(k, k) += v(grid.node(j));
  }
  return h;
}

inline Eigen::VectorXd to_eigen(const cauchy::GridFunction& f) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(f.size()));
  for (std::size_t j = 0; j < f.size(); ++j) v(static_cast<Eigen::Index>(j)) = f[j];
  return v;
}

inline cauchy::GridFunction from_eigen(const cauchy::Grid& grid, const Eigen::VectorXd& v) {
  return cauchy::GridFunction(grid, std::vector<double>(v.data(), v.data() + v.size()));
}

// Uniform noise in [-1, 1] with both endpoint samples zeroed (the trapezoid
// weights differ there, so exact symmetry statements need f to vanish).
inline cauchy::GridFunction random_function(const cauchy::Grid& grid, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(grid.size());
  for (auto& x : v) x = u(rng);
  v.front() = 0.0;
  v.back() = 0.0;
  return cauchy::GridFunction(grid, std::move(v));
}

inline double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace oracle
