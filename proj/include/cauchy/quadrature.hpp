#pragma once

#include <functional>
#include <vector>

namespace cauchy::quadrature {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
Rule gauss_legendre(int n);

/// Globally adaptive 7/15-point Gauss-Kronrod integration of f over [a, b].
/// Bisects the interval with the largest error estimate until the summed
/// estimate drops below max(abs_tol, rel_tol * |I|) or max_intervals is hit.
double adaptive(const std::function<double(double)>& f, double a, double b,
                double abs_tol = 1e-12, double rel_tol = 1e-10, int max_intervals = 4000);

}  // namespace cauchy::quadrature
