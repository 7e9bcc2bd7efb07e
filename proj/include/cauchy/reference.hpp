#pragma once

#include <limits>

#include "cauchy/grid.hpp"

namespace cauchy::reference {

/// Airy function Ai: 40-term Maclaurin series for |t| <= 5, 8-term
/// asymptotic expansion beyond.
double airy_ai(double t);
double airy_ai_prime(double t);

/// Semi-analytic Cauchy-oscillator ground state
///
///   psi_1(x) = (A0 / pi) int_{-E1}^{t_cut} Ai(t) cos(x (t + E1)) dt,
///
/// with E1 the first zero of Ai'(-t). A0 normalizes psi_1 on the whole line
/// via Parseval: int psi_1^2 dx = (A0^2 / pi) int Ai(t)^2 dt.
class AiryGroundState {
 public:
  static constexpr double kE1 = 1.01879297;

  explicit AiryGroundState(double e1 = kE1, double t_cut = 15.0);

  double e1() const noexcept { return e1_; }
  double t_cut() const noexcept { return t_cut_; }
  double amplitude() const noexcept { return amplitude_; }

  /// Unit-L2(R) normalized psi_1(x); even in x.
  double operator()(double x) const;

  GridFunction sample(const Grid& grid) const;

 private:
  double e1_;
  double t_cut_;
  double amplitude_;
};

/// psi_1 with the default constants.
double airy_psi1(double x);

/// Large-n infinite-well eigenvalue n pi/2 - pi/8.
double infwell_energy(int n);

/// Piecewise-quadratic cutoff q: 0 below -1/3, 1 above 1/3, C^1 in between.
double infwell_q(double x);

/// int_0^inf log(1 + r s) / (1 + r^2) dr, via r = tan(theta) and a fixed
/// 200-node graded Gauss-Legendre rule; the log(cos) singularity at
/// theta = pi/2 is integrated in closed form.
double infwell_gamma_exponent(double s);

/// gamma(s) = s / (pi sqrt2 (1 + s^2)) exp(-infwell_gamma_exponent(s) / pi).
double infwell_gamma(double s);

/// Laplace transform G(x) = int_0^inf exp(-x s) gamma(s) ds for x >= 0.
double infwell_laplace_g(double x);

/// F_n(y) = sin(E_n y + pi/8) - G(E_n y) for y > 0, and 0 for y <= 0.
double infwell_profile(int n, double y);

/// q(-x) F_n(1 + x) - (-1)^n q(x) F_n(1 - x); zero for |x| >= 1.
double infwell_psi(int n, double x);

/// Cutoff detuning estimate E(b) - E(a) ~ (2/pi)(1/a - 1/b). b may be
/// +infinity.
double detuning(double a, double b);

/// Least-squares decay exponent p of |f| ~ x^-p over the nonzero samples
/// with x in [lo, hi]. Requires 1 < lo < hi <= a.
double tail_exponent_fit(const GridFunction& f, double lo, double hi);

}  // namespace cauchy::reference
