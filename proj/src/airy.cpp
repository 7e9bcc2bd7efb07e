#include <cmath>
#include <numbers>
#include <utility>

#include "cauchy/reference.hpp"

namespace cauchy::reference {

namespace {

constexpr double kAi0 = 0.355028053887817239;   // 3^{-2/3} / Gamma(2/3)
constexpr double kAip0 = 0.258819403792806798;  // 3^{-1/3} / Gamma(1/3)
constexpr int kSeriesTerms = 40;
constexpr int kAsymptoticTerms = 8;
constexpr double kSeriesLimit = 5.0;

// (Ai, Ai') from Ai = c1 f - c2 g with the two Maclaurin solutions of y'' = t y.
std::pair<double, double> series(double t) {
  const double t3 = t * t * t;
  double a = 1.0, b = t;          // f and g terms
  double da = 0.0, db = 1.0;      // f' and g' terms
  double f = a, g = b, fp = 0.0, gp = db;
  for (int k = 1; k < kSeriesTerms; ++k) {
    const double kk = 3.0 * k;
    a *= t3 / ((kk - 1.0) * kk);
    b *= t3 / (kk * (kk + 1.0));
    da = k == 1 ? t * t / 2.0 : da * t3 / ((kk - 1.0) * (kk - 3.0));
    db *= t3 / (kk * (kk - 2.0));
    f += a;
    g += b;
    fp += da;
    gp += db;
  }
  return {kAi0 * f - kAip0 * g, kAi0 * fp - kAip0 * gp};
}

// u_k of the Airy asymptotic series; v_k = -(6k+1)/(6k-1) u_k.
double u_coeff(int k) {
  double u = 1.0;
  for (int j = 1; j <= k; ++j) {
    u *= (6.0 * j - 5.0) * (6.0 * j - 3.0) * (6.0 * j - 1.0) / (216.0 * j * (2.0 * j - 1.0));
  }
  return u;
}

double v_coeff(int k) {
  return k == 0 ? 1.0 : -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u_coeff(k);
}

std::pair<double, double> asymptotic_positive(double t) {
  const double zeta = 2.0 / 3.0 * t * std::sqrt(t);
  double su = 0.0, sv = 0.0, p = 1.0;
  for (int k = 0; k < kAsymptoticTerms; ++k) {
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    su += sign * u_coeff(k) * p;
    sv += sign * v_coeff(k) * p;
    p /= zeta;
  }
  const double e = std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi));
  const double q = std::sqrt(std::sqrt(t));
  return {e / q * su, -e * q * sv};
}

std::pair<double, double> asymptotic_negative(double t) {
  const double z = -t;
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  double ue = 0.0, uo = 0.0, ve = 0.0, vo = 0.0, p = 1.0;
  for (int k = 0; k < kAsymptoticTerms; ++k) {
    const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    if (k % 2 == 0) {
      ue += sign * u_coeff(k) * p;
      ve += sign * v_coeff(k) * p;
    } else {
      uo += sign * u_coeff(k) * p;
      vo += sign * v_coeff(k) * p;
    }
    p /= zeta;
  }
  const double phase = zeta + std::numbers::pi / 4.0;
  const double s = std::sin(phase), c = std::cos(phase);
  const double q = std::sqrt(std::sqrt(z));
  const double r = 1.0 / std::sqrt(std::numbers::pi);
  return {r / q * (s * ue - c * uo), -r * q * (c * ve + s * vo)};
}

std::pair<double, double> airy_pair(double t) {
  if (std::abs(t) <= kSeriesLimit) return series(t);
  return t > 0.0 ? asymptotic_positive(t) : asymptotic_negative(t);
}

}  // namespace

double airy_ai(double t) { return airy_pair(t).first; }

double airy_ai_prime(double t) { return airy_pair(t).second; }

}  // namespace cauchy::reference
