#include "cauchy/reference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cauchy/quadrature.hpp"

namespace cauchy::reference {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

AiryGroundState::AiryGroundState(double e1, double t_cut) : e1_(e1), t_cut_(t_cut) {
  if (!(t_cut > -e1)) throw std::invalid_argument("Airy cutoff must exceed -E1");
  const double ai2 = quadrature::adaptive([](double t) { return airy_ai(t) * airy_ai(t); }, -e1,
                                          t_cut, 1e-15, 1e-13);
  amplitude_ = std::sqrt(kPi / ai2);
}

double AiryGroundState::operator()(double x) const {
  x = std::abs(x);
  const double e1 = e1_;
  const double integral = quadrature::adaptive(
      [e1, x](double t) { return airy_ai(t) * std::cos(x * (t + e1)); }, -e1, t_cut_, 1e-14,
      1e-11, 20000);
  return amplitude_ / kPi * integral;
}

GridFunction AiryGroundState::sample(const Grid& grid) const {
  return GridFunction::sample(grid, [this](double x) { return (*this)(x); });
}

double airy_psi1(double x) {
  static const AiryGroundState ground;
  return ground(x);
}

double infwell_energy(int n) {
  if (n < 1) throw std::invalid_argument("infinite-well level must be >= 1");
  return n * kPi / 2.0 - kPi / 8.0;
}

double infwell_q(double x) {
  constexpr double third = 1.0 / 3.0;
  if (x <= -third) return 0.0;
  if (x <= 0.0) return 4.5 * (x + third) * (x + third);
  if (x < third) return 1.0 - 4.5 * (x - third) * (x - third);
  return 1.0;
}

namespace {

// int_0^{pi/2} log(sin w + s cos w) dw for 0 < s <= 1. The integrand has a
// logarithmic branch point at w ~ -s, so the 200 nodes sit on panels graded
// geometrically away from w = 0.
double graded_log_integral(double s) {
  static const quadrature::Rule rule = quadrature::gauss_legendre(20);
  constexpr int kPanels = 10;
  const double ratio = std::pow(kPi / (2.0 * s), 1.0 / (kPanels - 1));
  double sum = 0.0;
  double lo = 0.0, hi = s;
  for (int p = 0; p < kPanels; ++p) {
    if (p == kPanels - 1) hi = kPi / 2.0;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double w = mid + half * rule.nodes[i];
      sum += half * rule.weights[i] * std::log(std::sin(w) + s * std::cos(w));
    }
    lo = hi;
    hi *= ratio;
  }
  return sum;
}

}  // namespace

double infwell_gamma_exponent(double s) {
  if (s < 0.0) throw std::invalid_argument("gamma exponent needs s >= 0");
  if (s == 0.0) return 0.0;
  // With r = tan(t): log(1 + s tan t) = log(cos t + s sin t) - log(cos t), and
  // the second piece integrates to (pi/2) ln 2. Reflecting t -> pi/2 - t maps
  // s > 1 onto 1/s at the cost of (pi/2) ln s.
  const double base = kPi / 2.0 * std::numbers::ln2;
  if (s <= 1.0) return base + graded_log_integral(s);
  return base + kPi / 2.0 * std::log(s) + graded_log_integral(1.0 / s);
}

double infwell_gamma(double s) {
  if (s < 0.0) throw std::invalid_argument("gamma needs s >= 0");
  return s / (kPi * std::numbers::sqrt2 * (1.0 + s * s)) *
         std::exp(-infwell_gamma_exponent(s) / kPi);
}

namespace {

constexpr double kSMin = 1e-10;
constexpr double kSCap = 1e6;

// Nodes and weights (including gamma) for int_{kSMin}^{kSCap} e^{-xs} gamma(s) ds in log s.
struct LaplaceTable {
  std::vector<double> s;
  std::vector<double> w;
};

const LaplaceTable& laplace_table() {
  static const LaplaceTable table = [] {
    LaplaceTable t;
    const quadrature::Rule rule = quadrature::gauss_legendre(20);
    const double u0 = std::log(kSMin), u1 = std::log(kSCap);
    const int panels = static_cast<int>(std::ceil((u1 - u0) / 0.5));
    const double width = (u1 - u0) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = u0 + (p + 0.5) * width;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double s = std::exp(mid + 0.5 * width * rule.nodes[i]);
        t.s.push_back(s);
        t.w.push_back(0.5 * width * rule.weights[i] * s * infwell_gamma(s));
      }
    }
    return t;
  }();
  return table;
}

// gamma(s) ~ s^{-3/2} / (pi sqrt2) beyond kSCap, integrated in closed form.
double laplace_tail(double x) {
  const double c = 1.0 / (kPi * std::numbers::sqrt2);
  if (x == 0.0) return c * 2.0 / std::sqrt(kSCap);
  const double xs = x * kSCap;
  if (xs > 700.0) return 0.0;
  return c * (2.0 * std::exp(-xs) / std::sqrt(kSCap) -
              2.0 * std::sqrt(kPi * x) * std::erfc(std::sqrt(xs)));
}

}  // namespace

double infwell_laplace_g(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("Laplace transform needs x >= 0");
  const auto& table = laplace_table();
  double sum = 0.0;
  for (std::size_t i = 0; i < table.s.size(); ++i) {
    const double arg = x * table.s[i];
    if (arg > 200.0) break;  // nodes are increasing in s
    sum += table.w[i] * std::exp(-arg);
  }
  // gamma(s) ~ s / (pi sqrt2) below kSMin
  sum += kSMin * kSMin / (2.0 * kPi * std::numbers::sqrt2);
  return sum + laplace_tail(x);
}

double infwell_profile(int n, double y) {
  if (y <= 0.0) return 0.0;
  const double e = infwell_energy(n);
  return std::sin(e * y + kPi / 8.0) - infwell_laplace_g(e * y);
}

double infwell_psi(int n, double x) {
  const double parity = n % 2 == 0 ? 1.0 : -1.0;
  return infwell_q(-x) * infwell_profile(n, 1.0 + x) -
         parity * infwell_q(x) * infwell_profile(n, 1.0 - x);
}

double detuning(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("detuning needs positive cutoffs");
  return 2.0 / kPi * (1.0 / a - 1.0 / b);
}

double tail_exponent_fit(const GridFunction& f, double lo, double hi) {
  const double a = f.grid().half_width();
  if (!(lo > 1.0 && lo < hi && hi <= a * (1.0 + 1e-12))) {
    throw std::invalid_argument("tail fit window must satisfy 1 < lo < hi <= a");
  }
  double n = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double x = f.grid().node(j);
    if (x < lo || x > hi || f[j] == 0.0) continue;
    const double lx = std::log(x), ly = std::log(std::abs(f[j]));
    n += 1.0;
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  if (n < 2.0) throw std::domain_error("tail fit window has fewer than two nonzero samples");
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return -slope;
}

}  // namespace cauchy::reference
