#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "cauchy/reference.hpp"
#include "doctest.h"

using namespace cauchy;
using namespace cauchy::reference;

TEST_CASE("Ai and Ai' at the origin match the Gamma-function constants") {
  const double ai0 = 1.0 / (std::pow(3.0, 2.0 / 3.0) * boost::math::tgamma(2.0 / 3.0));
  const double aip0 = -1.0 / (std::pow(3.0, 1.0 / 3.0) * boost::math::tgamma(1.0 / 3.0));
  CHECK(airy_ai(0.0) == doctest::Approx(ai0).epsilon(1e-14));
  CHECK(airy_ai(0.0) == doctest::Approx(0.35502805).epsilon(1e-7));
  CHECK(airy_ai_prime(0.0) == doctest::Approx(aip0).epsilon(1e-14));
}

TEST_CASE("Airy function agrees with an independent implementation across the regimes") {
  for (double t = -12.0; t <= 15.0; t += 0.37) {
    const double ours = airy_ai(t);
    const double theirs = boost::math::airy_ai(t);
    const double dtheirs = boost::math::airy_ai_prime(t);
    // series cancellation and the 8-term expansion both degrade toward |t| = 5
    const double scale = std::abs(t) < 5.0 ? 1e-9 : 2e-6;
    CAPTURE(t);
    CHECK(std::abs(ours - theirs) <= scale * std::max(std::abs(theirs), 1e-300) + 1e-14);
    CHECK(std::abs(airy_ai_prime(t) - dtheirs) <= scale * std::abs(dtheirs) + 1e-13);
  }
  CHECK(std::abs(airy_ai(15.0)) < 1e-16);
}

TEST_CASE("E1 is the first zero of Ai'(-t)") {
  CHECK(std::abs(airy_ai_prime(-AiryGroundState::kE1)) < 1e-8);
}

TEST_CASE("Airy ground state is even, normalized on the line, and decays like x^-4") {
  const AiryGroundState g;
  for (double x : {0.0, 0.3, 1.7, 4.0, 25.0}) CHECK(g(x) == g(-x));
  CHECK(airy_psi1(2.5) == g(2.5));

  // independent normalization: integrate psi^2 over [-50, 50] by nested Gauss-Kronrod
  auto integrand = [&](double x) { return g(x) * g(x); };
  const double half = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, 50.0, 12, 1e-9);
  CHECK(2.0 * half == doctest::Approx(1.0).epsilon(1e-4));

  double worst = 0.0;
  for (double x = 10.0; x <= 100.0; x += 5.0) worst = std::max(worst, std::pow(x, 4) * std::abs(g(x)));
  CHECK(std::isfinite(worst));
  CHECK(worst < 10.0);

  const Grid grid(50.0, 0.25);
  const GridFunction sampled = g.sample(grid);
  CHECK(tail_exponent_fit(sampled, 10.0, 50.0) >= 3.5);
}

TEST_CASE("infinite-well energies follow n pi / 2 - pi / 8") {
  CHECK(infwell_energy(1) == doctest::Approx(1.17810).epsilon(1e-5));
  CHECK(infwell_energy(8) == doctest::Approx(12.1737).epsilon(1e-5));
  for (int n = 1; n <= 8; ++n) {
    CHECK(infwell_energy(n) == n * std::numbers::pi / 2.0 - std::numbers::pi / 8.0);
    CHECK(infwell_energy(n + 1) - infwell_energy(n) == doctest::Approx(std::numbers::pi / 2.0));
  }
  CHECK_THROWS_AS(infwell_energy(0), std::invalid_argument);
}

TEST_CASE("cutoff q is piecewise quadratic and continuous") {
  CHECK(infwell_q(0.0) == doctest::Approx(0.5));
  CHECK(infwell_q(-0.5) == 0.0);
  CHECK(infwell_q(-1.0 / 3.0) == 0.0);
  CHECK(infwell_q(1.0 / 3.0) == 1.0);
  CHECK(infwell_q(2.0) == 1.0);
  CHECK(infwell_q(-1.0 / 6.0) == doctest::Approx(4.5 / 36.0));
  CHECK(infwell_q(1.0 / 6.0) == doctest::Approx(1.0 - 4.5 / 36.0));
  for (double x = -1.0; x <= 1.0; x += 0.01) {
    CHECK(infwell_q(x) + infwell_q(-x) == doctest::Approx(1.0));  // point symmetry about (0, 1/2)
  }
}

TEST_CASE("gamma exponent matches Catalan's constant at s = 1 and direct quadrature elsewhere") {
  const double catalan = boost::math::constants::catalan<double>();
  CHECK(infwell_gamma_exponent(1.0) ==
        doctest::Approx(std::numbers::pi / 4.0 * std::numbers::ln2 + catalan).epsilon(1e-13));
  boost::math::quadrature::tanh_sinh<double> ts;
  for (double s : {1e-4, 0.01, 0.1, 0.5, 3.0, 10.0, 1e3, 1e5}) {
    const double direct = ts.integrate(
        [s](double r) { return std::log1p(r * s) / (1.0 + r * r); }, 0.0,
        std::numeric_limits<double>::infinity());
    CAPTURE(s);
    CHECK(infwell_gamma_exponent(s) == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("gamma is positive and G decreases") {
  for (double s : {0.1, 1.0, 10.0}) CHECK(infwell_gamma(s) > 0.0);
  double prev = infwell_laplace_g(0.5);
  for (double x = 0.6; x <= 20.0; x += 0.1) {
    const double g = infwell_laplace_g(x);
    CHECK(g < prev);
    prev = g;
  }
}

TEST_CASE("G(0) reproduces sin(pi/8), so F_n vanishes at the wall") {
  CHECK(infwell_laplace_g(0.0) == doctest::Approx(std::sin(std::numbers::pi / 8.0)).epsilon(1e-6));
  CHECK(std::abs(infwell_profile(3, 1e-12)) < 1e-5);
}

TEST_CASE("G agrees with a direct Laplace integral") {
  boost::math::quadrature::tanh_sinh<double> ts;
  for (double x : {0.5, 1.0, 2.0, 5.0, 20.0}) {
    const double direct = ts.integrate(
        [x](double s) { return std::exp(-x * s) * infwell_gamma(s); }, 0.0,
        std::numeric_limits<double>::infinity());
    CAPTURE(x);
    CHECK(infwell_laplace_g(x) == doctest::Approx(direct).epsilon(1e-7));
  }
}

TEST_CASE("infinite-well eigenfunction parity and support") {
  for (int n = 1; n <= 4; ++n) {
    double peak = 0.0;
    for (double x = -1.0; x <= 1.0; x += 0.01) peak = std::max(peak, std::abs(infwell_psi(n, x)));
    CHECK(peak > 0.5);
    CHECK(std::abs(infwell_psi(n, 1.5)) < 1e-3 * peak);
    CHECK(std::abs(infwell_psi(n, -1.5)) < 1e-3 * peak);
    const double sign = n % 2 == 1 ? 1.0 : -1.0;
    for (double x : {0.1, 0.45, 0.8}) {
      CHECK(infwell_psi(n, -x) == doctest::Approx(sign * infwell_psi(n, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("detuning model") {
  CHECK(detuning(50, 100) == doctest::Approx(0.0064).epsilon(0.01));
  CHECK(std::round(detuning(50, 100) * 1e4) == 64);
  CHECK(std::round(detuning(100, 200) * 1e4) == 32);
  CHECK(std::round(detuning(200, 500) * 1e4) == 19);
  CHECK(std::round(detuning(500, std::numeric_limits<double>::infinity()) * 1e4) == 13);
  CHECK(detuning(70, 70) == 0.0);
  CHECK(detuning(30, 90) == -detuning(90, 30));
  CHECK_THROWS(detuning(0, 1));
}

TEST_CASE("tail exponent fit") {
  const Grid grid(50.0, 0.01);
  const auto power = GridFunction::sample(grid, [](double x) { return x == 0 ? 0 : std::pow(std::abs(x), -4); });
  CHECK(tail_exponent_fit(power, 10.0, 50.0) == doctest::Approx(4.0).epsilon(1e-3));
  const auto expo = GridFunction::sample(grid, [](double x) { return std::exp(-std::abs(x)); });
  CHECK(tail_exponent_fit(expo, 10.0, 20.0) >= 4.0);
  CHECK_THROWS_AS(tail_exponent_fit(GridFunction::zeros(grid), 10.0, 20.0), std::domain_error);
  CHECK_THROWS_AS(tail_exponent_fit(power, 0.5, 20.0), std::invalid_argument);
  CHECK_THROWS_AS(tail_exponent_fit(power, 10.0, 60.0), std::invalid_argument);
}
