#include <cmath>
#include <sstream>

#include "cauchy/grid.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cauchy;

TEST_CASE("grid nodes are node-centred and mirror-symmetric") {
  const Grid g(50.0, 0.001);
  CHECK(g.size() == 100001);
  CHECK(g.node(0) == -50.0);
  CHECK(g.node(g.size() - 1) == 50.0);
  CHECK(g.node(50000) == 0.0);
  for (std::size_t j = 0; j < g.size(); j += 997) CHECK(g.node(j) == -g.node(g.size() - 1 - j));
  CHECK(g.index_of(1.0) == std::optional<std::size_t>(51000));
  CHECK(g.index_of(1.0005) == std::nullopt);
  CHECK(g.index_of(51.0) == std::nullopt);
  CHECK(g.nearest_index(1.0004) == 51000);
  CHECK(g.contains(50.0));
  CHECK_FALSE(g.contains(50.01));
}

TEST_CASE("grid rejects spacings that do not tile [-a, a]") {
  CHECK_THROWS_AS(Grid(1.0, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(Grid(1.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(Grid(-1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(Grid(1.0, 0.0), std::invalid_argument);
  CHECK_NOTHROW(Grid(1.0, 1.0));
}

TEST_CASE("grid functions reject non-finite samples and wrong sizes") {
  const Grid g(1.0, 0.5);
  CHECK_THROWS_AS(GridFunction(g, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(GridFunction(g, {0, 1, NAN, 0, 0}), std::domain_error);
  CHECK_THROWS_AS(GridFunction(g, {0, 1, INFINITY, 0, 0}), std::domain_error);
  const std::vector<double> v{0, 1, 2, 1, 0};
  CHECK(first_non_finite(v) == std::nullopt);
  const std::vector<double> w{0, 1, NAN};
  CHECK(first_non_finite(w) == std::optional<std::size_t>(2));
}

TEST_CASE("trapezoid inner product: exact for constants, bilinear, symmetric, Cauchy-Schwarz") {
  const Grid g(3.0, 0.01);
  const auto one = GridFunction::sample(g, [](double) { return 1.0; });
  CHECK(inner_product(one, one) == doctest::Approx(6.0).epsilon(1e-13));
  for (unsigned seed = 1; seed <= 5; ++seed) {
    const auto f = oracle::random_function(g, seed);
    const auto h = oracle::random_function(g, seed + 100);
    const auto k = oracle::random_function(g, seed + 200);
    CHECK(inner_product(f, h) == inner_product(h, f));
    CHECK(inner_product(axpy(f, 2.5, h), k) ==
          doctest::Approx(inner_product(f, k) + 2.5 * inner_product(h, k)).epsilon(1e-12));
    CHECK(std::abs(inner_product(f, h)) <= norm(f) * norm(h));
  }
  CHECK_THROWS_AS(inner_product(one, GridFunction::zeros(Grid(3.0, 0.02))), GridMismatch);
}

TEST_CASE("normalize and orient") {
  const Grid g(2.0, 0.1);
  const auto f = GridFunction::sample(g, [](double x) { return -std::exp(-x * x); });
  const auto n = normalize(f);
  CHECK(norm(n) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(n[20] > 0.0);
  CHECK(normalize(f, SignConvention::Preserve)[20] < 0.0);
  CHECK(orient(f)[20] == -f[20]);
  CHECK_THROWS_WITH_AS(normalize(GridFunction::zeros(g)), "cannot normalize null vector",
                       std::domain_error);
}

TEST_CASE("linear interpolation and zero extension") {
  const Grid g(1.0, 0.5);
  const GridFunction f(g, {1, 2, 3, 4, 5});
  CHECK(f.at(-1.0) == 1.0);
  CHECK(f.at(0.25) == doctest::Approx(3.5));
  CHECK(f.at(1.0) == 5.0);
  CHECK(f.at(1.5) == 0.0);
  CHECK(f.at(-7.0) == 0.0);
}

TEST_CASE("CSV round trip is exact") {
  const Grid g(2.0, 0.1);
  const auto f = GridFunction::sample(g, [](double x) { return std::sin(3.0 * x) / 7.0; });
  std::stringstream s;
  write_csv(s, f);
  CHECK(s.str().rfind("x,value\n", 0) == 0);
  const GridFunction back = read_csv(s);
  CHECK(back.grid() == g);
  for (std::size_t j = 0; j < f.size(); ++j) CHECK(back[j] == f[j]);
  std::stringstream bad("x,wrong\n0,1\n");
  CHECK_THROWS_AS(read_csv(bad), std::invalid_argument);
}

TEST_CASE("restrict and embed across node-aligned grids") {
  const Grid small(1.0, 0.1), large(2.0, 0.1);
  const auto f = GridFunction::sample(small, [](double x) { return 1.0 - x * x; });
  const auto up = restrict_or_embed(f, large);
  CHECK(up.size() == large.size());
  CHECK(up.at(1.5) == 0.0);
  CHECK(up[large.nearest_index(0.3)] == f[small.nearest_index(0.3)]);
  const auto down = restrict_or_embed(up, small);
  for (std::size_t j = 0; j < f.size(); ++j) CHECK(down[j] == f[j]);
  CHECK_THROWS_AS(restrict_or_embed(f, Grid(2.0, 0.05)), GridMismatch);
}
