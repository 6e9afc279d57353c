#include "flatribbon/numerics.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace flatribbon;

namespace {

std::vector<double> sample(const std::function<double(double)>& f, const std::vector<double>& grid) {
  std::vector<double> out;
  for (double t : grid) out.push_back(f(t));
  return out;
}

}  // namespace

TEST_CASE("uniform grid hits both ends") {
  const auto g = uniform_grid(-1.0, 3.0, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == -1.0);
  CHECK(g.back() == 3.0);
  CHECK(g[2] == doctest::Approx(1.0));
}

TEST_CASE("simpson integrates cubics exactly for even and odd interval counts") {
  auto cubic = [](double x) { return 2.0 * x * x * x - x * x + 3.0; };
  const double exact = 0.5 * 16.0 - 8.0 / 3.0 + 6.0;
  for (std::size_t nodes : {3, 4, 5, 6, 11, 12}) {
    const auto g = uniform_grid(0.0, 2.0, nodes);
    CHECK(simpson(sample(cubic, g), g[1] - g[0]) == doctest::Approx(exact).epsilon(1e-14));
  }
}

TEST_CASE("simpson converges at fourth order on a smooth integrand") {
  auto f = [](double x) { return std::exp(std::sin(x)); };
  const double exact = oracle::integrate(f, 0.0, 3.0, 1e-14);
  auto err = [&](std::size_t n) {
    const auto g = uniform_grid(0.0, 3.0, n + 1);
    return std::abs(simpson(sample(f, g), g[1] - g[0]) - exact);
  };
  CHECK(err(40) / err(80) > 14.0);
}

TEST_CASE("cumulative simpson matches the running integral at every node") {
  auto f = [](double x) { return std::cos(3.0 * x) + x; };
  const auto g = uniform_grid(0.0, 2.0, 201);
  const auto c = cumulative_simpson(sample(f, g), g[1] - g[0]);
  for (std::size_t i = 0; i < g.size(); i += 17)
    CHECK(c[i] == doctest::Approx(std::sin(3.0 * g[i]) / 3.0 + 0.5 * g[i] * g[i]).epsilon(1e-7));
  CHECK(c.front() == 0.0);
}

TEST_CASE("grid derivative is fourth order, including the ends") {
  auto f = [](double x) { return std::sin(2.0 * x); };
  auto err = [&](std::size_t n) {
    const auto g = uniform_grid(0.0, 2.0, n);
    const auto d = grid_derivative(sample(f, g), g[1] - g[0]);
    double e = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) e = std::max(e, std::abs(d[i] - 2.0 * std::cos(2.0 * g[i])));
    return e;
  };
  CHECK(err(51) < 5e-5);
  CHECK(err(51) / err(101) > 12.0);
}

TEST_CASE("finite differences of orders one to three, interior and boundary") {
  auto f = [](double x) { return std::exp(0.5 * x); };
  for (double t : {0.0, 0.001, 1.0, 2.0}) {
    CHECK(finite_difference(f, t, 1e-3, 0.0, 2.0, 1) == doctest::Approx(0.5 * f(t)).epsilon(1e-10));
  }
  CHECK(finite_difference(f, 1.0, 1e-2, 0.0, 2.0, 2) == doctest::Approx(0.25 * f(1.0)).epsilon(1e-8));
  CHECK(finite_difference(f, 1.0, 1e-2, 0.0, 2.0, 3) == doctest::Approx(0.125 * f(1.0)).epsilon(1e-5));
}

TEST_CASE("hermite table reproduces cubics and their derivatives") {
  auto f = [](double x) { return x * x * x - 2.0 * x; };
  auto df = [](double x) { return 3.0 * x * x - 2.0; };
  std::vector<double> nodes = {0.0, 0.3, 1.0, 1.1, 2.0};
  HermiteTable table(nodes, sample(f, nodes), sample(df, nodes));
  for (double t : {0.0, 0.17, 0.65, 1.05, 1.7, 2.0}) {
    CHECK(table.value(t) == doctest::Approx(f(t)).epsilon(1e-13));
    CHECK(table.derivative(t) == doctest::Approx(df(t)).epsilon(1e-12));
  }
  const auto g = uniform_grid(0.0, 2.0, 9);
  HermiteTable uniform(g, sample(f, g), sample(df, g));
  CHECK(uniform.value(1.2345) == doctest::Approx(f(1.2345)).epsilon(1e-13));
}

TEST_CASE("gauss-legendre five points is exact up to degree nine") {
  auto p = [](double x) { return std::pow(x, 9) - 3.0 * std::pow(x, 4) + 1.0; };
  CHECK(gauss_legendre5(p, -1.0, 2.0) ==
        doctest::Approx((std::pow(2.0, 10) - 1.0) / 10.0 - 3.0 * (32.0 + 1.0) / 5.0 + 3.0).epsilon(1e-13));
}

TEST_CASE("golden section locates an interior maximum") {
  const double x = golden_section_argmax([](double q) { return std::cos(2.0 * (q - 0.4)); }, 0.0, 1.0);
  CHECK(x == doctest::Approx(0.4).epsilon(1e-7));
}
