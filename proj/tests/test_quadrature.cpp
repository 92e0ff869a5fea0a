#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "schrodg/quadrature.hpp"

using namespace schrodg;
using Complex = std::complex<double>;

TEST_CASE("small Gauss rules")
{
  const auto& r1 = gauss_legendre(1);
  REQUIRE(r1.size() == 1);
  CHECK(r1.nodes[0] == doctest::Approx(0.0));
  CHECK(r1.weights[0] == doctest::Approx(2.0));

  const auto& r2 = gauss_legendre(2);
  REQUIRE(r2.size() == 2);
  const double a = 1.0 / std::sqrt(3.0);
  CHECK(std::abs(std::abs(r2.nodes[0]) - a) < 1e-15);
  CHECK(std::abs(r2.nodes[0] + r2.nodes[1]) < 1e-15);
  CHECK(r2.weights[0] == doctest::Approx(1.0));
  CHECK(r2.weights[1] == doctest::Approx(1.0));
}

TEST_CASE("rule sizes out of range")
{
  CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_legendre(kMaxQuadraturePoints + 1), std::invalid_argument);
  CHECK_NOTHROW(gauss_legendre(kMaxQuadraturePoints));
}

TEST_CASE("weights, symmetry and node range")
{
  for (std::size_t n = 1; n <= kMaxQuadraturePoints; ++n)
    {
      const auto& r = gauss_legendre(n);
      const double sum = std::accumulate(r.weights.begin(), r.weights.end(), 0.0);
      CHECK(std::abs(sum - 2.0) < 1e-13);
      for (std::size_t i = 0; i < n; ++i)
        {
          CHECK(r.weights[i] > 0.0);
          CHECK(std::abs(r.nodes[i]) < 1.0);
          CHECK(std::abs(r.nodes[i] + r.nodes[n - 1 - i]) < 1e-14);
        }
    }
}

TEST_CASE("interval integration examples")
{
  CHECK(std::abs(integrate_interval([](double) { return Complex(1.0); }, 0.0, 0.3, 3) - 0.3)
        < 1e-15);
  const auto cube = integrate_interval([](double x) { return Complex(x * x * x); }, 0.0, 1.0, 2);
  CHECK(std::abs(cube - 0.25) < 1e-15);
  const auto sq = integrate_interval([](double x) { return Complex(x * x); }, 0.0, 1.0, 2);
  CHECK(std::abs(sq - 1.0 / 3.0) < 1e-15);
  const auto e5 = integrate_interval([](double x) { return Complex(std::exp(5 * x)); }, 0.0, 1.0, 20);
  CHECK(std::abs(e5 - (std::exp(5.0) - 1.0) / 5.0) < 1e-12);
}

TEST_CASE("exactness on random polynomials of degree 2n - 1")
{
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n = 1; n <= 16; ++n)
    {
      const std::size_t deg = 2 * n - 1;
      std::vector<Complex> c(deg + 1);
      for (auto& z : c)
        z = {u(rng), u(rng)};
      const double lo = -0.3, hi = 1.7;
      auto f = [&](double x) {
        Complex s = 0.0;
        for (std::size_t k = deg + 1; k-- > 0;)
          s = s * x + c[k];
        return s;
      };
      Complex exact = 0.0;
      double scale = 0.0;
      for (std::size_t k = 0; k <= deg; ++k)
        {
          const double m = (std::pow(hi, k + 1) - std::pow(lo, k + 1)) / double(k + 1);
          exact += c[k] * m;
          scale += std::abs(c[k] * m);
        }
      CHECK(std::abs(integrate_interval(f, lo, hi, n) - exact) <= 1e-13 * scale);
    }
}

TEST_CASE("oversampled exponentials are converged at element scale")
{
  for (double kappa : {1.0, 5.0, 10.0})
    {
      auto f = [kappa](double x) { return Complex(std::exp(kappa * x)); };
      const Complex a = integrate_interval(f, 0.3, 0.4, 10);
      const Complex b = integrate_interval(f, 0.3, 0.4, 20);
      CHECK(std::abs(a - b) < 1e-12 * std::abs(b));
    }
}

TEST_CASE("rectangle rule")
{
  const auto v = integrate_rectangle([](double x, double t) { return Complex(x * x, t); }, 0.0,
                                     2.0, 0.0, 1.0, 3);
  CHECK(std::abs(v - Complex(8.0 / 3.0, 1.0)) < 1e-14);
  const auto mapped = map_to_interval(gauss_legendre(4), 2.0, 5.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < mapped.size(); ++i)
    {
      CHECK(mapped.nodes[i] > 2.0);
      CHECK(mapped.nodes[i] < 5.0);
      sum += mapped.weights[i];
    }
  CHECK(sum == doctest::Approx(3.0));
}
