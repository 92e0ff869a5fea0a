#include <doctest.h>

#include <numbers>
#include <random>

#include "schrodg/exact_solutions.hpp"
#include "schrodg/quadrature.hpp"

using namespace schrodg;

namespace {

const Complex I{0.0, 1.0};

double l2_on_unit(const std::function<Complex(double)>& f)
{
  // Composite Gauss on 50 cells; the series oscillates up to mode 499.
  double s = 0.0;
  const std::size_t cells = 200;
  for (std::size_t c = 0; c < cells; ++c)
    s += integrate_interval([&](double x) { return Complex(std::norm(f(x))); },
                            double(c) / cells, double(c + 1) / cells, 12)
             .real();
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("exponential solution derivatives")
{
  const double origin[1] = {0.0};
  const double one[1] = {1.0};
  CHECK(ExpSolution(5.0).derivative(MultiIndex({0}, 0), origin, 0.0) == Complex(1.0));
  CHECK(std::abs(ExpSolution(5.0).derivative(MultiIndex({0}, 0), one, 0.0) - std::exp(5.0))
        < 1e-12);
  CHECK(std::abs(ExpSolution(1.0).derivative(MultiIndex({0}, 1), origin, 0.0) - 0.5 * I)
        < 1e-15);
  CHECK(ExpSolution(0.0).derivative(MultiIndex({2}, 3), origin, 0.3) == Complex(0.0));
  CHECK(ExpSolution(0.0).value(0.7, 0.3) == Complex(1.0));

  const ExpSolution s(std::vector<double>{1.0, -2.0});
  const double x[2] = {0.3, 0.1};
  const Complex v = s.derivative(MultiIndex({0, 0}, 0), x, 0.2);
  CHECK(std::abs(v - std::exp(Complex(0.3 - 0.2, 2.5 * 0.2))) < 1e-14);
  CHECK(std::abs(s.derivative(MultiIndex({1, 2}, 1), x, 0.2) - 4.0 * 2.5 * I * v) < 1e-13);
}

TEST_CASE("exponential solution satisfies the equation")
{
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double k : {1.0, 5.0, -3.0})
    {
      const ExpSolution s(k);
      for (int n = 0; n < 20; ++n)
        {
          const double x = u(rng), t = u(rng);
          const Complex r = I * s.dt(x, t) + 0.5 * s.dxx(x, t);
          CHECK(std::abs(r) <= 1e-13 * std::abs(s.dxx(x, t)));
          CHECK(std::abs(s.dx(x, t) - k * s.value(x, t)) <= 1e-13 * std::abs(s.dx(x, t)));
        }
    }
}

TEST_CASE("square well series")
{
  const SquareWellSeries s;
  CHECK(s.modes() == 250);
  for (double t : {0.0, 0.03, 0.1})
    {
      CHECK(std::abs(s.value(0.0, t)) < 1e-15);
      CHECK(std::abs(s.value(1.0, t)) < 1e-12);
    }
  CHECK(std::abs(s.value(0.5, 0.0) - std::sqrt(30.0) / 4.0) < 1e-6);
  CHECK(SquareWellSeries::initial_value(0.5) == doctest::Approx(std::sqrt(30.0) / 4.0));

  const double err0 = l2_on_unit(
      [&](double x) { return s.value(x, 0.0) - SquareWellSeries::initial_value(x); });
  CHECK(err0 <= 1e-6);

  // Unitary evolution.
  const double m0 = l2_on_unit([&](double x) { return s.value(x, 0.0); });
  CHECK(m0 == doctest::Approx(1.0).epsilon(1e-6));
  for (double t : {0.05, 0.1})
    CHECK(std::abs(l2_on_unit([&](double x) { return s.value(x, t); }) - m0) <= 1e-8);
}

TEST_CASE("series modes solve the equation")
{
  // Each mode sin(n pi x) exp(-i n^2 pi^2 t / 2): i dt = n^2 pi^2 / 2 = -dxx / 2.
  const double pi = std::numbers::pi;
  for (int m = 0; m < 5; ++m)
    {
      const double n = 2 * m + 1;
      const double x = 0.31, t = 0.07;
      const Complex mode = std::sin(n * pi * x) * std::exp(-I * n * n * pi * pi * t / 2.0);
      const Complex idt = I * (-I * n * n * pi * pi / 2.0) * mode;
      const Complex half_dxx = -0.5 * n * n * pi * pi * mode;
      CHECK(std::abs(idt + half_dxx) < 1e-12);
    }
  // Derivative of the truncated series against a central difference of the series.
  const SquareWellSeries s(20);
  const double x = 0.3, t = 0.01, h = 1e-6;
  const Complex fd = (s.value(x + h, t) - s.value(x - h, t)) / (2 * h);
  CHECK(std::abs(s.dx(x, t) - fd) < 1e-6);
}
