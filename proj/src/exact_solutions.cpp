#include "schrodg/exact_solutions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace schrodg {

namespace {

constexpr Complex kI{0.0, 1.0};

}  // namespace

ExpSolution::ExpSolution(std::vector<double> kappa) : kappa_(std::move(kappa))
{
  if (kappa_.empty())
    throw std::invalid_argument("ExpSolution: empty wave vector");
}

Complex ExpSolution::derivative(const MultiIndex& j, std::span<const double> x, double t) const
{
  if (j.dim() != dim() || x.size() != dim())
    throw std::invalid_argument("ExpSolution: dimension mismatch");
  double k2 = 0.0;
  double exponent = 0.0;
  Complex factor = 1.0;
  for (std::size_t l = 0; l < dim(); ++l)
    {
      k2 += kappa_[l] * kappa_[l];
      exponent += kappa_[l] * x[l];
      for (int m = 0; m < j.jx[l]; ++m)
        factor *= kappa_[l];
    }
  const Complex time_rate = 0.5 * kI * k2;
  for (int m = 0; m < j.jt; ++m)
    factor *= time_rate;
  return factor * std::exp(exponent + time_rate * t);
}

Complex ExpSolution::value(double x, double t) const
{
  const double k = kappa_.at(0);
  return std::exp(k * x + 0.5 * kI * k * k * t);
}

Complex ExpSolution::dx(double x, double t) const
{
  return kappa_.at(0) * value(x, t);
}

Complex ExpSolution::dt(double x, double t) const
{
  const double k = kappa_.at(0);
  return 0.5 * kI * k * k * value(x, t);
}

Complex ExpSolution::dxx(double x, double t) const
{
  const double k = kappa_.at(0);
  return k * k * value(x, t);
}

DerivativeOracle ExpSolution::oracle() const
{
  return [self = *this](const MultiIndex& j, std::span<const double> x, double t) {
    return self.derivative(j, x, t);
  };
}

SquareWellSeries::SquareWellSeries(std::size_t n_trunc) : n_trunc_(n_trunc)
{
  if (n_trunc_ == 0)
    throw std::invalid_argument("SquareWellSeries: need at least one mode");
}

Complex SquareWellSeries::value(double x, double t) const
{
  using std::numbers::pi;
  const double amplitude = std::sqrt(30.0) * std::pow(2.0 / pi, 3);
  Complex sum = 0.0;
  for (std::size_t m = 0; m < n_trunc_; ++m)
    {
      const double n = 2.0 * static_cast<double>(m) + 1.0;
      sum += std::sin(n * pi * x) / (n * n * n) * std::exp(-0.5 * kI * n * n * pi * pi * t);
    }
  return amplitude * sum;
}

Complex SquareWellSeries::dx(double x, double t) const
{
  using std::numbers::pi;
  const double amplitude = std::sqrt(30.0) * std::pow(2.0 / pi, 3);
  Complex sum = 0.0;
  for (std::size_t m = 0; m < n_trunc_; ++m)
    {
      const double n = 2.0 * static_cast<double>(m) + 1.0;
      sum += pi * std::cos(n * pi * x) / (n * n) * std::exp(-0.5 * kI * n * n * pi * pi * t);
    }
  return amplitude * sum;
}

double SquareWellSeries::initial_value(double x)
{
  return std::sqrt(30.0) * x * (1.0 - x);
}

}  // namespace schrodg
