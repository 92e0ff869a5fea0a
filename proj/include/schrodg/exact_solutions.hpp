#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "schrodg/polynomial.hpp"

namespace schrodg {

/// psi(x, t) = exp(kappa . x + i |kappa|^2 t / 2), an exact solution in any
/// space dimension. The one-dimensional case is the smooth test problem.
class ExpSolution
{
public:
  explicit ExpSolution(double kappa) : kappa_{kappa} {}
  explicit ExpSolution(std::vector<double> kappa);

  std::size_t dim() const { return kappa_.size(); }
  const std::vector<double>& kappa() const { return kappa_; }

  /// D^{(j_x, j_t)} psi = kappa^{j_x} (i |kappa|^2 / 2)^{j_t} psi.
  Complex derivative(const MultiIndex& j, std::span<const double> x, double t) const;

  Complex value(double x, double t) const;
  Complex dx(double x, double t) const;
  Complex dt(double x, double t) const;
  Complex dxx(double x, double t) const;

  DerivativeOracle oracle() const;

private:
  std::vector<double> kappa_;
};

/// Free particle in the unit well started from sqrt(30) x (1 - x):
///   sqrt(30) (2/pi)^3 sum_{m < n_trunc} (2m+1)^{-3} sin((2m+1) pi x)
///                                       exp(-i (2m+1)^2 pi^2 t / 2).
class SquareWellSeries
{
public:
  static constexpr std::size_t kDefaultModes = 250;

  explicit SquareWellSeries(std::size_t n_trunc = kDefaultModes);

  std::size_t modes() const { return n_trunc_; }

  Complex value(double x, double t) const;
  Complex dx(double x, double t) const;

  /// Initial datum sqrt(30) x (1 - x) in closed form.
  static double initial_value(double x);

private:
  std::size_t n_trunc_;
};

}  // namespace schrodg
