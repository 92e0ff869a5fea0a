#include "schrodg/quadrature.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace schrodg {

namespace {

// Newton iteration on P_n started from the Chebyshev-like guess.
QuadratureRule compute_gauss_legendre(std::size_t n)
{
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i)
    {
      double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75)
                          / (static_cast<double>(n) + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter)
        {
          double p0 = 1.0, p1 = x;
          for (std::size_t k = 2; k <= n; ++k)
            {
              const double kk = static_cast<double>(k);
              const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
              p0 = p1;
              p1 = p2;
            }
          dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
          const double dx = p1 / dp;
          x -= dx;
          if (std::abs(dx) < 1e-16)
            break;
        }
      // Recompute the derivative at the converged node.
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k)
        {
          const double kk = static_cast<double>(k);
          const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
          p0 = p1;
          p1 = p2;
        }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      rule.nodes[i] = -x;
      rule.nodes[n - 1 - i] = x;
      rule.weights[i] = w;
      rule.weights[n - 1 - i] = w;
    }
  if (n % 2 == 1)
    rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(std::size_t n)
{
  if (n < 1 || n > kMaxQuadraturePoints)
    throw std::invalid_argument("gauss_legendre: n must be in [1, 64], got "
                                + std::to_string(n));
  static std::array<std::unique_ptr<QuadratureRule>, kMaxQuadraturePoints + 1> cache;
  static std::mutex mutex;
  std::lock_guard lock(mutex);
  if (!cache[n])
    {
      if (n == 1)
        cache[n] = std::make_unique<QuadratureRule>(QuadratureRule{{0.0}, {2.0}});
      else
        cache[n] = std::make_unique<QuadratureRule>(compute_gauss_legendre(n));
    }
  return *cache[n];
}

QuadratureRule map_to_interval(const QuadratureRule& rule, double lo, double hi)
{
  QuadratureRule mapped;
  mapped.nodes.resize(rule.size());
  mapped.weights.resize(rule.size());
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (std::size_t q = 0; q < rule.size(); ++q)
    {
      mapped.nodes[q] = mid + half * rule.nodes[q];
      mapped.weights[q] = half * rule.weights[q];
    }
  return mapped;
}

std::complex<double> integrate_interval(const std::function<std::complex<double>(double)>& f,
                                        double lo, double hi, std::size_t n)
{
  const QuadratureRule rule = map_to_interval(gauss_legendre(n), lo, hi);
  std::complex<double> sum = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q)
    sum += rule.weights[q] * f(rule.nodes[q]);
  return sum;
}

std::complex<double> integrate_rectangle(
    const std::function<std::complex<double>(double, double)>& f, double x_lo, double x_hi,
    double t_lo, double t_hi, std::size_t n)
{
  const QuadratureRule rx = map_to_interval(gauss_legendre(n), x_lo, x_hi);
  const QuadratureRule rt = map_to_interval(gauss_legendre(n), t_lo, t_hi);
  std::complex<double> sum = 0.0;
  for (std::size_t a = 0; a < rx.size(); ++a)
    for (std::size_t b = 0; b < rt.size(); ++b)
      sum += rx.weights[a] * rt.weights[b] * f(rx.nodes[a], rt.nodes[b]);
  return sum;
}

}  // namespace schrodg
