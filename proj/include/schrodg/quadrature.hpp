#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace schrodg {

/// Gauss-Legendre rule on the reference interval (-1, 1).
struct QuadratureRule
{
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

inline constexpr std::size_t kMaxQuadraturePoints = 64;

/// n-point Gauss-Legendre rule, 1 <= n <= 64. Exact for degree <= 2n - 1.
const QuadratureRule& gauss_legendre(std::size_t n);

/// Rule mapped affinely onto (lo, hi); weights absorb the Jacobian.
QuadratureRule map_to_interval(const QuadratureRule& rule, double lo, double hi);

std::complex<double> integrate_interval(const std::function<std::complex<double>(double)>& f,
                                        double lo, double hi, std::size_t n);

/// Tensor-product rule on (x_lo, x_hi) x (t_lo, t_hi) with n points per direction.
std::complex<double> integrate_rectangle(
    const std::function<std::complex<double>(double, double)>& f, double x_lo, double x_hi,
    double t_lo, double t_hi, std::size_t n);

}  // namespace schrodg
