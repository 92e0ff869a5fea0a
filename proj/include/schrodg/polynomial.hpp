#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include <json.hpp>

namespace schrodg {

/// Space-time multi-index j = (j_x, j_t).
struct MultiIndex
{
  std::vector<int> jx;
  int jt = 0;

  MultiIndex() = default;
  MultiIndex(std::vector<int> spatial, int temporal) : jx(std::move(spatial)), jt(temporal) {}

  static MultiIndex zero(std::size_t d) { return {std::vector<int>(d, 0), 0}; }

  std::size_t dim() const { return jx.size(); }
  int spatial_order() const;
  int order() const { return spatial_order() + jt; }
  bool nonnegative() const;

  /// j_x! j_t!
  double factorial() const;

  auto operator<=>(const MultiIndex&) const = default;
};

/// All multi-indices in d space dimensions with |j| <= max_order, graded
/// by total order.
std::vector<MultiIndex> multi_indices(std::size_t d, int max_order);

/// Spatial multi-indices with |j_x| <= max_order, graded, and within a
/// degree in descending lexicographic order (x1^2, x1 x2, x2^2, ...).
std::vector<std::vector<int>> spatial_indices(std::size_t d, int max_order);

using Complex = std::complex<double>;

/// Centre and scales of a scaled monomial expansion.
struct PolyFrame
{
  std::vector<double> center_x;
  double center_t = 0.0;
  double h_x = 1.0;
  double h_t = 1.0;

  std::size_t dim() const { return center_x.size(); }
  bool operator==(const PolyFrame&) const = default;
};

/// Complex polynomial sum_j C_j ((x - z)/h_x)^{j_x} ((t - s)/h_t)^{j_t}.
///
/// Coefficients live in a sparse map with lexicographic key order so that
/// iteration (and anything derived from it) is deterministic.
class ScaledPolynomial
{
public:
  ScaledPolynomial(PolyFrame frame, int degree_bound);

  const PolyFrame& frame() const { return frame_; }
  std::size_t dim() const { return frame_.dim(); }
  int degree_bound() const { return degree_bound_; }
  const std::map<MultiIndex, Complex>& coefficients() const { return coeffs_; }

  Complex coefficient(const MultiIndex& j) const;
  void set(const MultiIndex& j, Complex value);
  void add(const MultiIndex& j, Complex value);

  double max_abs_coefficient() const;

  /// Same coefficients about a different centre (same scales).
  ScaledPolynomial recentered(std::span<const double> center_x, double center_t) const;

  ScaledPolynomial& operator+=(const ScaledPolynomial& other);
  ScaledPolynomial& operator*=(Complex c);

private:
  void check_index(const MultiIndex& j) const;

  PolyFrame frame_;
  int degree_bound_;
  std::map<MultiIndex, Complex> coeffs_;
};

ScaledPolynomial operator+(ScaledPolynomial a, const ScaledPolynomial& b);
ScaledPolynomial operator*(Complex c, ScaledPolynomial p);

/// D^deriv p at (x, t). Exact from the coefficients.
Complex eval_poly(const ScaledPolynomial& p, std::span<const double> x, double t,
                  const MultiIndex& deriv);

/// One space dimension shortcut: d^dx/dx^dx d^dt/dt^dt p at (x, t).
Complex eval_poly(const ScaledPolynomial& p, double x, double t, int dx = 0, int dt = 0);

/// Coefficients of i dp/dt + 1/2 Laplacian_x p.
ScaledPolynomial apply_schrodinger(const ScaledPolynomial& p);

/// Exact derivative source: (j, x, t) -> D^j phi(x, t).
using DerivativeOracle = std::function<Complex(const MultiIndex&, std::span<const double>, double)>;

/// Taylor polynomial of order m (degree m - 1) in the given frame.
ScaledPolynomial taylor_poly(const DerivativeOracle& oracle, int order, const PolyFrame& frame);

/// Extended Taylor polynomial of degree 2p: the order-(p+1) Taylor polynomial
/// plus the terms with 2 j_t + |j_x| <= 2p and j_t + |j_x| >= p + 1.
ScaledPolynomial extended_taylor_poly(const DerivativeOracle& oracle, int p,
                                      const PolyFrame& frame);

nlohmann::json to_json(const ScaledPolynomial& p);
ScaledPolynomial polynomial_from_json(const nlohmann::json& j);

}  // namespace schrodg
