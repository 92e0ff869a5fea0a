#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "schrodg/mesh.hpp"
#include "schrodg/polynomial.hpp"

namespace schrodg {

enum class SpaceFamily
{
  TrefftzPoly,
  QuasiTrefftz,
  FullPoly,
  PlaneWave
};

/// Spatial seed used to start the Trefftz recurrence in one dimension.
///  A: ((x - x_K)/h_x)^e
///  B: (x - x_K)^e / h_x^floor((e + 1)/2)
/// with e = 0, ..., 2p.
enum class SeedChoice
{
  A,
  B
};

struct SpaceKind
{
  SpaceFamily family = SpaceFamily::TrefftzPoly;
  int p = 1;
  SeedChoice seed = SeedChoice::B;

  static SpaceKind trefftz(int p, SeedChoice seed = SeedChoice::B)
  {
    return {SpaceFamily::TrefftzPoly, p, seed};
  }
  static SpaceKind quasi_trefftz(int p) { return {SpaceFamily::QuasiTrefftz, p, SeedChoice::B}; }
  static SpaceKind full(int p) { return {SpaceFamily::FullPoly, p, SeedChoice::B}; }
  static SpaceKind plane_wave(int p) { return {SpaceFamily::PlaneWave, p, SeedChoice::B}; }

  /// Whether every member satisfies the homogeneous equation exactly.
  bool is_trefftz() const
  {
    return family == SpaceFamily::TrefftzPoly || family == SpaceFamily::PlaneWave;
  }
  bool is_polynomial() const { return family != SpaceFamily::PlaneWave; }
  /// Polynomial degree of the members (0 for plane waves).
  int polynomial_degree() const;
  /// Local dimension in one space dimension.
  std::size_t local_dim() const;

  void validate() const;
  bool operator==(const SpaceKind&) const = default;
};

std::string to_string(SpaceFamily family);
SpaceFamily space_family_from_string(const std::string& name);

/// exp(i (k x - k^2 t / 2)), evaluated in global coordinates.
struct PlaneWave
{
  double k = 0.0;
};

using BasisFunction = std::variant<ScaledPolynomial, PlaneWave>;

/// Centre and sizes of an element, in d space dimensions.
struct ElementGeometry
{
  std::vector<double> center_x;
  double t_center = 0.0;
  double h_x = 1.0;
  double h_t = 1.0;

  static ElementGeometry of(const Element& k)
  {
    return {{k.x_center}, k.t_center, k.h_x, k.h_t};
  }
  static ElementGeometry unit(std::size_t d) { return {std::vector<double>(d, 0.0), 0.0, 1.0, 1.0}; }

  PolyFrame frame() const { return {center_x, t_center, h_x, h_t}; }
};

struct ElementBasis
{
  std::size_t element_id = 0;
  SpaceKind kind;
  std::vector<BasisFunction> functions;

  std::size_t dim() const { return functions.size(); }
};

/// Polynomial Trefftz basis of degree 2p: seed m_J at t = t_K, remaining
/// coefficients from the time recurrence. Dimension C(2p + d, d).
ElementBasis trefftz_basis(std::size_t d, int p, const ElementGeometry& geometry,
                           SeedChoice seed = SeedChoice::A);

/// Unique Trefftz polynomial of degree 2p whose t = t_K restriction has the
/// coefficients of `trace` (only j_t = 0 entries are read).
ScaledPolynomial trefftz_from_trace(const ScaledPolynomial& trace, int p);

/// Quasi-Trefftz basis of degree p (d = 1): D^j S q (x_K, t_K) = 0 for |j| <= p - 2.
ElementBasis quasi_trefftz_basis(int p, const ElementGeometry& geometry);

/// All scaled monomials of total degree <= p (d = 1).
ElementBasis full_poly_basis(int p, const ElementGeometry& geometry);

/// Pseudo-plane waves with k_l = -2p + 2(l - 1), l = 1, ..., 2p + 1.
ElementBasis plane_wave_basis(int p, const ElementGeometry& geometry);

/// Dispatch on the space family (d = 1).
ElementBasis make_basis(const SpaceKind& kind, const ElementGeometry& geometry);

/// D^deriv b at (x, t). Plane waves support total derivative order <= 2.
Complex eval_basis(const BasisFunction& b, std::span<const double> x, double t,
                   const MultiIndex& deriv);
Complex eval_basis(const BasisFunction& b, double x, double t, int dx = 0, int dt = 0);

nlohmann::json to_json(const ElementBasis& basis);

}  // namespace schrodg
