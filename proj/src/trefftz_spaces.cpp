#include "schrodg/trefftz_spaces.hpp"

#include <cmath>
#include <stdexcept>

namespace schrodg {

namespace {

constexpr Complex kI{0.0, 1.0};

double ipow(double x, int n)
{
  double r = 1.0;
  for (int k = 0; k < n; ++k)
    r *= x;
  return r;
}

// Fills C_{j_x, j_t + 1} from C_{j_x + 2 e_l, j_t}, one time level at a time.
void propagate_trefftz(ScaledPolynomial& q, int p)
{
  const PolyFrame& f = q.frame();
  const std::size_t d = f.dim();
  const double ratio = f.h_t / (f.h_x * f.h_x);
  for (int jt = 0; jt < p; ++jt)
    for (const auto& jx : spatial_indices(d, 2 * p - 2 - 2 * jt))
      {
        Complex sum = 0.0;
        for (std::size_t l = 0; l < d; ++l)
          {
            MultiIndex src{jx, jt};
            src.jx[l] += 2;
            sum += static_cast<double>((jx[l] + 1) * (jx[l] + 2)) * q.coefficient(src);
          }
        if (sum != Complex{0.0, 0.0})
          q.set({jx, jt + 1}, kI * ratio / (2.0 * (jt + 1)) * sum);
      }
}

}  // namespace

int SpaceKind::polynomial_degree() const
{
  switch (family)
    {
    case SpaceFamily::TrefftzPoly: return 2 * p;
    case SpaceFamily::QuasiTrefftz:
    case SpaceFamily::FullPoly: return p;
    case SpaceFamily::PlaneWave: return 0;
    }
  return 0;
}

std::size_t SpaceKind::local_dim() const
{
  const auto pp = static_cast<std::size_t>(p);
  switch (family)
    {
    case SpaceFamily::TrefftzPoly:
    case SpaceFamily::QuasiTrefftz:
    case SpaceFamily::PlaneWave: return 2 * pp + 1;
    case SpaceFamily::FullPoly: return (pp + 1) * (pp + 2) / 2;
    }
  return 0;
}

void SpaceKind::validate() const
{
  if (p < 0)
    throw std::invalid_argument("SpaceKind: negative degree");
  if ((family == SpaceFamily::QuasiTrefftz || family == SpaceFamily::PlaneWave) && p < 1)
    throw std::invalid_argument("SpaceKind: " + to_string(family) + " requires p >= 1");
}

std::string to_string(SpaceFamily family)
{
  switch (family)
    {
    case SpaceFamily::TrefftzPoly: return "trefftz";
    case SpaceFamily::QuasiTrefftz: return "quasi-trefftz";
    case SpaceFamily::FullPoly: return "full";
    case SpaceFamily::PlaneWave: return "planewave";
    }
  return "unknown";
}

SpaceFamily space_family_from_string(const std::string& name)
{
  for (SpaceFamily f : {SpaceFamily::TrefftzPoly, SpaceFamily::QuasiTrefftz,
                        SpaceFamily::FullPoly, SpaceFamily::PlaneWave})
    if (to_string(f) == name)
      return f;
  throw std::invalid_argument("unknown space '" + name + "'");
}

ElementBasis trefftz_basis(std::size_t d, int p, const ElementGeometry& geometry,
                           SeedChoice seed)
{
  if (d < 1)
    throw std::invalid_argument("trefftz_basis: d must be at least 1");
  if (p < 0)
    throw std::invalid_argument("trefftz_basis: negative degree");
  if (geometry.center_x.size() != d)
    throw std::invalid_argument("trefftz_basis: geometry dimension mismatch");

  ElementBasis basis;
  basis.kind = SpaceKind::trefftz(p, seed);
  const PolyFrame frame = geometry.frame();
  for (const auto& jx : spatial_indices(d, 2 * p))
    {
      ScaledPolynomial q(frame, 2 * p);
      double scale = 1.0;
      // Seed B: the J-th seed (J = e + 1) is (x - x_K)^e / h_x^floor(J/2),
      // i.e. h_x^floor(e/2) ((x - x_K)/h_x)^e.
      if (d == 1 && seed == SeedChoice::B)
        scale = ipow(geometry.h_x, jx[0] / 2);
      q.set({jx, 0}, scale);
      propagate_trefftz(q, p);
      basis.functions.emplace_back(std::move(q));
    }
  return basis;
}

ScaledPolynomial trefftz_from_trace(const ScaledPolynomial& trace, int p)
{
  ScaledPolynomial q(trace.frame(), 2 * p);
  for (const auto& [j, c] : trace.coefficients())
    if (j.jt == 0)
      q.set(j, c);
  propagate_trefftz(q, p);
  return q;
}

ElementBasis quasi_trefftz_basis(int p, const ElementGeometry& geometry)
{
  if (p < 1)
    throw std::invalid_argument("quasi_trefftz_basis: p must be at least 1");
  if (geometry.center_x.size() != 1)
    throw std::invalid_argument("quasi_trefftz_basis: only d = 1 is supported");

  // Free coefficients: (j_x, 0) for j_x <= p, then (p - j_t, j_t) for j_t >= 1.
  std::vector<MultiIndex> free;
  for (int jx = 0; jx <= p; ++jx)
    free.push_back({{jx}, 0});
  for (int jt = 1; jt <= p; ++jt)
    free.push_back({{p - jt}, jt});

  const PolyFrame frame = geometry.frame();
  const double ratio = geometry.h_t / (geometry.h_x * geometry.h_x);
  ElementBasis basis;
  basis.kind = SpaceKind::quasi_trefftz(p);
  for (const auto& j : free)
    {
      ScaledPolynomial q(frame, p);
      q.set(j, 1.0);
      // C_{jx, jt+1} = i h_t (jx+1)(jx+2) / (2 (jt+1) h_x^2) C_{jx+2, jt}, jx + jt <= p - 2.
      for (int jt = 0; jt <= p - 2; ++jt)
        for (int jx = 0; jx + jt <= p - 2; ++jx)
          {
            const Complex src = q.coefficient({{jx + 2}, jt});
            if (src != Complex{0.0, 0.0})
              q.set({{jx}, jt + 1},
                    kI * ratio * static_cast<double>((jx + 1) * (jx + 2)) / (2.0 * (jt + 1))
                        * src);
          }
      basis.functions.emplace_back(std::move(q));
    }
  return basis;
}

ElementBasis full_poly_basis(int p, const ElementGeometry& geometry)
{
  if (p < 0)
    throw std::invalid_argument("full_poly_basis: negative degree");
  if (geometry.center_x.size() != 1)
    throw std::invalid_argument("full_poly_basis: only d = 1 is supported");
  ElementBasis basis;
  basis.kind = SpaceKind::full(p);
  const PolyFrame frame = geometry.frame();
  for (const auto& j : multi_indices(1, p))
    {
      ScaledPolynomial q(frame, p);
      q.set(j, 1.0);
      basis.functions.emplace_back(std::move(q));
    }
  return basis;
}

ElementBasis plane_wave_basis(int p, const ElementGeometry& geometry)
{
  if (p < 1)
    throw std::invalid_argument("plane_wave_basis: p must be at least 1");
  if (geometry.center_x.size() != 1)
    throw std::invalid_argument("plane_wave_basis: only d = 1 is supported");
  ElementBasis basis;
  basis.kind = SpaceKind::plane_wave(p);
  for (int l = 1; l <= 2 * p + 1; ++l)
    basis.functions.emplace_back(PlaneWave{static_cast<double>(-2 * p + 2 * (l - 1))});
  return basis;
}

ElementBasis make_basis(const SpaceKind& kind, const ElementGeometry& geometry)
{
  kind.validate();
  switch (kind.family)
    {
    case SpaceFamily::TrefftzPoly: return trefftz_basis(1, kind.p, geometry, kind.seed);
    case SpaceFamily::QuasiTrefftz: return quasi_trefftz_basis(kind.p, geometry);
    case SpaceFamily::FullPoly: return full_poly_basis(kind.p, geometry);
    case SpaceFamily::PlaneWave: return plane_wave_basis(kind.p, geometry);
    }
  throw std::invalid_argument("make_basis: unknown space family");
}

namespace {

Complex eval_wave(const PlaneWave& w, double x, double t, int dx, int dt)
{
  if (dx < 0 || dt < 0)
    throw std::invalid_argument("eval_basis: negative derivative order");
  if (dx + dt > 2)
    throw std::invalid_argument("eval_basis: plane waves support derivative order <= 2");
  const Complex phase = std::exp(kI * (w.k * x - 0.5 * w.k * w.k * t));
  Complex factor = 1.0;
  for (int m = 0; m < dx; ++m)
    factor *= kI * w.k;
  for (int m = 0; m < dt; ++m)
    factor *= -0.5 * kI * w.k * w.k;
  return factor * phase;
}

}  // namespace

Complex eval_basis(const BasisFunction& b, std::span<const double> x, double t,
                   const MultiIndex& deriv)
{
  if (const auto* poly = std::get_if<ScaledPolynomial>(&b))
    return eval_poly(*poly, x, t, deriv);
  if (x.size() != 1 || deriv.dim() != 1)
    throw std::invalid_argument("eval_basis: plane waves are one-dimensional");
  return eval_wave(std::get<PlaneWave>(b), x[0], t, deriv.jx[0], deriv.jt);
}

Complex eval_basis(const BasisFunction& b, double x, double t, int dx, int dt)
{
  if (const auto* poly = std::get_if<ScaledPolynomial>(&b))
    return eval_poly(*poly, x, t, dx, dt);
  return eval_wave(std::get<PlaneWave>(b), x, t, dx, dt);
}

nlohmann::json to_json(const ElementBasis& basis)
{
  nlohmann::json functions = nlohmann::json::array();
  for (const auto& b : basis.functions)
    {
      if (const auto* poly = std::get_if<ScaledPolynomial>(&b))
        functions.push_back({{"type", "polynomial"}, {"polynomial", to_json(*poly)}});
      else
        functions.push_back({{"type", "plane_wave"}, {"k", std::get<PlaneWave>(b).k}});
    }
  return {
      {"element_id", basis.element_id},
      {"space", to_string(basis.kind.family)},
      {"p", basis.kind.p},
      {"seed", basis.kind.seed == SeedChoice::A ? "a" : "b"},
      {"dim", basis.dim()},
      {"functions", functions},
  };
}

}  // namespace schrodg
