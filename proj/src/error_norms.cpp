#include "schrodg/error_norms.hpp"

#include <cmath>
#include <stdexcept>

#include "schrodg/quadrature.hpp"

namespace schrodg {

PiecewiseField global_field(std::function<Complex(double, double)> value,
                            std::function<Complex(double, double)> dx)
{
  return {
      [value = std::move(value)](std::size_t, double x, double t) { return value(x, t); },
      [dx = std::move(dx)](std::size_t, double x, double t) { return dx(x, t); },
  };
}

PiecewiseField constant_field(Complex c)
{
  return {[c](std::size_t, double, double) { return c; },
          [](std::size_t, double, double) { return Complex{0.0, 0.0}; }};
}

PiecewiseField difference(PiecewiseField a, PiecewiseField b)
{
  return {
      [va = a.value, vb = b.value](std::size_t e, double x, double t) {
        return va(e, x, t) - vb(e, x, t);
      },
      [da = a.dx, db = b.dx](std::size_t e, double x, double t) {
        return da(e, x, t) - db(e, x, t);
      },
  };
}

PiecewiseField scaled(Complex c, PiecewiseField a)
{
  return {
      [c, va = a.value](std::size_t e, double x, double t) { return c * va(e, x, t); },
      [c, da = a.dx](std::size_t e, double x, double t) { return c * da(e, x, t); },
  };
}

NormSquares norm_squares(const PiecewiseField& w, const Mesh& mesh, std::size_t n_points)
{
  NormSquares out;
  const QuadratureRule& ref = gauss_legendre(n_points);
  for (const Facet& f : mesh.facets())
    {
      const QuadratureRule rule = map_to_interval(ref, f.lo, f.hi);
      for (std::size_t q = 0; q < rule.size(); ++q)
        {
          const double x = f.is_horizontal() ? rule.nodes[q] : f.position;
          const double t = f.is_horizontal() ? f.position : rule.nodes[q];
          const double wq = rule.weights[q];
          switch (f.kind)
            {
            case FacetKind::SpaceLikeInterior:
              {
                const Complex lower = w.value(f.first, x, t);
                const Complex upper = w.value(f.second, x, t);
                out.dg += 0.5 * wq * std::norm(lower - upper);
                out.plus_extra += 0.5 * wq * std::norm(lower);
                break;
              }
            case FacetKind::Initial:
            case FacetKind::Final:
              out.dg += 0.5 * wq * std::norm(w.value(f.first, x, t));
              break;
            case FacetKind::TimeLikeInterior:
              {
                const Complex v1 = w.value(f.first, x, t);
                const Complex v2 = w.value(f.second, x, t);
                const Complex d1 = w.dx(f.first, x, t);
                const Complex d2 = w.dx(f.second, x, t);
                out.dg += 0.5 * wq * (f.alpha * std::norm(v1 - v2) + f.beta * std::norm(d1 - d2));
                out.plus_extra += 0.5 * wq
                                * (std::norm(0.5 * (d1 + d2)) / f.alpha
                                   + std::norm(0.5 * (v1 + v2)) / f.beta);
                break;
              }
            case FacetKind::Dirichlet:
              {
                const Complex v = w.value(f.first, x, t);
                const Complex dn = static_cast<double>(f.normal_sign) * w.dx(f.first, x, t);
                out.dg += 0.5 * wq * f.alpha * std::norm(v);
                out.plus_extra += 0.5 * wq * std::norm(dn) / f.alpha;
                break;
              }
            }
        }
    }
  return out;
}

double dg_norm(const PiecewiseField& w, const Mesh& mesh, std::size_t n_points)
{
  return std::sqrt(norm_squares(w, mesh, n_points).dg);
}

double dg_plus_norm(const PiecewiseField& w, const Mesh& mesh, std::size_t n_points)
{
  const NormSquares s = norm_squares(w, mesh, n_points);
  return std::sqrt(s.dg + s.plus_extra);
}

double l2_slice_error(const PiecewiseField& w, double t, const Mesh& mesh, std::size_t n_points)
{
  const double t_final = mesh.domain().t_final;
  if (t < 0.0 || t > t_final)
    throw std::invalid_argument("l2_slice_error: t outside [0, T]");
  const QuadratureRule& ref = gauss_legendre(n_points);
  double sum = 0.0;
  for (const Element& k : mesh.elements())
    {
      const bool last = k.slab + 1 == mesh.n_slabs();
      if (!(k.t_lo <= t && (t < k.t_hi || (last && t <= k.t_hi))))
        continue;
      const QuadratureRule rule = map_to_interval(ref, k.x_lo, k.x_hi);
      for (std::size_t q = 0; q < rule.size(); ++q)
        sum += rule.weights[q] * std::norm(w.value(k.id, rule.nodes[q], t));
    }
  return std::sqrt(sum);
}

}  // namespace schrodg
