#include "schrodg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace schrodg {

void SpaceTimeDomain::validate() const
{
  if (!(x_lo < x_hi))
    throw std::invalid_argument("SpaceTimeDomain: x_lo must be less than x_hi");
  if (!(t_final > 0.0))
    throw std::invalid_argument("SpaceTimeDomain: t_final must be positive");
}

double Element::diam() const
{
  return std::hypot(h_x, h_t);
}

std::string to_string(FacetKind kind)
{
  switch (kind)
    {
    case FacetKind::SpaceLikeInterior: return "space_like_interior";
    case FacetKind::Final: return "final";
    case FacetKind::Initial: return "initial";
    case FacetKind::TimeLikeInterior: return "time_like_interior";
    case FacetKind::Dirichlet: return "dirichlet";
    }
  return "unknown";
}

std::string to_string(FacetRole role)
{
  switch (role)
    {
    case FacetRole::Below: return "below";
    case FacetRole::Above: return "above";
    case FacetRole::LeftOf: return "left-of-facet";
    case FacetRole::RightOf: return "right-of-facet";
    case FacetRole::Boundary: return "boundary";
    }
  return "unknown";
}

namespace {

constexpr std::size_t kUnset = kNoElement;

// Slot in the (bottom, top, left, right) array of an element for a facet.
std::size_t facet_slot(const Facet& f, const Element& k, bool is_first)
{
  switch (f.kind)
    {
    case FacetKind::Initial: return 0;
    case FacetKind::Final: return 1;
    case FacetKind::SpaceLikeInterior: return is_first ? 1 : 0;
    case FacetKind::TimeLikeInterior: return is_first ? 3 : 2;
    case FacetKind::Dirichlet: return f.position <= k.x_center ? 2 : 3;
    }
  return 0;
}

}  // namespace

Mesh::Mesh(SpaceTimeDomain domain, std::vector<Element> elements, std::vector<Facet> facets,
           std::size_t n_slabs)
  : domain_(domain), elements_(std::move(elements)), facets_(std::move(facets))
{
  domain_.validate();
  slab_index_.resize(n_slabs);
  for (std::size_t e = 0; e < elements_.size(); ++e)
    {
      if (elements_[e].id != e)
        throw std::invalid_argument("Mesh: element ids must be consecutive");
      if (elements_[e].slab >= n_slabs)
        throw std::invalid_argument("Mesh: element slab out of range");
      slab_index_[elements_[e].slab].push_back(e);
    }

  element_facets_.assign(elements_.size(), {kUnset, kUnset, kUnset, kUnset});
  for (std::size_t f = 0; f < facets_.size(); ++f)
    {
      const Facet& facet = facets_[f];
      for (const auto& [owner, is_first] : {std::pair{facet.first, true},
                                            std::pair{facet.second, false}})
        {
          if (owner == kNoElement)
            continue;
          auto& slots = element_facets_.at(owner);
          const std::size_t slot = facet_slot(facet, elements_[owner], is_first);
          if (slots[slot] != kUnset)
            throw std::invalid_argument("Mesh: element side covered by two facets");
          slots[slot] = f;
        }
    }
  for (const auto& slots : element_facets_)
    for (std::size_t s : slots)
      if (s == kUnset)
        throw std::invalid_argument("Mesh: element side without facet");
}

const Element& Mesh::element(std::size_t id) const
{
  if (id >= elements_.size())
    throw std::out_of_range("Mesh: invalid element id " + std::to_string(id));
  return elements_[id];
}

const std::vector<std::size_t>& Mesh::slab_elements(std::size_t slab) const
{
  if (slab >= slab_index_.size())
    throw std::out_of_range("Mesh: invalid slab " + std::to_string(slab));
  return slab_index_[slab];
}

const std::array<std::size_t, 4>& Mesh::element_facets(std::size_t id) const
{
  if (id >= element_facets_.size())
    throw std::out_of_range("Mesh: invalid element id " + std::to_string(id));
  return element_facets_[id];
}

std::size_t Mesh::count(FacetKind kind) const
{
  return static_cast<std::size_t>(std::count_if(
      facets_.begin(), facets_.end(), [kind](const Facet& f) { return f.kind == kind; }));
}

double Mesh::max_h_x() const
{
  double h = 0.0;
  for (const auto& k : elements_)
    h = std::max(h, k.h_x);
  return h;
}

double Mesh::max_h_t() const
{
  double h = 0.0;
  for (const auto& k : elements_)
    h = std::max(h, k.h_t);
  return h;
}

double Mesh::lqu() const
{
  double q = 1.0;
  for (const auto& f : facets_)
    {
      if (!f.is_interior())
        continue;
      const double a = elements_[f.first].h_x;
      const double b = elements_[f.second].h_x;
      q = std::max(q, std::max(a / b, b / a));
    }
  return q;
}

Mesh build_cartesian_mesh(const SpaceTimeDomain& domain, std::size_t nx, std::size_t nt)
{
  domain.validate();
  if (nx == 0 || nt == 0)
    throw std::invalid_argument("build_cartesian_mesh: nx and nt must be at least 1");

  std::vector<double> xs(nx + 1), ts(nt + 1);
  for (std::size_t i = 0; i <= nx; ++i)
    xs[i] = std::lerp(domain.x_lo, domain.x_hi, static_cast<double>(i) / static_cast<double>(nx));
  for (std::size_t n = 0; n <= nt; ++n)
    ts[n] = std::lerp(0.0, domain.t_final, static_cast<double>(n) / static_cast<double>(nt));

  std::vector<Element> elements;
  elements.reserve(nx * nt);
  for (std::size_t n = 0; n < nt; ++n)
    for (std::size_t i = 0; i < nx; ++i)
      {
        Element k;
        k.id = n * nx + i;
        k.slab = n;
        k.x_index = i;
        k.x_lo = xs[i];
        k.x_hi = xs[i + 1];
        k.t_lo = ts[n];
        k.t_hi = ts[n + 1];
        k.h_x = k.x_hi - k.x_lo;
        k.h_t = k.t_hi - k.t_lo;
        k.x_center = 0.5 * (k.x_lo + k.x_hi);
        k.t_center = 0.5 * (k.t_lo + k.t_hi);
        elements.push_back(k);
      }
  auto id = [nx](std::size_t n, std::size_t i) { return n * nx + i; };

  std::vector<Facet> facets;
  for (std::size_t n = 0; n < nt; ++n)
    {
      // Bottom of slab n.
      for (std::size_t i = 0; i < nx; ++i)
        {
          Facet f;
          f.position = ts[n];
          f.lo = xs[i];
          f.hi = xs[i + 1];
          if (n == 0)
            {
              f.kind = FacetKind::Initial;
              f.first = id(0, i);
              f.normal_sign = -1;
            }
          else
            {
              f.kind = FacetKind::SpaceLikeInterior;
              f.first = id(n - 1, i);
              f.second = id(n, i);
              f.normal_sign = 1;
            }
          facets.push_back(f);
        }
      // Vertical facets of slab n, left to right.
      for (std::size_t i = 0; i <= nx; ++i)
        {
          Facet f;
          f.position = xs[i];
          f.lo = ts[n];
          f.hi = ts[n + 1];
          if (i == 0 || i == nx)
            {
              const Element& owner = elements[id(n, i == 0 ? 0 : nx - 1)];
              f.kind = FacetKind::Dirichlet;
              f.first = owner.id;
              f.normal_sign = i == 0 ? -1 : 1;
              f.h_F_x = owner.h_x;
              f.alpha = 1.0 / f.h_F_x;
            }
          else
            {
              const Element& left = elements[id(n, i - 1)];
              const Element& right = elements[id(n, i)];
              f.kind = FacetKind::TimeLikeInterior;
              f.first = left.id;
              f.second = right.id;
              f.normal_sign = 1;
              f.h_F_x = std::min(left.h_x, right.h_x);
              f.alpha = 1.0 / f.h_F_x;
              f.beta = f.h_F_x;
            }
          facets.push_back(f);
        }
    }
  for (std::size_t i = 0; i < nx; ++i)
    {
      Facet f;
      f.kind = FacetKind::Final;
      f.position = ts[nt];
      f.lo = xs[i];
      f.hi = xs[i + 1];
      f.first = id(nt - 1, i);
      f.normal_sign = 1;
      facets.push_back(f);
    }

  return Mesh(domain, std::move(elements), std::move(facets), nt);
}

std::vector<FacetRef> facets_of(const Mesh& mesh, std::size_t element_id)
{
  const auto& slots = mesh.element_facets(element_id);
  std::vector<FacetRef> out;
  out.reserve(4);
  for (std::size_t s = 0; s < 4; ++s)
    {
      const Facet& f = mesh.facets()[slots[s]];
      FacetRole role = FacetRole::Boundary;
      if (f.kind == FacetKind::SpaceLikeInterior)
        role = f.first == element_id ? FacetRole::Below : FacetRole::Above;
      else if (f.kind == FacetKind::TimeLikeInterior)
        role = f.first == element_id ? FacetRole::LeftOf : FacetRole::RightOf;
      out.push_back({slots[s], &f, role});
    }
  return out;
}

nlohmann::json mesh_summary(const Mesh& mesh)
{
  nlohmann::json facet_counts;
  for (FacetKind kind : {FacetKind::SpaceLikeInterior, FacetKind::TimeLikeInterior,
                         FacetKind::Initial, FacetKind::Final, FacetKind::Dirichlet})
    facet_counts[to_string(kind)] = mesh.count(kind);
  return {
      {"element_count", mesh.elements().size()},
      {"slab_count", mesh.n_slabs()},
      {"facet_counts", facet_counts},
      {"h_x", mesh.max_h_x()},
      {"h_t", mesh.max_h_t()},
      {"lqu", mesh.lqu()},
  };
}

}  // namespace schrodg
