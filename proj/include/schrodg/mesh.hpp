#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

namespace schrodg {

inline constexpr std::size_t kNoElement = std::numeric_limits<std::size_t>::max();

/// Space-time cylinder (x_lo, x_hi) x (0, t_final).
struct SpaceTimeDomain
{
  double x_lo = 0.0;
  double x_hi = 1.0;
  double t_final = 1.0;

  void validate() const;
  double measure() const { return (x_hi - x_lo) * t_final; }
};

/// Tensor-product element K = K_x x K_t.
struct Element
{
  std::size_t id = 0;
  std::size_t slab = 0;
  std::size_t x_index = 0;
  double x_lo = 0.0, x_hi = 0.0;
  double t_lo = 0.0, t_hi = 0.0;
  double h_x = 0.0, h_t = 0.0;
  double x_center = 0.0, t_center = 0.0;

  double diam() const;
  double area() const { return h_x * h_t; }
};

enum class FacetKind
{
  SpaceLikeInterior,
  Final,
  Initial,
  TimeLikeInterior,
  Dirichlet
};

std::string to_string(FacetKind kind);

/// A single mesh facet.
///
/// Horizontal facets (space-like, initial, final) live at t = position and
/// span [lo, hi] in x; vertical facets (time-like, Dirichlet) live at
/// x = position and span [lo, hi] in t.
///
/// For space-like interior facets `first` is the element below and `second`
/// the element above; for time-like interior facets `first` is the left and
/// `second` the right element. Boundary facets only set `first`.
/// `normal_sign` is the x-normal of `first` on vertical facets (+1 for
/// time-like interior facets, outward for Dirichlet facets) and the outward
/// t-normal on initial/final facets.
struct Facet
{
  FacetKind kind = FacetKind::Initial;
  double position = 0.0;
  double lo = 0.0, hi = 0.0;
  std::size_t first = kNoElement;
  std::size_t second = kNoElement;
  int normal_sign = 1;
  double h_F_x = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  bool is_horizontal() const
  {
    return kind == FacetKind::SpaceLikeInterior || kind == FacetKind::Initial
        || kind == FacetKind::Final;
  }
  bool is_interior() const
  {
    return kind == FacetKind::SpaceLikeInterior || kind == FacetKind::TimeLikeInterior;
  }
  double length() const { return hi - lo; }
};

/// Role of an element with respect to one of its facets.
enum class FacetRole
{
  Below,    // facet is the element's top
  Above,    // facet is the element's bottom
  LeftOf,   // facet is the element's right side
  RightOf,  // facet is the element's left side
  Boundary
};

std::string to_string(FacetRole role);

struct FacetRef
{
  std::size_t facet_index = 0;
  const Facet* facet = nullptr;
  FacetRole role = FacetRole::Boundary;
};

class Mesh
{
public:
  Mesh(SpaceTimeDomain domain, std::vector<Element> elements, std::vector<Facet> facets,
       std::size_t n_slabs);

  const SpaceTimeDomain& domain() const { return domain_; }
  const std::vector<Element>& elements() const { return elements_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const Element& element(std::size_t id) const;
  std::size_t n_slabs() const { return slab_index_.size(); }
  const std::vector<std::size_t>& slab_elements(std::size_t slab) const;

  /// Local facet indices in the order bottom, top, left, right.
  const std::array<std::size_t, 4>& element_facets(std::size_t id) const;

  std::size_t count(FacetKind kind) const;
  double max_h_x() const;
  double max_h_t() const;

  /// Local quasi-uniformity: largest ratio of spatial sizes between elements
  /// sharing a facet.
  double lqu() const;

private:
  SpaceTimeDomain domain_;
  std::vector<Element> elements_;
  std::vector<Facet> facets_;
  std::vector<std::vector<std::size_t>> slab_index_;
  std::vector<std::array<std::size_t, 4>> element_facets_;
};

/// Uniform nx-by-nt tensor mesh of the domain.
Mesh build_cartesian_mesh(const SpaceTimeDomain& domain, std::size_t nx, std::size_t nt);

/// Facets of an element (bottom, top, left, right) with the element's role.
std::vector<FacetRef> facets_of(const Mesh& mesh, std::size_t element_id);

nlohmann::json mesh_summary(const Mesh& mesh);

}  // namespace schrodg
