#pragma once

#include <cstddef>

#include "schrodg/field.hpp"
#include "schrodg/mesh.hpp"

namespace schrodg {

inline constexpr std::size_t kNormQuadraturePoints = 20;

/// Squared DG norm and the additional squared DG+ terms.
struct NormSquares
{
  double dg = 0.0;
  double plus_extra = 0.0;
};

NormSquares norm_squares(const PiecewiseField& w, const Mesh& mesh,
                         std::size_t n_points = kNormQuadraturePoints);

/// Mesh-dependent DG norm: jumps across interior facets, traces on the
/// initial/final/Dirichlet boundaries, weighted by alpha and beta.
double dg_norm(const PiecewiseField& w, const Mesh& mesh,
               std::size_t n_points = kNormQuadraturePoints);

/// DG norm plus upwind traces on space-like facets, averages on time-like
/// facets and the normal derivative on the Dirichlet boundary. The Dirichlet
/// term enters squared like every other term.
double dg_plus_norm(const PiecewiseField& w, const Mesh& mesh,
                    std::size_t n_points = kNormQuadraturePoints);

/// L2(Omega) norm of w(., t). At a slab interface the trace from the later
/// slab is used (the last slab at t = T).
double l2_slice_error(const PiecewiseField& w, double t, const Mesh& mesh,
                      std::size_t n_points = kNormQuadraturePoints);

}  // namespace schrodg
