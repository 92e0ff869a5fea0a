#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "schrodg/field.hpp"
#include "schrodg/linear_solver.hpp"
#include "schrodg/mesh.hpp"
#include "schrodg/trefftz_spaces.hpp"

namespace schrodg {

/// Initial datum psi_0(x) and Dirichlet datum g_D(x, t).
struct BoundaryData
{
  std::function<Complex(double)> psi0;
  std::function<Complex(double, double)> g_D;

  static BoundaryData constant(Complex c);
  /// Traces of a global closed-form solution.
  static BoundaryData from_solution(std::function<Complex(double, double)> psi);
};

/// Number of Gauss points per facet direction.
struct QuadraturePolicy
{
  /// Products of basis functions.
  std::size_t basis_points = 4;
  /// Integrands involving data, exact solutions or plane waves.
  std::size_t data_points = 20;

  /// 2p + 2 for polynomial spaces and max(20, 2p + 2) otherwise.
  static QuadraturePolicy for_space(const SpaceKind& kind,
                                    std::optional<std::size_t> override_points = {});
};

/// Mesh together with one local basis per element.
class DiscreteSpace
{
public:
  DiscreteSpace(std::shared_ptr<const Mesh> mesh, SpaceKind kind);

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  const SpaceKind& kind() const { return kind_; }
  const ElementBasis& basis(std::size_t element) const { return bases_.at(element); }

  std::size_t local_dim(std::size_t element) const { return bases_.at(element).dim(); }
  std::size_t total_dofs() const { return global_offset_.back(); }
  /// First global dof of an element; elements ordered by (slab, x-index).
  std::size_t global_offset(std::size_t element) const { return global_offset_.at(element); }
  /// First dof of an element inside its slab system.
  std::size_t slab_offset(std::size_t element) const { return slab_offset_.at(element); }
  std::size_t slab_dofs(std::size_t slab) const { return slab_dofs_.at(slab); }

private:
  std::shared_ptr<const Mesh> mesh_;
  SpaceKind kind_;
  std::vector<ElementBasis> bases_;
  std::vector<std::size_t> global_offset_;
  std::vector<std::size_t> slab_offset_;
  std::vector<std::size_t> slab_dofs_;
};

/// Coefficients of a discrete function, element by element.
class DiscreteSolution
{
public:
  explicit DiscreteSolution(std::shared_ptr<const DiscreteSpace> space);

  const DiscreteSpace& space() const { return *space_; }
  const std::shared_ptr<const DiscreteSpace>& space_ptr() const { return space_; }

  /// Number of leading slabs whose coefficients are set.
  std::size_t solved_slabs() const { return solved_slabs_; }

  const ComplexVector& coefficients(std::size_t element) const { return coeffs_.at(element); }
  void set_slab(std::size_t slab, std::span<const Complex> slab_coefficients);
  void set_global(std::span<const Complex> coefficients);
  ComplexVector global_vector() const;

  Complex value(std::size_t element, double x, double t) const;
  Complex dx(std::size_t element, double x, double t) const;

  /// Snapshot usable as a PiecewiseField.
  PiecewiseField field() const;

private:
  Complex eval(std::size_t element, double x, double t, int dx) const;

  std::shared_ptr<const DiscreteSpace> space_;
  std::vector<ComplexVector> coeffs_;
  std::size_t solved_slabs_ = 0;
};

struct SlabSystem
{
  std::size_t slab = 0;
  DenseComplexMatrix matrix;
  ComplexVector rhs;
  /// Row -> (element, local basis index).
  std::vector<std::pair<std::size_t, std::size_t>> dof_map;
  Bandwidth band{0, 0};
};

struct GlobalSystem
{
  DenseComplexMatrix matrix;
  ComplexVector rhs;
};

inline constexpr std::size_t kMaxGlobalDofs = 5000;

/// Thrown when a slab system cannot be solved.
class SolverError : public std::runtime_error
{
public:
  SolverError(const std::string& what, std::size_t slab, double condition)
    : std::runtime_error(what), slab_(slab), condition_(condition)
  {}
  std::size_t slab() const { return slab_; }
  double condition() const { return condition_; }

private:
  std::size_t slab_;
  double condition_;
};

/// System for one time slab. `below` is the solution holding the previous
/// slab, or nullptr for slab 0 (initial datum).
SlabSystem assemble_slab(const DiscreteSpace& space, std::size_t slab, const BoundaryData& data,
                         const DiscreteSolution* below, const QuadraturePolicy& quad);

/// Fully coupled system including the cross-slab upwind terms.
GlobalSystem assemble_global(const DiscreteSpace& space, const BoundaryData& data,
                             const QuadraturePolicy& quad);

/// A(w, phi_i) for every global test dof, w any piecewise field (volume
/// terms included for non-Trefftz spaces).
ComplexVector evaluate_form(const DiscreteSpace& space, const PiecewiseField& w,
                            const QuadraturePolicy& quad);

/// l(phi_i) for every global test dof.
ComplexVector evaluate_functional(const DiscreteSpace& space, const BoundaryData& data,
                                  const QuadraturePolicy& quad);

/// Slab-by-slab solve.
DiscreteSolution march(std::shared_ptr<const DiscreteSpace> space, const BoundaryData& data,
                       const QuadraturePolicy& quad);

/// Dense solve of the global system; testing oracle for `march`.
DiscreteSolution solve_global(std::shared_ptr<const DiscreteSpace> space,
                              const BoundaryData& data, const QuadraturePolicy& quad);

}  // namespace schrodg
