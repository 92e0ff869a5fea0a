#include "schrodg/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "schrodg/quadrature.hpp"

namespace schrodg {

namespace {

constexpr Complex kI{0.0, 1.0};

struct Points
{
  std::vector<double> x, t, w;
  std::size_t size() const { return w.size(); }
};

Points facet_points(const Facet& f, std::size_t n)
{
  const QuadratureRule rule = map_to_interval(gauss_legendre(n), f.lo, f.hi);
  Points p;
  p.w = rule.weights;
  if (f.is_horizontal())
    {
      p.x = rule.nodes;
      p.t.assign(n, f.position);
    }
  else
    {
      p.x.assign(n, f.position);
      p.t = rule.nodes;
    }
  return p;
}

Points volume_points(const Element& k, std::size_t n)
{
  const QuadratureRule rx = map_to_interval(gauss_legendre(n), k.x_lo, k.x_hi);
  const QuadratureRule rt = map_to_interval(gauss_legendre(n), k.t_lo, k.t_hi);
  Points p;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      {
        p.x.push_back(rx.nodes[a]);
        p.t.push_back(rt.nodes[b]);
        p.w.push_back(rx.weights[a] * rt.weights[b]);
      }
  return p;
}

// Values of `count` functions at the points, laid out [q * count + j].
struct Table
{
  std::size_t count = 0;
  std::vector<Complex> val;
  std::vector<Complex> dx;
  // i dt + 1/2 dxx, only filled for volume test tables.
  std::vector<Complex> op;

  Complex v(std::size_t q, std::size_t j) const { return val[q * count + j]; }
  Complex d(std::size_t q, std::size_t j) const { return dx[q * count + j]; }
  Complex s(std::size_t q, std::size_t j) const { return op[q * count + j]; }
};

Table basis_table(const ElementBasis& basis, const Points& p, bool with_op = false)
{
  Table tab;
  tab.count = basis.dim();
  const std::size_t total = p.size() * tab.count;
  tab.val.resize(total);
  tab.dx.resize(total);
  if (with_op)
    tab.op.resize(total);
  for (std::size_t q = 0; q < p.size(); ++q)
    for (std::size_t j = 0; j < tab.count; ++j)
      {
        const auto& fn = basis.functions[j];
        const std::size_t at = q * tab.count + j;
        tab.val[at] = eval_basis(fn, p.x[q], p.t[q]);
        tab.dx[at] = eval_basis(fn, p.x[q], p.t[q], 1, 0);
        if (with_op)
          tab.op[at] = kI * eval_basis(fn, p.x[q], p.t[q], 0, 1)
                     + 0.5 * eval_basis(fn, p.x[q], p.t[q], 2, 0);
      }
  return tab;
}

Table field_table(const PiecewiseField& w, std::size_t element, const Points& p)
{
  Table tab;
  tab.count = 1;
  tab.val.resize(p.size());
  tab.dx.resize(p.size());
  for (std::size_t q = 0; q < p.size(); ++q)
    {
      tab.val[q] = w.value(element, p.x[q], p.t[q]);
      tab.dx[q] = w.dx ? w.dx(element, p.x[q], p.t[q]) : Complex{0.0, 0.0};
    }
  return tab;
}

using Block = DenseComplexMatrix;  // rows: test functions, cols: trial functions

// coef * int trial conj(test)
void add_mass(Block& b, const Table& trial, const Table& test, const Points& p, Complex coef)
{
  for (std::size_t q = 0; q < p.size(); ++q)
    for (std::size_t i = 0; i < test.count; ++i)
      {
        const Complex ts = std::conj(test.v(q, i)) * (p.w[q] * coef);
        for (std::size_t j = 0; j < trial.count; ++j)
          b(i, j) += trial.v(q, j) * ts;
      }
}

// 1/2 int ({dx psi} [s]_N + i alpha [psi]_N [s]_N - {psi} [dx s]_N
//          + i beta [dx psi]_N [dx s]_N), one trial side against one test side.
void add_time_like(Block& b, const Table& trial, const Table& test, const Points& p,
                   double n_trial, double n_test, double alpha, double beta)
{
  for (std::size_t q = 0; q < p.size(); ++q)
    for (std::size_t i = 0; i < test.count; ++i)
      {
        const Complex s = std::conj(test.v(q, i));
        const Complex ds = std::conj(test.d(q, i));
        for (std::size_t j = 0; j < trial.count; ++j)
          {
            const Complex u = trial.v(q, j);
            const Complex du = trial.d(q, j);
            const Complex integrand = 0.5 * du * n_test * s
                                    + kI * alpha * n_trial * n_test * u * s
                                    - 0.5 * u * n_test * ds
                                    + kI * beta * n_trial * n_test * du * ds;
            b(i, j) += 0.5 * p.w[q] * integrand;
          }
      }
}

// 1/2 int (dn psi + i alpha psi) conj(s)
void add_dirichlet(Block& b, const Table& trial, const Table& test, const Points& p,
                   double normal, double alpha)
{
  for (std::size_t q = 0; q < p.size(); ++q)
    for (std::size_t i = 0; i < test.count; ++i)
      {
        const Complex s = std::conj(test.v(q, i)) * (0.5 * p.w[q]);
        for (std::size_t j = 0; j < trial.count; ++j)
          b(i, j) += (normal * trial.d(q, j) + kI * alpha * trial.v(q, j)) * s;
      }
}

// int psi conj(i dt s + 1/2 dxx s)
void add_volume(Block& b, const Table& trial, const Table& test, const Points& p)
{
  for (std::size_t q = 0; q < p.size(); ++q)
    for (std::size_t i = 0; i < test.count; ++i)
      {
        const Complex s = std::conj(test.s(q, i)) * p.w[q];
        for (std::size_t j = 0; j < trial.count; ++j)
          b(i, j) += trial.v(q, j) * s;
      }
}

// Visits every contribution of A(., .) with test functions on `elements`.
// `trial(element, points)` returns the trial table on that element; `sink`
// receives (test element, trial element, block). With `cross_slab` the
// -i int psi^- conj(s^+) coupling to the slab below is included.
template <class TrialFn, class Sink>
void visit_form(const DiscreteSpace& space, std::span<const std::size_t> elements,
                bool cross_slab, std::size_t n_points, TrialFn&& trial, Sink&& sink)
{
  const Mesh& mesh = space.mesh();
  const bool volume = !space.kind().is_trefftz();
  for (std::size_t k : elements)
    {
      const auto& slots = mesh.element_facets(k);
      const ElementBasis& basis_k = space.basis(k);

      // Top: i int psi conj(s) on the final facet or the lower side of a
      // space-like facet.
      {
        const Facet& f = mesh.facets()[slots[1]];
        const Points p = facet_points(f, n_points);
        const Table tr = trial(k, p);
        Block b(basis_k.dim(), tr.count);
        add_mass(b, tr, basis_table(basis_k, p), p, kI);
        sink(k, k, b);
      }

      const Facet& bottom = mesh.facets()[slots[0]];
      if (cross_slab && bottom.kind == FacetKind::SpaceLikeInterior)
        {
          const Points p = facet_points(bottom, n_points);
          const Table tr = trial(bottom.first, p);
          Block b(basis_k.dim(), tr.count);
          add_mass(b, tr, basis_table(basis_k, p), p, -kI);
          sink(k, bottom.first, b);
        }

      for (std::size_t side : {slots[2], slots[3]})
        {
          const Facet& f = mesh.facets()[side];
          if (f.kind == FacetKind::Dirichlet)
            {
              const Points p = facet_points(f, n_points);
              const Table tr = trial(k, p);
              Block b(basis_k.dim(), tr.count);
              add_dirichlet(b, tr, basis_table(basis_k, p), p, f.normal_sign, f.alpha);
              sink(k, k, b);
            }
          else if (f.kind == FacetKind::TimeLikeInterior && f.first == k)
            {
              const Points p = facet_points(f, n_points);
              const std::size_t pair[2] = {f.first, f.second};
              const double normal[2] = {1.0, -1.0};
              for (int a = 0; a < 2; ++a)
                {
                  const Table tr = trial(pair[a], p);
                  for (int c = 0; c < 2; ++c)
                    {
                      const ElementBasis& test_basis = space.basis(pair[c]);
                      Block b(test_basis.dim(), tr.count);
                      add_time_like(b, tr, basis_table(test_basis, p), p, normal[a], normal[c],
                                    f.alpha, f.beta);
                      sink(pair[c], pair[a], b);
                    }
                }
            }
        }

      if (volume)
        {
          const Points p = volume_points(mesh.element(k), n_points);
          const Table tr = trial(k, p);
          Block b(basis_k.dim(), tr.count);
          add_volume(b, tr, basis_table(basis_k, p, true), p);
          sink(k, k, b);
        }
    }
}

// Right-hand-side contributions for test functions on `elements`: initial
// datum, Dirichlet datum, and (when `below` is given) the upwind trace of
// the previous slab.
template <class Sink>
void visit_functional(const DiscreteSpace& space, std::span<const std::size_t> elements,
                      const BoundaryData& data, const DiscreteSolution* below,
                      std::size_t n_points, Sink&& sink)
{
  const Mesh& mesh = space.mesh();
  for (std::size_t k : elements)
    {
      const auto& slots = mesh.element_facets(k);
      const ElementBasis& basis_k = space.basis(k);

      const Facet& bottom = mesh.facets()[slots[0]];
      if (bottom.kind == FacetKind::Initial
          || (below != nullptr && bottom.kind == FacetKind::SpaceLikeInterior))
        {
          const Points p = facet_points(bottom, n_points);
          Table tr;
          tr.count = 1;
          tr.val.resize(p.size());
          for (std::size_t q = 0; q < p.size(); ++q)
            tr.val[q] = bottom.kind == FacetKind::Initial
                          ? data.psi0(p.x[q])
                          : below->value(bottom.first, p.x[q], p.t[q]);
          Block b(basis_k.dim(), 1);
          add_mass(b, tr, basis_table(basis_k, p), p, kI);
          sink(k, b);
        }

      for (std::size_t side : {slots[2], slots[3]})
        {
          const Facet& f = mesh.facets()[side];
          if (f.kind != FacetKind::Dirichlet)
            continue;
          const Points p = facet_points(f, n_points);
          const Table test = basis_table(basis_k, p);
          Block b(basis_k.dim(), 1);
          for (std::size_t q = 0; q < p.size(); ++q)
            {
              const Complex g = data.g_D(p.x[q], p.t[q]);
              for (std::size_t i = 0; i < test.count; ++i)
                b(i, 0) += 0.5 * p.w[q] * g
                         * (static_cast<double>(f.normal_sign) * std::conj(test.d(q, i))
                            + kI * f.alpha * std::conj(test.v(q, i)));
            }
          sink(k, b);
        }
    }
}

std::vector<std::size_t> all_elements(const Mesh& mesh)
{
  std::vector<std::size_t> ids(mesh.elements().size());
  for (std::size_t e = 0; e < ids.size(); ++e)
    ids[e] = e;
  return ids;
}

}  // namespace

BoundaryData BoundaryData::constant(Complex c)
{
  return {[c](double) { return c; }, [c](double, double) { return c; }};
}

BoundaryData BoundaryData::from_solution(std::function<Complex(double, double)> psi)
{
  return {[psi](double x) { return psi(x, 0.0); }, psi};
}

QuadraturePolicy QuadraturePolicy::for_space(const SpaceKind& kind,
                                             std::optional<std::size_t> override_points)
{
  const auto n = static_cast<std::size_t>(2 * kind.p + 2);
  QuadraturePolicy q;
  q.data_points = std::max<std::size_t>(20, n);
  q.basis_points = kind.is_polynomial() ? n : q.data_points;
  if (override_points)
    {
      q.basis_points = *override_points;
      q.data_points = *override_points;
    }
  return q;
}

DiscreteSpace::DiscreteSpace(std::shared_ptr<const Mesh> mesh, SpaceKind kind)
  : mesh_(std::move(mesh)), kind_(kind)
{
  if (!mesh_)
    throw std::invalid_argument("DiscreteSpace: null mesh");
  kind_.validate();

  // Local bases depend only on the element sizes; build one per size pair
  // about the origin and translate.
  std::map<std::pair<double, double>, ElementBasis> templates;
  bases_.reserve(mesh_->elements().size());
  for (const Element& k : mesh_->elements())
    {
      const auto key = std::make_pair(k.h_x, k.h_t);
      auto it = templates.find(key);
      if (it == templates.end())
        it = templates
                 .emplace(key, make_basis(kind_, ElementGeometry{{0.0}, 0.0, k.h_x, k.h_t}))
                 .first;
      ElementBasis basis = it->second;
      basis.element_id = k.id;
      const double center[1] = {k.x_center};
      for (auto& fn : basis.functions)
        if (auto* poly = std::get_if<ScaledPolynomial>(&fn))
          *poly = poly->recentered(center, k.t_center);
      bases_.push_back(std::move(basis));
    }

  global_offset_.resize(mesh_->elements().size() + 1, 0);
  slab_offset_.resize(mesh_->elements().size(), 0);
  slab_dofs_.assign(mesh_->n_slabs(), 0);
  for (std::size_t e = 0; e < bases_.size(); ++e)
    global_offset_[e + 1] = global_offset_[e] + bases_[e].dim();
  for (std::size_t s = 0; s < mesh_->n_slabs(); ++s)
    for (std::size_t e : mesh_->slab_elements(s))
      {
        slab_offset_[e] = slab_dofs_[s];
        slab_dofs_[s] += bases_[e].dim();
      }
}

DiscreteSolution::DiscreteSolution(std::shared_ptr<const DiscreteSpace> space)
  : space_(std::move(space))
{
  if (!space_)
    throw std::invalid_argument("DiscreteSolution: null space");
  coeffs_.resize(space_->mesh().elements().size());
  for (std::size_t e = 0; e < coeffs_.size(); ++e)
    coeffs_[e].assign(space_->local_dim(e), Complex{0.0, 0.0});
}

void DiscreteSolution::set_slab(std::size_t slab, std::span<const Complex> slab_coefficients)
{
  if (slab > solved_slabs_)
    throw std::invalid_argument("DiscreteSolution: slabs must be set in time order");
  if (slab_coefficients.size() != space_->slab_dofs(slab))
    throw std::invalid_argument("DiscreteSolution: slab coefficient size mismatch");
  for (std::size_t e : space_->mesh().slab_elements(slab))
    {
      const std::size_t off = space_->slab_offset(e);
      std::copy_n(slab_coefficients.begin() + static_cast<std::ptrdiff_t>(off),
                  coeffs_[e].size(), coeffs_[e].begin());
    }
  solved_slabs_ = std::max(solved_slabs_, slab + 1);
}

void DiscreteSolution::set_global(std::span<const Complex> coefficients)
{
  if (coefficients.size() != space_->total_dofs())
    throw std::invalid_argument("DiscreteSolution: global coefficient size mismatch");
  for (std::size_t e = 0; e < coeffs_.size(); ++e)
    std::copy_n(coefficients.begin() + static_cast<std::ptrdiff_t>(space_->global_offset(e)),
                coeffs_[e].size(), coeffs_[e].begin());
  solved_slabs_ = space_->mesh().n_slabs();
}

ComplexVector DiscreteSolution::global_vector() const
{
  ComplexVector out;
  out.reserve(space_->total_dofs());
  for (const auto& c : coeffs_)
    out.insert(out.end(), c.begin(), c.end());
  return out;
}

Complex DiscreteSolution::eval(std::size_t element, double x, double t, int dx) const
{
  const ElementBasis& basis = space_->basis(element);
  const ComplexVector& c = coeffs_.at(element);
  Complex sum = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j)
    sum += c[j] * eval_basis(basis.functions[j], x, t, dx, 0);
  return sum;
}

Complex DiscreteSolution::value(std::size_t element, double x, double t) const
{
  return eval(element, x, t, 0);
}

Complex DiscreteSolution::dx(std::size_t element, double x, double t) const
{
  return eval(element, x, t, 1);
}

PiecewiseField DiscreteSolution::field() const
{
  auto snapshot = std::make_shared<const DiscreteSolution>(*this);
  return {
      [snapshot](std::size_t e, double x, double t) { return snapshot->value(e, x, t); },
      [snapshot](std::size_t e, double x, double t) { return snapshot->dx(e, x, t); },
  };
}

SlabSystem assemble_slab(const DiscreteSpace& space, std::size_t slab, const BoundaryData& data,
                         const DiscreteSolution* below, const QuadraturePolicy& quad)
{
  const Mesh& mesh = space.mesh();
  if (slab >= mesh.n_slabs())
    throw std::invalid_argument("assemble_slab: unknown slab " + std::to_string(slab));
  if (slab == 0 && below != nullptr)
    throw std::invalid_argument("assemble_slab: slab 0 takes the initial datum, not a solution");
  if (slab > 0)
    {
      if (below == nullptr)
        throw std::invalid_argument("assemble_slab: slab " + std::to_string(slab)
                                    + " needs the solution on the previous slab");
      if (&below->space() != &space || below->solved_slabs() < slab)
        throw std::invalid_argument("assemble_slab: `below` does not hold slab "
                                    + std::to_string(slab - 1));
    }

  const auto& elements = mesh.slab_elements(slab);
  const std::size_t n = space.slab_dofs(slab);
  SlabSystem sys;
  sys.slab = slab;
  sys.matrix = DenseComplexMatrix(n);
  sys.rhs.assign(n, Complex{0.0, 0.0});
  sys.dof_map.resize(n);
  std::size_t max_local = 0;
  for (std::size_t e : elements)
    {
      max_local = std::max(max_local, space.local_dim(e));
      for (std::size_t j = 0; j < space.local_dim(e); ++j)
        sys.dof_map[space.slab_offset(e) + j] = {e, j};
    }
  // Elements couple only to their left and right neighbours.
  sys.band = {std::min(n, 2 * max_local), std::min(n, 2 * max_local)};

  visit_form(
      space, elements, false, quad.basis_points,
      [&](std::size_t e, const Points& p) { return basis_table(space.basis(e), p); },
      [&](std::size_t test, std::size_t trial, const Block& b) {
        const std::size_t r0 = space.slab_offset(test);
        const std::size_t c0 = space.slab_offset(trial);
        for (std::size_t i = 0; i < b.rows(); ++i)
          for (std::size_t j = 0; j < b.cols(); ++j)
            sys.matrix(r0 + i, c0 + j) += b(i, j);
      });
  visit_functional(space, elements, data, below, quad.data_points,
                   [&](std::size_t test, const Block& b) {
                     const std::size_t r0 = space.slab_offset(test);
                     for (std::size_t i = 0; i < b.rows(); ++i)
                       sys.rhs[r0 + i] += b(i, 0);
                   });
  return sys;
}

GlobalSystem assemble_global(const DiscreteSpace& space, const BoundaryData& data,
                             const QuadraturePolicy& quad)
{
  const std::size_t n = space.total_dofs();
  if (n > kMaxGlobalDofs)
    throw std::invalid_argument("assemble_global: " + std::to_string(n)
                                + " dofs exceed the dense oracle cap of "
                                + std::to_string(kMaxGlobalDofs));
  const auto elements = all_elements(space.mesh());
  GlobalSystem sys{DenseComplexMatrix(n), ComplexVector(n, Complex{0.0, 0.0})};
  visit_form(
      space, elements, true, quad.basis_points,
      [&](std::size_t e, const Points& p) { return basis_table(space.basis(e), p); },
      [&](std::size_t test, std::size_t trial, const Block& b) {
        const std::size_t r0 = space.global_offset(test);
        const std::size_t c0 = space.global_offset(trial);
        for (std::size_t i = 0; i < b.rows(); ++i)
          for (std::size_t j = 0; j < b.cols(); ++j)
            sys.matrix(r0 + i, c0 + j) += b(i, j);
      });
  sys.rhs = evaluate_functional(space, data, quad);
  return sys;
}

ComplexVector evaluate_form(const DiscreteSpace& space, const PiecewiseField& w,
                            const QuadraturePolicy& quad)
{
  const auto elements = all_elements(space.mesh());
  ComplexVector out(space.total_dofs(), Complex{0.0, 0.0});
  visit_form(
      space, elements, true, quad.data_points,
      [&](std::size_t e, const Points& p) { return field_table(w, e, p); },
      [&](std::size_t test, std::size_t, const Block& b) {
        const std::size_t r0 = space.global_offset(test);
        for (std::size_t i = 0; i < b.rows(); ++i)
          out[r0 + i] += b(i, 0);
      });
  return out;
}

ComplexVector evaluate_functional(const DiscreteSpace& space, const BoundaryData& data,
                                  const QuadraturePolicy& quad)
{
  const auto elements = all_elements(space.mesh());
  ComplexVector out(space.total_dofs(), Complex{0.0, 0.0});
  visit_functional(space, elements, data, nullptr, quad.data_points,
                   [&](std::size_t test, const Block& b) {
                     const std::size_t r0 = space.global_offset(test);
                     for (std::size_t i = 0; i < b.rows(); ++i)
                       out[r0 + i] += b(i, 0);
                   });
  return out;
}

DiscreteSolution march(std::shared_ptr<const DiscreteSpace> space, const BoundaryData& data,
                       const QuadraturePolicy& quad)
{
  DiscreteSolution solution(space);
  for (std::size_t slab = 0; slab < space->mesh().n_slabs(); ++slab)
    {
      SlabSystem sys = assemble_slab(*space, slab, data, slab == 0 ? nullptr : &solution, quad);
      ComplexVector x;
      try
        {
          x = LuFactorization(sys.matrix, sys.band).solve(sys.rhs);
        }
      catch (const SingularMatrixError&)
        {
          const double c = sys.matrix.rows() <= kMaxCond2Size
                             ? cond2(sys.matrix)
                             : std::numeric_limits<double>::quiet_NaN();
          throw SolverError("march: singular matrix on slab " + std::to_string(slab)
                                + " (cond2 estimate " + std::to_string(c) + ")",
                            slab, c);
        }
      if (!std::all_of(x.begin(), x.end(), [](const Complex& z) {
            return std::isfinite(z.real()) && std::isfinite(z.imag());
          }))
        throw SolverError("march: non-finite solution on slab " + std::to_string(slab), slab,
                          std::numeric_limits<double>::infinity());
      solution.set_slab(slab, x);
    }
  return solution;
}

DiscreteSolution solve_global(std::shared_ptr<const DiscreteSpace> space,
                              const BoundaryData& data, const QuadraturePolicy& quad)
{
  const GlobalSystem sys = assemble_global(*space, data, quad);
  DiscreteSolution solution(space);
  try
    {
      solution.set_global(solve_lu(sys.matrix, sys.rhs));
    }
  catch (const SingularMatrixError& e)
    {
      throw SolverError(std::string("solve_global: ") + e.what(), 0,
                        std::numeric_limits<double>::infinity());
    }
  return solution;
}

}  // namespace schrodg
