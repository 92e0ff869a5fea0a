#include "schrodg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "schrodg/assembly.hpp"
#include "schrodg/error_norms.hpp"
#include "schrodg/exact_solutions.hpp"
#include "schrodg/linear_solver.hpp"
#include "schrodg/quadrature.hpp"

namespace schrodg {

std::string to_string(Experiment e)
{
  switch (e)
    {
    case Experiment::ConvH: return "conv-h";
    case Experiment::ConvP: return "conv-p";
    case Experiment::Conditioning: return "conditioning";
    case Experiment::Singular: return "singular";
    case Experiment::VerifyBasis: return "verify-basis";
    }
  return "unknown";
}

Experiment experiment_from_string(const std::string& name)
{
  for (Experiment e : {Experiment::ConvH, Experiment::ConvP, Experiment::Conditioning,
                       Experiment::Singular, Experiment::VerifyBasis})
    if (to_string(e) == name)
      return e;
  throw std::invalid_argument("unknown experiment '" + name + "'");
}

void ExperimentConfig::validate() const
{
  if (p < 0)
    throw std::invalid_argument("p must be nonnegative");
  if (levels < 1)
    throw std::invalid_argument("levels must be at least 1");
  if (quad_n && (*quad_n < 1 || *quad_n > kMaxQuadraturePoints))
    throw std::invalid_argument("quad-n must be in [1, 64]");
  switch (experiment)
    {
    case Experiment::ConvP:
      if (p < 1)
        throw std::invalid_argument("conv-p needs p >= 1");
      break;
    case Experiment::Conditioning:
      if (space != SpaceFamily::TrefftzPoly)
        throw std::invalid_argument("conditioning runs on the polynomial Trefftz space");
      break;
    case Experiment::VerifyBasis:
      if (dim < 1 || dim > 3)
        throw std::invalid_argument("verify-basis supports d = 1, 2, 3");
      break;
    default: break;
    }
  if (experiment != Experiment::VerifyBasis && experiment != Experiment::ConvP)
    space_kind(p).validate();
}

void fill_rates(ConvergenceTable& table)
{
  for (std::size_t r = 0; r < table.size(); ++r)
    {
      table[r].rate.reset();
      if (r == 0)
        continue;
      const auto& prev = table[r - 1].dg_error;
      const auto& cur = table[r].dg_error;
      if (prev && cur && std::isfinite(*prev) && std::isfinite(*cur) && *prev > kRateErrorFloor
          && *cur > kRateErrorFloor)
        table[r].rate = std::log2(*prev / *cur);
    }
}

std::optional<double> fitted_slope(const ConvergenceTable& table,
                                   std::optional<double> ConvergenceRow::*column)
{
  std::vector<std::pair<double, double>> pts;
  for (const auto& row : table)
    {
      const auto& y = row.*column;
      if (y && std::isfinite(*y) && *y > 0.0)
        pts.emplace_back(std::log2(row.h_x), std::log2(*y));
    }
  if (pts.size() < 2)
    return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts)
    {
      mx += x;
      my += y;
    }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [x, y] : pts)
    {
      sxy += (x - mx) * (y - my);
      sxx += (x - mx) * (x - mx);
    }
  if (sxx == 0.0)
    return std::nullopt;
  return sxy / sxx;
}

namespace {

std::size_t pow2(int j)
{
  return std::size_t{1} << j;
}

double relative_gap(const ComplexVector& a, const ComplexVector& b)
{
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    {
      diff = std::max(diff, std::abs(a[i] - b[i]));
      scale = std::max(scale, std::abs(b[i]));
    }
  return scale == 0.0 ? diff : diff / scale;
}

struct SmoothProblem
{
  ExpSolution exact;
  BoundaryData data;
  PiecewiseField field;

  explicit SmoothProblem(double kappa)
    : exact(kappa),
      data(BoundaryData::from_solution([s = ExpSolution(kappa)](double x, double t) {
        return s.value(x, t);
      })),
      field(global_field([s = ExpSolution(kappa)](double x, double t) { return s.value(x, t); },
                         [s = ExpSolution(kappa)](double x, double t) { return s.dx(x, t); }))
  {}
};

ConvergenceRow solve_level(const std::shared_ptr<const Mesh>& mesh, const SpaceKind& kind,
                           const BoundaryData& data, const PiecewiseField& exact,
                           const ExperimentConfig& config, bool check_conditioning)
{
  auto space = std::make_shared<const DiscreteSpace>(mesh, kind);
  const QuadraturePolicy quad = QuadraturePolicy::for_space(kind, config.quad_n);
  ConvergenceRow row;
  row.h_x = mesh->max_h_x();
  row.h_t = mesh->max_h_t();
  row.n_dofs = space->total_dofs();

  if (check_conditioning && space->slab_dofs(0) <= kMaxCond2Size)
    row.cond2 = cond2(assemble_slab(*space, 0, data, nullptr, quad).matrix);
  if (row.cond2 && !(*row.cond2 < kIllConditioned))
    {
      row.dg_error = std::numeric_limits<double>::quiet_NaN();
      return row;
    }

  DiscreteSolution solution = march(space, data, quad);
  if (config.global_oracle && space->total_dofs() <= kMaxGlobalDofs)
    row.oracle_gap = relative_gap(solution.global_vector(),
                                  solve_global(space, data, quad).global_vector());
  const std::size_t norm_points = config.quad_n.value_or(kNormQuadraturePoints);
  row.dg_error = dg_norm(difference(exact, solution.field()), *mesh, norm_points);
  return row;
}

}  // namespace

ConvergenceTable run_conv_h(const ExperimentConfig& config)
{
  config.validate();
  const SmoothProblem problem(config.kappa);
  const SpaceKind kind = config.space_kind(config.p);
  ConvergenceTable table;
  for (int j = 0; j < config.levels; ++j)
    {
      const std::size_t n = 10 * pow2(j);
      auto mesh = std::make_shared<const Mesh>(build_cartesian_mesh({0.0, 1.0, 1.0}, n, n));
      ConvergenceRow row = solve_level(mesh, kind, problem.data, problem.field, config, false);
      row.level = j;
      table.push_back(row);
    }
  fill_rates(table);
  return table;
}

ConvergenceTable run_conv_p(const ExperimentConfig& config)
{
  config.validate();
  const SmoothProblem problem(config.kappa);
  auto mesh = std::make_shared<const Mesh>(build_cartesian_mesh({0.0, 1.0, 1.0}, 10, 10));
  ConvergenceTable table;
  for (int p = 1; p <= config.p; ++p)
    {
      ConvergenceRow row =
          solve_level(mesh, config.space_kind(p), problem.data, problem.field, config, true);
      row.level = p;
      table.push_back(row);
    }
  fill_rates(table);
  return table;
}

ConditioningReport run_conditioning(const ExperimentConfig& config)
{
  config.validate();
  const SmoothProblem problem(config.kappa);
  ConditioningReport report;
  report.p = config.p;
  for (SeedChoice seed : {SeedChoice::A, SeedChoice::B})
    {
      const SpaceKind kind = SpaceKind::trefftz(config.p, seed);
      const QuadraturePolicy quad = QuadraturePolicy::for_space(kind, config.quad_n);
      ConvergenceTable table;
      for (int j = 0; j < config.levels; ++j)
        {
          const std::size_t n = 10 * pow2(j);
          auto mesh = std::make_shared<const Mesh>(build_cartesian_mesh({0.0, 1.0, 1.0}, n, n));
          const DiscreteSpace space(mesh, kind);
          ConvergenceRow row;
          row.level = j;
          row.h_x = mesh->max_h_x();
          row.h_t = mesh->max_h_t();
          row.n_dofs = space.total_dofs();
          if (space.slab_dofs(0) <= kMaxCond2Size)
            row.cond2 = cond2(assemble_slab(space, 0, problem.data, nullptr, quad).matrix);
          table.push_back(row);
        }
      if (seed == SeedChoice::A)
        {
          report.slope_a = fitted_slope(table, &ConvergenceRow::cond2);
          report.choice_a = std::move(table);
        }
      else
        {
          report.slope_b = fitted_slope(table, &ConvergenceRow::cond2);
          report.choice_b = std::move(table);
        }
    }
  return report;
}

ConvergenceTable run_singular(const ExperimentConfig& config)
{
  config.validate();
  const SquareWellSeries series(SquareWellSeries::kDefaultModes);
  const BoundaryData data{[](double x) { return Complex{SquareWellSeries::initial_value(x), 0.0}; },
                          [](double, double) { return Complex{0.0, 0.0}; }};
  const PiecewiseField exact =
      global_field([series](double x, double t) { return series.value(x, t); },
                   [series](double x, double t) { return series.dx(x, t); });
  const SpaceKind kind = config.space_kind(config.p);
  ConvergenceTable table;
  for (int j = 0; j < config.levels; ++j)
    {
      const std::size_t n = 2 * pow2(j);
      auto mesh = std::make_shared<const Mesh>(build_cartesian_mesh({0.0, 1.0, 0.1}, n, n));
      ConvergenceRow row;
      try
        {
          row = solve_level(mesh, kind, data, exact, config, true);
        }
      catch (const SolverError& e)
        {
          row.h_x = mesh->max_h_x();
          row.h_t = mesh->max_h_t();
          row.n_dofs = kind.local_dim() * mesh->elements().size();
          row.cond2 = e.condition();
          row.dg_error = std::numeric_limits<double>::quiet_NaN();
        }
      row.level = j;
      table.push_back(row);
    }
  fill_rates(table);
  return table;
}

bool BasisReport::passed() const
{
  return dim == expected_dim && residual_max <= 1e-13 && gram_full_rank
      && trace_reconstruction_error <= 1e-12;
}

namespace {

std::size_t binomial(std::size_t n, std::size_t k)
{
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

double max_coefficient_gap(const ScaledPolynomial& a, const ScaledPolynomial& b)
{
  double gap = 0.0;
  for (const auto& [j, c] : a.coefficients())
    gap = std::max(gap, std::abs(c - b.coefficient(j)));
  for (const auto& [j, c] : b.coefficients())
    gap = std::max(gap, std::abs(c - a.coefficient(j)));
  return gap;
}

}  // namespace

BasisReport verify_basis(std::size_t d, int p, SeedChoice seed)
{
  if (d < 1 || p < 0)
    throw std::invalid_argument("verify_basis: need d >= 1 and p >= 0");
  const ElementGeometry geometry = ElementGeometry::unit(d);
  const ElementBasis basis = trefftz_basis(d, p, geometry, seed);

  BasisReport r;
  r.d = d;
  r.p = p;
  r.dim = basis.dim();
  r.expected_dim = binomial(2 * static_cast<std::size_t>(p) + d, d);

  std::vector<const ScaledPolynomial*> polys;
  for (const auto& fn : basis.functions)
    polys.push_back(&std::get<ScaledPolynomial>(fn));

  for (const auto* q : polys)
    {
      const double scale = q->max_abs_coefficient();
      const double residual = apply_schrodinger(*q).max_abs_coefficient();
      r.residual_max = std::max(r.residual_max, scale > 0.0 ? residual / scale : residual);
    }

  // Gram matrix of the restrictions to t = t_K over the box K_x.
  const std::size_t n = 2 * static_cast<std::size_t>(p) + 2;
  const QuadratureRule rule = map_to_interval(gauss_legendre(n), -0.5 * geometry.h_x,
                                              0.5 * geometry.h_x);
  std::size_t total = 1;
  for (std::size_t l = 0; l < d; ++l)
    total *= n;
  DenseComplexMatrix gram(r.dim);
  std::vector<double> x(d);
  std::vector<Complex> values(r.dim);
  const MultiIndex value_index = MultiIndex::zero(d);
  for (std::size_t flat = 0; flat < total; ++flat)
    {
      double w = 1.0;
      std::size_t rest = flat;
      for (std::size_t l = 0; l < d; ++l)
        {
          const std::size_t q = rest % n;
          rest /= n;
          x[l] = geometry.center_x[l] + rule.nodes[q];
          w *= rule.weights[q];
        }
      for (std::size_t a = 0; a < r.dim; ++a)
        values[a] = eval_poly(*polys[a], x, geometry.t_center, value_index);
      for (std::size_t a = 0; a < r.dim; ++a)
        for (std::size_t b = 0; b < r.dim; ++b)
          gram(a, b) += w * values[b] * std::conj(values[a]);
    }
  const auto sigma = singular_values(gram);
  r.gram_sigma_ratio = sigma.empty() || sigma.front() == 0.0 ? 0.0 : sigma.back() / sigma.front();
  r.gram_full_rank = r.gram_sigma_ratio > 1e-10;

  // Random member rebuilt from its t = t_K restriction, both through the
  // recurrence and through the seed coordinates.
  std::mt19937_64 rng(20240101 + 31 * d + static_cast<std::size_t>(p));
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  ScaledPolynomial member(geometry.frame(), 2 * p);
  std::vector<Complex> gamma(r.dim);
  for (std::size_t a = 0; a < r.dim; ++a)
    {
      gamma[a] = {uni(rng), uni(rng)};
      member += gamma[a] * *polys[a];
    }
  ScaledPolynomial trace(geometry.frame(), 2 * p);
  for (const auto& [j, c] : member.coefficients())
    if (j.jt == 0)
      trace.set(j, c);
  const ScaledPolynomial rebuilt = trefftz_from_trace(trace, p);

  ScaledPolynomial from_seeds(geometry.frame(), 2 * p);
  const auto seeds = spatial_indices(d, 2 * p);
  for (std::size_t a = 0; a < r.dim; ++a)
    {
      const MultiIndex j{seeds[a], 0};
      const Complex coord = trace.coefficient(j) / polys[a]->coefficient(j);
      from_seeds += coord * *polys[a];
    }
  const double scale = std::max(member.max_abs_coefficient(), 1e-300);
  r.trace_reconstruction_error = std::max(max_coefficient_gap(member, rebuilt),
                                          max_coefficient_gap(member, from_seeds))
                               / scale;
  return r;
}

nlohmann::json to_json(const BasisReport& r)
{
  return {
      {"d", r.d},
      {"p", r.p},
      {"dim", r.dim},
      {"expected_dim", r.expected_dim},
      {"residual_max", r.residual_max},
      {"gram_sigma_ratio", r.gram_sigma_ratio},
      {"gram_full_rank", r.gram_full_rank},
      {"trace_reconstruction_error", r.trace_reconstruction_error},
      {"pass", r.passed()},
  };
}

namespace {

void write_optional(std::ostream& os, const std::optional<double>& v)
{
  if (v && std::isfinite(*v))
    os << *v;
}

}  // namespace

void write_csv(std::ostream& os, const ConvergenceTable& table)
{
  std::ostringstream buf;
  buf << std::setprecision(17);
  buf << "level,h_x,h_t,n_dofs,dg_error,rate,cond2\n";
  for (const auto& row : table)
    {
      buf << row.level << ',' << row.h_x << ',' << row.h_t << ',' << row.n_dofs << ',';
      write_optional(buf, row.dg_error);
      buf << ',';
      write_optional(buf, row.rate);
      buf << ',';
      write_optional(buf, row.cond2);
      buf << '\n';
    }
  os << buf.str();
}

nlohmann::json table_json(const ConvergenceTable& table)
{
  auto opt = [](const std::optional<double>& v) -> nlohmann::json {
    if (v && std::isfinite(*v))
      return *v;
    return nullptr;
  };
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table)
    {
      nlohmann::json r = {
          {"level", row.level},     {"h_x", row.h_x},        {"h_t", row.h_t},
          {"n_dofs", row.n_dofs},   {"dg_error", opt(row.dg_error)},
          {"rate", opt(row.rate)},  {"cond2", opt(row.cond2)},
      };
      if (row.oracle_gap)
        r["oracle_gap"] = *row.oracle_gap;
      rows.push_back(r);
    }
  return {
      {"rows", rows},
      {"slope_dg_error", opt(fitted_slope(table, &ConvergenceRow::dg_error))},
      {"slope_cond2", opt(fitted_slope(table, &ConvergenceRow::cond2))},
  };
}

}  // namespace schrodg
