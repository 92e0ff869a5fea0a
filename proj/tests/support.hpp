#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <random>

#include "schrodg/assembly.hpp"
#include "schrodg/error_norms.hpp"
#include "schrodg/exact_solutions.hpp"
#include "schrodg/mesh.hpp"

namespace testing {

using schrodg::Complex;

inline std::shared_ptr<const schrodg::Mesh> unit_mesh(std::size_t nx, std::size_t nt,
                                                      double t_final = 1.0)
{
  return std::make_shared<const schrodg::Mesh>(
      schrodg::build_cartesian_mesh({0.0, 1.0, t_final}, nx, nt));
}

inline std::shared_ptr<const schrodg::DiscreteSpace> make_space(
    std::shared_ptr<const schrodg::Mesh> mesh, const schrodg::SpaceKind& kind)
{
  return std::make_shared<const schrodg::DiscreteSpace>(std::move(mesh), kind);
}

inline schrodg::BoundaryData exp_data(double kappa)
{
  const schrodg::ExpSolution s(kappa);
  return schrodg::BoundaryData::from_solution([s](double x, double t) { return s.value(x, t); });
}

inline schrodg::PiecewiseField exp_field(double kappa)
{
  const schrodg::ExpSolution s(kappa);
  return schrodg::global_field([s](double x, double t) { return s.value(x, t); },
                               [s](double x, double t) { return s.dx(x, t); });
}

inline double max_abs(std::span<const Complex> v)
{
  double m = 0.0;
  for (const auto& z : v)
    m = std::max(m, std::abs(z));
  return m;
}

inline double max_gap(std::span<const Complex> a, std::span<const Complex> b)
{
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline schrodg::ComplexVector random_vector(std::size_t n, std::mt19937_64& rng)
{
  std::normal_distribution<double> g;
  schrodg::ComplexVector v(n);
  for (auto& z : v)
    z = {g(rng), g(rng)};
  return v;
}

inline const std::array<schrodg::SpaceKind, 4> all_families(int p)
{
  return {schrodg::SpaceKind::trefftz(p), schrodg::SpaceKind::quasi_trefftz(p),
          schrodg::SpaceKind::full(p), schrodg::SpaceKind::plane_wave(p)};
}

}  // namespace testing
