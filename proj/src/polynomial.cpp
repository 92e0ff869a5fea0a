#include "schrodg/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace schrodg {

int MultiIndex::spatial_order() const
{
  return std::accumulate(jx.begin(), jx.end(), 0);
}

bool MultiIndex::nonnegative() const
{
  return jt >= 0 && std::all_of(jx.begin(), jx.end(), [](int v) { return v >= 0; });
}

namespace {

double factorial(int n)
{
  double f = 1.0;
  for (int k = 2; k <= n; ++k)
    f *= k;
  return f;
}

// n (n-1) ... (n-k+1)
double falling(int n, int k)
{
  double f = 1.0;
  for (int m = 0; m < k; ++m)
    f *= n - m;
  return f;
}

double ipow(double x, int n)
{
  double r = 1.0;
  for (int k = 0; k < n; ++k)
    r *= x;
  return r;
}

// All compositions of `total` into `parts` nonnegative parts, first part
// descending.
void compositions(int total, std::size_t parts, std::vector<int>& prefix,
                  std::vector<std::vector<int>>& out)
{
  if (parts == 1)
    {
      prefix.push_back(total);
      out.push_back(prefix);
      prefix.pop_back();
      return;
    }
  for (int first = total; first >= 0; --first)
    {
      prefix.push_back(first);
      compositions(total - first, parts - 1, prefix, out);
      prefix.pop_back();
    }
}

}  // namespace

double MultiIndex::factorial() const
{
  double f = schrodg::factorial(jt);
  for (int v : jx)
    f *= schrodg::factorial(v);
  return f;
}

std::vector<MultiIndex> multi_indices(std::size_t d, int max_order)
{
  std::vector<MultiIndex> out;
  std::vector<int> prefix;
  for (int order = 0; order <= max_order; ++order)
    {
      std::vector<std::vector<int>> comps;
      compositions(order, d + 1, prefix, comps);
      for (auto& c : comps)
        {
          const int jt = c.back();
          c.pop_back();
          out.emplace_back(std::move(c), jt);
        }
    }
  return out;
}

std::vector<std::vector<int>> spatial_indices(std::size_t d, int max_order)
{
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  for (int order = 0; order <= max_order; ++order)
    compositions(order, d, prefix, out);
  return out;
}

ScaledPolynomial::ScaledPolynomial(PolyFrame frame, int degree_bound)
  : frame_(std::move(frame)), degree_bound_(degree_bound)
{
  if (frame_.dim() == 0)
    throw std::invalid_argument("ScaledPolynomial: space dimension must be at least 1");
  if (!(frame_.h_x > 0.0) || !(frame_.h_t > 0.0))
    throw std::invalid_argument("ScaledPolynomial: scales must be positive");
  if (degree_bound_ < 0)
    throw std::invalid_argument("ScaledPolynomial: negative degree bound");
}

void ScaledPolynomial::check_index(const MultiIndex& j) const
{
  if (j.dim() != dim() || !j.nonnegative())
    throw std::invalid_argument("ScaledPolynomial: malformed multi-index");
  if (j.order() > degree_bound_)
    throw std::invalid_argument("ScaledPolynomial: multi-index of order "
                                + std::to_string(j.order()) + " exceeds degree bound "
                                + std::to_string(degree_bound_));
}

Complex ScaledPolynomial::coefficient(const MultiIndex& j) const
{
  const auto it = coeffs_.find(j);
  return it == coeffs_.end() ? Complex{0.0, 0.0} : it->second;
}

void ScaledPolynomial::set(const MultiIndex& j, Complex value)
{
  check_index(j);
  coeffs_[j] = value;
}

void ScaledPolynomial::add(const MultiIndex& j, Complex value)
{
  check_index(j);
  coeffs_[j] += value;
}

double ScaledPolynomial::max_abs_coefficient() const
{
  double m = 0.0;
  for (const auto& [j, c] : coeffs_)
    m = std::max(m, std::abs(c));
  return m;
}

ScaledPolynomial ScaledPolynomial::recentered(std::span<const double> center_x,
                                              double center_t) const
{
  if (center_x.size() != dim())
    throw std::invalid_argument("ScaledPolynomial::recentered: dimension mismatch");
  ScaledPolynomial out = *this;
  out.frame_.center_x.assign(center_x.begin(), center_x.end());
  out.frame_.center_t = center_t;
  return out;
}

ScaledPolynomial& ScaledPolynomial::operator+=(const ScaledPolynomial& other)
{
  if (!(other.frame_ == frame_))
    throw std::invalid_argument("ScaledPolynomial: adding polynomials in different frames");
  degree_bound_ = std::max(degree_bound_, other.degree_bound_);
  for (const auto& [j, c] : other.coeffs_)
    coeffs_[j] += c;
  return *this;
}

ScaledPolynomial& ScaledPolynomial::operator*=(Complex c)
{
  for (auto& [j, v] : coeffs_)
    v *= c;
  return *this;
}

ScaledPolynomial operator+(ScaledPolynomial a, const ScaledPolynomial& b)
{
  a += b;
  return a;
}

ScaledPolynomial operator*(Complex c, ScaledPolynomial p)
{
  p *= c;
  return p;
}

Complex eval_poly(const ScaledPolynomial& p, std::span<const double> x, double t,
                  const MultiIndex& deriv)
{
  const std::size_t d = p.dim();
  if (x.size() != d || deriv.dim() != d)
    throw std::invalid_argument("eval_poly: dimension mismatch");
  if (!deriv.nonnegative())
    throw std::invalid_argument("eval_poly: negative derivative order");
  const PolyFrame& f = p.frame();

  std::vector<double> xs(d);
  for (std::size_t l = 0; l < d; ++l)
    xs[l] = (x[l] - f.center_x[l]) / f.h_x;
  const double ts = (t - f.center_t) / f.h_t;
  const double chain = 1.0 / (ipow(f.h_x, deriv.spatial_order()) * ipow(f.h_t, deriv.jt));

  Complex sum = 0.0;
  for (const auto& [j, c] : p.coefficients())
    {
      if (j.jt < deriv.jt)
        continue;
      double w = falling(j.jt, deriv.jt) * ipow(ts, j.jt - deriv.jt);
      bool skip = false;
      for (std::size_t l = 0; l < d && !skip; ++l)
        {
          if (j.jx[l] < deriv.jx[l])
            skip = true;
          else
            w *= falling(j.jx[l], deriv.jx[l]) * ipow(xs[l], j.jx[l] - deriv.jx[l]);
        }
      if (!skip)
        sum += c * w;
    }
  return sum * chain;
}

Complex eval_poly(const ScaledPolynomial& p, double x, double t, int dx, int dt)
{
  if (p.dim() != 1)
    throw std::invalid_argument("eval_poly: scalar overload needs d = 1");
  if (dx < 0 || dt < 0)
    throw std::invalid_argument("eval_poly: negative derivative order");
  const PolyFrame& f = p.frame();
  const double xs = (x - f.center_x[0]) / f.h_x;
  const double ts = (t - f.center_t) / f.h_t;
  Complex sum = 0.0;
  for (const auto& [j, c] : p.coefficients())
    {
      const int jx = j.jx[0];
      if (jx < dx || j.jt < dt)
        continue;
      sum += c * (falling(jx, dx) * ipow(xs, jx - dx) * falling(j.jt, dt) * ipow(ts, j.jt - dt));
    }
  return sum / (ipow(f.h_x, dx) * ipow(f.h_t, dt));
}

ScaledPolynomial apply_schrodinger(const ScaledPolynomial& p)
{
  const PolyFrame& f = p.frame();
  ScaledPolynomial out(f, p.degree_bound());
  const Complex i{0.0, 1.0};
  const double hx2 = f.h_x * f.h_x;
  for (const auto& [j, c] : p.coefficients())
    {
      if (j.jt > 0)
        out.add({j.jx, j.jt - 1}, i * static_cast<double>(j.jt) * c / f.h_t);
      for (std::size_t l = 0; l < j.dim(); ++l)
        {
          if (j.jx[l] < 2)
            continue;
          MultiIndex lowered = j;
          lowered.jx[l] -= 2;
          out.add(lowered, 0.5 * j.jx[l] * (j.jx[l] - 1) * c / hx2);
        }
    }
  return out;
}

namespace {

Complex scaled_taylor_coefficient(const DerivativeOracle& oracle, const MultiIndex& j,
                                  const PolyFrame& frame)
{
  const Complex dj = oracle(j, frame.center_x, frame.center_t);
  return dj * (ipow(frame.h_x, j.spatial_order()) * ipow(frame.h_t, j.jt)) / j.factorial();
}

}  // namespace

ScaledPolynomial taylor_poly(const DerivativeOracle& oracle, int order, const PolyFrame& frame)
{
  if (order < 1)
    throw std::invalid_argument("taylor_poly: order must be at least 1");
  ScaledPolynomial out(frame, order - 1);
  for (const auto& j : multi_indices(frame.dim(), order - 1))
    out.set(j, scaled_taylor_coefficient(oracle, j, frame));
  return out;
}

ScaledPolynomial extended_taylor_poly(const DerivativeOracle& oracle, int p,
                                      const PolyFrame& frame)
{
  if (p < 0)
    throw std::invalid_argument("extended_taylor_poly: negative degree parameter");
  ScaledPolynomial out(frame, 2 * p);
  for (const auto& j : multi_indices(frame.dim(), 2 * p))
    {
      const int order = j.order();
      const bool in_taylor = order <= p;
      const bool in_extension = 2 * j.jt + j.spatial_order() <= 2 * p && order >= p + 1;
      if (in_taylor || in_extension)
        out.set(j, scaled_taylor_coefficient(oracle, j, frame));
    }
  return out;
}

nlohmann::json to_json(const ScaledPolynomial& p)
{
  const PolyFrame& f = p.frame();
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [j, c] : p.coefficients())
    terms.push_back({j.jx, j.jt, c.real(), c.imag()});
  return {
      {"center", {{"x", f.center_x}, {"t", f.center_t}}},
      {"scales", {{"h_x", f.h_x}, {"h_t", f.h_t}}},
      {"degree_bound", p.degree_bound()},
      {"terms", terms},
  };
}

ScaledPolynomial polynomial_from_json(const nlohmann::json& j)
{
  PolyFrame frame;
  frame.center_x = j.at("center").at("x").get<std::vector<double>>();
  frame.center_t = j.at("center").at("t").get<double>();
  frame.h_x = j.at("scales").at("h_x").get<double>();
  frame.h_t = j.at("scales").at("h_t").get<double>();
  ScaledPolynomial p(frame, j.at("degree_bound").get<int>());
  for (const auto& term : j.at("terms"))
    p.set({term.at(0).get<std::vector<int>>(), term.at(1).get<int>()},
          {term.at(2).get<double>(), term.at(3).get<double>()});
  return p;
}

}  // namespace schrodg
