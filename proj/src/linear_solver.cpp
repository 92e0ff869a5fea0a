#include "schrodg/linear_solver.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace schrodg {

DenseComplexMatrix DenseComplexMatrix::identity(std::size_t n)
{
  DenseComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1.0;
  return m;
}

double DenseComplexMatrix::frobenius_norm() const
{
  double s = 0.0;
  for (const auto& v : data_)
    s += std::norm(v);
  return std::sqrt(s);
}

bool DenseComplexMatrix::all_finite() const
{
  return std::all_of(data_.begin(), data_.end(), [](const Complex& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

DenseComplexMatrix& DenseComplexMatrix::operator*=(Complex c)
{
  for (auto& v : data_)
    v *= c;
  return *this;
}

ComplexVector operator*(const DenseComplexMatrix& a, std::span<const Complex> x)
{
  if (x.size() != a.cols())
    throw std::invalid_argument("matrix-vector product: size mismatch");
  ComplexVector y(a.rows(), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < a.rows(); ++i)
    {
      Complex s = 0.0;
      const auto r = a.row(i);
      for (std::size_t j = 0; j < a.cols(); ++j)
        s += r[j] * x[j];
      y[i] = s;
    }
  return y;
}

double norm2(std::span<const Complex> v)
{
  double s = 0.0;
  for (const auto& z : v)
    s += std::norm(z);
  return std::sqrt(s);
}

LuFactorization::LuFactorization(DenseComplexMatrix a)
  : lu_(std::move(a)), band_(Bandwidth::full(lu_.rows()))
{
  if (!lu_.is_square())
    throw std::invalid_argument("LuFactorization: matrix must be square");
  factor();
}

LuFactorization::LuFactorization(DenseComplexMatrix a, Bandwidth band)
  : lu_(std::move(a)), band_(band)
{
  if (!lu_.is_square())
    throw std::invalid_argument("LuFactorization: matrix must be square");
  factor();
}

void LuFactorization::factor()
{
  const std::size_t n = lu_.rows();
  pivots_.resize(n);
  const std::size_t upper = band_.lower + band_.upper;
  for (std::size_t k = 0; k < n; ++k)
    {
      const std::size_t row_end = std::min(n, k + band_.lower + 1);
      const std::size_t col_end = std::min(n, k + upper + 1);

      std::size_t piv = k;
      double best = std::abs(lu_(k, k));
      for (std::size_t i = k + 1; i < row_end; ++i)
        {
          const double v = std::abs(lu_(i, k));
          if (v > best)
            {
              best = v;
              piv = i;
            }
        }
      pivots_[k] = piv;
      if (best == 0.0)
        throw SingularMatrixError("LU: zero pivot in column " + std::to_string(k), k);
      // Multipliers left of k stay in place; solve() applies pivots one by one.
      if (piv != k)
        for (std::size_t j = k; j < col_end; ++j)
          std::swap(lu_(k, j), lu_(piv, j));

      const Complex inv = 1.0 / lu_(k, k);
      for (std::size_t i = k + 1; i < row_end; ++i)
        {
          Complex& l = lu_(i, k);
          if (l == Complex{0.0, 0.0})
            continue;
          l *= inv;
          const auto src = lu_.row(k);
          auto dst = lu_.row(i);
          for (std::size_t j = k + 1; j < col_end; ++j)
            dst[j] -= l * src[j];
        }
    }
}

ComplexVector LuFactorization::solve(std::span<const Complex> b) const
{
  const std::size_t n = lu_.rows();
  if (b.size() != n)
    throw std::invalid_argument("LuFactorization::solve: size mismatch");
  ComplexVector x(b.begin(), b.end());
  for (std::size_t k = 0; k < n; ++k)
    {
      if (pivots_[k] != k)
        std::swap(x[k], x[pivots_[k]]);
      const std::size_t row_end = std::min(n, k + band_.lower + 1);
      for (std::size_t i = k + 1; i < row_end; ++i)
        x[i] -= lu_(i, k) * x[k];
    }
  const std::size_t upper = band_.lower + band_.upper;
  for (std::size_t k = n; k-- > 0;)
    {
      Complex s = x[k];
      const std::size_t col_end = std::min(n, k + upper + 1);
      for (std::size_t j = k + 1; j < col_end; ++j)
        s -= lu_(k, j) * x[j];
      x[k] = s / lu_(k, k);
    }
  return x;
}

ComplexVector solve_lu(const DenseComplexMatrix& a, std::span<const Complex> b)
{
  return LuFactorization(a).solve(b);
}

ComplexVector solve_lu(const DenseComplexMatrix& a, std::span<const Complex> b, Bandwidth band)
{
  return LuFactorization(a, band).solve(b);
}

double relative_residual(const DenseComplexMatrix& a, std::span<const Complex> x,
                         std::span<const Complex> b)
{
  ComplexVector r = a * x;
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] -= b[i];
  const double denom = a.frobenius_norm() * norm2(x) + norm2(b);
  return denom == 0.0 ? norm2(r) : norm2(r) / denom;
}

std::vector<double> singular_values(const DenseComplexMatrix& a)
{
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  // Work on columns stored contiguously.
  std::vector<ComplexVector> cols(n, ComplexVector(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      cols[j][i] = a(i, j);

  const double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < 80; ++sweep)
    {
      bool rotated = false;
      for (std::size_t p = 0; p + 1 < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q)
          {
            auto& ap = cols[p];
            auto& aq = cols[q];
            double alpha = 0.0, beta = 0.0;
            Complex gamma = 0.0;
            for (std::size_t i = 0; i < m; ++i)
              {
                alpha += std::norm(ap[i]);
                beta += std::norm(aq[i]);
                gamma += std::conj(ap[i]) * aq[i];
              }
            const double g = std::abs(gamma);
            if (g == 0.0 || g <= eps * std::sqrt(alpha * beta))
              continue;
            rotated = true;
            const double zeta = (beta - alpha) / (2.0 * g);
            const double t = (zeta >= 0.0 ? 1.0 : -1.0)
                           / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = c * t;
            const Complex phase = std::conj(gamma) / g;
            for (std::size_t i = 0; i < m; ++i)
              {
                const Complex xp = ap[i];
                const Complex xq = aq[i] * phase;
                ap[i] = c * xp - s * xq;
                aq[i] = s * xp + c * xq;
              }
          }
      if (!rotated)
        break;
    }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j)
    sigma[j] = norm2(cols[j]);
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  if (m < n)
    sigma.resize(m);
  return sigma;
}

double cond2(const DenseComplexMatrix& a)
{
  if (!a.is_square())
    throw std::invalid_argument("cond2: matrix must be square");
  if (a.rows() > kMaxCond2Size)
    throw std::invalid_argument("cond2: matrix larger than " + std::to_string(kMaxCond2Size));
  if (a.rows() == 0)
    return 1.0;
  const auto sigma = singular_values(a);
  if (sigma.back() == 0.0)
    return std::numeric_limits<double>::infinity();
  return sigma.front() / sigma.back();
}

void write_matrix_market(std::ostream& os, const DenseComplexMatrix& a)
{
  std::size_t nnz = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != Complex{0.0, 0.0})
        ++nnz;
  os << "%%MatrixMarket matrix coordinate complex general\n";
  os << a.rows() << ' ' << a.cols() << ' ' << nnz << '\n';
  os << std::setprecision(17);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != Complex{0.0, 0.0})
        os << i + 1 << ' ' << j + 1 << ' ' << a(i, j).real() << ' ' << a(i, j).imag() << '\n';
}

}  // namespace schrodg
