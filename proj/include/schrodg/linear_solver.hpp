#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace schrodg {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense row-major complex matrix.
class DenseComplexMatrix
{
public:
  DenseComplexMatrix() = default;
  DenseComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0})
  {}
  explicit DenseComplexMatrix(std::size_t n) : DenseComplexMatrix(n, n) {}

  static DenseComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Complex> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Complex> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  double frobenius_norm() const;
  bool all_finite() const;

  DenseComplexMatrix& operator*=(Complex c);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexVector operator*(const DenseComplexMatrix& a, std::span<const Complex> x);

double norm2(std::span<const Complex> v);

/// Thrown when elimination meets an exactly zero pivot.
class SingularMatrixError : public std::runtime_error
{
public:
  SingularMatrixError(const std::string& what, std::size_t column)
    : std::runtime_error(what), column_(column)
  {}
  std::size_t column() const { return column_; }

private:
  std::size_t column_;
};

/// Nonzero pattern hint: a(i, j) == 0 whenever j < i - lower or j > i + upper.
/// Partial pivoting widens the upper band of U to lower + upper.
struct Bandwidth
{
  std::size_t lower;
  std::size_t upper;

  static Bandwidth full(std::size_t n) { return {n, n}; }
};

/// LU factorization with partial (row) pivoting.
class LuFactorization
{
public:
  explicit LuFactorization(DenseComplexMatrix a);
  LuFactorization(DenseComplexMatrix a, Bandwidth band);

  std::size_t size() const { return lu_.rows(); }
  ComplexVector solve(std::span<const Complex> b) const;

private:
  void factor();

  DenseComplexMatrix lu_;
  std::vector<std::size_t> pivots_;
  Bandwidth band_;
};

ComplexVector solve_lu(const DenseComplexMatrix& a, std::span<const Complex> b);
ComplexVector solve_lu(const DenseComplexMatrix& a, std::span<const Complex> b, Bandwidth band);

/// ||Ax - b|| / (||A||_F ||x|| + ||b||).
double relative_residual(const DenseComplexMatrix& a, std::span<const Complex> x,
                         std::span<const Complex> b);

/// Singular values (descending) by one-sided Jacobi rotations.
std::vector<double> singular_values(const DenseComplexMatrix& a);

inline constexpr std::size_t kMaxCond2Size = 2000;

/// sigma_max / sigma_min; +infinity for a singular matrix.
double cond2(const DenseComplexMatrix& a);

/// Matrix Market coordinate format, complex general, 1-based indices.
void write_matrix_market(std::ostream& os, const DenseComplexMatrix& a);

}  // namespace schrodg
