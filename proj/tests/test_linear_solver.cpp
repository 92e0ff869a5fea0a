#include <doctest.h>

#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "schrodg/linear_solver.hpp"
#include "support.hpp"

using namespace schrodg;

namespace {

DenseComplexMatrix random_matrix(std::size_t n, std::mt19937_64& rng)
{
  std::normal_distribution<double> g;
  DenseComplexMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = {g(rng), g(rng)};
  return a;
}

Eigen::MatrixXcd to_eigen(const DenseComplexMatrix& a)
{
  Eigen::MatrixXcd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m(Eigen::Index(i), Eigen::Index(j)) = a(i, j);
  return m;
}

DenseComplexMatrix from_eigen(const Eigen::MatrixXcd& m)
{
  DenseComplexMatrix a(std::size_t(m.rows()), std::size_t(m.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      a(i, j) = m(Eigen::Index(i), Eigen::Index(j));
  return a;
}

}  // namespace

TEST_CASE("solve examples")
{
  const ComplexVector b{{1.0, 2.0}, {-3.0, 0.5}, {0.0, 1.0}};
  CHECK(testing::max_gap(solve_lu(DenseComplexMatrix::identity(3), b), b) == 0.0);

  DenseComplexMatrix s(1);
  s(0, 0) = {0.0, 2.0};
  const auto x = solve_lu(s, ComplexVector{{0.0, 2.0}});
  CHECK(std::abs(x[0] - 1.0) < 1e-15);

  DenseComplexMatrix perm(2);
  perm(0, 1) = 1.0;
  perm(1, 0) = 1.0;
  const auto y = solve_lu(perm, ComplexVector{1.0, 2.0});
  CHECK(std::abs(y[0] - 2.0) < 1e-15);
  CHECK(std::abs(y[1] - 1.0) < 1e-15);
}

TEST_CASE("singular matrices are reported")
{
  DenseComplexMatrix z(3);
  z(0, 0) = 1.0;
  z(1, 1) = 1.0;
  CHECK_THROWS_AS(solve_lu(z, ComplexVector(3, 1.0)), SingularMatrixError);
  CHECK_THROWS_AS(LuFactorization(DenseComplexMatrix(2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(solve_lu(DenseComplexMatrix::identity(2), ComplexVector(3)),
                  std::invalid_argument);
}

TEST_CASE("random systems, dense and banded")
{
  std::mt19937_64 rng(11);
  for (std::size_t n : {1u, 2u, 5u, 40u, 200u})
    {
      DenseComplexMatrix a = random_matrix(n, rng);
      for (std::size_t i = 0; i < n; ++i)
        a(i, i) += Complex(2.0 * std::sqrt(double(n)), 0.0);
      const ComplexVector b = testing::random_vector(n, rng);
      const ComplexVector x = solve_lu(a, b);
      CHECK(relative_residual(a, x, b) <= 1e-10);

      // Oracle: Eigen's partial-pivoting LU.
      const Eigen::VectorXcd xe =
          to_eigen(a).partialPivLu().solve(Eigen::Map<const Eigen::VectorXcd>(b.data(), Eigen::Index(n)));
      for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(x[i] - xe(Eigen::Index(i))) <= 1e-10 * xe.norm());
    }

  // Banded matrices that need pivoting inside the band.
  for (std::size_t n : {7u, 30u, 120u})
    for (std::size_t lower : {1u, 3u})
      {
        const std::size_t upper = 2;
        DenseComplexMatrix a = random_matrix(n, rng);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            if (j + lower < i || j > i + upper)
              a(i, j) = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          a(i, i) *= 0.01;  // force row swaps
        const ComplexVector b = testing::random_vector(n, rng);
        const ComplexVector xb = solve_lu(a, b, {lower, upper});
        const ComplexVector xd = solve_lu(a, b);
        CHECK(relative_residual(a, xb, b) <= 1e-10);
        CHECK(testing::max_gap(xb, xd) <= 1e-9 * testing::max_abs(xd));
      }
}

TEST_CASE("condition numbers")
{
  CHECK(cond2(DenseComplexMatrix::identity(5)) == doctest::Approx(1.0));
  DenseComplexMatrix d(2);
  d(0, 0) = 2.0;
  d(1, 1) = 1.0;
  CHECK(cond2(d) == doctest::Approx(2.0));
  CHECK(std::isinf(cond2(DenseComplexMatrix(3))));
  CHECK(cond2(DenseComplexMatrix(0)) == 1.0);

  std::mt19937_64 rng(3);
  const Eigen::MatrixXcd q = to_eigen(random_matrix(12, rng)).householderQr().householderQ();
  CHECK(std::abs(cond2(from_eigen(q)) - 1.0) < 1e-10);
}

TEST_CASE("singular values against Eigen")
{
  std::mt19937_64 rng(5);
  for (std::size_t n : {3u, 17u, 60u})
    {
      DenseComplexMatrix a = random_matrix(n, rng);
      // Spread the spectrum over several decades.
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
          a(i, j) *= std::pow(10.0, -6.0 * double(j) / double(n));
      const auto sv = singular_values(a);
      const Eigen::VectorXd se = Eigen::JacobiSVD<Eigen::MatrixXcd>(to_eigen(a)).singularValues();
      REQUIRE(sv.size() == n);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(sv[i] - se(Eigen::Index(i))) <= 1e-12 * se(0) + 1e-9 * se(Eigen::Index(i)));
      for (std::size_t i = 1; i < n; ++i)
        CHECK(sv[i - 1] >= sv[i]);

      DenseComplexMatrix b = a;
      b *= Complex(-0.3, 2.5);
      CHECK(std::abs(cond2(b) - cond2(a)) <= 1e-10 * cond2(a));
    }
}

TEST_CASE("matrix market export")
{
  DenseComplexMatrix a(2, 3);
  a(0, 0) = {1.0, -2.0};
  a(1, 2) = {0.5, 0.0};
  std::ostringstream os;
  write_matrix_market(os, a);
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  CHECK(header == "%%MatrixMarket matrix coordinate complex general");
  std::size_t r = 0, c = 0, nnz = 0;
  is >> r >> c >> nnz;
  CHECK(r == 2);
  CHECK(c == 3);
  CHECK(nnz == 2);
  std::size_t i = 0, j = 0;
  double re = 0, im = 0;
  is >> i >> j >> re >> im;
  CHECK(i == 1);
  CHECK(j == 1);
  CHECK(re == 1.0);
  CHECK(im == -2.0);
  is >> i >> j >> re >> im;
  CHECK(i == 2);
  CHECK(j == 3);
  CHECK(re == 0.5);
}
