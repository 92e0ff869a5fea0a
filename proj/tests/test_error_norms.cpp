#include <doctest.h>

#include "schrodg/error_norms.hpp"
#include "support.hpp"

using namespace schrodg;

TEST_CASE("norms of constants")
{
  const auto one_by_one = testing::unit_mesh(1, 1);
  CHECK(dg_norm(constant_field(0.0), *one_by_one) == 0.0);
  CHECK(dg_plus_norm(constant_field(0.0), *one_by_one) == 0.0);
  CHECK(dg_norm(constant_field(1.0), *one_by_one) == doctest::Approx(std::sqrt(2.0)));
  CHECK(dg_plus_norm(constant_field(1.0), *one_by_one) == doctest::Approx(std::sqrt(2.0)));

  const auto one_by_two = testing::unit_mesh(1, 2);
  CHECK(dg_norm(constant_field(1.0), *one_by_two) == doctest::Approx(std::sqrt(2.0)));
  CHECK(dg_plus_norm(constant_field(1.0), *one_by_two) == doctest::Approx(std::sqrt(2.5)));
}

TEST_CASE("norm terms by hand on a 2 x 1 mesh")
{
  // w = x: continuous, so only boundary traces contribute to the DG norm.
  // F0 and FT: int_0^1 x^2 = 1/3 each. Dirichlet: alpha = 2 on both sides,
  // |w|^2 = 0 at x = 0 and 1 at x = 1, so 2 * 1 = 2.  Total 1/2 (2/3 + 2).
  const auto mesh = testing::unit_mesh(2, 1);
  const auto w = global_field([](double x, double) { return Complex(x); },
                              [](double, double) { return Complex(1.0); });
  CHECK(dg_norm(w, *mesh) == doctest::Approx(std::sqrt(0.5 * (2.0 / 3.0 + 2.0))));
  // DG+ adds alpha^-1 |dn w|^2 on F_D (2 * 0.5) and on the interior time-like
  // facet alpha^-1 |{dx w}|^2 = 0.5 and beta^-1 |{w}|^2 = 2 * 0.25.
  const double plus = 0.5 * (1.0 + 0.5 + 0.5);
  CHECK(dg_plus_norm(w, *mesh)
        == doctest::Approx(std::sqrt(0.5 * (2.0 / 3.0 + 2.0) + plus)));
}

TEST_CASE("jumps are seen by the DG norm")
{
  // Elementwise constants 0 | 1 on a 2 x 1 mesh: time-like jump 1, alpha = 2,
  // facet length 1; plus traces on F0, FT (0.5 each) and Dirichlet (alpha 2).
  const auto mesh = testing::unit_mesh(2, 1);
  const PiecewiseField w{[](std::size_t e, double, double) { return Complex(double(e)); },
                         [](std::size_t, double, double) { return Complex(0.0); }};
  CHECK(dg_norm(w, *mesh) == doctest::Approx(std::sqrt(0.5 * (2.0 + 1.0 + 2.0))));

  // Slab jump: 0 below, 1 above on a 1 x 2 mesh.
  const auto tall = testing::unit_mesh(1, 2);
  CHECK(dg_norm(w, *tall) == doctest::Approx(std::sqrt(0.5 * (1.0 + 1.0 + 1.0))));
}

TEST_CASE("norm properties")
{
  const auto mesh = testing::unit_mesh(4, 3);
  const auto exact = testing::exp_field(3.0);
  const auto shifted = PiecewiseField{
      [exact](std::size_t e, double x, double t) {
        return exact.value(e, x, t) + Complex(0.1 * double(e), -0.05 * t);
      },
      [exact](std::size_t e, double x, double t) { return exact.dx(e, x, t) + double(e) * x; }};
  const auto err = difference(exact, shifted);
  const double dg = dg_norm(err, *mesh);
  const double plus = dg_plus_norm(err, *mesh);
  CHECK(dg > 0.0);
  CHECK(plus >= dg);

  const Complex c(-1.5, 2.0);
  CHECK(std::abs(dg_norm(scaled(c, err), *mesh) - std::abs(c) * dg) <= 1e-12 * std::abs(c) * dg);
  CHECK(std::abs(dg_plus_norm(scaled(c, err), *mesh) - std::abs(c) * plus)
        <= 1e-12 * std::abs(c) * plus);

  CHECK(std::abs(dg_norm(err, *mesh, 40) - dg) <= 1e-9 * dg);
  CHECK(std::abs(dg_plus_norm(err, *mesh, 40) - plus) <= 1e-9 * plus);

  const auto parts = norm_squares(err, *mesh);
  CHECK(std::sqrt(parts.dg) == doctest::Approx(dg));
  CHECK(std::sqrt(parts.dg + parts.plus_extra) == doctest::Approx(plus));
}

TEST_CASE("time slices")
{
  const auto mesh = testing::unit_mesh(3, 2);
  CHECK(l2_slice_error(constant_field(0.0), 0.4, *mesh) == 0.0);
  CHECK(l2_slice_error(constant_field(1.0), 0.4, *mesh) == doctest::Approx(1.0));
  // Slab interface: the later slab wins.
  const PiecewiseField w{[&](std::size_t e, double, double) {
                           return Complex(mesh->element(e).slab == 0 ? 5.0 : 2.0);
                         },
                         {}};
  CHECK(l2_slice_error(w, 0.5, *mesh) == doctest::Approx(2.0));
  CHECK(l2_slice_error(w, 1.0, *mesh) == doctest::Approx(2.0));
  CHECK(l2_slice_error(w, 0.0, *mesh) == doctest::Approx(5.0));
}
