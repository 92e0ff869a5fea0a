#include <doctest.h>

#include <cmath>
#include <sstream>

#include "schrodg/experiments.hpp"

using namespace schrodg;

namespace {

std::vector<std::string> lines(const std::string& s)
{
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);)
    out.push_back(l);
  return out;
}

std::vector<std::string> fields(const std::string& line)
{
  std::vector<std::string> out;
  std::string f;
  std::istringstream is(line);
  while (std::getline(is, f, ','))
    out.push_back(f);
  if (!line.empty() && line.back() == ',')
    out.emplace_back();
  return out;
}

}  // namespace

TEST_CASE("experiment names")
{
  for (auto e : {Experiment::ConvH, Experiment::ConvP, Experiment::Conditioning,
                 Experiment::Singular, Experiment::VerifyBasis})
    CHECK(experiment_from_string(to_string(e)) == e);
  CHECK(to_string(Experiment::ConvH) == "conv-h");
  CHECK(to_string(Experiment::VerifyBasis) == "verify-basis");
  CHECK_THROWS_AS(experiment_from_string("conv-q"), std::invalid_argument);
}

TEST_CASE("config validation")
{
  ExperimentConfig c;
  CHECK_NOTHROW(c.validate());
  c.p = -1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.p = 1;
  c.levels = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.levels = 2;
  c.quad_n = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.quad_n = 65;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.quad_n.reset();
  c.space = SpaceFamily::PlaneWave;
  c.p = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.experiment = Experiment::Conditioning;
  c.p = 1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.experiment = Experiment::VerifyBasis;
  c.dim = 4;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("rates and slopes")
{
  ConvergenceTable t(4);
  for (int j = 0; j < 4; ++j)
    {
      t[std::size_t(j)].h_x = 0.1 / (1 << j);
      t[std::size_t(j)].dg_error = 3.0 * std::pow(t[std::size_t(j)].h_x, 2.0);
      t[std::size_t(j)].cond2 = 7.0 / t[std::size_t(j)].h_x;
    }
  fill_rates(t);
  CHECK_FALSE(t[0].rate.has_value());
  for (int j = 1; j < 4; ++j)
    CHECK(*t[std::size_t(j)].rate == doctest::Approx(2.0));
  CHECK(*fitted_slope(t, &ConvergenceRow::dg_error) == doctest::Approx(2.0));
  CHECK(*fitted_slope(t, &ConvergenceRow::cond2) == doctest::Approx(-1.0));

  // Errors below the floor and unavailable errors get no rate.
  t[2].dg_error = 1e-14;
  t[3].dg_error = std::nan("");
  fill_rates(t);
  CHECK(t[1].rate.has_value());
  CHECK_FALSE(t[2].rate.has_value());
  CHECK_FALSE(t[3].rate.has_value());
  ConvergenceTable one(1);
  one[0].h_x = 0.1;
  one[0].cond2 = 5.0;
  CHECK_FALSE(fitted_slope(one, &ConvergenceRow::cond2).has_value());
}

TEST_CASE("csv layout")
{
  ConvergenceTable t(2);
  t[0] = {0, 0.1, 0.1, 300, 0.5, std::nullopt, std::nullopt, std::nullopt};
  t[1] = {1, 0.05, 0.05, 1200, 0.25, 1.0, std::nan(""), std::nullopt};
  std::ostringstream os;
  write_csv(os, t);
  const auto ls = lines(os.str());
  REQUIRE(ls.size() == 3);
  CHECK(ls[0] == "level,h_x,h_t,n_dofs,dg_error,rate,cond2");
  const auto r0 = fields(ls[1]);
  REQUIRE(r0.size() == 7);
  CHECK(r0[0] == "0");
  CHECK(r0[3] == "300");
  CHECK(r0[5].empty());
  CHECK(r0[6].empty());
  const auto r1 = fields(ls[2]);
  REQUIRE(r1.size() == 7);
  CHECK(std::stod(r1[5]) == 1.0);
  CHECK(r1[6].empty());

  const auto j = table_json(t);
  CHECK(j["rows"].size() == 2);
  CHECK(j.contains("slope_dg_error"));
}

TEST_CASE("conv-h tables")
{
  ExperimentConfig c;
  c.p = 1;
  c.levels = 2;
  const auto t = run_conv_h(c);
  REQUIRE(t.size() == 2);
  CHECK(t[0].n_dofs == 300);
  CHECK(t[1].n_dofs == 1200);
  CHECK(t[0].h_x == doctest::Approx(0.1));
  CHECK(*t[1].dg_error < *t[0].dg_error);
  CHECK(*t[1].rate == doctest::Approx(std::log2(*t[0].dg_error / *t[1].dg_error)));

  // Deterministic output.
  std::ostringstream a, b;
  write_csv(a, t);
  write_csv(b, run_conv_h(c));
  CHECK(a.str() == b.str());

  // p = 0 does not converge.
  c.p = 0;
  const auto t0 = run_conv_h(c);
  CHECK(std::abs(*t0[1].rate) < 0.5);

  c.p = 1;
  c.global_oracle = true;
  c.levels = 1;
  const auto g = run_conv_h(c);
  REQUIRE(g[0].oracle_gap.has_value());
  CHECK(*g[0].oracle_gap < 1e-10);
}

TEST_CASE("conv-p tables")
{
  ExperimentConfig c;
  c.experiment = Experiment::ConvP;
  c.p = 1;
  const auto one = run_conv_p(c);
  REQUIRE(one.size() == 1);
  CHECK_FALSE(one[0].rate.has_value());
  c.p = 3;
  const auto t = run_conv_p(c);
  REQUIRE(t.size() == 3);
  for (int p = 1; p <= 3; ++p)
    {
      CHECK(t[std::size_t(p - 1)].level == p);
      CHECK(t[std::size_t(p - 1)].n_dofs == std::size_t(100 * (2 * p + 1)));
      CHECK(t[std::size_t(p - 1)].cond2.has_value());
    }
}

TEST_CASE("conditioning report")
{
  ExperimentConfig c;
  c.experiment = Experiment::Conditioning;
  c.p = 1;
  c.levels = 2;
  const auto r = run_conditioning(c);
  CHECK(r.choice_a.size() == 2);
  CHECK(r.choice_b.size() == 2);
  CHECK(r.slope_a.has_value());
  CHECK(r.slope_b.has_value());
  CHECK(*r.choice_a[1].cond2 > *r.choice_a[0].cond2);
}

TEST_CASE("singular tables have equal dof counts for quasi-Trefftz and Trefftz")
{
  ExperimentConfig c;
  c.experiment = Experiment::Singular;
  c.p = 2;
  c.levels = 1;
  c.space = SpaceFamily::TrefftzPoly;
  const auto a = run_singular(c);
  c.space = SpaceFamily::QuasiTrefftz;
  const auto b = run_singular(c);
  CHECK(a[0].n_dofs == b[0].n_dofs);
  CHECK(a[0].n_dofs == 4 * 5);
  CHECK(a[0].h_t == doctest::Approx(0.1 * a[0].h_x));
}
