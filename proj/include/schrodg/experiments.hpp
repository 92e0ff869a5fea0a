#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "schrodg/trefftz_spaces.hpp"

namespace schrodg {

enum class Experiment
{
  ConvH,
  ConvP,
  Conditioning,
  Singular,
  VerifyBasis
};

std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string& name);

struct ExperimentConfig
{
  Experiment experiment = Experiment::ConvH;
  SpaceFamily space = SpaceFamily::TrefftzPoly;
  /// Degree parameter; the largest degree for conv-p.
  int p = 1;
  /// Mesh levels j = 0, ..., levels - 1.
  int levels = 5;
  double kappa = 5.0;
  SeedChoice seed = SeedChoice::B;
  std::optional<std::size_t> quad_n;
  /// Cross-check every level against the dense global solve.
  bool global_oracle = false;
  /// Space dimension for verify-basis.
  std::size_t dim = 1;
  std::string out;

  SpaceKind space_kind(int degree) const { return {space, degree, seed}; }
  void validate() const;
};

struct ConvergenceRow
{
  int level = 0;
  double h_x = 0.0;
  double h_t = 0.0;
  std::size_t n_dofs = 0;
  std::optional<double> dg_error;
  std::optional<double> rate;
  std::optional<double> cond2;
  /// Largest relative coefficient gap to the global oracle, when run.
  std::optional<double> oracle_gap;
};

using ConvergenceTable = std::vector<ConvergenceRow>;

/// Errors below this are treated as exact and get no rate.
inline constexpr double kRateErrorFloor = 1e-12;

/// Slab matrices with a larger condition number are flagged unusable.
inline constexpr double kIllConditioned = 1e13;

/// Fills `rate` with log2(e_j / e_{j+1}) of consecutive stored errors.
void fill_rates(ConvergenceTable& table);

/// Least-squares slope of log2(y) against log2(h_x) over rows where y is set.
std::optional<double> fitted_slope(const ConvergenceTable& table,
                                   std::optional<double> ConvergenceRow::*column);

/// Smooth problem exp(kappa x + i kappa^2 t / 2) on (0,1)^2 with
/// h_x = h_t = 0.1 * 2^-j.
ConvergenceTable run_conv_h(const ExperimentConfig& config);

/// Smooth problem on the fixed h = 0.1 mesh for p = 1, ..., config.p; the
/// `level` column holds p.
ConvergenceTable run_conv_p(const ExperimentConfig& config);

struct ConditioningReport
{
  int p = 0;
  ConvergenceTable choice_a;
  ConvergenceTable choice_b;
  std::optional<double> slope_a;
  std::optional<double> slope_b;
};

/// cond2 of the first-slab matrix on the conv-h meshes, both seed choices.
ConditioningReport run_conditioning(const ExperimentConfig& config);

/// Square-well problem on (0,1) x (0,0.1), h_t = 0.1 h_x = 0.05 * 2^-j,
/// errors against the 250-mode series.
ConvergenceTable run_singular(const ExperimentConfig& config);

struct BasisReport
{
  std::size_t d = 1;
  int p = 0;
  std::size_t dim = 0;
  std::size_t expected_dim = 0;
  double residual_max = 0.0;
  double gram_sigma_ratio = 0.0;
  bool gram_full_rank = false;
  double trace_reconstruction_error = 0.0;

  bool passed() const;
};

/// Trefftz residuals, Gram rank, dimension count and trace uniqueness for
/// the polynomial Trefftz basis in d space dimensions.
BasisReport verify_basis(std::size_t d, int p, SeedChoice seed = SeedChoice::A);

nlohmann::json to_json(const BasisReport& r);

/// CSV with columns level,h_x,h_t,n_dofs,dg_error,rate,cond2; unset values
/// are left empty.
void write_csv(std::ostream& os, const ConvergenceTable& table);

nlohmann::json table_json(const ConvergenceTable& table);

}  // namespace schrodg
