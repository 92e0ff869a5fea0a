// schrodg: convergence, conditioning and basis checks for the space-time
// Trefftz DG discretization of the free Schroedinger equation.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "schrodg/assembly.hpp"
#include "schrodg/experiments.hpp"

namespace {

constexpr int kExitSolverFailure = 2;
constexpr int kExitInvalidConfig = 3;

using schrodg::ConvergenceTable;
using schrodg::ExperimentConfig;

std::filesystem::path with_suffix(const std::filesystem::path& out, const std::string& suffix,
                                  const std::string& extension)
{
  std::filesystem::path p = out;
  p.replace_filename(out.stem().string() + suffix + extension);
  return p;
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
  std::ofstream os(path);
  if (!os)
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << content;
}

std::string csv_string(const ConvergenceTable& table)
{
  std::ostringstream os;
  schrodg::write_csv(os, table);
  return os.str();
}

std::string description(schrodg::Experiment e)
{
  switch (e)
    {
    case schrodg::Experiment::ConvH: return "h-refinement on the smooth solution";
    case schrodg::Experiment::ConvP: return "p-refinement on the h = 0.1 mesh";
    case schrodg::Experiment::Conditioning: return "first-slab cond2 for both seed scalings";
    case schrodg::Experiment::Singular: return "square well started from sqrt(30) x (1 - x)";
    case schrodg::Experiment::VerifyBasis: return "checks of the polynomial Trefftz basis";
    }
  return {};
}

nlohmann::json header(const ExperimentConfig& c)
{
  return {
      {"experiment", schrodg::to_string(c.experiment)},
      {"space", schrodg::to_string(c.space)},
      {"p", c.p},
      {"levels", c.levels},
      {"kappa", c.kappa},
      {"seed_choice", c.seed == schrodg::SeedChoice::A ? "a" : "b"},
  };
}

// CSV to --out (or stdout), JSON summary next to it.
void emit_table(const ExperimentConfig& c, const ConvergenceTable& table)
{
  nlohmann::json summary = header(c);
  summary.update(schrodg::table_json(table));
  if (c.out.empty())
    {
      schrodg::write_csv(std::cout, table);
      std::cerr << summary.dump(2) << '\n';
      return;
    }
  const std::filesystem::path out(c.out);
  write_file(out, csv_string(table));
  write_file(with_suffix(out, "", ".json"), summary.dump(2) + "\n");
}

int run(const ExperimentConfig& c)
{
  switch (c.experiment)
    {
    case schrodg::Experiment::ConvH: emit_table(c, schrodg::run_conv_h(c)); break;
    case schrodg::Experiment::ConvP: emit_table(c, schrodg::run_conv_p(c)); break;
    case schrodg::Experiment::Singular: emit_table(c, schrodg::run_singular(c)); break;
    case schrodg::Experiment::Conditioning:
      {
        const auto report = schrodg::run_conditioning(c);
        nlohmann::json summary = header(c);
        summary["choice_a"] = schrodg::table_json(report.choice_a);
        summary["choice_b"] = schrodg::table_json(report.choice_b);
        summary["slope_a"] = report.slope_a ? nlohmann::json(*report.slope_a) : nullptr;
        summary["slope_b"] = report.slope_b ? nlohmann::json(*report.slope_b) : nullptr;
        if (c.out.empty())
          {
            std::cout << "# seed choice a\n" << csv_string(report.choice_a);
            std::cout << "# seed choice b\n" << csv_string(report.choice_b);
            std::cerr << summary.dump(2) << '\n';
          }
        else
          {
            const std::filesystem::path out(c.out);
            write_file(with_suffix(out, "_a", ".csv"), csv_string(report.choice_a));
            write_file(with_suffix(out, "_b", ".csv"), csv_string(report.choice_b));
            write_file(with_suffix(out, "", ".json"), summary.dump(2) + "\n");
          }
        break;
      }
    case schrodg::Experiment::VerifyBasis:
      {
        nlohmann::json reports = nlohmann::json::array();
        bool ok = true;
        for (int p = 0; p <= c.p; ++p)
          {
            const auto r = schrodg::verify_basis(c.dim, p, c.seed);
            ok = ok && r.passed();
            reports.push_back(schrodg::to_json(r));
          }
        const nlohmann::json doc = {{"d", c.dim}, {"reports", reports}, {"pass", ok}};
        if (c.out.empty())
          std::cout << doc.dump(2) << '\n';
        else
          write_file(c.out, doc.dump(2) + "\n");
        break;
      }
    }
  return 0;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Space-time Trefftz DG for the free Schroedinger equation"};
  app.require_subcommand(1);

  ExperimentConfig config;
  std::string space = "trefftz";
  std::string seed = "b";
  std::optional<std::size_t> quad_n;
  std::optional<int> levels;
  std::optional<int> p;

  for (auto experiment : {schrodg::Experiment::ConvH, schrodg::Experiment::ConvP,
                          schrodg::Experiment::Conditioning, schrodg::Experiment::Singular,
                          schrodg::Experiment::VerifyBasis})
    {
      auto* sub = app.add_subcommand(schrodg::to_string(experiment), description(experiment));
      sub->add_option("--p", p, "Degree parameter (largest degree for conv-p)");
      sub->add_option("--space", space, "trefftz | quasi-trefftz | full | planewave")
          ->check(CLI::IsMember({"trefftz", "quasi-trefftz", "full", "planewave"}));
      sub->add_option("--levels", levels, "Number of mesh levels j = 0, ..., levels - 1");
      sub->add_option("--kappa", config.kappa, "Wavenumber of the smooth solution");
      sub->add_option("--seed-choice", seed, "Spatial seed basis a | b")
          ->check(CLI::IsMember({"a", "b"}));
      sub->add_option("--out", config.out, "Output path (CSV, JSON summary alongside)");
      sub->add_option("--quad-n", quad_n, "Gauss points per direction for all integrals");
      sub->add_flag("--global-oracle", config.global_oracle,
                    "Cross-check slab marching against the global solve");
      if (experiment == schrodg::Experiment::VerifyBasis)
        sub->add_option("--dim", config.dim, "Space dimension (1, 2 or 3)");
      sub->callback([&config, experiment] { config.experiment = experiment; });
    }

  try
    {
      app.parse(argc, argv);
    }
  catch (const CLI::ParseError& e)
    {
      const int code = app.exit(e);
      return code == 0 ? 0 : kExitInvalidConfig;
    }

  try
    {
      config.space = schrodg::space_family_from_string(space);
      config.seed = seed == "a" ? schrodg::SeedChoice::A : schrodg::SeedChoice::B;
      config.quad_n = quad_n;
      switch (config.experiment)
        {
        case schrodg::Experiment::ConvP: config.p = p.value_or(5); break;
        case schrodg::Experiment::VerifyBasis: config.p = p.value_or(3); break;
        default: config.p = p.value_or(1); break;
        }
      config.levels = levels.value_or(5);
      config.validate();
    }
  catch (const std::invalid_argument& e)
    {
      std::cerr << "invalid configuration: " << e.what() << '\n';
      return kExitInvalidConfig;
    }

  try
    {
      return run(config);
    }
  catch (const schrodg::SolverError& e)
    {
      std::cerr << "solver failure: " << e.what() << '\n';
      return kExitSolverFailure;
    }
  catch (const std::invalid_argument& e)
    {
      std::cerr << "invalid configuration: " << e.what() << '\n';
      return kExitInvalidConfig;
    }
  catch (const std::exception& e)
    {
      std::cerr << "error: " << e.what() << '\n';
      return kExitSolverFailure;
    }
}
