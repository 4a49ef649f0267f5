#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "werner/cli/commands.hpp"

namespace werner::cli {
namespace {

struct SweepFlags {
  SweepRequest request;
  std::string out;
  std::string format = "csv";
};

void add_sweep_flags(CLI::App& cmd, SweepFlags& flags) {
  cmd.add_option("--n", flags.request.n, "Channel power n >= 1")->required();
  cmd.add_option("--p-min", flags.request.p_min, "Lower end of the p grid")
      ->capture_default_str();
  cmd.add_option("--p-max", flags.request.p_max, "Upper end of the p grid")
      ->capture_default_str();
  cmd.add_option("--steps", flags.request.steps, "Number of grid points (>= 2)")
      ->capture_default_str();
  cmd.add_option("--out", flags.out, "Output file (default: standard output)");
  cmd.add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

int emit(const std::string& text, const std::string& path, std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file || !(file << text) || !file.flush()) {
    err << "error: cannot write " << path << '\n';
    return kIoError;
  }
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonlinear power channels of two-qubit Werner states", "werner"};
  app.require_subcommand(1);

  SweepFlags neg;
  auto* neg_cmd = app.add_subcommand("negativity-sweep", "Negativity of rho^n/Tr rho^n over a p grid");
  add_sweep_flags(*neg_cmd, neg);

  SweepFlags chsh;
  OptimizerSettings opt;
  std::string config_path;
  auto* chsh_cmd = app.add_subcommand("chsh-sweep", "Maximal CHSH value over a p grid");
  add_sweep_flags(*chsh_cmd, chsh);
  chsh_cmd->add_option("--config", config_path, "key=value file presetting optimizer settings");
  auto* theta_opt = chsh_cmd->add_option("--theta-divisions", opt.theta_divisions);
  auto* psi_opt = chsh_cmd->add_option("--psi-divisions", opt.psi_divisions);
  auto* seeds_opt = chsh_cmd->add_option("--seeds", opt.seeds);
  auto* evals_opt = chsh_cmd->add_option("--max-evaluations", opt.max_evaluations);
  auto* tol_opt = chsh_cmd->add_option("--tolerance", opt.tolerance);

  PointQuery point;
  auto* classify_cmd = app.add_subcommand("classify", "Entanglement verdict at one (p, n)");
  classify_cmd->add_option("--p", point.p, "Werner parameter")->required();
  classify_cmd->add_option("--n", point.n, "Channel power n >= 1")->required();

  TomogramQuery tomo;
  auto* tomo_cmd = app.add_subcommand("tomogram", "Two-spin tomogram at one (p, n) and pair of directions");
  tomo_cmd->add_option("--p", tomo.p, "Werner parameter")->required();
  tomo_cmd->add_option("--n", tomo.n, "Channel power n >= 1")->required();
  tomo_cmd->add_option("--theta1", tomo.first.theta)->capture_default_str();
  tomo_cmd->add_option("--psi1", tomo.first.psi)->capture_default_str();
  tomo_cmd->add_option("--phi1", tomo.first.phi)->capture_default_str();
  tomo_cmd->add_option("--theta2", tomo.second.theta)->capture_default_str();
  tomo_cmd->add_option("--psi2", tomo.second.psi)->capture_default_str();
  tomo_cmd->add_option("--phi2", tomo.second.phi)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*neg_cmd) {
      try {
        validate(neg.request);
      } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n\n" << neg_cmd->help();
        return kUsage;
      }
      std::ostringstream text;
      const auto rows = negativity_sweep(neg.request, err);
      if (neg.format == "json") {
        write_negativity_json(text, rows);
      } else {
        write_negativity_csv(text, rows);
      }
      return emit(text.str(), neg.out, out, err);
    }

    if (*chsh_cmd) {
      try {
        validate(chsh.request);
        if (!config_path.empty()) {
          std::ifstream file(config_path);
          if (!file) {
            err << "error: cannot read config " << config_path << '\n';
            return kIoError;
          }
          const OptimizerSettings from_file = read_optimizer_config(file);
          // Flags given on the command line win over the file.
          if (theta_opt->count() == 0) opt.theta_divisions = from_file.theta_divisions;
          if (psi_opt->count() == 0) opt.psi_divisions = from_file.psi_divisions;
          if (seeds_opt->count() == 0) opt.seeds = from_file.seeds;
          if (evals_opt->count() == 0) opt.max_evaluations = from_file.max_evaluations;
          if (tol_opt->count() == 0) opt.tolerance = from_file.tolerance;
        }
      } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n\n" << chsh_cmd->help();
        return kUsage;
      }
      std::ostringstream text;
      const auto rows = chsh_sweep(chsh.request, opt, err);
      if (chsh.format == "json") {
        write_chsh_json(text, rows);
      } else {
        write_chsh_csv(text, rows);
      }
      return emit(text.str(), chsh.out, out, err);
    }

    if (*classify_cmd) {
      if (point.n < 1) {
        err << "error: n must be >= 1\n\n" << classify_cmd->help();
        return kUsage;
      }
      int code = kOk;
      out << classify_report(point, code) << '\n';
      return code;
    }

    if (*tomo_cmd) {
      if (tomo.n < 1) {
        err << "error: n must be >= 1\n\n" << tomo_cmd->help();
        return kUsage;
      }
      int code = kOk;
      out << tomogram_report(tomo, code) << '\n';
      return code;
    }
  } catch (const SingularityError& e) {
    err << "error: " << e.what() << '\n';
    return kSingular;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace werner::cli
