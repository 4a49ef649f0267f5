#pragma once

// Sweep and point-query commands behind the `werner` executable. The numerical
// work lives in the header-only core; this layer owns grids, threading,
// formatting and exit codes.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "werner/chsh.hpp"
#include "werner/entanglement.hpp"

namespace werner::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kIoError = 2,
  kFormalInput = 3,
  kSingular = 4,
  kUsage = 64,
};

struct SweepRequest {
  int n = 1;
  double p_min = -1.0 / 3.0;
  double p_max = 1.0;
  int steps = 121;
};

struct SweepRecord {
  double p = 0;
  int n = 1;
  double negativity = 0;
  double bell_max = 0;
  double analytic_max = 0;
  std::string classification;  // separable | entangled | not-a-state
  bool state_valid = false;
};

/// Throws ValidationError unless steps >= 2, n >= 1 and p_min < p_max.
void validate(const SweepRequest& request);

/// steps points from p_min to p_max inclusive, evenly spaced.
std::vector<double> sweep_grid(const SweepRequest& request);

/// Worker count: hardware concurrency, capped by WERNER_THREADS when set.
unsigned worker_count();

/// One record per grid point; singular points are reported on `log` and omitted.
std::vector<SweepRecord> negativity_sweep(const SweepRequest& request, std::ostream& log,
                                          unsigned workers = 0);
std::vector<SweepRecord> chsh_sweep(const SweepRequest& request, const OptimizerSettings& opt,
                                    std::ostream& log, unsigned workers = 0);

std::string classification_label(bool state_valid, Classification c);

/// printf("%.9g")
std::string format_number(double x);

void write_negativity_csv(std::ostream& out, const std::vector<SweepRecord>& rows);
void write_chsh_csv(std::ostream& out, const std::vector<SweepRecord>& rows);
void write_negativity_json(std::ostream& out, const std::vector<SweepRecord>& rows);
void write_chsh_json(std::ostream& out, const std::vector<SweepRecord>& rows);

struct PointQuery {
  double p = 0;
  int n = 1;
};

/// JSON report for `classify`; the exit code is returned through `code`.
std::string classify_report(const PointQuery& q, int& code);

struct TomogramQuery {
  double p = 0;
  int n = 1;
  EulerAnglesd first;
  EulerAnglesd second;
};

std::string tomogram_report(const TomogramQuery& q, int& code);

/// Reads `key = value` lines ('#' starts a comment) into optimizer settings.
OptimizerSettings read_optimizer_config(std::istream& in, OptimizerSettings base = {});

/// Entry point shared by the executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace werner::cli
