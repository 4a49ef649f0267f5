#include "werner/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "werner/entanglement.hpp"

namespace werner::cli {
namespace {

// Runs body(i) for i in [0, count) on up to `workers` threads. The first
// exception thrown by any task is rethrown after all threads join.
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, Body body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(run);
  }
  if (failure) std::rethrow_exception(failure);
}

// Evaluates `fill` on every grid point, dropping singular ones with a note on `log`.
template <typename Fill>
std::vector<SweepRecord> run_sweep(const SweepRequest& request, std::ostream& log,
                                   unsigned workers, Fill fill) {
  validate(request);
  const auto grid = sweep_grid(request);
  std::vector<std::optional<SweepRecord>> slots(grid.size());
  std::vector<std::string> notes(grid.size());
  parallel_for(grid.size(), workers == 0 ? worker_count() : workers, [&](std::size_t i) {
    const WernerParametersd params{grid[i], request.n};
    try {
      SweepRecord r;
      r.p = grid[i];
      r.n = request.n;
      const auto verdict = classify_werner(params);
      r.state_valid = verdict.state_valid;
      r.classification = classification_label(verdict.state_valid, verdict.classification);
      fill(params, r);
      slots[i] = std::move(r);
    } catch (const SingularityError& e) {
      notes[i] = e.what();
    }
  });

  std::vector<SweepRecord> rows;
  rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (slots[i]) {
      rows.push_back(std::move(*slots[i]));
    } else {
      log << "warning: skipping p=" << format_number(grid[i]) << ": " << notes[i] << '\n';
    }
  }
  return rows;
}

double round_for_output(double x) { return std::stod(format_number(x)); }

nlohmann::json spectrum_json(const Spectrumd& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < s.size(); ++i) arr.push_back(round_for_output(s(i)));
  return arr;
}

}  // namespace

void validate(const SweepRequest& request) {
  if (request.n < 1) throw ValidationError("n must be >= 1");
  if (request.steps < 2) throw ValidationError("steps must be >= 2");
  if (!(request.p_min < request.p_max)) throw ValidationError("p-min must be less than p-max");
  if (!std::isfinite(request.p_min) || !std::isfinite(request.p_max)) {
    throw ValidationError("p range must be finite");
  }
}

std::vector<double> sweep_grid(const SweepRequest& request) {
  validate(request);
  std::vector<double> grid(static_cast<std::size_t>(request.steps));
  const double span = request.p_max - request.p_min;
  const int last = request.steps - 1;
  for (int i = 0; i < request.steps; ++i) {
    grid[static_cast<std::size_t>(i)] = request.p_min + span * i / last;
  }
  grid.back() = request.p_max;
  return grid;
}

unsigned worker_count() {
  unsigned count = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("WERNER_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (end != cap && v > 0) count = std::min(count, static_cast<unsigned>(v));
  }
  return count;
}

std::vector<SweepRecord> negativity_sweep(const SweepRequest& request, std::ostream& log,
                                          unsigned workers) {
  return run_sweep(request, log, workers, [](const WernerParametersd& params, SweepRecord& r) {
    r.negativity = negativity(params);
  });
}

std::vector<SweepRecord> chsh_sweep(const SweepRequest& request, const OptimizerSettings& opt,
                                    std::ostream& log, unsigned workers) {
  return run_sweep(request, log, workers, [&opt](const WernerParametersd& params, SweepRecord& r) {
    r.negativity = negativity(params);
    r.bell_max = maximize_bell(params, opt).value;
    r.analytic_max = analytic_max_bell(params);
  });
}

std::string classification_label(bool state_valid, Classification c) {
  return state_valid ? to_string(c) : "not-a-state";
}

std::string classify_report(const PointQuery& q, int& code) {
  const WernerParametersd params{q.p, q.n};
  const auto verdict = classify_werner(params);

  nlohmann::json j;
  j["p"] = q.p;
  j["n"] = q.n;
  j["state_valid"] = verdict.state_valid;
  j["formal_input"] = verdict.formal_input;
  j["classification"] = classification_label(verdict.state_valid, verdict.classification);
  j["boundaries"]["upper"] = round_for_output(verdict.boundaries.upper);
  j["boundaries"]["lower"] = verdict.boundaries.lower
                                 ? nlohmann::json(round_for_output(*verdict.boundaries.lower))
                                 : nlohmann::json(nullptr);
  j["negativity"] = round_for_output(negativity(params));
  j["eigenvalues"] = spectrum_json(channel_spectrum(params));
  j["ppt_eigenvalues"] = spectrum_json(ppt_spectrum_closed(params));

  code = verdict.state_valid ? kOk : kFormalInput;
  return j.dump(2);
}

std::string tomogram_report(const TomogramQuery& q, int& code) {
  const WernerParametersd params{q.p, q.n};
  const auto k = werner_coefficients(params);
  const bool valid = channel_spectrum(params).minCoeff() >= -kNegativeEigenvalueTolerance;

  nlohmann::json j;
  j["p"] = q.p;
  j["n"] = q.n;
  double sum = 0;
  const char* names[] = {"uu", "ud", "du", "dd"};
  for (const auto o : kAllOutcomes) {
    const double w = tomogram_closed(k, q.first, q.second, o);
    sum += w;
    j[names[outcome_index(o)]] = round_for_output(w);
  }
  j["sum"] = round_for_output(sum);
  j["state_valid"] = valid;

  code = valid ? kOk : kFormalInput;
  return j.dump(2);
}

}  // namespace werner::cli
