#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "contact_focus/cli/run_config.hpp"
#include "contact_focus/contact.hpp"
#include "contact_focus/spectral.hpp"

namespace contact_focus::cli {

struct RunOutcome {
  Vec phi0;
  TrajectoryRecord record;
  std::optional<FitReport> fit;
  std::optional<LockingSummary> locking;
  std::string fit_error;
  double epsilon0 = 0.0;
  double drift = 0.0;
  double drift_tolerance = 0.0;
  double max_deviation = 0.0;
  double final_deviation = 0.0;

  bool constraint_ok() const { return drift <= drift_tolerance; }
  bool zero_deviation() const { return max_deviation == 0.0; }
};

struct SimulationResult {
  RunConfig config;  // resolved
  SpectralReport spectrum;
  int threads = 1;
  std::vector<RunOutcome> runs;
};

/// Predicted rate, window and fit method from the Jacobian at the origin.
/// Throws UnsupportedError for a non-dissipative linearisation and InputError
/// when the default window does not fit inside [0, t_end].
RunConfig resolve(RunConfig config, const SpectralReport& spectrum);

SpectralReport origin_spectrum(const DriftSystem& system);

/// CONTACT_FOCUS_THREADS if set to a positive integer, else n_runs.
int thread_cap(std::size_t n_runs);

/// Runs every phi0 case as an independent task on at most `threads` workers.
/// The first failure (in case order) is rethrown after all workers join.
SimulationResult simulate(const RunConfig& config, int threads);

void write_csv(const TrajectoryRecord& record, const std::filesystem::path& path);
nlohmann::json report_json(const SimulationResult& result);

/// trajectory_<k>.csv, report.json and, if requested, the two SVG panels.
/// `extra` is merged into the report at the top level.
void write_outputs(const SimulationResult& result, const nlohmann::json& extra = nlohmann::json::object());

}  // namespace contact_focus::cli
