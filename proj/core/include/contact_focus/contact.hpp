#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "contact_focus/drift.hpp"
#include "contact_focus/fit.hpp"
#include "contact_focus/linalg.hpp"
#include "contact_focus/transport.hpp"

namespace contact_focus {

/// Where the Jacobian driving the fiber and stiffness equations is evaluated:
/// on the unperturbed reference characteristic (locked) or on the perturbed
/// macroscopic trajectory itself (coupled).
enum class CouplingMode { locked, coupled };

std::string_view to_string(CouplingMode mode);
std::optional<CouplingMode> parse_coupling_mode(std::string_view name);

struct ContactConfig {
  DriftSystem system = DriftSystem::scalar_decay(1.0);
  CouplingMode mode = CouplingMode::coupled;
  Vec y0;
  Vec phi0;
  SymTensor2 h2_0;
  double c = 0.0;  // constant zero-order potential
  double t_end = 0.0;
  double h = kDefaultStep;
  int stride = 1;
  TimeWindow fit_window;
  bool envelope_fit = false;
};

/// Throws InputError on any violated field invariant.
void validate(const ContactConfig& config);

struct TrajectoryRow {
  double t = 0.0;
  Vec y;
  Vec y_ref;
  Vec phi;
  double h2_fro = 0.0;
  Vec coupling;  // H2 phi
  double coupling_norm = 0.0;
  double epsilon = 0.0;
  double deviation = 0.0;  // |y - y_ref|
  // Slowest local decay rate of M(t, y_*) at this sample; empty where the
  // frozen Jacobian is not strictly dissipative.
  std::optional<double> local_sigma;
};

struct TrajectoryRecord {
  int dim = 0;
  std::vector<TrajectoryRow> rows;
  /// Rate predicted from the Jacobian at the zero state, t = 0.
  std::optional<double> predicted_sigma;

  std::vector<double> times() const;
  std::vector<double> coupling_norms() const;
  std::vector<double> phi_norms() const;
  std::vector<double> h2_norms() const;
};

/// Integrates reference, macroscopic, fiber and stiffness equations on one
/// RK4 clock and samples every `stride` steps (plus the final point).
TrajectoryRecord run_focusing(const ContactConfig& config);

struct FitReport {
  double fitted_rate = 0.0;
  std::optional<double> predicted_sigma;
  std::optional<double> relative_error;
  double r_squared = 0.0;
  int n_points = 0;
  int n_skipped = 0;
  FitMethod method = FitMethod::plain;
};

/// Decay rate of |H2 phi| (minus the log-linear slope) over the window.
FitReport fit_decay_rate(const TrajectoryRecord& record, TimeWindow window, FitMethod method);

// Exponent fits for |phi|, |H2| and |H2 phi| against the locking prediction
// (+sigma, -2 sigma, -sigma).
struct LockingSummary {
  double sigma = 0.0;
  std::array<LogLinearFit, 3> fits;
  std::array<double, 3> exponents{};
  std::array<double, 3> expected{};
  std::array<double, 3> ratios{};  // exponents / expected
  std::optional<double> local_sigma_min;
  std::optional<double> local_sigma_max;
  int non_dissipative_samples = 0;
};

LockingSummary locking_diagnostics(const TrajectoryRecord& record, double sigma, TimeWindow window,
                                   FitMethod method);

/// max_k |epsilon(t_k) - epsilon(t_0)|.
double constraint_drift(const TrajectoryRecord& record);

}  // namespace contact_focus
