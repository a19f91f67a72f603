#pragma once

#include <span>
#include <string_view>

namespace contact_focus {

struct TimeWindow {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double t) const noexcept { return t >= lo && t <= hi; }
};

enum class FitMethod { plain, envelope };

std::string_view to_string(FitMethod method);

inline constexpr int kMinFitPoints = 5;

// Least-squares line through (t, ln v).
struct LogLinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int n_points = 0;
  int n_skipped = 0;  // non-positive samples dropped before the regression
  FitMethod method = FitMethod::plain;
};

/// Fits ln(values) against times over the window. Plain mode uses every
/// sample inside the window; envelope mode only the strict local maxima (a
/// sample larger than both neighbours in the full series). Non-positive
/// samples are skipped. Throws TooFewPointsError below kMinFitPoints.
LogLinearFit fit_log_linear(std::span<const double> times, std::span<const double> values, TimeWindow window,
                            FitMethod method);

}  // namespace contact_focus
