#include "contact_focus/fit.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "contact_focus/errors.hpp"

namespace contact_focus {

std::string_view to_string(FitMethod method) {
  return method == FitMethod::plain ? "plain" : "envelope";
}

LogLinearFit fit_log_linear(std::span<const double> times, std::span<const double> values, TimeWindow window,
                            FitMethod method) {
  if (times.size() != values.size()) throw InputError("fit: times and values differ in length");
  if (!(window.lo < window.hi)) throw InputError("fit: window must satisfy lo < hi");

  LogLinearFit fit;
  fit.method = method;
  std::vector<double> xs, ys;
  const std::size_t n = times.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!window.contains(times[i])) continue;
    if (method == FitMethod::envelope) {
      if (i == 0 || i + 1 >= n) continue;
      if (!(values[i] > values[i - 1] && values[i] > values[i + 1])) continue;
    }
    if (!(values[i] > 0) || !std::isfinite(values[i])) {
      ++fit.n_skipped;
      continue;
    }
    xs.push_back(times[i]);
    ys.push_back(std::log(values[i]));
  }

  fit.n_points = static_cast<int>(xs.size());
  if (fit.n_points < kMinFitPoints) {
    throw TooFewPointsError("fit: " + std::to_string(fit.n_points) + " usable samples in [" +
                            std::to_string(window.lo) + ", " + std::to_string(window.hi) + "], need " +
                            std::to_string(kMinFitPoints));
  }

  const double count = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0) throw TooFewPointsError("fit: all samples share one time value");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;

  double ss_res = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += r * r;
  }
  // Constant data is fitted exactly by a flat line.
  fit.r_squared = syy > 0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

}  // namespace contact_focus
