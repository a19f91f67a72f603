#pragma once

#include <functional>
#include <string>
#include <vector>

#include "contact_focus/drift.hpp"
#include "contact_focus/errors.hpp"
#include "contact_focus/linalg.hpp"

namespace contact_focus {

inline constexpr double kDefaultStep = 1e-3;

/// One classical fourth-order Runge-Kutta step of s' = f(t, s).
/// Throws BlowUpError if any stage or the result is non-finite.
template <class Field>
Vec rk4_step(Field&& f, double t, const Vec& s, double h) {
  if (!(h > 0)) throw InputError("rk4 step must be positive");
  auto checked = [t](Vec v) {
    if (!v.allFinite()) throw BlowUpError(t, "non-finite value in RK4 stage at t = " + std::to_string(t));
    return v;
  };
  const Vec k1 = checked(f(t, s));
  const Vec k2 = checked(f(t + 0.5 * h, Vec(s + (0.5 * h) * k1)));
  const Vec k3 = checked(f(t + 0.5 * h, Vec(s + (0.5 * h) * k2)));
  const Vec k4 = checked(f(t + h, Vec(s + h * k3)));
  return checked(s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

/// t0, t0 + h, ..., with the final step shortened so the grid ends exactly at
/// t_end. A zero-length interval yields the single point t0.
std::vector<double> uniform_grid(double t0, double t_end, double h);

// Sampled characteristic y(t) of the drift field on a uniform grid.
struct Path {
  std::vector<double> times;
  std::vector<Vec> states;
  double step = kDefaultStep;

  std::size_t size() const noexcept { return times.size(); }
};

struct FundamentalMatrix {
  std::vector<double> times;
  std::vector<Mat> matrices;
};

struct TensorSeries {
  std::vector<double> times;
  std::vector<SymTensor2> values;
};

using GradientField = std::function<Vec(double, const Vec&)>;

Path integrate_characteristic(const DriftSystem& system, const Vec& y0, double t0, double t_end,
                              double h = kDefaultStep);

// The matrix-valued integrators below re-integrate the characteristic jointly
// with the matrix unknown, so the Jacobian is sampled at the RK4 stage points
// rather than interpolated. The recovered states coincide with path.states.

/// Phi' = M(t, y(t)) Phi, Phi(t0) = I. With projected = true, M is replaced by
/// P M P where P is built from grad_h0 at every stage.
FundamentalMatrix integrate_variational(const DriftSystem& system, const Path& path, bool projected = false,
                                        const GradientField& grad_h0 = {});

/// Phi H0 Phi^T at every grid point.
TensorSeries h2_closed_form(const FundamentalMatrix& phi, const SymTensor2& h2_0);

/// H' = M H + H M^T along the path.
TensorSeries h2_direct(const DriftSystem& system, const Path& path, const SymTensor2& h2_0);

/// H' = M~ H + H M~^T + Delta[H] with M~ = P M P. Requires H0 grad_h0(t0, y0) = 0.
TensorSeries h2_projected(const DriftSystem& system, const Path& path, const SymTensor2& h2_0,
                          const GradientField& grad_h0);

/// Running integral of tr M(t, y(t)) by the composite trapezoid rule.
std::vector<double> trace_integral(const DriftSystem& system, const Path& path);

}  // namespace contact_focus
