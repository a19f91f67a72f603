#pragma once

#include <optional>
#include <string_view>
#include <variant>

#include "contact_focus/linalg.hpp"

namespace contact_focus {

/// x'' + delta x' + alpha x + beta x^3 = gamma cos(omega t), as a first-order
/// system in (x, x').
struct DuffingParams {
  double delta = 0.3;
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 0.5;
  double omega = 1.2;
};

/// B(y) = A y.
struct LinearParams {
  Mat a;
};

/// Unit-frequency rotation B = (y2, -y1); conserves (y1^2 + y2^2) / 2.
struct HarmonicParams {};

/// B = -lambda y in one dimension.
struct ScalarDecayParams {
  double lambda = 1.0;
};

enum class SystemKind { duffing, linear, harmonic, scalar_decay };

std::string_view to_string(SystemKind kind);
std::optional<SystemKind> parse_system_kind(std::string_view name);

inline constexpr int kMaxDim = 4;

// A drift field B(t, y) together with its analytic Jacobian. Immutable once
// built; the factories validate parameters and throw InputError.
class DriftSystem {
 public:
  using Params = std::variant<DuffingParams, LinearParams, HarmonicParams, ScalarDecayParams>;

  static DriftSystem duffing(const DuffingParams& p);
  static DriftSystem linear(const Mat& a);
  static DriftSystem harmonic();
  static DriftSystem scalar_decay(double lambda);

  SystemKind kind() const noexcept;
  int dim() const noexcept { return dim_; }
  const Params& params() const noexcept { return params_; }

 private:
  DriftSystem(Params params, int dim) : params_(std::move(params)), dim_(dim) {}

  Params params_;
  int dim_;
};

Vec eval_drift(const DriftSystem& system, double t, const Vec& y);
Mat eval_jacobian(const DriftSystem& system, double t, const Vec& y);

/// Central-difference Jacobian, column j = (B(y + h e_j) - B(y - h e_j)) / 2h.
Mat fd_jacobian(const DriftSystem& system, double t, const Vec& y, double h);

}  // namespace contact_focus
