#include "contact_focus/drift.hpp"

#include <cmath>
#include <string>

#include "contact_focus/errors.hpp"

namespace contact_focus {
namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw InputError(std::string("parameter ") + name + " must be finite");
}

void require_dim(const DriftSystem& system, const Vec& y) {
  if (y.size() != system.dim()) {
    throw InputError("state has length " + std::to_string(y.size()) + ", system dimension is " +
                     std::to_string(system.dim()));
  }
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string_view to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::duffing: return "duffing";
    case SystemKind::linear: return "linear";
    case SystemKind::harmonic: return "harmonic";
    case SystemKind::scalar_decay: return "scalar_decay";
  }
  return "unknown";
}

std::optional<SystemKind> parse_system_kind(std::string_view name) {
  for (auto k : {SystemKind::duffing, SystemKind::linear, SystemKind::harmonic, SystemKind::scalar_decay}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

DriftSystem DriftSystem::duffing(const DuffingParams& p) {
  require_finite(p.delta, "delta");
  require_finite(p.alpha, "alpha");
  require_finite(p.beta, "beta");
  require_finite(p.gamma, "gamma");
  require_finite(p.omega, "omega");
  if (p.delta < 0) throw InputError("duffing damping delta must be >= 0");
  return DriftSystem(p, 2);
}

DriftSystem DriftSystem::linear(const Mat& a) {
  if (a.rows() != a.cols() || a.rows() < 1 || a.rows() > kMaxDim) {
    throw InputError("linear system matrix must be square with 1 <= m <= " + std::to_string(kMaxDim));
  }
  if (!a.allFinite()) throw InputError("linear system matrix must be finite");
  return DriftSystem(LinearParams{a}, static_cast<int>(a.rows()));
}

DriftSystem DriftSystem::harmonic() { return DriftSystem(HarmonicParams{}, 2); }

DriftSystem DriftSystem::scalar_decay(double lambda) {
  require_finite(lambda, "lambda");
  return DriftSystem(ScalarDecayParams{lambda}, 1);
}

SystemKind DriftSystem::kind() const noexcept {
  return std::visit(overloaded{
                        [](const DuffingParams&) { return SystemKind::duffing; },
                        [](const LinearParams&) { return SystemKind::linear; },
                        [](const HarmonicParams&) { return SystemKind::harmonic; },
                        [](const ScalarDecayParams&) { return SystemKind::scalar_decay; },
                    },
                    params_);
}

Vec eval_drift(const DriftSystem& system, double t, const Vec& y) {
  require_dim(system, y);
  return std::visit(overloaded{
                        [&](const DuffingParams& p) {
                          Vec b(2);
                          b(0) = y(1);
                          b(1) = -p.delta * y(1) - p.alpha * y(0) - p.beta * y(0) * y(0) * y(0) +
                                 p.gamma * std::cos(p.omega * t);
                          return b;
                        },
                        [&](const LinearParams& p) -> Vec { return p.a * y; },
                        [&](const HarmonicParams&) {
                          Vec b(2);
                          b << y(1), -y(0);
                          return b;
                        },
                        [&](const ScalarDecayParams& p) -> Vec { return -p.lambda * y; },
                    },
                    system.params());
}

Mat eval_jacobian(const DriftSystem& system, double /*t*/, const Vec& y) {
  require_dim(system, y);
  return std::visit(overloaded{
                        [&](const DuffingParams& p) {
                          Mat m(2, 2);
                          m << 0.0, 1.0, -p.alpha - 3.0 * p.beta * y(0) * y(0), -p.delta;
                          return m;
                        },
                        [&](const LinearParams& p) -> Mat { return p.a; },
                        [&](const HarmonicParams&) {
                          Mat m(2, 2);
                          m << 0.0, 1.0, -1.0, 0.0;
                          return m;
                        },
                        [&](const ScalarDecayParams& p) -> Mat { return Mat::Constant(1, 1, -p.lambda); },
                    },
                    system.params());
}

Mat fd_jacobian(const DriftSystem& system, double t, const Vec& y, double h) {
  if (!(h > 0)) throw InputError("finite-difference step must be positive");
  require_dim(system, y);
  const int m = system.dim();
  Mat jac(m, m);
  for (int j = 0; j < m; ++j) {
    Vec up = y, down = y;
    up(j) += h;
    down(j) -= h;
    jac.col(j) = (eval_drift(system, t, up) - eval_drift(system, t, down)) / (2.0 * h);
  }
  return jac;
}

}  // namespace contact_focus
