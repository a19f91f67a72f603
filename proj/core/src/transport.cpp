#include "contact_focus/transport.hpp"

#include <cmath>

#include "contact_focus/geometry.hpp"

namespace contact_focus {
namespace {

void require_path(const DriftSystem& system, const Path& path) {
  if (path.times.empty() || path.times.size() != path.states.size()) throw InputError("path is empty or ragged");
  if (path.states.front().size() != system.dim()) throw InputError("path dimension does not match system");
}

void require_tensor(const Mat& x, int m, const char* what) {
  if (x.rows() != m || x.cols() != m) throw InputError(std::string(what) + " must be " + std::to_string(m) + "x" + std::to_string(m));
  if (!x.allFinite()) throw InputError(std::string(what) + " must be finite");
}

// Integrates (y, X) jointly on the path grid where y' = B(t, y) and
// X' = rhs(t, y, X). Returns X at every grid point.
template <class MatrixField>
std::vector<Mat> integrate_with_path(const DriftSystem& system, const Path& path, const Mat& x0,
                                     MatrixField&& rhs, bool symmetrize) {
  const int m = system.dim();
  const auto rows = x0.rows(), cols = x0.cols();
  const auto n = rows * cols;

  auto field = [&](double t, const Vec& s) {
    const Vec y = s.head(m);
    const Eigen::Map<const Mat> x(s.data() + m, rows, cols);
    Vec ds(m + n);
    ds.head(m) = eval_drift(system, t, y);
    const Mat dx = rhs(t, y, Mat(x));
    ds.tail(n) = Eigen::Map<const Vec>(dx.data(), n);
    return ds;
  };

  Vec s(m + n);
  s.head(m) = path.states.front();
  s.tail(n) = Eigen::Map<const Vec>(x0.data(), n);

  std::vector<Mat> out;
  out.reserve(path.size());
  out.push_back(x0);
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    s = rk4_step(field, path.times[k], s, path.times[k + 1] - path.times[k]);
    Eigen::Map<Mat> x(s.data() + m, rows, cols);
    if (symmetrize) x = symmetrized(Mat(x));
    out.emplace_back(x);
  }
  return out;
}

}  // namespace

std::vector<double> uniform_grid(double t0, double t_end, double h) {
  if (!(h > 0)) throw InputError("step must be positive");
  if (!std::isfinite(t0) || !std::isfinite(t_end)) throw InputError("time interval must be finite");
  if (t_end < t0) throw InputError("t_end must not precede t0");
  std::vector<double> grid{t0};
  if (t_end == t0) return grid;
  // Absorb representation error so that e.g. 20 / 1e-3 gives 20000 steps.
  const auto steps = static_cast<long long>(std::ceil((t_end - t0) / h - 1e-9));
  grid.reserve(static_cast<std::size_t>(steps) + 1);
  for (long long k = 1; k < steps; ++k) grid.push_back(t0 + static_cast<double>(k) * h);
  grid.push_back(t_end);
  return grid;
}

Path integrate_characteristic(const DriftSystem& system, const Vec& y0, double t0, double t_end, double h) {
  if (y0.size() != system.dim()) throw InputError("initial state does not match system dimension");
  Path path;
  path.step = h;
  path.times = uniform_grid(t0, t_end, h);
  path.states.reserve(path.times.size());
  path.states.push_back(y0);
  auto field = [&](double t, const Vec& y) { return eval_drift(system, t, y); };
  for (std::size_t k = 0; k + 1 < path.times.size(); ++k) {
    path.states.push_back(rk4_step(field, path.times[k], path.states.back(), path.times[k + 1] - path.times[k]));
  }
  return path;
}

FundamentalMatrix integrate_variational(const DriftSystem& system, const Path& path, bool projected,
                                        const GradientField& grad_h0) {
  require_path(system, path);
  if (projected && !grad_h0) throw PreconditionError("projected variational equation needs a gradient field");
  const int m = system.dim();
  auto rhs = [&](double t, const Vec& y, const Mat& phi) -> Mat {
    const Mat jac = eval_jacobian(system, t, y);
    if (!projected) return jac * phi;
    return projected_jacobian(jac, projector(grad_h0(t, y))) * phi;
  };
  return {path.times, integrate_with_path(system, path, Mat::Identity(m, m), rhs, false)};
}

TensorSeries h2_closed_form(const FundamentalMatrix& phi, const SymTensor2& h2_0) {
  TensorSeries out{phi.times, {}};
  out.values.reserve(phi.matrices.size());
  for (const auto& f : phi.matrices) {
    if (f.rows() != h2_0.rows() || f.cols() != h2_0.cols()) throw InputError("stiffness and fundamental matrix disagree in size");
    out.values.push_back(symmetrized(f * h2_0 * f.transpose()));
  }
  return out;
}

TensorSeries h2_direct(const DriftSystem& system, const Path& path, const SymTensor2& h2_0) {
  require_path(system, path);
  require_tensor(h2_0, system.dim(), "initial stiffness");
  auto rhs = [&](double t, const Vec& y, const Mat& h2) -> Mat {
    const Mat jac = eval_jacobian(system, t, y);
    return jac * h2 + h2 * jac.transpose();
  };
  return {path.times, integrate_with_path(system, path, symmetrized(h2_0), rhs, true)};
}

TensorSeries h2_projected(const DriftSystem& system, const Path& path, const SymTensor2& h2_0,
                          const GradientField& grad_h0) {
  require_path(system, path);
  require_tensor(h2_0, system.dim(), "initial stiffness");
  if (!grad_h0) throw PreconditionError("projected transport needs a gradient field");

  const Vec g0 = grad_h0(path.times.front(), path.states.front());
  if ((h2_0 * g0).norm() > 1e-10 * (1.0 + h2_0.norm() * g0.norm())) {
    throw PreconditionError("initial stiffness violates the degeneracy condition H2 grad H0 = 0");
  }

  auto rhs = [&](double t, const Vec& y, const Mat& h2) -> Mat {
    const Mat jac = eval_jacobian(system, t, y);
    const Projector p = projector(grad_h0(t, y));
    const Mat jac_t = projected_jacobian(jac, p);
    return jac_t * h2 + h2 * jac_t.transpose() + compensator(h2, jac, p);
  };
  return {path.times, integrate_with_path(system, path, symmetrized(h2_0), rhs, true)};
}

std::vector<double> trace_integral(const DriftSystem& system, const Path& path) {
  require_path(system, path);
  std::vector<double> out(path.size(), 0.0);
  double prev = eval_jacobian(system, path.times[0], path.states[0]).trace();
  for (std::size_t k = 1; k < path.size(); ++k) {
    const double cur = eval_jacobian(system, path.times[k], path.states[k]).trace();
    out[k] = out[k - 1] + 0.5 * (path.times[k] - path.times[k - 1]) * (prev + cur);
    prev = cur;
  }
  return out;
}

}  // namespace contact_focus
