#include "contact_focus/contact.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "contact_focus/errors.hpp"
#include "contact_focus/spectral.hpp"

namespace contact_focus {
namespace {

// Flat state layout: [y_ref | y | phi | H2 (column-major)].
struct Layout {
  int m;
  int y_ref() const { return 0; }
  int y() const { return m; }
  int phi() const { return 2 * m; }
  int h2() const { return 3 * m; }
  int size() const { return 3 * m + m * m; }
};

TrajectoryRow make_row(const DriftSystem& system, const Layout& lay, CouplingMode mode, double c, double t,
                       const Vec& s) {
  const int m = lay.m;
  TrajectoryRow row;
  row.t = t;
  row.y_ref = s.segment(lay.y_ref(), m);
  row.y = s.segment(lay.y(), m);
  row.phi = s.segment(lay.phi(), m);
  const Eigen::Map<const Mat> h2(s.data() + lay.h2(), m, m);
  row.h2_fro = h2.norm();
  row.coupling = h2 * row.phi;
  row.coupling_norm = row.coupling.norm();
  row.epsilon = -c + 0.5 * row.phi.dot(row.coupling);
  row.deviation = (row.y - row.y_ref).norm();
  const Vec& at = mode == CouplingMode::locked ? row.y_ref : row.y;
  const auto local = amplification_rate(eval_jacobian(system, t, at));
  row.local_sigma = local.sigma;
  return row;
}

std::vector<double> column(const TrajectoryRecord& record, double TrajectoryRow::*field) {
  std::vector<double> out;
  out.reserve(record.rows.size());
  for (const auto& r : record.rows) out.push_back(r.*field);
  return out;
}

}  // namespace

std::string_view to_string(CouplingMode mode) { return mode == CouplingMode::locked ? "locked" : "coupled"; }

std::optional<CouplingMode> parse_coupling_mode(std::string_view name) {
  if (name == "locked") return CouplingMode::locked;
  if (name == "coupled") return CouplingMode::coupled;
  return std::nullopt;
}

void validate(const ContactConfig& config) {
  const int m = config.system.dim();
  if (config.y0.size() != m) throw InputError("y0 must have length " + std::to_string(m));
  if (config.phi0.size() != m) throw InputError("phi0 must have length " + std::to_string(m));
  if (config.h2_0.rows() != m || config.h2_0.cols() != m) throw InputError("H2_0 must be " + std::to_string(m) + "x" + std::to_string(m));
  if (!config.y0.allFinite() || !config.phi0.allFinite() || !config.h2_0.allFinite() || !std::isfinite(config.c)) {
    throw InputError("initial data must be finite");
  }
  if ((config.h2_0 - config.h2_0.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + config.h2_0.cwiseAbs().maxCoeff())) {
    throw InputError("H2_0 must be symmetric");
  }
  if (!(config.t_end > 0) || !std::isfinite(config.t_end)) throw InputError("t_end must be positive");
  if (!(config.h > 0)) throw InputError("h must be positive");
  if (config.stride < 1) throw InputError("stride must be >= 1");
  const auto& w = config.fit_window;
  if (!(w.lo < w.hi) || w.hi > config.t_end * (1.0 + 1e-9)) {
    throw InputError("fit window must satisfy t_lo < t_hi <= t_end");
  }
}

std::vector<double> TrajectoryRecord::times() const { return column(*this, &TrajectoryRow::t); }
std::vector<double> TrajectoryRecord::coupling_norms() const { return column(*this, &TrajectoryRow::coupling_norm); }
std::vector<double> TrajectoryRecord::h2_norms() const { return column(*this, &TrajectoryRow::h2_fro); }

std::vector<double> TrajectoryRecord::phi_norms() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.phi.norm());
  return out;
}

TrajectoryRecord run_focusing(const ContactConfig& config) {
  validate(config);
  const DriftSystem& system = config.system;
  const int m = system.dim();

  const auto frozen = amplification_rate(eval_jacobian(system, 0.0, Vec::Zero(m)));
  if (frozen.regime == Regime::non_dissipative) {
    throw UnsupportedError(std::string("focusing runs need a dissipative drift; ") +
                           std::string(to_string(system.kind())) + " has eigenvalues with Re >= 0 at the origin");
  }

  const Layout lay{m};
  const bool locked = config.mode == CouplingMode::locked;
  auto field = [&](double t, const Vec& s) {
    const Vec y_ref = s.segment(lay.y_ref(), m);
    const Vec y = s.segment(lay.y(), m);
    const Vec phi = s.segment(lay.phi(), m);
    const Eigen::Map<const Mat> h2(s.data() + lay.h2(), m, m);
    const Mat jac = eval_jacobian(system, t, locked ? y_ref : y);

    Vec ds(lay.size());
    ds.segment(lay.y_ref(), m) = eval_drift(system, t, y_ref);
    ds.segment(lay.y(), m) = eval_drift(system, t, y) + h2 * phi;
    ds.segment(lay.phi(), m) = -jac.transpose() * phi;
    const Mat dh2 = jac * h2 + h2 * jac.transpose();
    ds.segment(lay.h2(), m * m) = Eigen::Map<const Vec>(dh2.data(), m * m);
    return ds;
  };

  Vec s(lay.size());
  s.segment(lay.y_ref(), m) = config.y0;
  s.segment(lay.y(), m) = config.y0;
  s.segment(lay.phi(), m) = config.phi0;
  const Mat h2_0 = symmetrized(config.h2_0);
  s.segment(lay.h2(), m * m) = Eigen::Map<const Vec>(h2_0.data(), m * m);

  const auto grid = uniform_grid(0.0, config.t_end, config.h);
  TrajectoryRecord record;
  record.dim = m;
  record.predicted_sigma = frozen.sigma;
  record.rows.reserve(grid.size() / static_cast<std::size_t>(config.stride) + 2);
  record.rows.push_back(make_row(system, lay, config.mode, config.c, grid[0], s));

  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    s = rk4_step(field, grid[k], s, grid[k + 1] - grid[k]);
    Eigen::Map<Mat> h2(s.data() + lay.h2(), m, m);
    h2 = symmetrized(Mat(h2));
    const bool last = k + 2 == grid.size();
    if ((k + 1) % static_cast<std::size_t>(config.stride) == 0 || last) {
      record.rows.push_back(make_row(system, lay, config.mode, config.c, grid[k + 1], s));
    }
  }
  return record;
}

FitReport fit_decay_rate(const TrajectoryRecord& record, TimeWindow window, FitMethod method) {
  const auto t = record.times();
  const auto v = record.coupling_norms();
  const auto fit = fit_log_linear(t, v, window, method);
  FitReport report;
  report.fitted_rate = -fit.slope;
  report.r_squared = fit.r_squared;
  report.n_points = fit.n_points;
  report.n_skipped = fit.n_skipped;
  report.method = method;
  report.predicted_sigma = record.predicted_sigma;
  if (record.predicted_sigma) {
    report.relative_error = std::abs(report.fitted_rate - *record.predicted_sigma) / *record.predicted_sigma;
  }
  return report;
}

LockingSummary locking_diagnostics(const TrajectoryRecord& record, double sigma, TimeWindow window,
                                   FitMethod method) {
  if (!(sigma > 0) || !std::isfinite(sigma)) throw InputError("locking diagnostics need sigma > 0");
  const auto t = record.times();
  LockingSummary out;
  out.sigma = sigma;
  out.expected = {sigma, -2.0 * sigma, -sigma};
  out.fits = {fit_log_linear(t, record.phi_norms(), window, method),
              fit_log_linear(t, record.h2_norms(), window, method),
              fit_log_linear(t, record.coupling_norms(), window, method)};
  for (std::size_t i = 0; i < 3; ++i) {
    out.exponents[i] = out.fits[i].slope;
    out.ratios[i] = out.exponents[i] / out.expected[i];
  }
  for (const auto& row : record.rows) {
    if (!window.contains(row.t)) continue;
    if (!row.local_sigma) {
      ++out.non_dissipative_samples;
      continue;
    }
    out.local_sigma_min = std::min(out.local_sigma_min.value_or(*row.local_sigma), *row.local_sigma);
    out.local_sigma_max = std::max(out.local_sigma_max.value_or(*row.local_sigma), *row.local_sigma);
  }
  return out;
}

double constraint_drift(const TrajectoryRecord& record) {
  if (record.rows.empty()) return 0.0;
  const double e0 = record.rows.front().epsilon;
  double worst = 0.0;
  for (const auto& r : record.rows) worst = std::max(worst, std::abs(r.epsilon - e0));
  return worst;
}

}  // namespace contact_focus
