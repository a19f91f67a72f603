#include "contact_focus/cli/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <string>
#include <thread>

#include "contact_focus/cli/svg.hpp"
#include "contact_focus/errors.hpp"

#ifndef CONTACT_FOCUS_VERSION
#define CONTACT_FOCUS_VERSION "unknown"
#endif

namespace contact_focus::cli {

using nlohmann::json;

namespace {

json vec_json(const Vec& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json spectrum_json(const SpectralReport& s) {
  json eig = json::array();
  for (const auto& z : s.eigenvalues) eig.push_back({{"re", z.real()}, {"im", z.imag()}});
  return {{"eigenvalues", eig},
          {"sigma", optional_json(s.sigma)},
          {"tau_f", optional_json(s.tau_f)},
          {"regime", std::string(to_string(s.regime))}};
}

json fit_json(const FitReport& f) {
  return {{"fitted_rate", f.fitted_rate},
          {"predicted_sigma", optional_json(f.predicted_sigma)},
          {"relative_error", optional_json(f.relative_error)},
          {"r_squared", f.r_squared},
          {"n_points", f.n_points},
          {"n_skipped", f.n_skipped},
          {"method", std::string(to_string(f.method))}};
}

json locking_json(const LockingSummary& l) {
  static const char* const names[3] = {"phi", "h2", "coupling"};
  json out{{"sigma", l.sigma},
           {"local_sigma_min", optional_json(l.local_sigma_min)},
           {"local_sigma_max", optional_json(l.local_sigma_max)},
           {"non_dissipative_samples", l.non_dissipative_samples}};
  for (int k = 0; k < 3; ++k) {
    out["quantities"][names[k]] = {{"exponent", l.exponents[k]},
                                   {"expected", l.expected[k]},
                                   {"ratio", l.ratios[k]},
                                   {"intercept", l.fits[k].intercept},
                                   {"r_squared", l.fits[k].r_squared},
                                   {"n_points", l.fits[k].n_points}};
  }
  return out;
}

RunOutcome run_case(const RunConfig& rc, const Vec& phi0) {
  ContactConfig c = rc.base;
  c.phi0 = phi0;
  c.fit_window = *rc.fit_window;
  c.envelope_fit = *rc.envelope_fit;
  const FitMethod method = c.envelope_fit ? FitMethod::envelope : FitMethod::plain;

  RunOutcome out;
  out.phi0 = phi0;
  out.record = run_focusing(c);
  try {
    out.fit = fit_decay_rate(out.record, c.fit_window, method);
    out.locking = locking_diagnostics(out.record, *out.record.predicted_sigma, c.fit_window, method);
  } catch (const TooFewPointsError& e) {
    out.fit_error = e.what();
  }
  out.epsilon0 = out.record.rows.front().epsilon;
  out.drift = constraint_drift(out.record);
  out.drift_tolerance = 1e-6 * (1.0 + std::abs(out.epsilon0));
  for (const auto& row : out.record.rows) out.max_deviation = std::max(out.max_deviation, row.deviation);
  out.final_deviation = out.record.rows.back().deviation;
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write " + path.string());
  os << text;
  if (!os) throw InputError("failed writing " + path.string());
}

void write_panels(const SimulationResult& result) {
  const auto& dir = result.config.output_dir;
  LinePlot top{"Macroscopic trajectory", "t", "y1", {}};
  LinePlot bottom{"Coupling magnitude", "t", "ln |H2 phi|", {}};
  for (std::size_t k = 0; k < result.runs.size(); ++k) {
    const auto& run = result.runs[k];
    const auto& rows = run.record.rows;
    std::string tag = "phi0 = (";
    for (Eigen::Index i = 0; i < run.phi0.size(); ++i) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%s%g", i ? ", " : "", run.phi0(i));
      tag += buf;
    }
    tag += ")";

    Series traj{tag, {}, {}, palette(k)};
    Series coup{tag, {}, {}, palette(k)};
    for (const auto& row : rows) {
      traj.x.push_back(row.t);
      traj.y.push_back(row.y(0));
      if (row.coupling_norm > 0.0) {
        coup.x.push_back(row.t);
        coup.y.push_back(std::log(row.coupling_norm));
      }
    }
    top.series.push_back(std::move(traj));
    if (!coup.x.empty()) bottom.series.push_back(std::move(coup));

    if (run.locking) {
      const auto& fit = run.locking->fits[2];
      const TimeWindow w = *result.config.fit_window;
      char buf[64];
      std::snprintf(buf, sizeof buf, "fit, rate %.4f", -fit.slope);
      bottom.series.push_back(Series{buf,
                                     {w.lo, w.hi},
                                     {fit.intercept + fit.slope * w.lo, fit.intercept + fit.slope * w.hi},
                                     palette(k),
                                     true});
    }
  }
  if (!result.runs.empty()) {
    Series ref{"reference", {}, {}, "#000000", true};
    for (const auto& row : result.runs.front().record.rows) {
      ref.x.push_back(row.t);
      ref.y.push_back(row.y_ref(0));
    }
    top.series.push_back(std::move(ref));
  }
  write_text(dir / "trajectory.svg", top.render());
  write_text(dir / "coupling.svg", bottom.render());
}

}  // namespace

SpectralReport origin_spectrum(const DriftSystem& system) {
  return amplification_rate(eval_jacobian(system, 0.0, Vec::Zero(system.dim())));
}

RunConfig resolve(RunConfig config, const SpectralReport& spectrum) {
  if (!spectrum.sigma) {
    throw UnsupportedError("Jacobian at the origin is not strictly dissipative; no focusing rate to compare");
  }
  const double tau = *spectrum.tau_f;
  if (!config.fit_window) {
    const double t_end = config.base.t_end;
    if (tau >= t_end) {
      throw InputError("default fit window starts at tau_f = " + format_double(tau) +
                       " which is past t_end; set fit_window explicitly");
    }
    config.fit_window = TimeWindow{tau, std::min(3.0 * tau, t_end)};
  }
  if (!config.envelope_fit) config.envelope_fit = spectrum.regime == Regime::underdamped;
  return config;
}

int thread_cap(std::size_t n_runs) {
  int cap = static_cast<int>(std::max<std::size_t>(n_runs, 1));
  if (const char* env = std::getenv("CONTACT_FOCUS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) cap = static_cast<int>(std::min<long>(v, cap));
  }
  return cap;
}

SimulationResult simulate(const RunConfig& config, int threads) {
  SimulationResult result;
  result.spectrum = origin_spectrum(config.base.system);
  result.config = resolve(config, result.spectrum);
  const std::size_t n = result.config.phi0_list.size();
  result.threads = std::clamp<int>(threads, 1, static_cast<int>(std::max<std::size_t>(n, 1)));

  // Validate every case up front so config errors surface before any work.
  for (const auto& phi : result.config.phi0_list) {
    ContactConfig c = result.config.base;
    c.phi0 = phi;
    c.fit_window = *result.config.fit_window;
    validate(c);
  }

  std::vector<RunOutcome> outcomes(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        outcomes[k] = run_case(result.config, result.config.phi0_list[k]);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < result.threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  result.runs = std::move(outcomes);
  return result;
}

void write_csv(const TrajectoryRecord& record, const std::filesystem::path& path) {
  const int m = record.dim;
  std::string text = "t";
  for (const char* prefix : {"y", "yref", "phi"}) {
    for (int i = 1; i <= m; ++i) text += "," + std::string(prefix) + std::to_string(i);
  }
  text += ",h2_fro,coupling_norm,epsilon,deviation\n";
  auto put = [&](double v) {
    text += format_double(v);
  };
  for (const auto& row : record.rows) {
    put(row.t);
    for (const Vec* v : {&row.y, &row.y_ref, &row.phi}) {
      for (Eigen::Index i = 0; i < v->size(); ++i) {
        text += ',';
        put((*v)(i));
      }
    }
    for (double v : {row.h2_fro, row.coupling_norm, row.epsilon, row.deviation}) {
      text += ',';
      put(v);
    }
    text += '\n';
  }
  write_text(path, text);
}

json report_json(const SimulationResult& result) {
  const RunConfig& rc = result.config;
  json provenance = to_json(rc);
  provenance["fit_method"] = std::string(to_string(*rc.envelope_fit ? FitMethod::envelope : FitMethod::plain));
  provenance["threads"] = result.threads;
  provenance["integrator"] = "rk4 fixed step";

  json runs = json::array();
  bool all_ok = true;
  for (std::size_t k = 0; k < result.runs.size(); ++k) {
    const auto& run = result.runs[k];
    all_ok = all_ok && run.constraint_ok();
    json r{{"index", k},
           {"phi0", vec_json(run.phi0)},
           {"csv", "trajectory_" + std::to_string(k) + ".csv"},
           {"samples", run.record.rows.size()},
           {"fit", run.fit ? fit_json(*run.fit) : json(nullptr)},
           {"locking", run.locking ? locking_json(*run.locking) : json(nullptr)},
           {"constraint",
            {{"epsilon0", run.epsilon0},
             {"drift", run.drift},
             {"tolerance", run.drift_tolerance},
             {"ok", run.constraint_ok()}}},
           {"deviation",
            {{"max", run.max_deviation},
             {"final", run.final_deviation},
             {"final_over_peak", run.max_deviation > 0.0 ? json(run.final_deviation / run.max_deviation)
                                                         : json(nullptr)},
             {"zero_deviation", run.zero_deviation()}}}};
    if (!run.fit_error.empty()) r["fit_error"] = run.fit_error;
    runs.push_back(std::move(r));
  }

  return {{"tool", {{"name", "contact-focus"}, {"version", CONTACT_FOCUS_VERSION}}},
          {"provenance", provenance},
          {"spectrum", spectrum_json(result.spectrum)},
          {"runs", runs},
          {"all_constraints_ok", all_ok}};
}

void write_outputs(const SimulationResult& result, const json& extra) {
  const auto& dir = result.config.output_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory " + dir.string() + ": " + ec.message());

  for (std::size_t k = 0; k < result.runs.size(); ++k) {
    write_csv(result.runs[k].record, dir / ("trajectory_" + std::to_string(k) + ".csv"));
  }
  json report = report_json(result);
  for (const auto& item : extra.items()) report[item.key()] = item.value();
  write_text(dir / "report.json", report.dump(2) + "\n");
  if (result.config.emit_svg) write_panels(result);
}

}  // namespace contact_focus::cli
