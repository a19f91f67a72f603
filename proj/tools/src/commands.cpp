#include "contact_focus/cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "contact_focus/cli/run_config.hpp"
#include "contact_focus/cli/simulation.hpp"
#include "contact_focus/closure.hpp"
#include "contact_focus/errors.hpp"
#include "contact_focus/spectral.hpp"

#ifndef CONTACT_FOCUS_VERSION
#define CONTACT_FOCUS_VERSION "unknown"
#endif

namespace contact_focus::cli {

using nlohmann::json;

namespace {

constexpr double kRateTolerance = 0.15;
constexpr double kDeviationFraction = 0.05;

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const BlowUpError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}

json read_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot read " + path);
  return json::parse(is);
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// --matrix "a,b;c,d"
Mat parse_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream rs(text);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::vector<double> r;
    std::stringstream cs(row);
    std::string cell;
    while (std::getline(cs, cell, ',')) {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw InputError("bad matrix entry '" + cell + "'");
      }
      if (cell.find_first_not_of(" \t", used) != std::string::npos) throw InputError("bad matrix entry '" + cell + "'");
      r.push_back(v);
    }
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw InputError("empty --matrix");
  Mat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw InputError("--matrix rows must have equal length");
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

struct SpectralArgs {
  std::string system;
  std::optional<double> delta, alpha, beta, gamma, omega, lambda;
  std::optional<std::string> matrix;
};

int cmd_spectral(const SpectralArgs& a, std::ostream& out) {
  const auto kind = parse_system_kind(a.system);
  if (!kind) throw InputError("unknown system '" + a.system + "'");

  SpectralReport report;
  json params = json::object();
  switch (*kind) {
    case SystemKind::duffing: {
      if (!a.delta || !a.alpha) throw InputError("duffing needs --delta and --alpha");
      DuffingParams p;
      p.delta = *a.delta;
      p.alpha = *a.alpha;
      p.beta = a.beta.value_or(p.beta);
      p.gamma = a.gamma.value_or(p.gamma);
      p.omega = a.omega.value_or(p.omega);
      report = duffing_regime(p.delta, p.alpha);
      params = {{"delta", p.delta}, {"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma}, {"omega", p.omega}};
      break;
    }
    case SystemKind::linear: {
      if (!a.matrix) throw InputError("linear needs --matrix");
      const auto system = DriftSystem::linear(parse_matrix(*a.matrix));
      report = origin_spectrum(system);
      params = {{"a", system_to_json(system)["a"]}};
      break;
    }
    case SystemKind::harmonic:
      report = origin_spectrum(DriftSystem::harmonic());
      break;
    case SystemKind::scalar_decay: {
      if (!a.lambda) throw InputError("scalar_decay needs --lambda");
      report = origin_spectrum(DriftSystem::scalar_decay(*a.lambda));
      params = {{"lambda", *a.lambda}};
      break;
    }
  }

  json eig = json::array();
  for (const auto& z : report.eigenvalues) eig.push_back({{"re", z.real()}, {"im", z.imag()}});
  const json doc{{"system", a.system},
                 {"parameters", params},
                 {"eigenvalues", eig},
                 {"sigma", optional_json(report.sigma)},
                 {"tau_f", optional_json(report.tau_f)},
                 {"regime", std::string(to_string(report.regime))}};
  out << doc.dump(2) << '\n';
  return kOk;
}

void print_runs(const SimulationResult& result, std::ostream& out) {
  for (std::size_t k = 0; k < result.runs.size(); ++k) {
    const auto& run = result.runs[k];
    out << "case " << k << ": ";
    if (run.fit) {
      out << "rate " << std::setprecision(6) << run.fit->fitted_rate;
      if (run.fit->relative_error) out << " (rel. err " << *run.fit->relative_error << ")";
    } else {
      out << "no fit (" << run.fit_error << ")";
    }
    out << ", constraint drift " << std::setprecision(3) << run.drift << ", final/peak deviation ";
    if (run.max_deviation > 0) {
      out << run.final_deviation / run.max_deviation;
    } else {
      out << "n/a (zero)";
    }
    out << '\n';
  }
}

int cmd_simulate(const std::string& path, const std::optional<std::string>& out_dir, std::ostream& out) {
  RunConfig config = parse_run_config(read_json_file(path));
  if (out_dir) config.output_dir = *out_dir;
  if (config.output_dir.empty()) throw InputError("no output directory: set output_dir or pass --out");

  const auto result = simulate(config, thread_cap(config.phi0_list.size()));
  write_outputs(result);
  print_runs(result, out);
  const bool ok = std::all_of(result.runs.begin(), result.runs.end(), [](const auto& r) { return r.constraint_ok(); });
  out << "wrote " << result.runs.size() << " trajectories and report.json to " << config.output_dir.string() << '\n';
  return ok ? kOk : kNegative;
}

int cmd_fig1(const std::string& dir, std::ostream& out) {
  const RunConfig config = fig1_run_config(dir);
  const auto result = simulate(config, thread_cap(config.phi0_list.size()));

  json cases = json::array();
  bool all_ok = true;
  for (std::size_t k = 0; k < result.runs.size(); ++k) {
    const auto& run = result.runs[k];
    const bool rate_ok = run.fit && run.fit->relative_error && *run.fit->relative_error <= kRateTolerance;
    bool locking_ok = run.locking.has_value();
    if (run.locking) {
      for (double r : run.locking->ratios) locking_ok = locking_ok && std::abs(r - 1.0) <= kRateTolerance;
    }
    const bool deviation_ok = run.max_deviation > 0 && run.final_deviation < kDeviationFraction * run.max_deviation;
    all_ok = all_ok && rate_ok && locking_ok && deviation_ok && run.constraint_ok();
    cases.push_back({{"index", k},
                     {"rate_ok", rate_ok},
                     {"locking_ok", locking_ok},
                     {"deviation_ok", deviation_ok},
                     {"constraint_ok", run.constraint_ok()}});
  }
  const json checks{{"rate_tolerance", kRateTolerance},
                    {"deviation_fraction", kDeviationFraction},
                    {"cases", cases},
                    {"all_ok", all_ok}};
  write_outputs(result, {{"checks", checks}});

  print_runs(result, out);
  out << (all_ok ? "all figure checks passed" : "some figure checks failed, see checks in report.json") << '\n';
  return all_ok ? kOk : kNegative;
}

ContactPotentialData parse_case_file(const json& doc) {
  if (!doc.is_object()) throw InputError("case file must be a JSON object");
  for (const auto& item : doc.items()) {
    if (item.key() != "vars" && item.key() != "N" && item.key() != "components") {
      throw InputError("unknown key '" + item.key() + "' in case file");
    }
  }
  for (const char* key : {"vars", "N", "components"}) {
    if (!doc.contains(key)) throw InputError(std::string("missing key '") + key + "' in case file");
  }
  if (!doc["vars"].is_number_integer() || !doc["N"].is_number_integer()) {
    throw InputError("'vars' and 'N' must be integers");
  }
  ContactPotentialData data;
  data.dim = doc["vars"].get<int>();
  data.order = doc["N"].get<int>();
  if (data.dim < 1 || data.dim > kMaxDim) throw InputError("'vars' must be between 1 and 4");
  const auto n_vars = static_cast<std::size_t>(1 + 2 * data.dim);

  const json& comps = doc["components"];
  if (!comps.is_array()) throw InputError("'components' must be an array");
  for (const auto& comp : comps) {
    if (!comp.is_array()) throw InputError("each component must be an array of terms");
    Poly p(data.dim);
    for (const auto& term : comp) {
      if (!term.is_object() || term.size() != 2 || !term.contains("coef") || !term.contains("exp")) {
        throw InputError("each term must be {\"coef\": ..., \"exp\": [...]}");
      }
      Rational coef;
      if (term["coef"].is_string()) {
        coef = parse_rational(term["coef"].get<std::string>());
      } else if (term["coef"].is_number_integer()) {
        coef = Rational(term["coef"].get<long>());
      } else {
        throw InputError("'coef' must be a rational string or an integer");
      }
      const json& e = term["exp"];
      if (!e.is_array() || e.size() != n_vars) {
        throw InputError("'exp' must list " + std::to_string(n_vars) + " exponents (t, y.., phi..)");
      }
      Poly::Exponents exps;
      for (const auto& v : e) {
        if (!v.is_number_unsigned()) throw InputError("exponents must be non-negative integers");
        exps.push_back(v.get<std::uint32_t>());
      }
      p.add_term(exps, coef);
    }
    data.components.push_back(std::move(p));
  }
  validate(data);
  return data;
}

json closure_json(const std::string& name, const ContactPotentialData& data, const ResidualReport& r) {
  json comps = json::array();
  for (const auto& c : data.components) comps.push_back(c.to_string());

  json residuals = json::array();
  for (std::size_t p = 0; p < r.residuals.size(); ++p) {
    const Poly& c = r.residuals[p];
    residuals.push_back({{"order", p},
                         {"zero", c.is_zero()},
                         {"terms", c.term_count()},
                         {"max_abs", c.max_abs_coefficient().get_str()},
                         {"polynomial", c.to_string()}});
  }
  auto strings = [](const std::vector<Poly>& ps) {
    json a = json::array();
    for (const auto& p : ps) a.push_back(p.to_string());
    return a;
  };
  json doc{{"case", name},
           {"dim", data.dim},
           {"order", r.order},
           {"p_max", r.p_max},
           {"components", comps},
           {"residuals", residuals},
           {"conditions",
            {{"transport", {{"ok", r.transport_ok}, {"residual", r.transport_residual.to_string()}}},
             {"degeneracy", {{"ok", r.degeneracy_ok}, {"residuals", strings(r.degeneracy_residuals)}}},
             {"recurrence", {{"ok", r.recurrence_ok}, {"residuals", strings(r.recurrence_residuals)}}},
             {"structural", {{"ok", r.structural_ok}, {"residuals", strings(r.structural_residuals)}}}}},
           {"all_residuals_zero", r.all_residuals_zero()},
           {"all_conditions", r.all_conditions()}};
  const Poly& h2 = data.component(2);
  doc["self_bracket_h2_zero"] = poisson(h2, h2).is_zero();
  if (const auto w = r.worst()) {
    doc["worst"] = {{"order", w->order}, {"terms", w->terms}, {"max_abs", w->max_abs.get_str()}};
  }
  return doc;
}

int cmd_closure(const std::string& which, const std::optional<int>& p_max, std::ostream& out) {
  ContactPotentialData data;
  if (which == "harmonic") {
    data = harmonic_case();
  } else if (which == "linear-const-k") {
    data = linear_const_k_case();
  } else {
    data = parse_case_file(read_json_file(which));
  }
  const auto report = verify_closure(data, p_max);
  out << closure_json(which, data, report).dump(2) << '\n';
  return report.all_residuals_zero() ? kOk : kNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contact-geometric focusing of stochastic dynamics", "contact-focus"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CONTACT_FOCUS_VERSION);

  SpectralArgs sa;
  auto* spectral = app.add_subcommand("spectral", "Linearised decay rate, timescale and regime");
  spectral->add_option("--system", sa.system, "duffing | linear | harmonic | scalar_decay")->required();
  spectral->add_option("--delta", sa.delta, "Duffing damping");
  spectral->add_option("--alpha", sa.alpha, "Duffing linear stiffness");
  spectral->add_option("--beta", sa.beta, "Duffing cubic stiffness");
  spectral->add_option("--gamma", sa.gamma, "Duffing forcing amplitude");
  spectral->add_option("--omega", sa.omega, "Duffing forcing frequency");
  spectral->add_option("--lambda", sa.lambda, "scalar_decay rate");
  spectral->add_option("--matrix", sa.matrix, "linear drift matrix, rows ';' separated, entries ','");

  std::string config_path;
  std::optional<std::string> out_dir;
  auto* sim = app.add_subcommand("simulate", "Run a JSON-configured focusing experiment");
  sim->add_option("config", config_path, "config file")->required();
  sim->add_option("--out", out_dir, "output directory (overrides output_dir)");

  std::string fig_dir;
  auto* fig1 = app.add_subcommand("fig1", "Reproduce the forced Duffing figure");
  fig1->add_option("outdir", fig_dir, "output directory")->required();

  std::string closure_case;
  std::optional<int> p_max;
  auto* closure = app.add_subcommand("closure", "Exact closure residuals of a contact potential");
  closure->add_option("case", closure_case, "harmonic | linear-const-k | case file")->required();
  closure->add_option("--p-max", p_max, "highest residual order");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  return guarded(err, [&] {
    if (*spectral) return cmd_spectral(sa, out);
    if (*sim) return cmd_simulate(config_path, out_dir, out);
    if (*fig1) return cmd_fig1(fig_dir, out);
    return cmd_closure(closure_case, p_max, out);
  });
}

}  // namespace contact_focus::cli
