#include "contact_focus/cli/run_config.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "contact_focus/errors.hpp"

namespace contact_focus::cli {

using nlohmann::json;

namespace {

void require_object(const json& doc, const std::string& what) {
  if (!doc.is_object()) throw InputError(what + " must be a JSON object");
}

void reject_unknown(const json& doc, const std::set<std::string>& allowed, const std::string& what) {
  for (const auto& item : doc.items()) {
    if (!allowed.contains(item.key())) throw InputError("unknown key '" + item.key() + "' in " + what);
  }
}

const json& required(const json& doc, const std::string& key, const std::string& what) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw InputError("missing key '" + key + "' in " + what);
  return *it;
}

double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw InputError("'" + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& doc, const std::string& key, double fallback) {
  const auto it = doc.find(key);
  return it == doc.end() ? fallback : as_number(*it, key);
}

Vec as_vec(const json& v, const std::string& key) {
  if (!v.is_array() || v.empty()) throw InputError("'" + key + "' must be a non-empty array of numbers");
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = as_number(v[i], key);
  return out;
}

Mat as_mat(const json& v, const std::string& key) {
  if (!v.is_array() || v.empty()) throw InputError("'" + key + "' must be a non-empty array of rows");
  const std::size_t rows = v.size();
  if (!v[0].is_array()) throw InputError("'" + key + "' must be an array of rows");
  const std::size_t cols = v[0].size();
  Mat out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!v[i].is_array() || v[i].size() != cols) throw InputError("'" + key + "' rows must have equal length");
    for (std::size_t j = 0; j < cols; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = as_number(v[i][j], key);
    }
  }
  return out;
}

json vec_json(const Vec& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

json mat_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vec_json(m.row(i).transpose()));
  return rows;
}

}  // namespace

DriftSystem system_from_json(const json& doc) {
  require_object(doc, "system");
  const json& kind_v = required(doc, "kind", "system");
  if (!kind_v.is_string()) throw InputError("'kind' must be a string");
  const auto kind = parse_system_kind(kind_v.get<std::string>());
  if (!kind) throw InputError("unknown system kind '" + kind_v.get<std::string>() + "'");

  switch (*kind) {
    case SystemKind::duffing: {
      reject_unknown(doc, {"kind", "delta", "alpha", "beta", "gamma", "omega"}, "system");
      DuffingParams p;
      p.delta = number_or(doc, "delta", p.delta);
      p.alpha = number_or(doc, "alpha", p.alpha);
      p.beta = number_or(doc, "beta", p.beta);
      p.gamma = number_or(doc, "gamma", p.gamma);
      p.omega = number_or(doc, "omega", p.omega);
      return DriftSystem::duffing(p);
    }
    case SystemKind::linear:
      reject_unknown(doc, {"kind", "a"}, "system");
      return DriftSystem::linear(as_mat(required(doc, "a", "system"), "a"));
    case SystemKind::harmonic:
      reject_unknown(doc, {"kind"}, "system");
      return DriftSystem::harmonic();
    case SystemKind::scalar_decay:
      reject_unknown(doc, {"kind", "lambda"}, "system");
      return DriftSystem::scalar_decay(number_or(doc, "lambda", 1.0));
  }
  throw InputError("unhandled system kind");
}

json system_to_json(const DriftSystem& system) {
  json out{{"kind", std::string(to_string(system.kind()))}};
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, DuffingParams>) {
          out["delta"] = p.delta;
          out["alpha"] = p.alpha;
          out["beta"] = p.beta;
          out["gamma"] = p.gamma;
          out["omega"] = p.omega;
        } else if constexpr (std::is_same_v<P, LinearParams>) {
          out["a"] = mat_json(p.a);
        } else if constexpr (std::is_same_v<P, ScalarDecayParams>) {
          out["lambda"] = p.lambda;
        }
      },
      system.params());
  return out;
}

RunConfig parse_run_config(const json& doc) {
  require_object(doc, "config");
  reject_unknown(doc,
                 {"system", "mode", "y0", "phi0_list", "h2_0", "c", "t_end", "h", "stride", "fit_window",
                  "envelope_fit", "output_dir", "emit_svg"},
                 "config");

  RunConfig rc;
  ContactConfig& c = rc.base;
  c.system = system_from_json(required(doc, "system", "config"));
  const int m = c.system.dim();

  if (const auto it = doc.find("mode"); it != doc.end()) {
    if (!it->is_string()) throw InputError("'mode' must be a string");
    const auto mode = parse_coupling_mode(it->get<std::string>());
    if (!mode) throw InputError("'mode' must be \"locked\" or \"coupled\"");
    c.mode = *mode;
  }

  c.y0 = as_vec(required(doc, "y0", "config"), "y0");
  if (c.y0.size() != m) throw InputError("'y0' must have " + std::to_string(m) + " entries");

  const json& list = required(doc, "phi0_list", "config");
  if (!list.is_array() || list.empty()) throw InputError("'phi0_list' must be a non-empty array");
  for (const auto& v : list) {
    Vec phi = as_vec(v, "phi0_list");
    if (phi.size() != m) throw InputError("every phi0 must have " + std::to_string(m) + " entries");
    rc.phi0_list.push_back(std::move(phi));
  }

  if (const auto it = doc.find("h2_0"); it != doc.end()) {
    c.h2_0 = as_mat(*it, "h2_0");
  } else {
    c.h2_0 = Mat::Identity(m, m);
  }
  c.c = number_or(doc, "c", 0.0);
  c.t_end = as_number(required(doc, "t_end", "config"), "t_end");
  c.h = number_or(doc, "h", kDefaultStep);

  c.stride = kDefaultStride;
  if (const auto it = doc.find("stride"); it != doc.end()) {
    if (!it->is_number_integer()) throw InputError("'stride' must be an integer");
    c.stride = it->get<int>();
  }

  if (const auto it = doc.find("fit_window"); it != doc.end()) {
    if (!it->is_array() || it->size() != 2) throw InputError("'fit_window' must be [t_lo, t_hi]");
    rc.fit_window = TimeWindow{as_number((*it)[0], "fit_window"), as_number((*it)[1], "fit_window")};
  }
  if (const auto it = doc.find("envelope_fit"); it != doc.end()) {
    if (!it->is_boolean()) throw InputError("'envelope_fit' must be a boolean");
    rc.envelope_fit = it->get<bool>();
  }
  if (const auto it = doc.find("output_dir"); it != doc.end()) {
    if (!it->is_string()) throw InputError("'output_dir' must be a string");
    rc.output_dir = it->get<std::string>();
  }
  if (const auto it = doc.find("emit_svg"); it != doc.end()) {
    if (!it->is_boolean()) throw InputError("'emit_svg' must be a boolean");
    rc.emit_svg = it->get<bool>();
  }

  // Field checks shared with the library; the window is checked after
  // resolution.
  ContactConfig probe = c;
  probe.phi0 = rc.phi0_list.front();
  probe.fit_window = rc.fit_window.value_or(TimeWindow{0.0, c.t_end > 0.0 ? c.t_end : 1.0});
  validate(probe);
  return rc;
}

json to_json(const RunConfig& config) {
  const ContactConfig& c = config.base;
  json phi0s = json::array();
  for (const auto& p : config.phi0_list) phi0s.push_back(vec_json(p));
  json out{
      {"system", system_to_json(c.system)},
      {"mode", std::string(to_string(c.mode))},
      {"y0", vec_json(c.y0)},
      {"phi0_list", phi0s},
      {"h2_0", mat_json(c.h2_0)},
      {"c", c.c},
      {"t_end", c.t_end},
      {"h", c.h},
      {"stride", c.stride},
      {"output_dir", config.output_dir.string()},
      {"emit_svg", config.emit_svg},
  };
  out["fit_window"] = config.fit_window ? json{config.fit_window->lo, config.fit_window->hi} : json(nullptr);
  out["envelope_fit"] = config.envelope_fit ? json(*config.envelope_fit) : json(nullptr);
  return out;
}

std::vector<Vec> fig1_phi0_list() {
  Vec a(2), b(2), c(2);
  a << 0.1, 0.1;
  b << -0.2, 0.05;
  c << 0.05, -0.15;
  return {a, b, c};
}

RunConfig fig1_run_config(const std::filesystem::path& output_dir) {
  RunConfig rc;
  rc.base.system = DriftSystem::duffing(DuffingParams{0.3, 1.0, 1.0, 0.5, 1.2});
  rc.base.mode = CouplingMode::coupled;
  rc.base.y0 = Vec::Zero(2);
  rc.base.h2_0 = Mat::Identity(2, 2);
  rc.base.t_end = 20.0;
  rc.base.h = 1e-3;
  rc.base.stride = kDefaultStride;
  rc.phi0_list = fig1_phi0_list();
  rc.output_dir = output_dir;
  rc.emit_svg = true;
  return rc;
}

}  // namespace contact_focus::cli
