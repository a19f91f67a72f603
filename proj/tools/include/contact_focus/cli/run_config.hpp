#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

#include "contact_focus/contact.hpp"

namespace contact_focus::cli {

// A multi-run experiment: one ContactConfig template and a list of initial
// fiber vectors. Window and fit method are resolved from the spectrum when
// left out of the file.
struct RunConfig {
  ContactConfig base;  // base.phi0 is ignored, base.fit_window set by resolve()
  std::vector<Vec> phi0_list;
  std::optional<TimeWindow> fit_window;
  std::optional<bool> envelope_fit;
  std::filesystem::path output_dir;
  bool emit_svg = false;
};

inline constexpr int kDefaultStride = 10;

/// Strict parse: unknown keys, wrong types or violated invariants throw
/// InputError. output_dir may be left empty here and filled by the caller.
RunConfig parse_run_config(const nlohmann::json& doc);

nlohmann::json system_to_json(const DriftSystem& system);
DriftSystem system_from_json(const nlohmann::json& doc);

/// Plain JSON echo of every field (after resolution).
nlohmann::json to_json(const RunConfig& config);

// The forced Duffing oscillator of the reference figure with its three
// perturbations, H2(0) = I, t_end = 20.
std::vector<Vec> fig1_phi0_list();
RunConfig fig1_run_config(const std::filesystem::path& output_dir);

}  // namespace contact_focus::cli
