#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "contact_focus/cli/cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;
namespace cli = contact_focus::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(CONTACT_FOCUS_TEST_TMP) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_json(const fs::path& path, const json& doc) {
  std::ofstream(path) << doc.dump(2);
  return path;
}

std::string slurp(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

json scalar_config(const fs::path& out) {
  return {{"system", {{"kind", "scalar_decay"}, {"lambda", 1.0}}},
          {"mode", "coupled"},
          {"y0", {0.5}},
          {"phi0_list", {{0.3}, {-0.2}}},
          {"t_end", 10.0},
          {"h", 1e-3},
          {"stride", 10},
          {"output_dir", out.string()}};
}

json duffing_config(const fs::path& out) {
  return {{"system", {{"kind", "duffing"}, {"delta", 0.3}, {"alpha", 1.0}}},
          {"y0", {0.0, 0.0}},
          {"phi0_list", {{0.1, 0.1}, {-0.2, 0.05}, {0.05, -0.15}}},
          {"t_end", 20.0},
          {"output_dir", out.string()}};
}

}  // namespace

TEST_CASE("spectral subcommand") {
  auto r = invoke({"spectral", "--system", "duffing", "--delta", "0.3", "--alpha", "1"});
  REQUIRE(r.code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["sigma"].get<double>() == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(doc["tau_f"].get<double>() == doctest::Approx(20.0 / 3.0).epsilon(1e-12));
  CHECK(doc["regime"] == "underdamped");
  CHECK(doc["eigenvalues"].size() == 2);

  r = invoke({"spectral", "--system", "duffing", "--delta", "3", "--alpha", "1"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["regime"] == "overdamped");

  r = invoke({"spectral", "--system", "duffing", "--delta", "2", "--alpha", "1"});
  CHECK(json::parse(r.out)["regime"] == "critical");

  r = invoke({"spectral", "--system", "scalar_decay", "--lambda", "2"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["sigma"].get<double>() == doctest::Approx(2.0));

  r = invoke({"spectral", "--system", "linear", "--matrix", "-1,0;0,-2"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["sigma"].get<double>() == doctest::Approx(1.0));

  r = invoke({"spectral", "--system", "harmonic"});
  REQUIRE(r.code == 0);
  doc = json::parse(r.out);
  CHECK(doc["sigma"].is_null());
  CHECK(doc["regime"] == "non_dissipative");
}

TEST_CASE("spectral usage errors exit 2") {
  CHECK(invoke({"spectral", "--system", "duffing", "--delta", "0.3"}).code == 2);
  CHECK(invoke({"spectral", "--system", "duffing", "--delta", "0.3", "--alpha", "-1"}).code == 2);
  CHECK(invoke({"spectral", "--system", "pendulum"}).code == 2);
  CHECK(invoke({"spectral", "--system", "linear", "--matrix", "1,x"}).code == 2);
  CHECK(invoke({"spectral", "--system", "scalar_decay"}).code == 2);
  CHECK(invoke({"spectral"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("closure subcommand") {
  auto r = invoke({"closure", "harmonic"});
  REQUIRE(r.code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["all_residuals_zero"] == true);
  CHECK(doc["all_conditions"] == true);
  CHECK(doc["self_bracket_h2_zero"] == true);
  for (const auto& c : doc["residuals"]) CHECK(c["zero"] == true);

  r = invoke({"closure", "linear-const-k"});
  CHECK(r.code == 1);
  doc = json::parse(r.out);
  CHECK(doc["residuals"][2]["zero"] == false);
  CHECK(doc["residuals"][2]["polynomial"] == "phi1^2");
  CHECK(doc["conditions"]["recurrence"]["ok"] == false);
  CHECK(doc["worst"]["order"] == 2);

  r = invoke({"closure", "harmonic", "--p-max", "6"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["residuals"].size() == 7);
  CHECK(invoke({"closure", "harmonic", "--p-max", "1"}).code == 2);
}

TEST_CASE("closure case files") {
  const auto dir = scratch("closure");
  // The oscillator written out term by term; exponents (t, y1, y2, phi1, phi2).
  const json harmonic{
      {"vars", 2},
      {"N", 2},
      {"components",
       {{{{"coef", "1/2"}, {"exp", {0, 2, 0, 0, 0}}}, {{"coef", "1/2"}, {"exp", {0, 0, 2, 0, 0}}}},
        {{{"coef", "1"}, {"exp", {0, 0, 1, 1, 0}}}, {{"coef", "-1"}, {"exp", {0, 1, 0, 0, 1}}}},
        {{{"coef", "1/2"}, {"exp", {0, 2, 0, 0, 2}}},
         {{"coef", "-1"}, {"exp", {0, 1, 1, 1, 1}}},
         {{"coef", "1/2"}, {"exp", {0, 0, 2, 2, 0}}}}}}};
  auto r = invoke({"closure", write_json(dir / "harmonic.json", harmonic).string()});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["all_conditions"] == true);

  json bad = harmonic;
  bad["components"][0][0]["exp"] = {0, 2, 0};
  CHECK(invoke({"closure", write_json(dir / "short.json", bad).string()}).code == 2);
  bad = harmonic;
  bad["extra"] = 1;
  CHECK(invoke({"closure", write_json(dir / "extra.json", bad).string()}).code == 2);
  bad = harmonic;
  bad["components"][1][0]["exp"] = {0, 0, 1, 0, 0};  // wrong fiber degree
  CHECK(invoke({"closure", write_json(dir / "degree.json", bad).string()}).code == 2);
  bad = harmonic;
  bad["components"][0][0]["coef"] = "0.5";
  CHECK(invoke({"closure", write_json(dir / "coef.json", bad).string()}).code == 2);

  std::ofstream(dir / "broken.json") << "{\"vars\": 2, ";
  CHECK(invoke({"closure", (dir / "broken.json").string()}).code == 2);
  CHECK(invoke({"closure", (dir / "missing.json").string()}).code == 2);
}

TEST_CASE("simulate scalar decay") {
  const auto dir = scratch("scalar");
  const auto cfg = write_json(dir / "config.json", scalar_config(dir / "out"));
  auto r = invoke({"simulate", cfg.string()});
  REQUIRE(r.code == 0);

  const json report = json::parse(slurp(dir / "out" / "report.json"));
  REQUIRE(report["runs"].size() == 2);
  for (const auto& run : report["runs"]) {
    CHECK(std::abs(run["fit"]["fitted_rate"].get<double>() - 1.0) <= 1e-4);
    CHECK(run["fit"]["method"] == "plain");
    CHECK(run["constraint"]["ok"] == true);
    CHECK(run["deviation"]["zero_deviation"] == false);
  }
  const json& prov = report["provenance"];
  for (const char* key : {"system", "mode", "y0", "phi0_list", "h2_0", "c", "t_end", "h", "stride", "fit_window",
                          "envelope_fit", "fit_method", "threads"}) {
    CAPTURE(key);
    CHECK(prov.contains(key));
  }
  CHECK(prov["fit_window"][0].get<double>() == doctest::Approx(1.0));
  CHECK(prov["fit_window"][1].get<double>() == doctest::Approx(3.0));
  CHECK(prov["stride"] == 10);
  CHECK(report["tool"]["name"] == "contact-focus");

  const std::string csv = slurp(dir / "out" / "trajectory_0.csv");
  CHECK(csv.substr(0, csv.find('\n')) == "t,y1,yref1,phi1,h2_fro,coupling_norm,epsilon,deviation");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 1001);
  CHECK(fs::exists(dir / "out" / "trajectory_1.csv"));
  CHECK_FALSE(fs::exists(dir / "out" / "trajectory.svg"));
}

TEST_CASE("csv output is bit-stable and independent of the thread cap") {
  const auto dir = scratch("stable");
  auto cfg = duffing_config(dir / "a");
  cfg["t_end"] = 10.0;
  cfg["fit_window"] = {2.0, 10.0};
  write_json(dir / "config.json", cfg);
  REQUIRE(invoke({"simulate", (dir / "config.json").string()}).code == 0);

  ::setenv("CONTACT_FOCUS_THREADS", "1", 1);
  const auto r = invoke({"simulate", (dir / "config.json").string(), "--out", (dir / "b").string()});
  ::unsetenv("CONTACT_FOCUS_THREADS");
  REQUIRE(r.code == 0);
  CHECK(json::parse(slurp(dir / "b" / "report.json"))["provenance"]["threads"] == 1);
  CHECK(json::parse(slurp(dir / "a" / "report.json"))["provenance"]["threads"] == 3);
  for (int k = 0; k < 3; ++k) {
    const std::string name = "trajectory_" + std::to_string(k) + ".csv";
    CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));
  }
  const std::string csv = slurp(dir / "a" / "trajectory_0.csv");
  CHECK(csv.substr(0, csv.find('\n')) ==
        "t,y1,y2,yref1,yref2,phi1,phi2,h2_fro,coupling_norm,epsilon,deviation");
}

TEST_CASE("zero fiber run is flagged") {
  const auto dir = scratch("zero");
  auto cfg = duffing_config(dir / "out");
  cfg["mode"] = "locked";
  cfg["phi0_list"] = {{0.0, 0.0}};
  cfg["emit_svg"] = true;
  write_json(dir / "config.json", cfg);
  REQUIRE(invoke({"simulate", (dir / "config.json").string()}).code == 0);
  const json report = json::parse(slurp(dir / "out" / "report.json"));
  const json& run = report["runs"][0];
  CHECK(run["deviation"]["zero_deviation"] == true);
  CHECK(run["deviation"]["max"] == 0.0);
  CHECK(run["fit"].is_null());
  CHECK(run.contains("fit_error"));
  CHECK(fs::exists(dir / "out" / "trajectory.svg"));
}

TEST_CASE("simulate config errors exit 2") {
  const auto dir = scratch("errors");
  auto check_code = [&](json cfg, int expected, const char* what) {
    CAPTURE(what);
    write_json(dir / "config.json", cfg);
    CHECK(invoke({"simulate", (dir / "config.json").string()}).code == expected);
  };
  auto base = scalar_config(dir / "out");
  auto cfg = base;
  cfg["phi0"] = {0.1};
  check_code(cfg, 2, "unknown key");
  cfg = base;
  cfg.erase("y0");
  check_code(cfg, 2, "missing y0");
  cfg = base;
  cfg["phi0_list"] = json::array();
  check_code(cfg, 2, "empty phi0_list");
  cfg = base;
  cfg["phi0_list"] = {{0.1, 0.2}};
  check_code(cfg, 2, "phi0 dimension");
  cfg = base;
  cfg["stride"] = 1.5;
  check_code(cfg, 2, "non-integer stride");
  cfg = base;
  cfg["mode"] = "loose";
  check_code(cfg, 2, "bad mode");
  cfg = base;
  cfg["system"]["mass"] = 1;
  check_code(cfg, 2, "unknown system key");
  cfg = base;
  cfg["fit_window"] = {5.0, 50.0};
  check_code(cfg, 2, "window past t_end");
  cfg = base;
  cfg["t_end"] = 0.5;
  check_code(cfg, 2, "default window past t_end");
  cfg = base;
  cfg["system"] = {{"kind", "harmonic"}};
  cfg["y0"] = {1.0, 0.0};
  cfg["phi0_list"] = {{0.1, 0.0}};
  check_code(cfg, 2, "non-dissipative system");
  cfg = base;
  cfg.erase("output_dir");
  check_code(cfg, 2, "no output dir");

  std::ofstream(dir / "broken.json") << "{";
  CHECK(invoke({"simulate", (dir / "broken.json").string()}).code == 2);
  CHECK(invoke({"simulate", (dir / "nope.json").string()}).code == 2);
}

TEST_CASE("blow-up exits 3") {
  const auto dir = scratch("blowup");
  auto cfg = duffing_config(dir / "out");
  cfg["y0"] = {1e4, 0.0};
  cfg["h"] = 0.1;
  cfg["fit_window"] = {1.0, 20.0};
  write_json(dir / "config.json", cfg);
  const auto r = invoke({"simulate", (dir / "config.json").string()});
  CHECK(r.code == 3);
  CHECK(r.err.find("numerical failure") != std::string::npos);
}

TEST_CASE("fig1 writes the figure bundle") {
  const auto dir = scratch("fig1");
  const auto r = invoke({"fig1", dir.string()});
  CHECK((r.code == 0 || r.code == 1));
  for (const char* f : {"trajectory_0.csv", "trajectory_1.csv", "trajectory_2.csv", "report.json", "trajectory.svg",
                        "coupling.svg"}) {
    CAPTURE(f);
    CHECK(fs::exists(dir / f));
  }
  const json report = json::parse(slurp(dir / "report.json"));
  CHECK(report["provenance"]["system"]["delta"] == 0.3);
  CHECK(report["provenance"]["envelope_fit"] == true);
  CHECK(report["provenance"]["fit_window"][0].get<double>() == doctest::Approx(20.0 / 3.0));
  CHECK(report["provenance"]["fit_window"][1].get<double>() == doctest::Approx(20.0));
  CHECK(report["checks"]["cases"].size() == 3);
  CHECK((r.code == 0) == report["checks"]["all_ok"].get<bool>());
  const std::string svg = slurp(dir / "coupling.svg");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
}
