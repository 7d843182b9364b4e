#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>

#include "hamlab/cli.hpp"

namespace hamlab::cli {

using nlohmann::json;

namespace {

json defaults() {
  return json::parse(R"({
    "command": null,
    "preset": null,
    "system": {"kind": "oscillator", "variant": "standard", "m": 1.0, "omega": 1.0, "f": 1.0, "hbar": 1.0},
    "grid": {"n": 64, "extent": null, "stencil": "spectral"},
    "derive": {"constant": null},
    "classical": {
      "dt": 0.001, "duration": null, "scheme": "leapfrog", "tolerance": 1e-6,
      "initial": {"x": 1.0, "y": 0.5, "vx": 0.0, "vy": 0.3}
    },
    "spectrum": {"levels": 6, "window": null, "k": [0.0], "tolerance": 0.005},
    "evolve": {
      "scheme": "crank-nicolson", "dt": 0.001, "horizon": null, "snapshot_every": 100,
      "ehrenfest_tolerance": 0.001, "gap_threshold": 0.001,
      "packet": {"x": 0.0, "y": 0.0, "px": 0.0, "py": 0.0,
                 "sigma_x": null, "sigma_y": null, "sigma_px": null, "sigma_py": null}
    },
    "probe": {"sizes": [32, 48, 64]},
    "output": {"dir": "hamlab-out", "deterministic": false}
  })");
}

// Presets only override; everything else stays at the defaults.
json preset_patch(std::string_view name) {
  if (name == "paper-ho") {
    const double s = 1.0 / std::numbers::sqrt2;
    return json{{"system", {{"kind", "oscillator"}}},
                {"grid", {{"n", 64}, {"extent", 8.0}}},
                {"spectrum", {{"levels", 6}, {"window", {-2.5, 2.5}}}},
                {"evolve",
                 {{"horizon", std::numbers::pi / 2},
                  {"packet", {{"sigma_x", s}, {"sigma_y", s}, {"sigma_px", 2 * s}, {"sigma_py", s}}}}},
                {"probe", {{"sizes", {32, 48, 64}}}}};
  }
  if (name == "paper-bouncer") {
    const double drop = 5.0 * std::cbrt(0.5);  // 5 l_f in natural units
    return json{{"system", {{"kind", "bouncer"}}},
                {"grid", {{"n", 64}, {"extent", 16.0}}},
                {"classical", {{"duration", 10.0}, {"initial", {{"x", 60.0}, {"y", 55.0}, {"vx", 0.5}, {"vy", -0.2}}}}},
                {"spectrum", {{"levels", 3}, {"k", {0.0, 0.5, 1.0}}}},
                {"evolve",
                 {{"horizon", 0.2},
                  {"packet",
                   {{"x", drop}, {"y", drop}, {"sigma_x", 0.4}, {"sigma_y", 0.4}, {"sigma_px", 2.5}, {"sigma_py", 1.25}}}}}};
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

void check_keys(const json& user, const json& known, const std::string& path) {
  if (!user.is_object()) throw ConfigError(path.empty() ? "config must be a JSON object" : path + ": expected an object");
  for (const auto& [key, value] : user.items()) {
    const std::string here = path.empty() ? key : path + "." + key;
    if (!known.contains(key)) throw ConfigError("unknown key '" + here + "'");
    if (known[key].is_object()) check_keys(value, known[key], here);
  }
}

std::string where(const json::json_pointer& p) {
  std::string s = p.to_string().substr(1);
  for (char& c : s)
    if (c == '/') c = '.';
  return s;
}

double number(const json& doc, const char* ptr) {
  const json::json_pointer p(ptr);
  const json& v = doc.at(p);
  if (!v.is_number()) throw ConfigError(where(p) + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(where(p) + ": not finite");
  return d;
}

double positive(const json& doc, const char* ptr) {
  const double d = number(doc, ptr);
  if (!(d > 0.0)) throw ConfigError(where(json::json_pointer(ptr)) + ": must be positive");
  return d;
}

std::optional<double> optional_positive(const json& doc, const char* ptr) {
  if (doc.at(json::json_pointer(ptr)).is_null()) return std::nullopt;
  return positive(doc, ptr);
}

int integer(const json& doc, const char* ptr, int lo) {
  const json::json_pointer p(ptr);
  const json& v = doc.at(p);
  if (!v.is_number_integer()) throw ConfigError(where(p) + ": expected an integer");
  const auto i = v.get<long long>();
  if (i < lo || i > 1'000'000'000) throw ConfigError(where(p) + ": out of range");
  return static_cast<int>(i);
}

std::string string(const json& doc, const char* ptr, std::initializer_list<std::string_view> allowed) {
  const json::json_pointer p(ptr);
  const json& v = doc.at(p);
  if (!v.is_string()) throw ConfigError(where(p) + ": expected a string");
  std::string s = v.get<std::string>();
  if (allowed.size() != 0 && std::find(allowed.begin(), allowed.end(), s) == allowed.end())
    throw ConfigError(where(p) + ": invalid value '" + s + "'");
  return s;
}

json optional(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Derive: return "derive";
    case Command::Classical: return "classical";
    case Command::Spectrum: return "spectrum";
    case Command::Evolve: return "evolve";
    case Command::Probe: return "probe";
  }
  return "?";
}

Command parse_command(std::string_view s) {
  for (Command c : {Command::Derive, Command::Classical, Command::Spectrum, Command::Evolve, Command::Probe})
    if (to_string(c) == s) return c;
  throw ConfigError("unknown command '" + std::string(s) + "'");
}

SystemSpec ExperimentConfig::spec() const {
  return system == SystemKind::Oscillator ? SystemSpec::oscillator(variant, m, omega, hbar)
                                          : SystemSpec::bouncer(variant, m, f, hbar);
}

std::string default_config_json() { return defaults().dump(2) + "\n"; }

std::vector<std::string> preset_names() { return {"paper-ho", "paper-bouncer"}; }

ExperimentConfig parse_config(std::string_view json_text) {
  json user;
  try {
    user = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  const json known = defaults();
  check_keys(user, known, "");

  // base layer: the named preset, else the one matching the system kind
  std::string preset_name;
  bool explicit_preset = false;
  if (user.contains("preset") && !user["preset"].is_null()) {
    if (!user["preset"].is_string()) throw ConfigError("preset: expected a string");
    preset_name = user["preset"].get<std::string>();
    explicit_preset = true;
  } else {
    std::string kind = "oscillator";
    if (user.contains("system") && user["system"].contains("kind") && user["system"]["kind"].is_string())
      kind = user["system"]["kind"].get<std::string>();
    preset_name = kind == "bouncer" ? "paper-bouncer" : "paper-ho";
  }
  json doc = known;
  doc.merge_patch(preset_patch(preset_name));
  // merge_patch treats null as deletion; apply user nulls by hand
  std::function<void(json&, const json&)> overlay = [&](json& dst, const json& src) {
    for (const auto& [k, v] : src.items()) {
      if (v.is_object() && dst[k].is_object())
        overlay(dst[k], v);
      else
        dst[k] = v;
    }
  };
  overlay(doc, user);

  ExperimentConfig c;
  if (!doc["command"].is_null()) c.command = parse_command(string(doc, "/command", {}));
  if (explicit_preset) c.preset = preset_name;
  try {
    c.system = parse_system(string(doc, "/system/kind", {"oscillator", "bouncer"}));
    c.variant = parse_variant(string(doc, "/system/variant", {"standard", "cross"}));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  c.m = positive(doc, "/system/m");
  c.omega = positive(doc, "/system/omega");
  c.f = positive(doc, "/system/f");
  c.hbar = positive(doc, "/system/hbar");

  c.grid_n = integer(doc, "/grid/n", 16);
  c.grid_extent = optional_positive(doc, "/grid/extent");
  c.stencil = string(doc, "/grid/stencil", {"spectral", "finite-difference"});

  if (!doc["derive"]["constant"].is_null()) c.derive_constant = string(doc, "/derive/constant", {});

  c.classical_dt = positive(doc, "/classical/dt");
  c.classical_duration = optional_positive(doc, "/classical/duration");
  c.classical_scheme = string(doc, "/classical/scheme", {"leapfrog", "rk4"});
  c.classical_tolerance = positive(doc, "/classical/tolerance");
  c.classical_x = number(doc, "/classical/initial/x");
  c.classical_y = number(doc, "/classical/initial/y");
  c.classical_vx = number(doc, "/classical/initial/vx");
  c.classical_vy = number(doc, "/classical/initial/vy");

  c.spectrum_levels = integer(doc, "/spectrum/levels", 1);
  const json& w = doc["spectrum"]["window"];
  if (!w.is_null()) {
    if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number())
      throw ConfigError("spectrum.window: expected [lo, hi]");
    const double lo = w[0].get<double>(), hi = w[1].get<double>();
    if (!(lo < hi)) throw ConfigError("spectrum.window: lo must be below hi");
    c.spectrum_window = std::pair{lo, hi};
  }
  const json& ks = doc["spectrum"]["k"];
  if (!ks.is_array() || ks.empty()) throw ConfigError("spectrum.k: expected a non-empty array");
  c.spectrum_k.clear();
  for (const auto& k : ks) {
    if (!k.is_number()) throw ConfigError("spectrum.k: expected numbers");
    c.spectrum_k.push_back(k.get<double>());
  }
  c.spectrum_tolerance = positive(doc, "/spectrum/tolerance");

  c.evolve_scheme = string(doc, "/evolve/scheme", {"crank-nicolson", "split-operator"});
  c.evolve_dt = positive(doc, "/evolve/dt");
  c.evolve_horizon = optional_positive(doc, "/evolve/horizon");
  c.snapshot_every = integer(doc, "/evolve/snapshot_every", 0);
  c.ehrenfest_tolerance = positive(doc, "/evolve/ehrenfest_tolerance");
  c.gap_threshold = positive(doc, "/evolve/gap_threshold");
  c.packet.x = number(doc, "/evolve/packet/x");
  c.packet.y = number(doc, "/evolve/packet/y");
  c.packet.px = number(doc, "/evolve/packet/px");
  c.packet.py = number(doc, "/evolve/packet/py");
  c.packet.sigma_x = optional_positive(doc, "/evolve/packet/sigma_x");
  c.packet.sigma_y = optional_positive(doc, "/evolve/packet/sigma_y");
  c.packet.sigma_px = optional_positive(doc, "/evolve/packet/sigma_px");
  c.packet.sigma_py = optional_positive(doc, "/evolve/packet/sigma_py");

  const json& sizes = doc["probe"]["sizes"];
  if (!sizes.is_array()) throw ConfigError("probe.sizes: expected an array");
  c.probe_sizes.clear();
  for (const auto& s : sizes) {
    if (!s.is_number_integer() || s.get<long long>() < 16 || s.get<long long>() > 4096)
      throw ConfigError("probe.sizes: expected integers in [16, 4096]");
    c.probe_sizes.push_back(s.get<int>());
  }

  c.out_dir = string(doc, "/output/dir", {});
  if (c.out_dir.empty()) throw ConfigError("output.dir: must not be empty");
  if (!doc["output"]["deterministic"].is_boolean()) throw ConfigError("output.deterministic: expected a boolean");
  c.deterministic = doc["output"]["deterministic"].get<bool>();
  return c;
}

ExperimentConfig preset_config(std::string_view name) {
  return parse_config(json{{"preset", std::string(name)}}.dump());
}

std::string to_json(const ExperimentConfig& c) {
  json j = defaults();
  j["command"] = std::string(to_string(c.command));
  j["preset"] = c.preset ? json(*c.preset) : json(nullptr);
  j["system"] = {{"kind", std::string(to_string(c.system))},
                 {"variant", std::string(to_string(c.variant))},
                 {"m", c.m},
                 {"omega", c.omega},
                 {"f", c.f},
                 {"hbar", c.hbar}};
  j["grid"] = {{"n", c.grid_n}, {"extent", optional(c.grid_extent)}, {"stencil", c.stencil}};
  j["derive"]["constant"] = c.derive_constant ? json(*c.derive_constant) : json(nullptr);
  j["classical"] = {{"dt", c.classical_dt},
                    {"duration", optional(c.classical_duration)},
                    {"scheme", c.classical_scheme},
                    {"tolerance", c.classical_tolerance},
                    {"initial", {{"x", c.classical_x}, {"y", c.classical_y}, {"vx", c.classical_vx}, {"vy", c.classical_vy}}}};
  j["spectrum"] = {{"levels", c.spectrum_levels},
                   {"window", c.spectrum_window ? json{c.spectrum_window->first, c.spectrum_window->second} : json(nullptr)},
                   {"k", c.spectrum_k},
                   {"tolerance", c.spectrum_tolerance}};
  j["evolve"] = {{"scheme", c.evolve_scheme},
                 {"dt", c.evolve_dt},
                 {"horizon", optional(c.evolve_horizon)},
                 {"snapshot_every", c.snapshot_every},
                 {"ehrenfest_tolerance", c.ehrenfest_tolerance},
                 {"gap_threshold", c.gap_threshold},
                 {"packet",
                  {{"x", c.packet.x},
                   {"y", c.packet.y},
                   {"px", c.packet.px},
                   {"py", c.packet.py},
                   {"sigma_x", optional(c.packet.sigma_x)},
                   {"sigma_y", optional(c.packet.sigma_y)},
                   {"sigma_px", optional(c.packet.sigma_px)},
                   {"sigma_py", optional(c.packet.sigma_py)}}}};
  j["probe"]["sizes"] = c.probe_sizes;
  j["output"] = {{"dir", c.out_dir}, {"deterministic", c.deterministic}};
  return j.dump(2) + "\n";
}

void Artifacts::commit(const std::string& dir) const {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  const bool existed = fs::exists(root);
  std::vector<fs::path> written;
  try {
    fs::create_directories(root);
    for (const auto& [name, content] : files) {
      const fs::path target = root / name;
      fs::create_directories(target.parent_path());
      const fs::path tmp = target.string() + ".tmp";
      {
        std::ofstream out(tmp, std::ios::binary);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
      }
      fs::rename(tmp, target);
      written.push_back(target);
    }
  } catch (...) {
    std::error_code ec;
    for (const auto& p : written) fs::remove(p, ec);
    if (!existed) fs::remove_all(root, ec);
    throw;
  }
}

}  // namespace hamlab::cli
