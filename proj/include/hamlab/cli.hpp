#pragma once

// Batch front-end: one validated JSON experiment per run, orchestration of
// the library modules, CSV/SVG artifacts in a run directory.

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hamlab/system.hpp"

namespace hamlab::cli {

enum class Command { Derive, Classical, Spectrum, Evolve, Probe };

std::string_view to_string(Command c);
Command parse_command(std::string_view s);

/// Bad config: unknown key, wrong type, out-of-range value.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PacketConfig {
  double x = 0.0;
  double y = 0.0;
  double px = 0.0;
  double py = 0.0;
  std::optional<double> sigma_x;  ///< unset: coherent width sqrt(hbar / 2 m omega), or 0.4 for the bouncer
  std::optional<double> sigma_y;
  std::optional<double> sigma_px;
  std::optional<double> sigma_py;
};

struct ExperimentConfig {
  Command command = Command::Spectrum;
  std::optional<std::string> preset;

  SystemKind system = SystemKind::Oscillator;
  Variant variant = Variant::Standard;
  double m = 1.0;
  double omega = 1.0;
  double f = 1.0;
  double hbar = 1.0;

  int grid_n = 64;
  std::optional<double> grid_extent;  ///< half-width (oscillator) or side (bouncer)
  std::string stencil = "spectral";

  std::optional<std::string> derive_constant;

  double classical_dt = 1e-3;
  std::optional<double> classical_duration;  ///< unset: 10 periods, or 10 time units
  double classical_x = 1.0;
  double classical_y = 0.5;
  double classical_vx = 0.0;
  double classical_vy = 0.3;
  std::string classical_scheme = "leapfrog";
  double classical_tolerance = 1e-6;

  int spectrum_levels = 6;
  std::optional<std::pair<double, double>> spectrum_window;
  std::vector<double> spectrum_k{0.0};
  double spectrum_tolerance = 5e-3;

  std::string evolve_scheme = "crank-nicolson";
  double evolve_dt = 1e-3;
  std::optional<double> evolve_horizon;  ///< unset: pi / 2 omega, or 0.2
  PacketConfig packet;
  int snapshot_every = 100;  ///< 0: no snapshots
  double ehrenfest_tolerance = 1e-3;
  double gap_threshold = 1e-3;

  std::vector<int> probe_sizes{32, 48, 64};

  std::string out_dir = "hamlab-out";
  bool deterministic = false;

  SystemSpec spec() const;
};

/// Every recognised key with its default; optional fields appear as null.
/// This document doubles as the key whitelist.
std::string default_config_json();

/// Names accepted by `preset`.
std::vector<std::string> preset_names();

/// Parse a JSON document on top of the defaults (and the preset it names, if
/// any). Unknown keys, type errors and invalid values throw ConfigError before
/// anything is computed.
ExperimentConfig parse_config(std::string_view json_text);

/// Same as parse_config("{\"preset\": name}").
ExperimentConfig preset_config(std::string_view name);

/// The resolved config as canonical JSON (written next to the artifacts).
std::string to_json(const ExperimentConfig& cfg);

/// Named files produced by a run, kept in memory until the run succeeds.
struct Artifacts {
  std::map<std::string, std::string> files;

  void add(const std::string& name, std::string content) { files[name] = std::move(content); }
  /// Writes everything under dir or nothing: files already written are
  /// removed again if a later one fails.
  void commit(const std::string& dir) const;
};

struct RunResult {
  bool ok = true;  ///< every internal validation passed
  Artifacts artifacts;
};

/// Executes the experiment. Human-readable report goes to `out`; artifacts
/// are returned, not written.
RunResult execute(const ExperimentConfig& cfg, std::ostream& out);

/// Full command line entry point; returns the process exit status.
int main(int argc, char** argv);

}  // namespace hamlab::cli
