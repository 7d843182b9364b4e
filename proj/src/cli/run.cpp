#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "hamlab/classical.hpp"
#include "hamlab/cli.hpp"
#include "hamlab/evolve.hpp"
#include "hamlab/qgrid/probes.hpp"
#include "hamlab/spectra.hpp"
#include "hamlab/symal/symal.hpp"
#include "svg.hpp"

namespace hamlab::cli {

namespace {

using qgrid::Grid2D;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::optional<std::string> stamp(const ExperimentConfig& c) {
  if (c.deterministic) return std::nullopt;
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string(buf);
}

qgrid::Stencil stencil_of(const ExperimentConfig& c) {
  return c.stencil == "finite-difference" ? qgrid::Stencil::FiniteDifference : qgrid::Stencil::Spectral;
}

double extent_of(const ExperimentConfig& c) {
  if (c.grid_extent) return *c.grid_extent;
  return c.system == SystemKind::Oscillator ? 8.0 : 16.0;
}

Grid2D grid_of(const ExperimentConfig& c) {
  return c.system == SystemKind::Oscillator ? Grid2D::oscillator_box(c.grid_n, extent_of(c))
                                            : Grid2D::bouncer_box(c.grid_n, extent_of(c));
}

const char* verdict(bool ok) { return ok ? "ok" : "FAILED"; }

// ---- derive

bool run_derive(const ExperimentConfig& c, std::ostream& log, Artifacts& art) {
  const bool builtin = !c.derive_constant;
  const symal::Poly k = builtin ? symal::builtin_constant(c.system, c.variant) : symal::parse_expr(*c.derive_constant);
  const symal::Derivation d = symal::derive(k);

  std::ostringstream s;
  s << "system: " << c.spec().name() << (builtin ? "" : " (user constant)") << "\n";
  s << "K = " << d.constant.str() << "\n";
  s << "L = " << d.lagrangian.str() << "\n";
  s << "H = " << d.hamiltonian.str() << "\n";
  s << "d2x/dt2 = " << d.eom.accel_x.str() << "\n";
  s << "d2y/dt2 = " << d.eom.accel_y.str() << "\n";
  s << "dK/dt = " << d.dk_dt.str() << "\n";
  bool ok = d.conserved();
  if (builtin) {
    const bool match = d.hamiltonian == symal::reference_hamiltonian(c.system, c.variant);
    const bool same_eom = symal::hamilton_eom(symal::reference_hamiltonian(c.system, Variant::Standard)) ==
                          symal::hamilton_eom(symal::reference_hamiltonian(c.system, Variant::Cross));
    s << "H matches reference: " << (match ? "yes" : "no") << "\n";
    s << "standard and cross equations of motion identical: " << (same_eom ? "yes" : "no") << "\n";
    ok = ok && match && same_eom;
  }
  log << s.str();
  art.add("derivation.txt", s.str());
  return ok;
}

// ---- classical

bool run_classical(const ExperimentConfig& c, std::ostream& log, Artifacts& art) {
  const double duration =
      c.classical_duration.value_or(c.system == SystemKind::Oscillator ? 10 * 2 * std::numbers::pi / c.omega : 10.0);
  const int steps = static_cast<int>(std::lround(duration / c.classical_dt));
  const auto scheme = c.classical_scheme == "rk4" ? classical::Scheme::Rk4 : classical::Scheme::Leapfrog;
  const classical::KinematicState kin{c.classical_x, c.classical_y, c.classical_vx, c.classical_vy};

  const SystemSpec s1 = c.spec().with_variant(Variant::Standard);
  const SystemSpec s2 = c.spec().with_variant(Variant::Cross);
  const auto t1 = classical::integrate(s1, classical::canonical_state(s1, kin), c.classical_dt, steps, scheme);
  const auto t2 = classical::integrate(s2, classical::canonical_state(s2, kin), c.classical_dt, steps, scheme);
  const auto div = classical::compare_trajectories(t1, t2);
  const bool same_eom = symal::hamilton_eom(symal::reference_hamiltonian(c.system, Variant::Standard)) ==
                        symal::hamilton_eom(symal::reference_hamiltonian(c.system, Variant::Cross));
  const bool close = div.max < c.classical_tolerance;

  std::ostringstream s;
  s << "system: " << to_string(c.system) << ", " << steps << " steps of dt = " << short_num(c.classical_dt) << " ("
    << c.classical_scheme << ")\n";
  s << "equations of motion identical: " << (same_eom ? "yes" : "no") << "\n";
  s << "max position divergence: " << num(div.max) << " (tolerance " << short_num(c.classical_tolerance) << ", "
    << verdict(close) << ")\n";
  s << "rms position divergence: " << num(div.rms) << "\n";
  log << s.str();
  art.add("classical_report.txt", s.str());

  std::ostringstream a, b;
  classical::write_csv(a, t1);
  classical::write_csv(b, t2);
  art.add("trajectory_standard.csv", a.str());
  art.add("trajectory_cross.csv", b.str());

  svg::LineChart ch{"x(t), standard vs cross", "t", "x", {}};
  for (const auto* t : {&t1, &t2}) {
    svg::Series ser{t == &t1 ? "standard" : "cross", {}, {}, t == &t2};
    for (const auto& st : t->states) {
      ser.x.push_back(st.t);
      ser.y.push_back(st.x);
    }
    ch.series.push_back(std::move(ser));
  }
  art.add("trajectory.svg", svg::render(ch, stamp(c)));
  return same_eom && close;
}

// ---- spectrum

struct Row {
  std::string label;
  double analytic = 0.0;
  double numeric = 0.0;
  std::string note;
};

std::vector<spectra::LevelLabel> lowest_labels(const SystemSpec& spec, int count) {
  const int first = spec.system() == SystemKind::Oscillator ? 0 : 1;
  const int last = first + count + 1;
  std::vector<std::pair<double, spectra::LevelLabel>> all;
  for (int a = first; a <= last; ++a)
    for (int b = first; b <= last; ++b) {
      const auto l = spectra::LevelLabel::discrete(a, b);
      all.emplace_back(spectra::energy(spec, l), l);
    }
  std::sort(all.begin(), all.end(), [](const auto& p, const auto& q) {
    if (std::abs(p.first - q.first) > 1e-12 * std::max(1.0, std::abs(p.first))) return p.first < q.first;
    return p.second < q.second;
  });
  std::vector<spectra::LevelLabel> out;
  for (int i = 0; i < count; ++i) out.push_back(all[static_cast<std::size_t>(i)].second);
  return out;
}

bool run_spectrum(const ExperimentConfig& c, std::ostream& log, Artifacts& art) {
  const SystemSpec spec = c.spec();
  std::vector<Row> rows;
  spectra::Spectrum analytic;
  std::vector<double> numeric_levels;
  bool ok = true;

  if (spec.system() == SystemKind::Oscillator && spec.variant() == Variant::Cross) {
    const auto [lo, hi] = c.spectrum_window.value_or(std::pair{-2.5, 2.5});
    analytic = spectra::enumerate_levels(spec, lo, hi);
    const auto op = qgrid::build_operator(spec, grid_of(c), stencil_of(c));
    const auto pairs = qgrid::lowest_eigenpairs(op, c.spectrum_levels, qgrid::SolveMode::in_window(lo, hi));
    for (const auto& p : pairs) numeric_levels.push_back(p.energy);
    // levels are infinitely degenerate; report the nearest numeric value and
    // how many eigenvalues fall in each cluster
    for (const auto& e : analytic.entries) {
      double best = std::numeric_limits<double>::quiet_NaN();
      int cluster = 0;
      for (double v : numeric_levels) {
        if (std::isnan(best) || std::abs(v - e.energy) < std::abs(best - e.energy)) best = v;
        if (std::abs(v - e.energy) < c.spectrum_tolerance) ++cluster;
      }
      rows.push_back({e.label.str(), e.energy, best, "cluster " + std::to_string(cluster)});
      ok = ok && cluster > 0;
    }
    log << "window [" << short_num(lo) << ", " << short_num(hi) << "]: " << numeric_levels.size()
        << " grid eigenvalues\n";
  } else if (spec.system() == SystemKind::Bouncer && spec.variant() == Variant::Cross) {
    const auto xi = qgrid::Grid1D::interval(4 * c.grid_n, 0.0, extent_of(c));
    const auto num_spec = qgrid::solve_cross_bouncer(spec, xi, c.spectrum_k, c.spectrum_levels, stencil_of(c));
    for (const auto& e : num_spec.entries) {
      numeric_levels.push_back(e.energy);
      const double exact = spectra::energy(spec, e.label);
      rows.push_back({e.label.str(), exact, e.energy, ""});
      analytic.entries.push_back({e.label, exact, spectra::Degeneracy::of(1)});
    }
    analytic.sort();
  } else {
    const auto labels = lowest_labels(spec, c.spectrum_levels);
    const auto op = qgrid::build_operator(spec, grid_of(c), stencil_of(c));
    const auto pairs = qgrid::lowest_eigenpairs(op, c.spectrum_levels);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const double exact = spectra::energy(spec, labels[i]);
      const double grid = i < pairs.size() ? pairs[i].energy : std::numeric_limits<double>::quiet_NaN();
      numeric_levels.push_back(grid);
      rows.push_back({labels[i].str(), exact, grid, ""});
      int deg = 0;
      for (const auto& l : lowest_labels(spec, c.spectrum_levels + 8))
        if (std::abs(spectra::energy(spec, l) - exact) < 1e-12 * std::max(1.0, exact)) ++deg;
      analytic.entries.push_back({labels[i], exact, spectra::Degeneracy::of(deg)});
    }
  }

  double worst = 0.0;
  for (const Row& r : rows) worst = std::max(worst, std::isnan(r.numeric) ? INFINITY : std::abs(r.numeric - r.analytic));
  ok = ok && worst < c.spectrum_tolerance;

  std::ostringstream table, csv;
  table << "system: " << spec.name() << ", grid " << c.grid_n << "^2, " << c.stencil << " stencil\n";
  char line[160];
  std::snprintf(line, sizeof line, "%-14s %14s %14s %12s\n", "label", "analytic", "numeric", "abs_diff");
  table << line;
  csv << "label,analytic,numeric,abs_diff\n";
  for (const Row& r : rows) {
    const double diff = std::abs(r.numeric - r.analytic);
    std::snprintf(line, sizeof line, "%-14s %14.8f %14.8f %12.3e  %s\n", r.label.c_str(), r.analytic, r.numeric, diff,
                  r.note.c_str());
    table << line;
    csv << r.label << "," << num(r.analytic) << "," << num(r.numeric) << "," << num(diff) << "\n";
  }
  table << "max abs diff " << num(worst) << " (tolerance " << short_num(c.spectrum_tolerance) << ", " << verdict(ok)
        << ")\n";
  log << table.str();

  std::ostringstream spec_csv;
  spectra::write_csv(spec_csv, analytic);
  art.add("spectrum.csv", spec_csv.str());
  art.add("comparison.csv", csv.str());

  svg::LadderChart ladder{"energy levels, " + spec.name(), "E", {}};
  svg::Ladder an{"analytic", {}}, nu{"numeric", numeric_levels};
  for (const auto& e : analytic.entries) an.levels.push_back(e.energy);
  ladder.ladders = {an, nu};
  art.add("ladder.svg", svg::render(ladder, stamp(c)));
  return ok;
}

// ---- evolve

evolve::GaussianPacket packet_of(const ExperimentConfig& c) {
  evolve::GaussianPacket p;
  p.x = c.packet.x;
  p.y = c.packet.y;
  p.px = c.packet.px;
  p.py = c.packet.py;
  const double width = c.system == SystemKind::Oscillator ? std::sqrt(c.hbar / (2 * c.m * c.omega)) : 0.4;
  p.sigma_x = c.packet.sigma_x.value_or(width);
  p.sigma_y = c.packet.sigma_y.value_or(width);
  p.sigma_px = c.packet.sigma_px;
  p.sigma_py = c.packet.sigma_py;
  return p;
}

void add_snapshots(const evolve::Propagation& r, const std::string& tag, int every, Artifacts& art) {
  for (std::size_t i = 0; i < r.snapshots.size(); ++i) {
    std::ostringstream s;
    qgrid::write_dump(s, r.snapshots[i]);
    char name[64];
    std::snprintf(name, sizeof name, "snapshots/%s_%08zu.bin", tag.c_str(), i * static_cast<std::size_t>(every));
    art.add(name, s.str());
  }
}

bool run_evolve(const ExperimentConfig& c, std::ostream& log, Artifacts& art) {
  const SystemSpec s1 = c.spec().with_variant(Variant::Standard);
  const SystemSpec s2 = c.spec().with_variant(Variant::Cross);
  const double horizon =
      c.evolve_horizon.value_or(c.system == SystemKind::Oscillator ? std::numbers::pi / (2 * c.omega) : 0.2);
  const int steps = std::max(1, static_cast<int>(std::lround(horizon / c.evolve_dt)));
  const double dt = horizon / steps;
  const evolve::GaussianPacket packet = packet_of(c);

  const Grid2D ga = grid_of(c);
  const Grid2D gb = c.system == SystemKind::Oscillator
                        ? ga
                        : evolve::half_plane_grid(c.grid_n, extent_of(c), c.grid_n, extent_of(c) / 2);
  evolve::PropagateOptions opts;
  opts.scheme = c.evolve_scheme == "split-operator" ? evolve::Scheme::SplitOperator : evolve::Scheme::CrankNicolson;
  opts.snapshot_every = c.snapshot_every;
  opts.stencil = stencil_of(c);

  const auto r1 = evolve::propagate(s1, evolve::sample_packet(packet, ga, c.hbar), dt, steps, opts);
  const auto r2 = evolve::propagate(s2, evolve::sample_packet(packet, gb, c.hbar), dt, steps, opts);

  std::ostringstream s;
  s << "system: " << to_string(c.system) << ", " << steps << " steps of dt = " << short_num(dt) << " ("
    << c.evolve_scheme << "), grid " << c.grid_n << "^2\n";
  bool ok = true;
  std::vector<classical::Trajectory> classical_runs;
  for (const auto* r : {&r1, &r2}) {
    const SystemSpec& spec = r == &r1 ? s1 : s2;
    const auto& ser = r->series;
    const auto cl = classical::integrate(spec, {0.0, packet.x, packet.y, packet.px, packet.py}, dt, steps);
    double ehrenfest = 0.0, drift = 0.0;
    for (std::size_t k = 0; k < ser.size(); ++k) {
      ehrenfest = std::max(ehrenfest, std::abs(ser.mean_x[k] - cl.states[k].x) + std::abs(ser.mean_y[k] - cl.states[k].y));
      drift = std::max(drift, std::abs(ser.norm[k] - 1.0));
    }
    const double drift_limit = 1e-10 * std::max(1.0, steps / 1000.0);
    const bool e_ok = ehrenfest < c.ehrenfest_tolerance;
    const bool n_ok = drift < drift_limit;
    s << to_string(spec.variant()) << ": max |<r> - r_classical| " << num(ehrenfest) << " (" << verdict(e_ok)
      << "), norm drift " << num(drift) << " (" << verdict(n_ok) << "), energy " << num(ser.energy.front()) << " -> "
      << num(ser.energy.back()) << "\n";
    ok = ok && e_ok && n_ok;
    classical_runs.push_back(cl);
  }
  double max_gap = 0.0, t_max = 0.0;
  std::ostringstream gap_csv;
  gap_csv << "t,var_x_standard,var_x_cross,gap\n";
  svg::Series gap_series{"|gap|", {}, {}, false};
  for (std::size_t k = 0; k < r1.series.size(); ++k) {
    const double g = r1.series.var_x[k] - r2.series.var_x[k];
    gap_csv << num(r1.series.t[k]) << "," << num(r1.series.var_x[k]) << "," << num(r2.series.var_x[k]) << "," << num(g)
            << "\n";
    gap_series.x.push_back(r1.series.t[k]);
    gap_series.y.push_back(std::abs(g));
    if (std::abs(g) > max_gap) {
      max_gap = std::abs(g);
      t_max = r1.series.t[k];
    }
  }
  const double final_gap = std::abs(r1.series.var_x.back() - r2.series.var_x.back());
  s << "variance gap: final " << num(final_gap) << ", max " << num(max_gap) << " at t = " << short_num(t_max) << ", "
    << (max_gap > c.gap_threshold ? "divergence detected" : "no divergence") << " (threshold "
    << short_num(c.gap_threshold) << ")\n";
  log << s.str();

  std::ostringstream a, b;
  evolve::write_csv(a, r1.series);
  evolve::write_csv(b, r2.series);
  art.add("series_standard.csv", a.str());
  art.add("series_cross.csv", b.str());
  art.add("variance_gap.csv", gap_csv.str());
  art.add("evolve_report.txt", s.str());
  add_snapshots(r1, "standard", c.snapshot_every, art);
  add_snapshots(r2, "cross", c.snapshot_every, art);

  svg::LineChart means{"<x>(t): quantum vs classical", "t", "<x>", {}};
  for (int v = 0; v < 2; ++v) {
    const auto& ser = (v == 0 ? r1 : r2).series;
    const std::string name(to_string(v == 0 ? Variant::Standard : Variant::Cross));
    means.series.push_back({name, ser.t, ser.mean_x, false});
    svg::Series cl{name + " classical", {}, {}, true};
    for (const auto& st : classical_runs[static_cast<std::size_t>(v)].states) {
      cl.x.push_back(st.t);
      cl.y.push_back(st.x);
    }
    means.series.push_back(std::move(cl));
  }
  art.add("mean_x.svg", svg::render(means, stamp(c)));
  art.add("variance_gap.svg",
          svg::render(svg::LineChart{"|Var_x standard - Var_x cross|", "t", "gap", {gap_series}}, stamp(c)));
  return ok;
}

// ---- probe

bool run_probe(const ExperimentConfig& c, std::ostream& log, Artifacts& art) {
  if (c.system != SystemKind::Oscillator)
    throw ConfigError("probe: the no-ground-state sweep is defined for the oscillator only");
  const double h = extent_of(c);
  const auto cross = qgrid::no_ground_state_probe(c.spec().with_variant(Variant::Cross), c.probe_sizes, h, {}, stencil_of(c));
  const auto control =
      qgrid::no_ground_state_probe(c.spec().with_variant(Variant::Standard), c.probe_sizes, h, {}, stencil_of(c));
  const double quantum = c.hbar * c.omega;

  std::ostringstream s, csv;
  csv << "n,min_cross,min_standard\n";
  s << "box [-" << short_num(h) << ", " << short_num(h) << "]^2\n";
  char line[160];
  std::snprintf(line, sizeof line, "%6s %16s %16s\n", "n", "min cross", "min standard");
  s << line;
  bool falling = true, settled = true;
  svg::Series a{"cross", {}, {}, false}, b{"standard", {}, {}, true};
  for (std::size_t i = 0; i < cross.size(); ++i) {
    std::snprintf(line, sizeof line, "%6d %16.8f %16.8f\n", cross[i].n, cross[i].min_energy, control[i].min_energy);
    s << line;
    csv << cross[i].n << "," << num(cross[i].min_energy) << "," << num(control[i].min_energy) << "\n";
    if (i > 0 && !(cross[i - 1].min_energy - cross[i].min_energy >= quantum / 2)) falling = false;
    if (std::abs(control[i].min_energy - quantum) > 5e-3) settled = false;
    a.x.push_back(cross[i].n);
    a.y.push_back(cross[i].min_energy);
    b.x.push_back(control[i].n);
    b.y.push_back(control[i].min_energy);
  }
  s << "cross minimum falls by >= hbar omega / 2 per refinement: " << (falling ? "yes" : "no") << "\n";
  s << "standard control within 5e-3 of hbar omega: " << (settled ? "yes" : "no") << "\n";
  log << s.str();
  art.add("probe.csv", csv.str());
  art.add("probe_report.txt", s.str());
  art.add("probe.svg", svg::render(svg::LineChart{"lowest grid eigenvalue vs resolution", "points per axis",
                                                  "min E", {a, b}},
                                   stamp(c)));
  return falling && settled;
}

}  // namespace

RunResult execute(const ExperimentConfig& c, std::ostream& out) {
  RunResult r;
  std::ostringstream log;
  switch (c.command) {
    case Command::Derive: r.ok = run_derive(c, log, r.artifacts); break;
    case Command::Classical: r.ok = run_classical(c, log, r.artifacts); break;
    case Command::Spectrum: r.ok = run_spectrum(c, log, r.artifacts); break;
    case Command::Evolve: r.ok = run_evolve(c, log, r.artifacts); break;
    case Command::Probe: r.ok = run_probe(c, log, r.artifacts); break;
  }
  log << "status: " << (r.ok ? "ok" : "FAILED") << "\n";
  out << log.str();
  r.artifacts.add("report.txt", log.str());
  r.artifacts.add("config.json", to_json(c));
  return r;
}

int main(int argc, char** argv) {
  CLI::App app{"hamlab: equivalent Hamiltonians, classical and quantum"};
  app.require_subcommand(1);

  std::string config_file, preset, system, variant, out_dir;
  bool deterministic = false;
  int levels = 0, grid = 0;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"derive", "constant of motion -> Lagrangian -> Hamiltonian, with the dK/dt certificate"},
      {"classical", "paired standard/cross trajectories and their divergence"},
      {"spectrum", "analytic vs grid spectra"},
      {"evolve", "wave-packet propagation under both Hamiltonians"},
      {"probe", "no-ground-state resolution sweep"},
      {"run", "execute the experiment named by the config's \"command\""}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_file, "JSON experiment config")->check(CLI::ExistingFile);
    sub->add_option("--preset", preset, "paper-ho | paper-bouncer");
    sub->add_option("--system", system, "oscillator | bouncer");
    sub->add_option("--variant", variant, "standard | cross");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_flag("--deterministic", deterministic, "no timestamps in plots");
    sub->add_option("--grid", grid, "points per axis");
    if (name == "spectrum" || name == "run") sub->add_option("--levels", levels, "number of levels");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  ExperimentConfig cfg;
  try {
    nlohmann::json doc = nlohmann::json::object();
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      std::stringstream buf;
      buf << in.rdbuf();
      try {
        doc = nlohmann::json::parse(buf.str());
      } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(config_file + ": malformed JSON: " + e.what());
      }
      if (!doc.is_object()) throw ConfigError(config_file + ": config must be a JSON object");
    }
    // flags override the file
    if (command != "run") {
      if (doc.contains("command") && doc["command"].is_string() && doc["command"] != command)
        throw ConfigError("config command '" + doc["command"].get<std::string>() + "' conflicts with subcommand '" +
                          command + "'");
      doc["command"] = command;
    } else if (!doc.contains("command") || doc["command"].is_null()) {
      parse_config(doc.dump());  // key errors take precedence
      throw ConfigError("run: the config must set \"command\"");
    }
    if (!preset.empty()) doc["preset"] = preset;
    if (!system.empty()) doc["system"]["kind"] = system;
    if (!variant.empty()) doc["system"]["variant"] = variant;
    if (!out_dir.empty()) doc["output"]["dir"] = out_dir;
    if (deterministic) doc["output"]["deterministic"] = true;
    if (levels > 0) doc["spectrum"]["levels"] = levels;
    if (grid > 0) doc["grid"]["n"] = grid;
    cfg = parse_config(doc.dump());
  } catch (const std::exception& e) {
    std::cerr << "hamlab: config error: " << e.what() << "\n";
    return 2;
  }

  try {
    const RunResult r = execute(cfg, std::cout);
    r.artifacts.commit(cfg.out_dir);
    if (!r.ok) std::cerr << "hamlab " << to_string(cfg.command) << ": validation failed\n";
    return r.ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "hamlab " << to_string(cfg.command) << ": " << e.what() << "\n";
    return 2;
  }
}

}  // namespace hamlab::cli
