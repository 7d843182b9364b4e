#include <doctest.h>

#include <unistd.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "hamlab/cli.hpp"

namespace fs = std::filesystem;
using namespace hamlab;
using namespace hamlab::cli;

namespace {

struct Outcome {
  int status = -1;
  std::string out;
};

// Runs the hamlab binary with stderr discarded.
Outcome hamlab_run(const std::string& args) {
  const std::string cmd = std::string(HAMLAB_CLI_PATH) + " " + args + " 2>/dev/null";
  Outcome o;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) o.out.append(buf.data(), n);
  const int raw = pclose(p);
  o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return o;
}

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("hamlab_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("derive prints the chain and the certificate") {
  Scratch s;
  const Outcome o = hamlab_run("derive --system oscillator --variant cross --out " + s.path("d"));
  CHECK(o.status == 0);
  CHECK(o.out.find("K = m*omega^2*x*y + m*vx*vy") != std::string::npos);
  CHECK(o.out.find("L = -m*omega^2*x*y + m*vx*vy") != std::string::npos);
  CHECK(o.out.find("H = m*omega^2*x*y + px*py/m") != std::string::npos);
  CHECK(o.out.find("dK/dt = 0\n") != std::string::npos);
  CHECK(fs::exists(s.path("d/derivation.txt")));
}

TEST_CASE("spectrum table for the standard oscillator") {
  Scratch s;
  const Outcome o = hamlab_run("spectrum --system oscillator --variant standard --levels 6 --deterministic --out " +
                               s.path("s"));
  REQUIRE(o.status == 0);
  std::istringstream lines(o.out);
  std::string line;
  std::vector<double> analytic, numeric;
  while (std::getline(lines, line)) {
    std::istringstream row(line);
    std::string label;
    double a = 0, n = 0;
    if (row >> label >> a >> n && label.find(':') != std::string::npos) {
      analytic.push_back(a);
      numeric.push_back(n);
    }
  }
  REQUIRE(analytic.size() == 6);
  const double want[] = {1, 2, 2, 3, 3, 3};
  for (int i = 0; i < 6; ++i) {
    CHECK(analytic[i] == want[i]);
    CHECK(std::abs(numeric[i] - want[i]) < 2e-3);
  }
  const std::string csv = slurp(s.path("s/spectrum.csv"));
  CHECK(csv.rfind("label,energy,degeneracy\n", 0) == 0);
  CHECK(csv.find(",3\n") != std::string::npos);
}

TEST_CASE("unknown config key: non-zero exit, no files") {
  Scratch s;
  {
    std::ofstream(s.path("bad.json")) << R"({"command": "spectrum", "spectrum": {"levels": 3, "levles": 4}})";
  }
  const Outcome o = hamlab_run("run --config " + s.path("bad.json") + " --out " + s.path("out"));
  CHECK(o.status != 0);
  CHECK_FALSE(fs::exists(s.path("out")));
  std::set<std::string> left;
  for (const auto& e : fs::directory_iterator(s.dir)) left.insert(e.path().filename().string());
  CHECK(left == std::set<std::string>{"bad.json"});
}

TEST_CASE("computation errors leave no artifacts") {
  Scratch s;
  const Outcome o = hamlab_run("probe --system bouncer --out " + s.path("p"));
  CHECK(o.status == 2);
  CHECK_FALSE(fs::exists(s.path("p")));
}

TEST_CASE("failed validation is reported in the exit status") {
  Scratch s;
  {
    std::ofstream(s.path("tight.json")) << R"({"command": "spectrum", "grid": {"n": 16}, "spectrum": {"levels": 3, "tolerance": 1e-30}})";
  }
  const Outcome o = hamlab_run("run --config " + s.path("tight.json") + " --out " + s.path("t"));
  CHECK(o.status == 1);
  CHECK(o.out.find("status: FAILED") != std::string::npos);
  CHECK(fs::exists(s.path("t/report.txt")));
}

TEST_CASE("deterministic runs are byte-identical; plots otherwise carry a stamp") {
  Scratch s;
  for (const char* d : {"a", "b"})
    REQUIRE(hamlab_run("spectrum --preset paper-bouncer --deterministic --out " + s.path(d)).status == 0);
  for (const char* f : {"spectrum.csv", "comparison.csv", "ladder.svg", "report.txt"})
    CHECK(slurp(s.dir / "a" / f) == slurp(s.dir / "b" / f));
  CHECK(slurp(s.dir / "a" / "ladder.svg").find("generated") == std::string::npos);
  REQUIRE(hamlab_run("spectrum --preset paper-bouncer --out " + s.path("c")).status == 0);
  CHECK(slurp(s.dir / "c" / "ladder.svg").find("<!-- generated ") != std::string::npos);
  CHECK(slurp(s.dir / "a" / "spectrum.csv") == slurp(s.dir / "c" / "spectrum.csv"));
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(parse_config(R"({"sytem": {}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"system": {"kind": "oscillator", "mass": 2}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"system": {"m": -1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"system": {"variant": "diagonal"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"grid": {"n": 8}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"grid": {"n": 64.5}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"spectrum": {"window": [2, 1]}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"preset": "paper-qho"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"command": "plot"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"([1, 2])"), ConfigError);
  CHECK_THROWS_AS(parse_config("{"), ConfigError);

  const ExperimentConfig c = parse_config(R"({"command": "evolve", "system": {"kind": "bouncer", "f": 2.0}})");
  CHECK(c.command == Command::Evolve);
  CHECK(c.system == SystemKind::Bouncer);
  CHECK(c.f == 2.0);
  CHECK(c.spec().f() == 2.0);
  CHECK_THROWS(c.spec().omega());
  CHECK(c.packet.sigma_px == doctest::Approx(2.5));  // bouncer defaults apply
  // explicit null clears a preset value
  CHECK_FALSE(parse_config(R"({"preset": "paper-ho", "evolve": {"horizon": null}})").evolve_horizon.has_value());
}

TEST_CASE("presets pin the reference settings") {
  REQUIRE(preset_names().size() == 2);
  const ExperimentConfig ho = preset_config("paper-ho");
  CHECK(ho.system == SystemKind::Oscillator);
  CHECK(ho.grid_n == 64);
  CHECK(*ho.grid_extent == 8.0);
  CHECK(ho.spectrum_levels == 6);
  CHECK(*ho.packet.sigma_px == doctest::Approx(2 * *ho.packet.sigma_py));
  CHECK(ho.probe_sizes == std::vector<int>{32, 48, 64});
  const ExperimentConfig b = preset_config("paper-bouncer");
  CHECK(b.system == SystemKind::Bouncer);
  CHECK(*b.grid_extent == 16.0);
  CHECK(b.packet.x == doctest::Approx(5 * std::cbrt(0.5)));
  // the resolved form parses back to itself
  for (const auto& c : {ho, b}) CHECK(to_json(parse_config(to_json(c))) == to_json(c));
}

TEST_CASE("artifact commit is all-or-nothing") {
  Scratch s;
  Artifacts a;
  a.add("one.csv", "x\n1\n");
  a.add("sub/two.csv", "y\n2\n");
  a.commit(s.path("ok"));
  CHECK(slurp(s.dir / "ok" / "sub" / "two.csv") == "y\n2\n");

  // "blocked" is a file, so blocked/three.csv cannot be created
  Artifacts b;
  b.add("aaa.csv", "1\n");
  b.add("blocked/three.csv", "3\n");
  b.add("blocked", "");
  fs::create_directories(s.path("bad"));
  { std::ofstream(s.path("bad/blocked")) << "x"; }
  CHECK_THROWS(b.commit(s.path("bad")));
  CHECK_FALSE(fs::exists(s.path("bad/aaa.csv")));
}
