#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "hamlab/qgrid/probes.hpp"
#include "hamlab/specfun.hpp"
#include "hamlab/spectra.hpp"

using namespace hamlab;
using namespace hamlab::qgrid;

namespace {

const SystemSpec kOsc = SystemSpec::oscillator(Variant::Standard);
const SystemSpec kCross = SystemSpec::oscillator(Variant::Cross);
const SystemSpec kBounce = SystemSpec::bouncer(Variant::Standard);

double residual(const DiscreteOperator& op, const WaveFn& psi, double e) {
  WaveFn h = op.apply(psi);
  for (std::size_t k = 0; k < h.amps.size(); ++k) h.amps[k] -= e * psi.amps[k];
  return std::sqrt(h.norm2());
}

SolverOptions method(SolveMethod m) {
  SolverOptions o;
  o.method = m;
  return o;
}

// Smallest singular value of the overlap between two orthonormal families:
// the cosine of the largest principal angle between their spans.
double min_principal_cosine(const std::vector<WaveFn>& a, const std::vector<WaveFn>& b) {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(a.size()), static_cast<Eigen::Index>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = inner(a[i], b[j]);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().minCoeff();
}

}  // namespace

TEST_CASE("grid geometry and validation") {
  const Grid2D g = Grid2D::oscillator_box(63);
  CHECK(g.dx == 0.25);
  CHECK(g.x(0) == -7.75);
  CHECK(g.x_hi() == 8.0);
  CHECK(g.index(3, 2) == 3 + 63 * 2);
  const Grid2D b = Grid2D::bouncer_box(31);
  CHECK(b.bc == Boundary::Floor);
  CHECK(b.x(0) == 0.5);
  CHECK_THROWS_AS(Grid2D::oscillator_box(15), QgridError);
  CHECK_THROWS_AS(Grid2D::box(32, 32, 1.0, -1.0, 0.0, 1.0), QgridError);
  CHECK_THROWS_AS(Grid2D::box(32, 32, -1.0, 1.0, -1.0, 1.0, Boundary::Floor), QgridError);
  CHECK_THROWS_AS(Grid1D::interval(8, 0.0, 1.0), QgridError);

  CHECK(max_grid_points() == (std::size_t{1} << 20));
  ::setenv("HAMLAB_MAX_GRID", "1000", 1);
  try {
    Grid2D::oscillator_box(32);
    FAIL("expected GridTooLarge");
  } catch (const QgridError& e) {
    CHECK(e.kind() == QgridErrorKind::GridTooLarge);
  }
  ::unsetenv("HAMLAB_MAX_GRID");
  CHECK_NOTHROW(Grid2D::oscillator_box(32));
}

TEST_CASE("WaveFn invariants and binary dump") {
  const Grid2D g = Grid2D::box(17, 20, -1.0, 2.0, -3.0, 1.0);
  WaveFn psi(g);
  for (std::size_t k = 0; k < psi.amps.size(); ++k) psi.amps[k] = {std::sin(0.1 * k), std::cos(0.37 * k)};
  psi.normalize();
  CHECK(std::abs(psi.norm2() - 1.0) < 1e-12);
  std::vector<Complex> bad(g.size());
  bad[3] = {std::nan(""), 0.0};
  CHECK_THROWS_AS(WaveFn(g, bad), QgridError);
  CHECK_THROWS_AS(WaveFn(g, std::vector<Complex>(5)), QgridError);

  std::stringstream io;
  write_dump(io, psi);
  const std::string bytes = io.str();
  CHECK(bytes.size() == 8 + 6 * 8 + g.size() * 16);
  CHECK(bytes.substr(0, 4) == "HLAB");
  CHECK(bytes[4] == 1);
  const WaveFn back = read_dump(io);
  CHECK(back.grid.same_as(g));
  CHECK(back.amps == psi.amps);

  std::stringstream junk("HLAX");
  CHECK_THROWS_AS(read_dump(junk), QgridError);
  std::stringstream cut(bytes.substr(0, 100));
  CHECK_THROWS_AS(read_dump(cut), QgridError);
}

TEST_CASE("operators are Hermitian") {
  for (Stencil st : {Stencil::Spectral, Stencil::FiniteDifference}) {
    CHECK(hermiticity_defect(build_operator(kOsc, Grid2D::oscillator_box(64), st), 100) < 1e-10);
    CHECK(hermiticity_defect(build_operator(kCross, Grid2D::oscillator_box(64), st), 100) < 1e-10);
    CHECK(hermiticity_defect(build_operator(kBounce, Grid2D::bouncer_box(48), st), 100) < 1e-10);
  }
  const DiscreteOperator op(kCross, Grid2D::box(16, 18, -3, 3, -2, 4));
  const Eigen::MatrixXd h = op.dense();
  CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
  try {
    build_operator(SystemSpec::bouncer(Variant::Cross), Grid2D::bouncer_box(32));
    FAIL("expected UnsupportedVariant");
  } catch (const QgridError& e) {
    CHECK(e.kind() == QgridErrorKind::UnsupportedVariant);
  }
}

TEST_CASE("finite-difference mixed term is the 4-corner stencil") {
  const Grid2D g = Grid2D::box(16, 16, -1, 1, -1, 1);
  const DiscreteOperator op(kCross, g, Stencil::FiniteDifference);
  WaveFn delta(g);
  delta.amps[g.index(7, 9)] = 1.0;
  const WaveFn h = op.apply(delta);
  const double c = 1.0 / (4.0 * g.dx * g.dy);
  // -(hbar^2/m) d2/dxdy: the (i+-1, j+-1) neighbours pick up -/+ c
  CHECK(h.amps[g.index(8, 10)].real() == doctest::Approx(-c));
  CHECK(h.amps[g.index(6, 8)].real() == doctest::Approx(-c));
  CHECK(h.amps[g.index(8, 8)].real() == doctest::Approx(c));
  CHECK(h.amps[g.index(6, 10)].real() == doctest::Approx(c));
  CHECK(h.amps[g.index(7, 9)].real() == doctest::Approx(g.x(7) * g.y(9)));
  CHECK(h.amps[g.index(8, 9)].real() == 0.0);
}

TEST_CASE("analytic eigenfunctions are near-eigenvectors of the grid operator") {
  const Grid2D g = Grid2D::oscillator_box(64);
  const DiscreteOperator h1(kOsc, g);
  const DiscreteOperator h2(kCross, g);
  CHECK(residual(h1, spectra::eigenfunction(kOsc, spectra::LevelLabel::discrete(0, 0), g), 1.0) < 5e-3);
  CHECK(residual(h2, spectra::eigenfunction(kCross, spectra::LevelLabel::discrete(0, 0), g), 0.0) < 5e-3);
  CHECK(residual(h2, spectra::eigenfunction(kCross, spectra::LevelLabel::discrete(2, 1), g), 1.0) < 5e-3);
}

TEST_CASE("dense and Lanczos agree") {
  for (const auto& [spec, grid] : {std::pair{kOsc, Grid2D::oscillator_box(32)}, {kCross, Grid2D::oscillator_box(32)},
                                   {kBounce, Grid2D::bouncer_box(32)}}) {
    const DiscreteOperator op(spec, grid);
    const auto d = lowest_eigenpairs(op, 8, SolveMode::lowest(), method(SolveMethod::Dense));
    const auto l = lowest_eigenpairs(op, 8, SolveMode::lowest(), method(SolveMethod::Lanczos));
    REQUIRE(d.size() == 8);
    REQUIRE(l.size() == 8);
    for (std::size_t k = 0; k < 8; ++k) {
      CAPTURE(spec.name());
      CHECK(std::abs(d[k].energy - l[k].energy) < 1e-8);
      CHECK(std::abs(l[k].state.norm2() - 1.0) < 1e-9);
    }
  }
  CHECK_THROWS_AS(lowest_eigenpairs(DiscreteOperator(kOsc, Grid2D::oscillator_box(16)), 65), QgridError);
}

TEST_CASE("standard oscillator spectrum and eigenvectors") {
  const Grid2D g = Grid2D::oscillator_box(64);
  const auto pairs = lowest_eigenpairs(DiscreteOperator(kOsc, g), 6);
  const double expect[] = {1, 2, 2, 3, 3, 3};
  for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(pairs[k].energy - expect[k]) < 2e-3);

  using spectra::LevelLabel;
  const auto ground = spectra::eigenfunction(kOsc, LevelLabel::discrete(0, 0), g);
  CHECK(std::abs(inner(pairs[0].state, ground)) > 0.99);
  const std::vector<WaveFn> numeric{pairs[1].state, pairs[2].state};
  const std::vector<WaveFn> analytic{spectra::eigenfunction(kOsc, LevelLabel::discrete(1, 0), g),
                                     spectra::eigenfunction(kOsc, LevelLabel::discrete(0, 1), g)};
  CHECK(min_principal_cosine(numeric, analytic) > 0.99);
  const std::vector<WaveFn> numeric3{pairs[3].state, pairs[4].state, pairs[5].state};
  const std::vector<WaveFn> analytic3{spectra::eigenfunction(kOsc, LevelLabel::discrete(2, 0), g),
                                      spectra::eigenfunction(kOsc, LevelLabel::discrete(1, 1), g),
                                      spectra::eigenfunction(kOsc, LevelLabel::discrete(0, 2), g)};
  CHECK(min_principal_cosine(numeric3, analytic3) > 0.99);
}

TEST_CASE("bouncer ground state") {
  const Grid2D g = Grid2D::bouncer_box(64);
  const auto pairs = lowest_eigenpairs(DiscreteOperator(kBounce, g), 3);
  const auto exact = spectra::list_states(kBounce, 3);
  const double z1 = specfun::airy_zeros(1).at(1);
  CHECK(std::abs(pairs[0].energy - 2.0 * std::cbrt(0.5) * z1) < 5e-3);
  for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(pairs[k].energy - exact[k]) < 5e-3);
  const auto analytic = spectra::eigenfunction(kBounce, spectra::LevelLabel::discrete(1, 1), g);
  CHECK(std::abs(inner(pairs[0].state, analytic)) > 0.99);
}

TEST_CASE("cross oscillator window") {
  const Grid2D g = Grid2D::oscillator_box(40);
  const DiscreteOperator op(kCross, g);
  const auto win = lowest_eigenpairs(op, 0, SolveMode::in_window(-0.2, 0.2));
  int near_zero = 0;
  for (const auto& p : win) near_zero += std::abs(p.energy) < 2e-3;
  CHECK(near_zero >= 3);

  // the analytic (n+1, n) states lie in the numeric cluster at +1
  const auto one = lowest_eigenpairs(op, 0, SolveMode::in_window(1.0 - 1e-4, 1.0 + 1e-4));
  std::vector<WaveFn> cluster;
  for (const auto& p : one) cluster.push_back(p.state);
  REQUIRE(cluster.size() >= 2);
  for (int n = 0; n < 2; ++n) {
    const auto a = spectra::eigenfunction(kCross, spectra::LevelLabel::discrete(n + 1, n), g);
    CHECK(min_principal_cosine({a}, cluster) > 0.99);
  }
}

TEST_CASE("iterative window matches the dense window") {
  const DiscreteOperator op(kCross, Grid2D::oscillator_box(20));
  const auto dense = lowest_eigenpairs(op, 0, SolveMode::in_window(0.5, 1.5), method(SolveMethod::Dense));
  const auto iter = lowest_eigenpairs(op, 0, SolveMode::in_window(0.5, 1.5), method(SolveMethod::Lanczos));
  REQUIRE(dense.size() == iter.size());
  REQUIRE(!dense.empty());
  for (std::size_t k = 0; k < dense.size(); ++k) CHECK(std::abs(dense[k].energy - iter[k].energy) < 1e-8);
}

TEST_CASE("rotation equivalence with 1-D oscillators") {
  const auto win = lowest_eigenpairs(DiscreteOperator(kCross, Grid2D::oscillator_box(48)), 0, SolveMode::in_window(-2.5, 2.5));
  const auto lv = oscillator_levels_1d(1.0, 1.0, 1.0, Grid1D::interval(200, -8.0, 8.0), 8);
  for (int n = 0; n < 8; ++n) CHECK(std::abs(lv[static_cast<std::size_t>(n)] - (n + 0.5)) < 1e-9);
  std::vector<double> diffs;
  for (double a : lv)
    for (double b : lv) diffs.push_back(a - b);
  // every level that recurs (a degenerate cluster, not a lone box artifact)
  // sits on a difference of two 1-D levels
  int clustered = 0;
  for (std::size_t k = 0; k < win.size(); ++k) {
    const bool prev = k > 0 && win[k].energy - win[k - 1].energy < 1e-4;
    const bool next = k + 1 < win.size() && win[k + 1].energy - win[k].energy < 1e-4;
    if (!prev && !next) continue;
    ++clustered;
    double best = 1e9;
    for (double d : diffs) best = std::min(best, std::abs(win[k].energy - d));
    CHECK(best < 2e-3);
  }
  CHECK(clustered >= 10);
}

TEST_CASE("finite-difference convergence order") {
  // ground-state error of the 3-point stencil on a fixed box
  std::vector<double> err;
  for (int n : {31, 63, 127}) {
    const auto p = lowest_eigenpairs(DiscreteOperator(kOsc, Grid2D::oscillator_box(n), Stencil::FiniteDifference), 1);
    err.push_back(std::abs(p[0].energy - 1.0));
  }
  const double order1 = std::log2(err[0] / err[1]);
  const double order2 = std::log2(err[1] / err[2]);
  CHECK(order1 == doctest::Approx(2.0).epsilon(0.1));
  CHECK(order2 == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("no-ground-state probe") {
  const auto cross = no_ground_state_probe(kCross, {32, 48, 64});
  REQUIRE(cross.size() == 3);
  for (std::size_t i = 1; i < cross.size(); ++i) CHECK(cross[i - 1].min_energy - cross[i].min_energy >= 0.5);
  const auto control = no_ground_state_probe(kOsc, {32, 48, 64});
  for (const auto& p : control) CHECK(std::abs(p.min_energy - 1.0) < 5e-3);
  try {
    no_ground_state_probe(kCross, {64});
    FAIL("expected InsufficientResolutions");
  } catch (const QgridError& e) {
    CHECK(e.kind() == QgridErrorKind::InsufficientResolutions);
  }
  CHECK_THROWS_AS(no_ground_state_probe(kCross, {32, 32, 48}), QgridError);
}

TEST_CASE("cross bouncer in separated form") {
  const auto spec = SystemSpec::bouncer(Variant::Cross);
  const std::vector<double> ks{-1.0, 0.0, 0.25, 2.0};
  const auto s = solve_cross_bouncer(spec, Grid1D::interval(256, 0.0, 20.0), ks);
  REQUIRE(s.size() == 16);
  CHECK(s.entries.front().label == spectra::LevelLabel::mixed(1, 0.0));
  const auto zeros = specfun::airy_zeros(4);
  const double l = spectra::cross_bouncer_length(spec);
  CHECK(std::abs(s.entries.front().energy - std::numbers::sqrt2 * l * zeros.at(1)) < 1e-5);
  double base[5] = {};
  for (const auto& e : s.entries)
    if (e.label.k == 0.0) base[e.label.n1] = e.energy;
  for (const auto& e : s.entries) CHECK(e.energy - base[e.label.n1] == doctest::Approx(0.5 * e.label.k * e.label.k).epsilon(1e-12));
  for (int n = 2; n <= 4; ++n) CHECK(std::abs(base[n] / base[1] - zeros.at(n) / zeros.at(1)) < 1e-3);
  CHECK_THROWS_AS(solve_cross_bouncer(kBounce, Grid1D::interval(64, 0.0, 20.0), ks), QgridError);
  CHECK_THROWS_AS(solve_cross_bouncer(spec, Grid1D::interval(64, -1.0, 20.0), ks), QgridError);
}

TEST_CASE("eigenvalue output is deterministic") {
  const DiscreteOperator op(kOsc, Grid2D::oscillator_box(40));
  const auto a = lowest_eigenpairs(op, 5, SolveMode::lowest(), method(SolveMethod::Lanczos));
  const auto b = lowest_eigenpairs(op, 5, SolveMode::lowest(), method(SolveMethod::Lanczos));
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(a[k].energy == b[k].energy);
    CHECK(a[k].state.amps == b[k].state.amps);
  }
}
