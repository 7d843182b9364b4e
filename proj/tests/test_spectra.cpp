#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hamlab/qgrid/probes.hpp"
#include "hamlab/specfun.hpp"
#include "hamlab/spectra.hpp"

using namespace hamlab;
using namespace hamlab::spectra;
using qgrid::Grid2D;

namespace {

const SystemSpec kOsc = SystemSpec::oscillator(Variant::Standard);
const SystemSpec kCross = SystemSpec::oscillator(Variant::Cross);
const SystemSpec kBounce = SystemSpec::bouncer(Variant::Standard);
const SystemSpec kCrossBounce = SystemSpec::bouncer(Variant::Cross);

}  // namespace

TEST_CASE("closed-form energies") {
  CHECK(energy(kOsc, LevelLabel::discrete(0, 0)) == 1.0);
  CHECK(energy(kOsc, LevelLabel::discrete(2, 1)) == 4.0);
  CHECK(energy(kCross, LevelLabel::discrete(3, 3)) == 0.0);
  CHECK(energy(kCross, LevelLabel::discrete(0, 4)) == -4.0);
  CHECK(energy(SystemSpec::oscillator(Variant::Standard, 2.0, 3.0, 0.5), LevelLabel::discrete(1, 0)) == 3.0);

  const double z1 = specfun::airy_zeros(1).at(1);
  const double e11 = energy(kBounce, LevelLabel::discrete(1, 1));
  CHECK(e11 == doctest::Approx(2.0 * std::cbrt(0.5) * z1).epsilon(1e-14));
  CHECK(e11 == doctest::Approx(3.7115).epsilon(1e-4));
  // twice the ground level of an independent 1-D grid bouncer
  const auto levels = qgrid::bouncer_levels_1d(1.0, 1.0, 1.0, qgrid::Grid1D::interval(400, 0.0, 16.0), 1);
  CHECK(std::abs(2.0 * levels[0] - e11) < 1e-5);

  const double cross = energy(kCrossBounce, LevelLabel::mixed(1, 0.0));
  CHECK(cross == doctest::Approx(std::numbers::sqrt2 * std::cbrt(1.0 / (2.0 * std::numbers::sqrt2)) * z1));
  CHECK(energy(kCrossBounce, LevelLabel::mixed(1, 0.7)) - cross == doctest::Approx(0.245).epsilon(1e-12));
}

TEST_CASE("length scales") {
  const auto s = SystemSpec::bouncer(Variant::Standard, 2.0, 3.0, 1.5);
  CHECK(bouncer_length(s) == doctest::Approx(std::cbrt(2.25 / 12.0)));
  CHECK(cross_bouncer_length(s) == doctest::Approx(std::cbrt(2.25 / (12.0 * std::numbers::sqrt2))));
}

TEST_CASE("label kind and index checks") {
  CHECK_THROWS_AS(energy(kCrossBounce, LevelLabel::discrete(1, 1)), SpectraError);
  CHECK_THROWS_AS(energy(kOsc, LevelLabel::mixed(1, 0.0)), SpectraError);
  CHECK_THROWS_AS(energy(kBounce, LevelLabel::discrete(0, 1)), SpectraError);
  CHECK_THROWS_AS(energy(kOsc, LevelLabel::discrete(-1, 0)), SpectraError);
  try {
    energy(kBounce, LevelLabel::mixed(1, 0.0));
  } catch (const SpectraError& e) {
    CHECK(e.kind() == SpectraErrorKind::LabelKindMismatch);
  }
}

TEST_CASE("enumerate_levels oscillator/standard") {
  const Spectrum s = enumerate_levels(kOsc, 0.5, 3.5);
  REQUIRE(s.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(s.entries[i].energy == i + 1.0);
    CHECK(s.entries[i].degeneracy == Degeneracy::of(i + 1));
  }
  CHECK(enumerate_levels(kOsc, -3.0, 0.5).empty());
  CHECK(enumerate_levels(kOsc, 0.0, 1000.0).size() == 11);  // n <= 10
}

TEST_CASE("enumerate_levels oscillator/cross") {
  Cutoffs cut;
  cut.n_max = 10;
  const Spectrum s = enumerate_levels(kCross, -2.5, 2.5, cut);
  REQUIRE(s.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(s.entries[i].energy == i - 2.0);
    CHECK(s.entries[i].degeneracy.infinite);
  }
  // E -> -E symmetry
  const Spectrum all = enumerate_levels(kCross, -100.0, 100.0, cut);
  for (std::size_t i = 0; i < all.size(); ++i)
    CHECK(all.entries[i].energy == -all.entries[all.size() - 1 - i].energy);
  // standard spectrum stays above hbar omega
  CHECK(enumerate_levels(kOsc, -1e9, 1e9, cut).entries.front().energy == 1.0);
}

TEST_CASE("no lower bound for the cross oscillator") {
  for (double bound : {-3.0, -17.5, -60.0}) {
    Cutoffs cut;
    cut.n_max = static_cast<int>(std::ceil(-bound)) + 1;
    const Spectrum s = enumerate_levels(kCross, -1e9, 1e9, cut);
    CHECK(s.entries.front().energy < bound);
  }
}

TEST_CASE("enumerate_levels bouncers") {
  Cutoffs cut;
  cut.n_max = 4;
  const Spectrum s = enumerate_levels(kBounce, 0.0, 1e9, cut);
  CHECK(s.size() == 10);  // unordered pairs from 1..4
  for (const auto& e : s.entries)
    CHECK(e.degeneracy.count == (e.label.n1 == e.label.n2 ? 1 : 2));
  CHECK(s.entries.front().label == LevelLabel::discrete(1, 1));
  CHECK(s.entries[1].label == LevelLabel::discrete(1, 2));

  cut.k_samples = {-1.0, -0.5, 0.0, 0.5, 1.0};
  const Spectrum c = enumerate_levels(kCrossBounce, -1e9, 1e9, cut);
  CHECK(c.size() == 20);
  CHECK(c.entries.front().label == LevelLabel::mixed(1, 0.0));
  // equal energies for +-k are ordered by label
  CHECK(c.entries[1].label == LevelLabel::mixed(1, -0.5));
  CHECK(c.entries[2].label == LevelLabel::mixed(1, 0.5));
}

TEST_CASE("list_states") {
  const auto osc = list_states(kOsc, 6);
  CHECK(osc == std::vector<double>{1, 2, 2, 3, 3, 3});
  const auto b = list_states(kBounce, 3);
  CHECK(b[1] == b[2]);
  CHECK(b[0] == energy(kBounce, LevelLabel::discrete(1, 1)));
  CHECK_THROWS_AS(list_states(kCross, 3), SpectraError);
}

TEST_CASE("oscillator eigenfunctions") {
  const Grid2D g = Grid2D::oscillator_box(65);
  const auto psi = eigenfunction(kOsc, LevelLabel::discrete(0, 0), g);
  CHECK(psi.amps[g.index(32, 32)].real() == doctest::Approx(std::sqrt(1.0 / std::numbers::pi)).epsilon(1e-14));
  const auto chi = eigenfunction(kCross, LevelLabel::discrete(1, 0), g);
  double worst = 0.0;
  for (int i = 0; i < g.nx; ++i) worst = std::max(worst, std::abs(chi.amps[g.index(i, g.ny - 1 - i)]));
  CHECK(worst < 1e-14);
  CHECK(std::abs(chi.amps[g.index(40, 40)]) > 1e-2);

  const Grid2D g64 = Grid2D::oscillator_box(64);
  std::vector<qgrid::WaveFn> fns;
  for (const auto& spec : {kOsc, kCross})
    for (auto [a, b] : {std::pair{0, 0}, {1, 0}, {0, 1}, {2, 1}, {1, 1}}) {
      fns.push_back(eigenfunction(spec, LevelLabel::discrete(a, b), g64));
      CHECK(std::abs(fns.back().norm2() - 1.0) < 1e-6);
    }
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) {
      CHECK(std::abs(qgrid::inner(fns[i], fns[j])) < 1e-6);
      CHECK(std::abs(qgrid::inner(fns[5 + i], fns[5 + j])) < 1e-6);
    }
}

TEST_CASE("degenerate cross-oscillator states are independent") {
  const Grid2D g = Grid2D::oscillator_box(64);
  std::vector<qgrid::WaveFn> fns;
  for (int n = 0; n < 4; ++n) fns.push_back(eigenfunction(kCross, LevelLabel::discrete(n, n), g));
  Eigen::MatrixXd gram(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) gram(i, j) = qgrid::inner(fns[static_cast<std::size_t>(i)], fns[static_cast<std::size_t>(j)]).real();
  CHECK(gram.determinant() > 0.99);
}

TEST_CASE("bouncer eigenfunctions") {
  const Grid2D g = Grid2D::bouncer_box(128);
  const auto psi = eigenfunction(kBounce, LevelLabel::discrete(1, 1), g);
  // Dirichlet floor: linear approach to zero, positive first lobe
  for (int j = 0; j < g.ny; j += 9) {
    const double a = psi.amps[g.index(0, j)].real();
    const double b = psi.amps[g.index(1, j)].real();
    if (std::abs(b) < 1e-12) continue;
    CHECK(a > 0.0);
    CHECK(a / b == doctest::Approx(0.5).epsilon(1e-2));
  }
  for (auto [a, b] : {std::pair{1, 1}, {1, 2}, {3, 1}}) {
    const auto f = eigenfunction(kBounce, LevelLabel::discrete(a, b), g);
    CHECK(std::abs(f.norm2() - 1.0) < 1e-6);
  }
  const auto o = qgrid::inner(eigenfunction(kBounce, LevelLabel::discrete(1, 2), g),
                              eigenfunction(kBounce, LevelLabel::discrete(2, 1), g));
  CHECK(std::abs(o) < 1e-6);

  // mixed label: zero below xi = 0 is outside the quadrant; unit plane-wave amplitude
  const auto m = eigenfunction(kCrossBounce, LevelLabel::mixed(1, 0.8), g);
  const auto m0 = eigenfunction(kCrossBounce, LevelLabel::mixed(1, 0.0), g);
  for (std::size_t k = 0; k < m.amps.size(); k += 101) CHECK(std::abs(m.amps[k]) == doctest::Approx(std::abs(m0.amps[k])));
}

TEST_CASE("GridTooSmall") {
  const Grid2D small = Grid2D::oscillator_box(32, 4.0);
  try {
    eigenfunction(kOsc, LevelLabel::discrete(10, 0), small);
    FAIL("expected GridTooSmall");
  } catch (const SpectraError& e) {
    CHECK(e.kind() == SpectraErrorKind::GridTooSmall);
    CHECK(e.required_extent() == doctest::Approx(std::sqrt(21.0) + 5.0));
  }
  CHECK_THROWS_AS(eigenfunction(kBounce, LevelLabel::discrete(1, 1), Grid2D::bouncer_box(32, 6.0)), SpectraError);
  CHECK_THROWS_AS(eigenfunction(kBounce, LevelLabel::discrete(1, 1), Grid2D::oscillator_box(32)), SpectraError);
}

TEST_CASE("spectrum CSV") {
  std::ostringstream out;
  Cutoffs cut;
  cut.n_max = 2;
  write_csv(out, enumerate_levels(kCross, -1.0, 1.0, cut));
  CHECK(out.str() == "label,energy,degeneracy\n0:1,-1,inf\n0:0,0,inf\n1:0,1,inf\n");
  std::ostringstream b;
  cut.k_samples = {0.5};
  write_csv(b, enumerate_levels(kCrossBounce, 0.0, 3.0, cut));
  CHECK(b.str().rfind("label,energy,degeneracy\n1:0.5,", 0) == 0);
}
