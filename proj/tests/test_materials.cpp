#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "vdw/errors.hpp"
#include "vdw/materials.hpp"

using namespace vdw;
using doctest::Approx;

namespace {

const DrudeLorentzModel kElectric{3.0, 1.0, 0.001};
const DrudeLorentzModel kVacuum{0.0, 1.0, 0.001};

}  // namespace

TEST_CASE("Drude-Lorentz values") {
  CHECK(permittivity_iu(kElectric, 0.0) == 4.0);
  CHECK(permittivity_iu(kElectric, 1.0) == Approx(1.0 + 3.0 / 2.001).epsilon(1e-15));
  CHECK(permittivity_iu(kElectric, 1.0) == Approx(2.4992503748125936).epsilon(1e-15));
  CHECK(permeability_iu(kElectric, 1.0) == permittivity_iu(kElectric, 1.0));
  for (double u : {0.0, 0.3, 7.0}) {
    CHECK(permittivity_iu(kVacuum, u) == 1.0);
    CHECK(permeability_iu(kVacuum, u) == 1.0);
  }
}

TEST_CASE("responses are real, bounded below and non-increasing") {
  const auto atom = AtomModel{{{0.7, 0.4}, {1.0, 1.1}, {2.5, 0.3}}};
  double prev_eps = INFINITY, prev_alpha = INFINITY;
  for (double u = 0.0; u < 60.0; u += 0.013) {
    const double e = permittivity_iu(kElectric, u);
    const double a = atom_alpha_iu(atom, u);
    CHECK(e >= 1.0);
    CHECK(e <= prev_eps);
    CHECK(a > 0.0);
    CHECK(a < prev_alpha);
    prev_eps = e;
    prev_alpha = a;
  }
  CHECK(atom_alpha_iu(atom, 1e9) < 1e-17);
}

TEST_CASE("two-level atom") {
  const auto atom = AtomModel::two_level(1.0, 2.5);
  CHECK(atom_alpha_iu(atom, 0.0) == Approx(2.5));
  CHECK(atom_alpha_iu(atom, 1.0) == Approx(1.25));
  const auto scaled = AtomModel::two_level(2.0, 1.0);
  CHECK(atom_alpha_iu(scaled, 2.0) == Approx(0.5));
  // alpha(0) = 2 d^2 / (3 w)
  REQUIRE(scaled.transitions.size() == 1);
  CHECK(2.0 * scaled.transitions[0].dipole_sq / (3.0 * 2.0) == Approx(1.0));
}

TEST_CASE("multi-transition atom equals the term-by-term sum") {
  const std::vector<Transition> ts{{0.7, 0.4}, {1.0, 1.1}, {2.5, 0.3}};
  const AtomModel atom{ts};
  for (double u : {0.0, 0.2, 1.0, 4.0}) {
    double sum = 0.0;
    for (const auto& t : ts) {
      sum += (2.0 / 3.0) * t.frequency * t.dipole_sq / (t.frequency * t.frequency + u * u);
    }
    CHECK(std::abs(atom_alpha_iu(atom, u) - sum) <= 1e-15 * sum);
  }
}

TEST_CASE("polarizability scales with the dipole strengths") {
  AtomModel atom{{{0.7, 0.4}, {1.3, 1.1}}};
  const double s = 3.7;
  AtomModel scaled = atom;
  for (auto& t : scaled.transitions) t.dipole_sq *= s;
  for (double u : {0.0, 0.5, 2.0, 11.0}) {
    CHECK(atom_alpha_iu(scaled, u) == Approx(s * atom_alpha_iu(atom, u)).epsilon(1e-15));
  }
}

TEST_CASE("sphere polarizabilities") {
  SphereResponse vacuum{1.0, kVacuum, kVacuum};
  CHECK(sphere_alpha_iu(vacuum, 0.4) == 0.0);
  CHECK(sphere_beta_iu(vacuum, 0.4) == 0.0);

  SphereResponse s{1.0, kElectric, kVacuum};
  CHECK(sphere_alpha_iu(s, 0.0) == Approx(2.0 * std::numbers::pi));
  CHECK(sphere_beta_iu(s, 0.0) == 0.0);

  SphereResponse mirror{2.0, {1e14, 1.0, 0.0}, kVacuum};
  CHECK(sphere_alpha_iu(mirror, 0.0) == Approx(4.0 * std::numbers::pi * 8.0).epsilon(1e-12));

  SphereResponse magnetic{1.0, kVacuum, kElectric};
  CHECK(sphere_beta_iu(magnetic, 0.0) == Approx(2.0 * std::numbers::pi));
}

TEST_CASE("Clausius-Mossotti") {
  CHECK(clausius_mossotti_sphere({}) == 0.0);
  const std::vector<SpeciesDensity> one{{1.5, 1.0}};
  const double ratio = clausius_mossotti_sphere(one);
  CHECK(ratio == Approx(0.5));
  CHECK((1.0 + 2.0 * ratio) / (1.0 - ratio) == Approx(4.0));  // eps

  const std::vector<SpeciesDensity> two{{0.3, 1.0}, {0.6, 0.5}};
  const std::vector<SpeciesDensity> merged{{0.6, 1.0}};
  CHECK(clausius_mossotti_sphere(two) == Approx(clausius_mossotti_sphere(merged)));
  CHECK(clausius_mossotti_alpha(two, 2.0) ==
        Approx(4.0 * std::numbers::pi * 8.0 / 3.0 * 0.6).epsilon(1e-15));

  // consistent with the sphere polarizability of the implied permittivity
  const double eps = (1.0 + 2.0 * ratio) / (1.0 - ratio);
  SphereResponse s{1.7, {eps - 1.0, 1.0, 0.0}, kVacuum};
  CHECK(clausius_mossotti_alpha(one, 1.7) == Approx(sphere_alpha_iu(s, 0.0)).epsilon(1e-14));

  const std::vector<SpeciesDensity> too_dense{{3.0, 1.0}};
  CHECK_THROWS_AS(clausius_mossotti_sphere(too_dense), DomainError);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(validate(AtomModel{}), DomainError);
  CHECK_THROWS_AS(validate(AtomModel{{{-1.0, 1.0}}}), DomainError);
  AtomModel excited = AtomModel::two_level(1.0, 1.0);
  excited.ground_state = false;
  CHECK_THROWS_AS(validate(excited), DomainError);
  CHECK_THROWS_AS(validate(SphereResponse{0.0, kElectric, kVacuum}), DomainError);
  CHECK_THROWS_AS(validate(SphereResponse{1.0, {-1.0, 1.0, 0.0}, kVacuum}), DomainError);
  CHECK_NOTHROW(validate(SphereResponse{1.0, kElectric, kVacuum}));
}
