#include "vdw/materials.hpp"

#include <cmath>
#include <string>

#include "vdw/errors.hpp"
#include "vdw/units.hpp"

namespace vdw {

namespace {

double drude_lorentz_iu(const DrudeLorentzModel& m, double u) {
  if (m.plasma == 0.0) return 1.0;
  return 1.0 + m.plasma / (m.resonance * m.resonance + u * u + m.damping * u);
}

void validate(const DrudeLorentzModel& m, const char* what) {
  if (!(m.plasma >= 0.0) || !(m.resonance >= 0.0) || !(m.damping >= 0.0)) {
    throw DomainError(std::string(what) + ": Drude-Lorentz parameters must be non-negative");
  }
  if (m.plasma > 0.0 && m.resonance == 0.0) {
    throw DomainError(std::string(what) + ": resonance must be positive (response diverges at u = 0)");
  }
}

}  // namespace

double permittivity_iu(const DrudeLorentzModel& model, double u) {
  return drude_lorentz_iu(model, u);
}

double permeability_iu(const DrudeLorentzModel& model, double u) {
  return drude_lorentz_iu(model, u);
}

AtomModel AtomModel::two_level(double frequency, double alpha0) {
  // alpha(0) = 2 d^2 / (3 w)
  return AtomModel{{Transition{frequency, 1.5 * alpha0 * frequency}}, true};
}

double atom_alpha_iu(const AtomModel& atom, double u) {
  double sum = 0.0;
  for (const auto& t : atom.transitions) {
    sum += t.frequency * t.dipole_sq / (t.frequency * t.frequency + u * u);
  }
  return 2.0 * sum / 3.0;
}

void validate(const AtomModel& atom) {
  if (!atom.ground_state) {
    throw DomainError("atom: only ground-state atoms are supported");
  }
  if (atom.transitions.empty()) throw DomainError("atom: no transitions given");
  for (const auto& t : atom.transitions) {
    if (!(t.frequency > 0.0) || !(t.dipole_sq > 0.0) || !std::isfinite(t.frequency) ||
        !std::isfinite(t.dipole_sq)) {
      throw DomainError("atom: transition frequency and dipole strength must be positive");
    }
  }
}

void validate(const SphereResponse& sphere) {
  if (!(sphere.radius > 0.0) || !std::isfinite(sphere.radius)) {
    throw DomainError("sphere: radius must be positive");
  }
  validate(sphere.eps, "sphere.eps");
  validate(sphere.mu, "sphere.mu");
}

double sphere_alpha_iu(const SphereResponse& sphere, double u) {
  const double eps = permittivity_iu(sphere.eps, u);
  const double r3 = sphere.radius * sphere.radius * sphere.radius;
  return 4.0 * kPi * r3 * (eps - 1.0) / (eps + 2.0);
}

double sphere_beta_iu(const SphereResponse& sphere, double u) {
  const double mu = permeability_iu(sphere.mu, u);
  const double r3 = sphere.radius * sphere.radius * sphere.radius;
  return 4.0 * kPi * r3 * (mu - 1.0) / (mu + 2.0);
}

double clausius_mossotti_sphere(std::span<const SpeciesDensity> species) {
  double sum = 0.0;
  for (const auto& s : species) sum += s.number_density * s.alpha;
  const double ratio = sum / 3.0;
  if (!(ratio < 1.0)) {
    throw DomainError("clausius_mossotti_sphere: sum n_k alpha_k / 3 must stay below 1, got " +
                      std::to_string(ratio));
  }
  return ratio;
}

double clausius_mossotti_alpha(std::span<const SpeciesDensity> species, double radius) {
  const double ratio = clausius_mossotti_sphere(species);
  return 4.0 * kPi * radius * radius * radius * ratio;
}

}  // namespace vdw
