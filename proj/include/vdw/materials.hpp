#pragma once

#include <span>
#include <vector>

/// Response functions on the imaginary frequency axis w = iu, reduced units.
namespace vdw {

/// Single-resonance Drude-Lorentz response
///   1 + plasma / (resonance^2 - w^2 - i damping w),
/// with the numerator taken literally as one parameter (plasma = 3 means 3 w10^2).
struct DrudeLorentzModel {
  double plasma{0.0};
  double resonance{0.0};
  double damping{0.0};
};

double permittivity_iu(const DrudeLorentzModel& model, double u);
double permeability_iu(const DrudeLorentzModel& model, double u);

struct Transition {
  double frequency{1.0};  ///< w_k0
  double dipole_sq{1.0};  ///< |d_k0|^2
};

/// Ground-state atom described by its dipole transitions.
struct AtomModel {
  std::vector<Transition> transitions;
  bool ground_state{true};

  /// Two-level atom with static polarizability alpha0 at transition frequency w.
  static AtomModel two_level(double frequency, double alpha0);
};

/// (2/3) sum_k w_k d_k^2 / (w_k^2 + u^2).
double atom_alpha_iu(const AtomModel& atom, double u);

/// Throws DomainError for an empty, excited-state or non-physical atom.
void validate(const AtomModel& atom);

struct SphereResponse {
  double radius{1.0};
  DrudeLorentzModel eps;
  DrudeLorentzModel mu;
};

void validate(const SphereResponse& sphere);

/// 4 pi R^3 (eps - 1) / (eps + 2).
double sphere_alpha_iu(const SphereResponse& sphere, double u);
/// 4 pi R^3 (mu - 1) / (mu + 2).
double sphere_beta_iu(const SphereResponse& sphere, double u);

struct SpeciesDensity {
  double number_density{0.0};
  double alpha{0.0};  ///< polarizability at the frequency of interest
};

/// Clausius-Mossotti ratio (eps - 1)/(eps + 2) = sum_k n_k alpha_k / 3.
/// Throws DomainError once the sum reaches 1.
double clausius_mossotti_sphere(std::span<const SpeciesDensity> species);

/// Polarizability of a sphere of radius R built from the given species,
/// (4 pi R^3 / 3) sum_k n_k alpha_k.
double clausius_mossotti_alpha(std::span<const SpeciesDensity> species, double radius);

}  // namespace vdw
