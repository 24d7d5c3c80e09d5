#pragma once

#include <array>

#include "vdw/green.hpp"
#include "vdw/materials.hpp"
#include "vdw/quadrature.hpp"

/// Two-atom van der Waals potential near a sphere, by quadrature over the
/// imaginary frequency axis. Energies are in units of hbar w10.
namespace vdw {

/// One energy per nonzero tensor component.
struct ComponentEnergies {
  double rr{0.0};
  double rtheta{0.0};
  double thetar{0.0};
  double thetatheta{0.0};
  double phiphi{0.0};

  double sum() const { return rr + rtheta + thetar + thetatheta + phiphi; }
  std::array<double, 5> as_array() const { return {rr, rtheta, thetar, thetatheta, phiphi}; }
};

inline constexpr std::array<const char*, 5> kComponentNames = {"rr", "rtheta", "thetar",
                                                              "thetatheta", "phiphi"};

struct PotentialBreakdown {
  double u0{0.0};
  ComponentEnergies u1;  ///< free-space x scattering cross terms
  ComponentEnergies u2;  ///< scattering x scattering terms
  double ub{0.0};        ///< u1.sum() + u2.sum()
  double uab{0.0};       ///< u0 + ub
  double ratio{1.0};     ///< uab / u0
};

/// Casimir-Polder potential of the pair in free space.
double u0_free_space(const Geometry& g, const AtomModel& a, const AtomModel& b,
                     const QuadratureSpec& quad = {});

/// The same potential from the trace of the Cartesian free-space dyadics.
double u0_trace_form(const Geometry& g, const AtomModel& a, const AtomModel& b,
                     const QuadratureSpec& quad = {});

/// U0 together with the ten body-induced components, integrated in a single
/// vector quadrature.
PotentialBreakdown body_potential(const Geometry& g, const AtomModel& a, const AtomModel& b,
                                  const SphereResponse& sphere, const QuadratureSpec& quad = {},
                                  const SeriesSpec& series = {});

struct BodyTotals {
  double u1{0.0};
  double u2{0.0};
};

/// U1 and U2 from traces of products of Cartesian tensors rebuilt from the
/// elements, for checking the component assembly.
BodyTotals body_potential_trace_form(const Geometry& g, const AtomModel& a,
                                     const AtomModel& b, const SphereResponse& sphere,
                                     const QuadratureSpec& quad = {},
                                     const SeriesSpec& series = {});

struct TotalPotential {
  double uab{0.0};
  double ratio{1.0};
};

TotalPotential total_potential(const Geometry& g, const AtomModel& a, const AtomModel& b,
                               const SphereResponse& sphere, const QuadratureSpec& quad = {},
                               const SeriesSpec& series = {});

/// Potential of one atom at distance r from the sphere centre.
double single_atom_potential(double r, const AtomModel& atom, const SphereResponse& sphere,
                             const QuadratureSpec& quad = {}, const SeriesSpec& series = {});

enum class AtomLabel { A, B };

struct Force {
  double radial{0.0};  ///< along e_r of the chosen atom
  double polar{0.0};   ///< along e_theta of the chosen atom
  /// Largest relative change between step h and h/2 estimates.
  double richardson_disagreement{0.0};
  bool step_warning{false};  ///< disagreement above 1e-3
};

/// -grad (U_A + U_B + U_AB) with respect to the chosen atom's position, by
/// central differences in (r, theta). A non-positive step selects
/// 1e-4 min(l, r_A - R, r_B - R).
Force force_on_atom(const Geometry& g, const AtomModel& a, const AtomModel& b,
                    const SphereResponse& sphere, AtomLabel which, double step = 0.0,
                    const QuadratureSpec& quad = {}, const SeriesSpec& series = {});

}  // namespace vdw
