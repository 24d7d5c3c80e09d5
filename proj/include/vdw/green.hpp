#pragma once

#include <array>

#include "vdw/materials.hpp"
#include "vdw/specfun.hpp"

/// Dyadic Green tensor of a magneto-electric sphere at imaginary frequency.
///
/// Atoms sit in the xz-plane: A at (r_A, theta_A, phi = 0), B at
/// (r_B, theta_B, phi = pi), sphere centred at the origin. Tensor elements
/// G_ij are taken between the local spherical unit vectors at A (row) and at
/// B (column), so e.g. `phiphi` pairs e_phi(A) = +y with e_phi(B) = -y.
namespace vdw {

using Vec3 = std::array<double, 3>;
using Tensor3 = std::array<Vec3, 3>;

class Geometry {
 public:
  /// Validates r_A, r_B > R and distinct atom positions; angles are any
  /// finite values (the physical range is [0, pi]).
  static Geometry make(double radius, double r_a, double theta_a, double r_b,
                       double theta_b);
  /// Both atoms at the same point (r, theta = 0). Only meaningful for the
  /// scattering part; free-space quantities are singular there.
  static Geometry coincident(double radius, double r);

  double radius() const { return radius_; }
  double r_a() const { return r_a_; }
  double r_b() const { return r_b_; }
  double theta_a() const { return theta_a_; }
  double theta_b() const { return theta_b_; }

  double angle() const { return theta_a_ + theta_b_; }  ///< Theta
  double gamma() const { return gamma_; }                ///< cos Theta
  double sin_angle() const { return sin_; }
  double separation() const { return l_; }
  double l_a() const { return r_b_ * gamma_ - r_a_; }  ///< l . e_r(A)
  double l_b() const { return r_b_ - r_a_ * gamma_; }  ///< l . e_r(B)

  Vec3 position_a() const;
  Vec3 position_b() const;
  /// Local (e_r, e_theta, e_phi) at A and at B, as Cartesian rows.
  Tensor3 basis_a() const;
  Tensor3 basis_b() const;

  /// Same configuration with the atom labels exchanged.
  Geometry swapped() const;

 private:
  Geometry(double radius, double r_a, double theta_a, double r_b, double theta_b);

  double radius_, r_a_, theta_a_, r_b_, theta_b_;
  double gamma_, sin_, l_;
};

struct GreenElements {
  double rr{0.0};
  double rtheta{0.0};
  double thetar{0.0};
  double thetatheta{0.0};
  double phiphi{0.0};

  template <class F>
  static GreenElements map(const GreenElements& a, F&& f) {
    return {f(a.rr), f(a.rtheta), f(a.thetar), f(a.thetatheta), f(a.phiphi)};
  }
  std::array<double, 5> as_array() const { return {rr, rtheta, thetar, thetatheta, phiphi}; }
};

struct SeriesSpec {
  int n_min_terms{4};
  double rel_tol{1e-10};
  int n_cap{specfun::kDefaultOrderCap};
};

void validate(const SeriesSpec& spec);

/// Free-space Green tensor between A and B in the local frames.
GreenElements free_space_elements(const Geometry& g, double u);

/// Cartesian free-space dyadic for separation vector lvec = r_B - r_A.
/// Throws DomainError for zero separation.
Tensor3 free_space_dyadic(const Vec3& lvec, double u);

/// Rebuilds the Cartesian tensor sum_ij G_ij e_i(A) e_j(B).
Tensor3 to_cartesian(const Geometry& g, const GreenElements& elements);

/// Mie reflection coefficients B_n^M (magnetic/TE) and B_n^N (electric/TM)
/// at w = iu, both real.
struct MieCoefficients {
  double magnetic{0.0};
  double electric{0.0};
};

MieCoefficients mie_coefficients(int n, double u, const SphereResponse& sphere);

struct SeriesDiagnostics {
  int terms{0};
};

/// Scattering Green tensor G^(1)(r_A, r_B, iu), summed to `spec`.
/// Throws ConvergenceError when n_cap is reached first.
GreenElements scattering_elements(const Geometry& g, double u, const SphereResponse& sphere,
                                  const SeriesSpec& spec = {},
                                  SeriesDiagnostics* diagnostics = nullptr);

/// The same series truncated after exactly n_terms orders.
GreenElements scattering_partial_sum(const Geometry& g, double u, const SphereResponse& sphere,
                                     int n_terms);

/// Cartesian trace of G^(1)(r, r, iu) for one atom at radius r.
double scattering_trace_coincident(double r, double u, const SphereResponse& sphere,
                                   const SeriesSpec& spec = {});

// ---------------------------------------------------------------------------
// Reference evaluation from the vector spherical wave functions

inline constexpr int kOracleOrderCap = 600;

struct OracleResult {
  GreenElements elements;
  /// Largest |Im G_ij| left over from the complex sums (should be round-off).
  double max_imaginary{0.0};
};

/// Sums the full n, m, p series of even/odd wave functions M_{nm,p}, N_{nm,p}
/// with complex Hankel/Bessel functions in long double, then reads off the
/// local spherical components. Atoms must lie off the z axis.
/// Throws OverflowError when intermediate products leave the long double range.
OracleResult scattering_direct_sum_oracle(const Geometry& g, double u,
                                          const SphereResponse& sphere, int n_max);

/// Per-order m-sums of the dyadic products of one wave-function family, in
/// local spherical components [i][j] (i at A, j at B).
struct WaveSums {
  Tensor3 m_odd{};   ///< sum_m C_nm M_{nm,-1}(A) M_{nm,-1}(B)
  Tensor3 m_even{};  ///< sum_m C_nm M_{nm,+1}(A) M_{nm,+1}(B)
  Tensor3 n_odd{};   ///< sum_m C_nm N_{nm,-1}(A) N_{nm,-1}(B)
  Tensor3 n_even{};  ///< sum_m C_nm N_{nm,+1}(A) N_{nm,+1}(B)
};

/// WaveSums at order n with every radial factor (h_n(qr), n(n+1)h_n/(qr),
/// [z h_n]'/(qr)) set to one, leaving the purely angular m-sums.
WaveSums wave_function_sums(const Geometry& g, int n);

/// Mie coefficients from complex Bessel/Hankel evaluations (independent of
/// mie_coefficients).
MieCoefficients mie_coefficients_reference(int n, double u, const SphereResponse& sphere);

}  // namespace vdw
