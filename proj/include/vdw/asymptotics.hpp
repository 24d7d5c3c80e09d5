#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vdw/green.hpp"
#include "vdw/materials.hpp"
#include "vdw/quadrature.hpp"

/// Limiting forms of the body-induced potential U_b for large and small
/// spheres, and the Axilrod-Teller three-body potential.
namespace vdw {

/// Atoms at heights delta_A, delta_B above the surface of a large sphere,
/// angular separation theta.
class LargeSphereGeometry {
 public:
  static LargeSphereGeometry make(double radius, double delta_a, double delta_b,
                                  double theta);
  static LargeSphereGeometry from(const Geometry& g);

  double radius() const { return radius_; }
  double delta_a() const { return delta_a_; }
  double delta_b() const { return delta_b_; }
  double theta() const { return theta_; }
  double x() const { return radius_ * theta_; }  ///< |X| = R Theta
  double delta_plus() const { return delta_b_ + delta_a_; }
  double delta_minus() const { return delta_b_ - delta_a_; }
  double l_plus() const;
  double l() const;

  Geometry geometry() const;  ///< theta_A = theta_B = Theta/2
  std::vector<std::string> warnings() const;

 private:
  LargeSphereGeometry(double radius, double delta_a, double delta_b, double theta)
      : radius_(radius), delta_a_(delta_a), delta_b_(delta_b), theta_(theta) {}
  double radius_, delta_a_, delta_b_, theta_;
};

/// Weight of the curvature integrals: 26 + eps mu R^2 u^2 (printed) or
/// 26 + (1 + eps mu) R^2 u^2 (appendix).
enum class CurvatureBracket { printed, appendix };

/// Large-sphere electric form with the curvature corrections in 1/R.
/// The magnetic response enters only through the bracket.
double large_sphere_electric(const LargeSphereGeometry& geom, const AtomModel& a,
                             const AtomModel& b, const SphereResponse& sphere,
                             const QuadratureSpec& quad = {},
                             CurvatureBracket form = CurvatureBracket::printed);

/// The same expression with every 1/R term dropped (planar surface).
double large_sphere_electric_planar(const LargeSphereGeometry& geom, const AtomModel& a,
                                    const AtomModel& b, const SphereResponse& sphere,
                                    const QuadratureSpec& quad = {});

/// Large purely magnetic sphere (the permittivity is ignored).
double large_sphere_magnetic(const LargeSphereGeometry& geom, const AtomModel& a,
                             const AtomModel& b, const SphereResponse& sphere,
                             const QuadratureSpec& quad = {});

using ResponseFn = std::function<double(double u)>;

/// Response functions entering the small-sphere integral.
struct SmallSphereResponses {
  ResponseFn alpha_a, alpha_b;
  ResponseFn alpha_sphere, beta_sphere;
};

SmallSphereResponses small_sphere_responses(const AtomModel& a, const AtomModel& b,
                                            const SphereResponse& sphere);

/// Small-sphere potential: the sphere acts as a third, point-like
/// electric and magnetic dipole.
double small_sphere(const Geometry& g, const AtomModel& a, const AtomModel& b,
                    const SphereResponse& sphere, const QuadratureSpec& quad = {});
double small_sphere(const Geometry& g, const SmallSphereResponses& responses,
                    const QuadratureSpec& quad = {});

/// Static responses for the retarded closed form.
struct StaticResponses {
  double alpha_a{0.0};
  double alpha_b{0.0};
  double alpha_sphere{0.0};
  double beta_sphere{0.0};
};

/// Polynomials of the retarded closed form and their symmetrisation
/// S[f](x, y, z) = f(x, y, z) + f(y, x, z).
double retarded_h1(double x, double y, double z);
double retarded_h2(double x, double y, double z);

double small_sphere_retarded(const Geometry& g, const StaticResponses& s);

struct NonretardedIntegrals {
  double j1{0.0};  ///< int alpha_A alpha_B alpha_sp du
  double j2{0.0};  ///< int u^2 alpha_A alpha_B beta_sp du
};

NonretardedIntegrals nonretarded_integrals(const AtomModel& a, const AtomModel& b,
                                           const SphereResponse& sphere,
                                           const QuadratureSpec& quad = {});

double small_sphere_nonretarded(const Geometry& g, const NonretardedIntegrals& j);
double small_sphere_nonretarded(const Geometry& g, const AtomModel& a, const AtomModel& b,
                                const SphereResponse& sphere,
                                const QuadratureSpec& quad = {});

/// Triangle of atom A, atom B and the sphere centre C, with the unit vectors
/// a (C to A), b (A to B) and c (B to C).
struct TripleGeometry {
  double r_a{0.0}, r_b{0.0}, l{0.0};
  double ab{0.0}, bc{0.0}, ca{0.0};

  /// Dot products from the law of cosines; throws DomainError for a
  /// degenerate or impossible triangle.
  static TripleGeometry from_sides(double r_a, double r_b, double l);
  static TripleGeometry from(const Geometry& g);
};

/// 1 - 3 (a.b)(b.c)(c.a)
double axilrod_teller_bracket(const TripleGeometry& tri);

double axilrod_teller(const TripleGeometry& tri, double j1);

/// Regime checks; each entry names the violated condition.
std::vector<std::string> small_sphere_warnings(const Geometry& g);
std::vector<std::string> retarded_warnings(const Geometry& g, const AtomModel& a,
                                           const AtomModel& b, const SphereResponse& sphere);
std::vector<std::string> nonretarded_warnings(const Geometry& g, const AtomModel& a,
                                              const AtomModel& b,
                                              const SphereResponse& sphere);

}  // namespace vdw
