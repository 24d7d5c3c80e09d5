#include "vdw/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vdw/errors.hpp"
#include "vdw/units.hpp"

namespace vdw {

namespace {

double f_poly(double x) { return 1.0 + x + x * x; }
double g_poly(double x) { return 3.0 + 3.0 * x + x * x; }

std::string format_ratio(const char* what, double value, double limit) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s = %.4g exceeds %.4g", what, value, limit);
  return buf;
}

// Smallest and largest frequency among atomic transitions and material
// resonances.
std::pair<double, double> frequency_span(const AtomModel& a, const AtomModel& b,
                                         const SphereResponse& sphere) {
  double lo = INFINITY, hi = 0.0;
  for (const auto* atom : {&a, &b}) {
    for (const auto& t : atom->transitions) {
      lo = std::min(lo, t.frequency);
      hi = std::max(hi, t.frequency);
    }
  }
  for (const auto* m : {&sphere.eps, &sphere.mu}) {
    if (m->plasma > 0.0) {
      lo = std::min(lo, m->resonance);
      hi = std::max(hi, m->resonance);
    }
  }
  return {lo, hi};
}

}  // namespace

// ---------------------------------------------------------------------------
// Large sphere

LargeSphereGeometry LargeSphereGeometry::make(double radius, double delta_a, double delta_b,
                                              double theta) {
  if (!(radius > 0.0)) throw DomainError("large sphere: radius must be positive");
  if (!(delta_a > 0.0) || !(delta_b > 0.0)) {
    throw DomainError("large sphere: atom heights must be positive");
  }
  if (!std::isfinite(theta)) throw DomainError("large sphere: non-finite angle");
  LargeSphereGeometry g(radius, delta_a, delta_b, std::abs(theta));
  if (!(g.l() > 0.0)) throw DomainError("large sphere: atoms coincide");
  return g;
}

LargeSphereGeometry LargeSphereGeometry::from(const Geometry& g) {
  return make(g.radius(), g.r_a() - g.radius(), g.r_b() - g.radius(), g.angle());
}

double LargeSphereGeometry::l_plus() const { return std::hypot(x(), delta_plus()); }
double LargeSphereGeometry::l() const { return std::hypot(x(), delta_minus()); }

Geometry LargeSphereGeometry::geometry() const {
  return Geometry::make(radius_, radius_ + delta_a_, 0.5 * theta_, radius_ + delta_b_,
                        0.5 * theta_);
}

std::vector<std::string> LargeSphereGeometry::warnings() const {
  std::vector<std::string> out;
  const double limit = 0.1;
  if (delta_a_ / radius_ > limit) out.push_back(format_ratio("delta_A/R", delta_a_ / radius_, limit));
  if (delta_b_ / radius_ > limit) out.push_back(format_ratio("delta_B/R", delta_b_ / radius_, limit));
  if (l() / radius_ > limit) out.push_back(format_ratio("l/R", l() / radius_, limit));
  return out;
}

namespace {

struct LargeSphereIntegrals {
  double i01, i02, i11, i12;
};

LargeSphereIntegrals large_sphere_integrals(const AtomModel& a, const AtomModel& b,
                                            const SphereResponse& sphere,
                                            const QuadratureSpec& quad,
                                            CurvatureBracket form) {
  const double R = sphere.radius;
  const double extra = form == CurvatureBracket::appendix ? 1.0 : 0.0;
  const VectorIntegrand f = [&](double u, std::span<double> out) {
    const double eps = permittivity_iu(sphere.eps, u);
    const double mu = permeability_iu(sphere.mu, u);
    const double w = atom_alpha_iu(a, u) * atom_alpha_iu(b, u);
    const double bracket = 26.0 + (extra + eps * mu) * R * R * u * u;
    const double refl = (eps - 1.0) / (eps + 1.0);
    out[0] = w * refl;
    out[1] = w * refl * refl;
    out[2] = w * bracket * refl;
    out[3] = w * bracket * refl * refl;
  };
  const std::vector<std::string> names{"I01", "I02", "I11", "I12"};
  const auto r = integrate_semi_infinite(4, f, quad, names);
  return {r.value[0], r.value[1], r.value[2], r.value[3]};
}

double large_sphere_electric_impl(const LargeSphereGeometry& geom, const AtomModel& a,
                                  const AtomModel& b, const SphereResponse& sphere,
                                  const QuadratureSpec& quad, bool curvature,
                                  CurvatureBracket form) {
  validate(a);
  validate(b);
  validate(sphere);
  const auto I = large_sphere_integrals(a, b, sphere, quad, form);
  const double X = geom.x(), dp = geom.delta_plus(), dm = geom.delta_minus();
  const double lp = geom.l_plus(), l = geom.l();
  const double X2 = X * X, dp2 = dp * dp, dm2 = dm * dm;
  const double R = curvature ? geom.radius() : INFINITY;

  const double t01 = (4.0 * X2 * X2 - 2.0 * dm2 * dp2 + X2 * (dm2 + dp2)) * I.i01;
  const double t11 =
      lp * lp / (4.0 * R) * (3.0 * (lp * lp * lp - dp2 * dp) - dp * (dm2 + 4.0 * X2)) * I.i11;
  const double t02 = -3.0 * std::pow(l, 5) / lp * (I.i02 + lp / (4.0 * R) * I.i12);
  return (t01 + t11 + t02) / (16.0 * kPi * kPi * kPi * std::pow(l * lp, 5));
}

}  // namespace

double large_sphere_electric(const LargeSphereGeometry& geom, const AtomModel& a,
                             const AtomModel& b, const SphereResponse& sphere,
                             const QuadratureSpec& quad, CurvatureBracket form) {
  return large_sphere_electric_impl(geom, a, b, sphere, quad, true, form);
}

double large_sphere_electric_planar(const LargeSphereGeometry& geom, const AtomModel& a,
                                    const AtomModel& b, const SphereResponse& sphere,
                                    const QuadratureSpec& quad) {
  return large_sphere_electric_impl(geom, a, b, sphere, quad, false, CurvatureBracket::printed);
}

double large_sphere_magnetic(const LargeSphereGeometry& geom, const AtomModel& a,
                             const AtomModel& b, const SphereResponse& sphere,
                             const QuadratureSpec& quad) {
  validate(a);
  validate(b);
  validate(sphere);
  const double integral = integrate_semi_infinite(
      [&](double u) {
        const double mu = permeability_iu(sphere.mu, u);
        return u * u * atom_alpha_iu(a, u) * atom_alpha_iu(b, u) * (mu - 1.0) * (mu - 3.0) /
               (mu + 1.0);
      },
      quad);
  const double X = geom.x(), dp = geom.delta_plus(), dm = geom.delta_minus();
  const double lp = geom.l_plus(), l = geom.l();
  const double geometric = dm * dm - 2.0 * X * X + 3.0 * dp * (lp - dp);
  return geometric * integral / (64.0 * kPi * kPi * kPi * std::pow(l, 5) * lp);
}

// ---------------------------------------------------------------------------
// Small sphere

SmallSphereResponses small_sphere_responses(const AtomModel& a, const AtomModel& b,
                                            const SphereResponse& sphere) {
  validate(a);
  validate(b);
  validate(sphere);
  return {[a](double u) { return atom_alpha_iu(a, u); },
          [b](double u) { return atom_alpha_iu(b, u); },
          [sphere](double u) { return sphere_alpha_iu(sphere, u); },
          [sphere](double u) { return sphere_beta_iu(sphere, u); }};
}

double small_sphere(const Geometry& g, const SmallSphereResponses& resp,
                    const QuadratureSpec& quad) {
  const double ra = g.r_a(), rb = g.r_b(), l = g.separation();
  const double la = g.l_a(), lb = g.l_b();
  const double gam = g.gamma(), s2 = g.sin_angle() * g.sin_angle();
  const double l2 = l * l;

  const double integral = integrate_semi_infinite(
      [&](double u) {
        const double w = resp.alpha_a(u) * resp.alpha_b(u);
        if (w == 0.0) return 0.0;
        const double a = ra * u, b = rb * u, xi = l * u;
        const double fa = f_poly(a), fb = f_poly(b), ga = g_poly(a), gb = g_poly(b);
        const double fx = f_poly(xi), gx = g_poly(xi);

        const double electric =
            fx * (gb * (2.0 * (1.0 + a) - ga * s2) + 2.0 * a * a * fb) +
            gx / l2 *
                (((2.0 * l2 - ra * rb * gam) * fa * fb + 2.0 * a * a * fb * ra * la -
                  2.0 * b * b * fa * rb * lb) *
                     s2 -
                 4.0 * (1.0 + a) * (1.0 + b) * la * lb * gam);
        const double magnetic = a * b * (1.0 + a) * (1.0 + b) *
                                (gx * ra * rb / l2 * s2 - 2.0 * fx * gam);
        const double body = resp.alpha_sphere(u) * electric + resp.beta_sphere(u) * magnetic;
        return w * std::exp(-(ra + rb + l) * u) * body;
      },
      quad);
  return integral / (64.0 * std::pow(kPi, 4) * std::pow(ra * rb * l, 3));
}

double small_sphere(const Geometry& g, const AtomModel& a, const AtomModel& b,
                    const SphereResponse& sphere, const QuadratureSpec& quad) {
  return small_sphere(g, small_sphere_responses(a, b, sphere), quad);
}

double retarded_h1(double x, double y, double z) {
  const double x2 = x * x, y2 = y * y, z2 = z * z;
  const double first =
      3.0 * std::pow(x, 6) * y2 * (y - x) * (x + y + 7.0 * z) * (x2 + 7.0 * x * y + 11.0 * y2);
  const double inner = 53.0 * x2 * x2 + 280.0 * x2 * x * y - 137.0 * x2 * y2 -
                       329.0 * x * y2 * y - 623.0 * x * y2 * z - 192.0 * y2 * z2;
  return first - x2 * x2 * y2 * z2 * inner;
}

double retarded_h2(double x, double y, double z) {
  const double x2 = x * x, x3 = x2 * x, y2 = y * y, z2 = z * z, z3 = z2 * z;
  return 3.0 * x2 * x2 * (y - x) * (x + y + 7.0 * z) * (x2 + 7.0 * x * y + 11.0 * y2) -
         2.0 * x3 * z2 * (x + y) * (26.0 * x2 + 93.0 * x * y - 133.0 * y2) -
         7.0 * x2 * std::pow(z, 5) * (3.0 * x - 2.0 * y) -
         14.0 * x3 * z3 * (2.0 * x2 - 3.0 * x * y - 13.0 * y2) -
         x3 * z2 * z2 * (17.0 * x + 161.0 * y) + 2.0 * x * std::pow(z, 6) * (31.0 * x + 105.0 * y) +
         5.0 * std::pow(z, 7) * (14.0 * x + z);
}

double small_sphere_retarded(const Geometry& g, const StaticResponses& s) {
  const double ra = g.r_a(), rb = g.r_b(), l = g.separation();
  auto sym = [](double (*h)(double, double, double), double x, double y, double z) {
    return h(x, y, z) + h(y, x, z);
  };
  const double electric = sym(retarded_h1, ra, rb, l) + sym(retarded_h1, rb, l, ra) +
                          sym(retarded_h1, l, ra, rb);
  const double magnetic = ra * ra * rb * rb * sym(retarded_h2, ra, rb, l);
  const double denom = 32.0 * std::pow(kPi, 4) * std::pow(ra * rb * l, 5) *
                       std::pow(ra + rb + l, 7);
  return s.alpha_a * s.alpha_b * (s.alpha_sphere * electric + s.beta_sphere * magnetic) /
         denom;
}

NonretardedIntegrals nonretarded_integrals(const AtomModel& a, const AtomModel& b,
                                           const SphereResponse& sphere,
                                           const QuadratureSpec& quad) {
  validate(a);
  validate(b);
  validate(sphere);
  const VectorIntegrand f = [&](double u, std::span<double> out) {
    const double w = atom_alpha_iu(a, u) * atom_alpha_iu(b, u);
    out[0] = w * sphere_alpha_iu(sphere, u);
    out[1] = u * u * w * sphere_beta_iu(sphere, u);
  };
  const std::vector<std::string> names{"J1", "J2"};
  const auto r = integrate_semi_infinite(2, f, quad, names);
  return {r.value[0], r.value[1]};
}

double small_sphere_nonretarded(const Geometry& g, const NonretardedIntegrals& j) {
  const double ra = g.r_a(), rb = g.r_b(), l = g.separation();
  const double gam = g.gamma(), s2 = g.sin_angle() * g.sin_angle(), l2 = l * l;
  const double electric = 1.0 - (4.0 * g.l_a() * g.l_b() + ra * rb * s2) * gam / l2 + gam * gam;
  const double magnetic = ra * rb * (ra * rb * s2 / l2 - 2.0 / 3.0 * gam);
  return 3.0 * (electric * j.j1 + magnetic * j.j2) /
         (64.0 * std::pow(kPi, 4) * std::pow(ra * rb * l, 3));
}

double small_sphere_nonretarded(const Geometry& g, const AtomModel& a, const AtomModel& b,
                                const SphereResponse& sphere, const QuadratureSpec& quad) {
  return small_sphere_nonretarded(g, nonretarded_integrals(a, b, sphere, quad));
}

// ---------------------------------------------------------------------------
// Axilrod-Teller

TripleGeometry TripleGeometry::from_sides(double r_a, double r_b, double l) {
  if (!(r_a > 0.0) || !(r_b > 0.0) || !(l > 0.0)) {
    throw DomainError("triangle: every side must be positive");
  }
  const double slack = 1e-12 * (r_a + r_b + l);
  if (r_a + r_b < l - slack || r_a + l < r_b - slack || r_b + l < r_a - slack) {
    throw DomainError("triangle: sides violate the triangle inequality");
  }
  auto clamp = [](double c) { return std::clamp(c, -1.0, 1.0); };
  const double cos_theta = clamp((r_a * r_a + r_b * r_b - l * l) / (2.0 * r_a * r_b));
  const double cos_alpha = clamp((r_a * r_a + l * l - r_b * r_b) / (2.0 * r_a * l));
  const double cos_beta = clamp((r_b * r_b + l * l - r_a * r_a) / (2.0 * r_b * l));
  return {r_a, r_b, l, -cos_alpha, -cos_beta, -cos_theta};
}

TripleGeometry TripleGeometry::from(const Geometry& g) {
  const Vec3 pa = g.position_a(), pb = g.position_b();
  const double ra = g.r_a(), rb = g.r_b(), l = g.separation();
  Vec3 a{}, b{}, c{};
  for (int i = 0; i < 3; ++i) {
    a[i] = pa[i] / ra;
    b[i] = (pb[i] - pa[i]) / l;
    c[i] = -pb[i] / rb;
  }
  auto dot = [](const Vec3& x, const Vec3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; };
  return {ra, rb, l, dot(a, b), dot(b, c), dot(c, a)};
}

double axilrod_teller_bracket(const TripleGeometry& tri) {
  return 1.0 - 3.0 * tri.ab * tri.bc * tri.ca;
}

double axilrod_teller(const TripleGeometry& tri, double j1) {
  if (!(tri.r_a > 0.0) || !(tri.r_b > 0.0) || !(tri.l > 0.0)) {
    throw DomainError("axilrod_teller: degenerate triangle");
  }
  return 3.0 * axilrod_teller_bracket(tri) * j1 /
         (64.0 * std::pow(kPi, 4) * std::pow(tri.r_a * tri.r_b * tri.l, 3));
}

// ---------------------------------------------------------------------------
// Regime checks

std::vector<std::string> small_sphere_warnings(const Geometry& g) {
  std::vector<std::string> out;
  const double limit = 0.1;
  if (g.radius() / g.r_a() > limit) out.push_back(format_ratio("R/r_A", g.radius() / g.r_a(), limit));
  if (g.radius() / g.r_b() > limit) out.push_back(format_ratio("R/r_B", g.radius() / g.r_b(), limit));
  return out;
}

std::vector<std::string> retarded_warnings(const Geometry& g, const AtomModel& a,
                                           const AtomModel& b, const SphereResponse& sphere) {
  std::vector<std::string> out;
  const double w_min = frequency_span(a, b, sphere).first;
  const double shortest = std::min({g.r_a(), g.r_b(), g.separation()});
  const double needed = 10.0 / w_min;
  if (shortest < needed) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "shortest distance %.4g below 10 c/w_min = %.4g", shortest,
                  needed);
    out.push_back(buf);
  }
  return out;
}

std::vector<std::string> nonretarded_warnings(const Geometry& g, const AtomModel& a,
                                              const AtomModel& b,
                                              const SphereResponse& sphere) {
  std::vector<std::string> out;
  const double w_max = frequency_span(a, b, sphere).second;
  const double n0 =
      std::sqrt(permittivity_iu(sphere.eps, 0.0) * permeability_iu(sphere.mu, 0.0));
  const double longest = std::max({g.r_a(), g.r_b(), g.separation()});
  const double allowed = 0.1 / (n0 * w_max);
  if (longest > allowed) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "longest distance %.4g above 0.1 c/(n(0) w_max) = %.4g",
                  longest, allowed);
    out.push_back(buf);
  }
  return out;
}

}  // namespace vdw
