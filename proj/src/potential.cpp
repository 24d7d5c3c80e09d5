#include "vdw/potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "vdw/units.hpp"

namespace vdw {

namespace {

// 3 + 6x + 5x^2 + 2x^3 + x^4
double casimir_polder_poly(double x) {
  return 3.0 + x * (6.0 + x * (5.0 + x * (2.0 + x)));
}

double u0_integrand(double l, const AtomModel& a, const AtomModel& b, double u) {
  const double xi = l * u;
  return atom_alpha_iu(a, u) * atom_alpha_iu(b, u) * std::exp(-2.0 * xi) *
         casimir_polder_poly(xi);
}

double u0_prefactor(double l) { return -1.0 / (16.0 * kPi * kPi * kPi * std::pow(l, 6)); }

double trace_product(const Tensor3& x, const Tensor3& y) {
  double t = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) t += x[i][j] * y[j][i];
  }
  return t;
}

// Rotation by pi about z, mapping the frame of the label-swapped geometry
// back onto the original one.
Tensor3 rotate_half_turn(const Tensor3& t) {
  constexpr double s[3] = {-1.0, -1.0, 1.0};
  Tensor3 out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[i][j] = s[i] * s[j] * t[i][j];
  }
  return out;
}

Vec3 separation_vector(const Geometry& g) {
  const Vec3 a = g.position_a(), b = g.position_b();
  return {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
}

GreenElements scattering_or_throw(const Geometry& g, double u, const SphereResponse& sphere,
                                  const SeriesSpec& series, const char* context) {
  try {
    return scattering_elements(g, u, sphere, series);
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(std::string(context) + ": " + e.what());
  }
}

void validate_pair(const AtomModel& a, const AtomModel& b) {
  validate(a);
  validate(b);
}

}  // namespace

double u0_free_space(const Geometry& g, const AtomModel& a, const AtomModel& b,
                     const QuadratureSpec& quad) {
  validate_pair(a, b);
  const double l = g.separation();
  const double integral = integrate_semi_infinite(
      [&](double u) { return u0_integrand(l, a, b, u); }, quad);
  return u0_prefactor(l) * integral;
}

double u0_trace_form(const Geometry& g, const AtomModel& a, const AtomModel& b,
                     const QuadratureSpec& quad) {
  validate_pair(a, b);
  const Vec3 lvec = separation_vector(g);
  const Vec3 back = {-lvec[0], -lvec[1], -lvec[2]};
  const double integral = integrate_semi_infinite(
      [&](double u) {
        const double w = std::pow(u, 4) * atom_alpha_iu(a, u) * atom_alpha_iu(b, u);
        return w * trace_product(free_space_dyadic(lvec, u), free_space_dyadic(back, u));
      },
      quad);
  return -integral / (2.0 * kPi);
}

PotentialBreakdown body_potential(const Geometry& g, const AtomModel& a, const AtomModel& b,
                                  const SphereResponse& sphere, const QuadratureSpec& quad,
                                  const SeriesSpec& series) {
  validate_pair(a, b);
  validate(sphere);
  validate(series);
  const double l = g.separation();

  // [0] U0 integrand; [1..5] U1 components; [6..10] U2 components
  const VectorIntegrand integrand = [&](double u, std::span<double> out) {
    const double alphas = atom_alpha_iu(a, u) * atom_alpha_iu(b, u);
    out[0] = alphas * std::exp(-2.0 * l * u) * casimir_polder_poly(l * u);
    const double w = std::pow(u, 4) * alphas;
    if (w == 0.0) {
      std::fill(out.begin() + 1, out.end(), 0.0);
      return;
    }
    const auto g0 = free_space_elements(g, u).as_array();
    const auto g1 = scattering_or_throw(g, u, sphere, series, "body_potential").as_array();
    for (std::size_t k = 0; k < 5; ++k) {
      out[1 + k] = -w * g0[k] * g1[k] / kPi;
      out[6 + k] = -w * g1[k] * g1[k] / (2.0 * kPi);
    }
  };

  std::vector<std::string> names{"U0"};
  for (const char* c : kComponentNames) names.push_back(std::string("U1_") + c);
  for (const char* c : kComponentNames) names.push_back(std::string("U2_") + c);
  const auto res = integrate_semi_infinite(11, integrand, quad, names);

  PotentialBreakdown out;
  out.u0 = u0_prefactor(l) * res.value[0];
  const auto& v = res.value;
  out.u1 = {v[1], v[2], v[3], v[4], v[5]};
  out.u2 = {v[6], v[7], v[8], v[9], v[10]};
  out.ub = out.u1.sum() + out.u2.sum();
  out.uab = out.u0 + out.ub;
  out.ratio = out.uab / out.u0;
  return out;
}

BodyTotals body_potential_trace_form(const Geometry& g, const AtomModel& a,
                                     const AtomModel& b, const SphereResponse& sphere,
                                     const QuadratureSpec& quad, const SeriesSpec& series) {
  validate_pair(a, b);
  validate(sphere);
  const Vec3 lvec = separation_vector(g);
  const Geometry back = g.swapped();

  const VectorIntegrand integrand = [&](double u, std::span<double> out) {
    const double w = std::pow(u, 4) * atom_alpha_iu(a, u) * atom_alpha_iu(b, u);
    if (w == 0.0) {
      out[0] = out[1] = 0.0;
      return;
    }
    const Tensor3 g0 = free_space_dyadic(lvec, u);
    const Tensor3 g1_ab =
        to_cartesian(g, scattering_or_throw(g, u, sphere, series, "body_potential"));
    const Tensor3 g1_ba = rotate_half_turn(
        to_cartesian(back, scattering_or_throw(back, u, sphere, series, "body_potential")));
    out[0] = -w * trace_product(g0, g1_ba) / kPi;
    out[1] = -w * trace_product(g1_ab, g1_ba) / (2.0 * kPi);
  };
  const std::vector<std::string> names{"U1", "U2"};
  const auto res = integrate_semi_infinite(2, integrand, quad, names);
  return {res.value[0], res.value[1]};
}

TotalPotential total_potential(const Geometry& g, const AtomModel& a, const AtomModel& b,
                               const SphereResponse& sphere, const QuadratureSpec& quad,
                               const SeriesSpec& series) {
  const auto p = body_potential(g, a, b, sphere, quad, series);
  return {p.uab, p.ratio};
}

double single_atom_potential(double r, const AtomModel& atom, const SphereResponse& sphere,
                             const QuadratureSpec& quad, const SeriesSpec& series) {
  validate(atom);
  validate(sphere);
  validate(series);
  if (!(r > sphere.radius)) throw DomainError("single_atom_potential: r must exceed R");
  const double integral = integrate_semi_infinite(
      [&](double u) {
        const double w = u * u * atom_alpha_iu(atom, u);
        if (w == 0.0) return 0.0;
        try {
          return w * scattering_trace_coincident(r, u, sphere, series);
        } catch (const ConvergenceError& e) {
          throw ConvergenceError(std::string("single_atom_potential: ") + e.what());
        }
      },
      quad);
  return integral / (2.0 * kPi);
}

Force force_on_atom(const Geometry& g, const AtomModel& a, const AtomModel& b,
                    const SphereResponse& sphere, AtomLabel which, double step,
                    const QuadratureSpec& quad, const SeriesSpec& series) {
  const double R = g.radius();
  if (!(step > 0.0)) {
    step = 1e-4 * std::min({g.separation(), g.r_a() - R, g.r_b() - R});
  }
  const bool on_a = which == AtomLabel::A;
  const double r0 = on_a ? g.r_a() : g.r_b();
  const double t0 = on_a ? g.theta_a() : g.theta_b();

  auto energy = [&](double r, double theta) {
    const Geometry moved = on_a ? Geometry::make(R, r, theta, g.r_b(), g.theta_b())
                                : Geometry::make(R, g.r_a(), g.theta_a(), r, theta);
    return single_atom_potential(moved.r_a(), a, sphere, quad, series) +
           single_atom_potential(moved.r_b(), b, sphere, quad, series) +
           body_potential(moved, a, b, sphere, quad, series).uab;
  };
  auto gradient = [&](double h) {
    const double dr = (energy(r0 + h, t0) - energy(r0 - h, t0)) / (2.0 * h);
    const double dt = h / r0;
    const double dtheta = (energy(r0, t0 + dt) - energy(r0, t0 - dt)) / (2.0 * dt);
    return std::array<double, 2>{-dr, -dtheta / r0};
  };

  const auto coarse = gradient(step);
  const auto fine = gradient(0.5 * step);
  const double scale = std::max(std::hypot(fine[0], fine[1]), 1e-300);
  Force f;
  f.radial = coarse[0];
  f.polar = coarse[1];
  f.richardson_disagreement =
      std::max(std::abs(coarse[0] - fine[0]), std::abs(coarse[1] - fine[1])) / scale;
  f.step_warning = f.richardson_disagreement > 1e-3;
  return f;
}

}  // namespace vdw
