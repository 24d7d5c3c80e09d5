#include "vdw/green.hpp"

#include <algorithm>
#include <optional>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "vdw/errors.hpp"
#include "vdw/units.hpp"

namespace vdw {

using specfun::ExtReal;

// ---------------------------------------------------------------------------
// Geometry

Geometry::Geometry(double radius, double r_a, double theta_a, double r_b, double theta_b)
    : radius_(radius), r_a_(r_a), theta_a_(theta_a), r_b_(r_b), theta_b_(theta_b) {
  gamma_ = std::cos(theta_a + theta_b);
  sin_ = std::sin(theta_a + theta_b);
  // l^2 = (r_B - r_A gamma)^2 + r_A^2 sin^2 Theta avoids the cancellation in
  // r_A^2 + r_B^2 - 2 r_A r_B gamma for nearby atoms.
  const double lb = r_b - r_a * gamma_;
  l_ = std::hypot(lb, r_a * sin_);
}

Geometry Geometry::make(double radius, double r_a, double theta_a, double r_b,
                        double theta_b) {
  for (double v : {radius, r_a, theta_a, r_b, theta_b}) {
    if (!std::isfinite(v)) throw DomainError("geometry: non-finite parameter");
  }
  if (!(radius > 0.0)) throw DomainError("geometry: sphere radius must be positive");
  if (!(r_a > radius) || !(r_b > radius)) {
    throw DomainError("geometry: both atoms must lie outside the sphere (r > R)");
  }
  Geometry g(radius, r_a, theta_a, r_b, theta_b);
  if (!(g.l_ > 1e-12 * std::max(r_a, r_b))) {
    throw DomainError("geometry: atoms coincide (l = 0)");
  }
  return g;
}

Geometry Geometry::coincident(double radius, double r) {
  if (!(radius > 0.0) || !(r > radius) || !std::isfinite(r)) {
    throw DomainError("geometry: atom must lie outside the sphere (r > R)");
  }
  return Geometry(radius, r, 0.0, r, 0.0);
}

Vec3 Geometry::position_a() const {
  return {r_a_ * std::sin(theta_a_), 0.0, r_a_ * std::cos(theta_a_)};
}

Vec3 Geometry::position_b() const {
  return {-r_b_ * std::sin(theta_b_), 0.0, r_b_ * std::cos(theta_b_)};
}

Tensor3 Geometry::basis_a() const {
  const double s = std::sin(theta_a_), c = std::cos(theta_a_);
  return {Vec3{s, 0.0, c}, Vec3{c, 0.0, -s}, Vec3{0.0, 1.0, 0.0}};
}

Tensor3 Geometry::basis_b() const {
  // phi = pi: e_x -> -e_x, e_y -> -e_y
  const double s = std::sin(theta_b_), c = std::cos(theta_b_);
  return {Vec3{-s, 0.0, c}, Vec3{-c, 0.0, -s}, Vec3{0.0, -1.0, 0.0}};
}

Geometry Geometry::swapped() const {
  Geometry g(radius_, r_b_, theta_b_, r_a_, theta_a_);
  return g;
}

void validate(const SeriesSpec& spec) {
  if (!(spec.rel_tol > 0.0 && spec.rel_tol < 1.0)) {
    throw DomainError("series: rel_tol must lie in (0, 1)");
  }
  if (spec.n_min_terms < 1) throw DomainError("series: n_min_terms must be at least 1");
  if (spec.n_cap < 1) throw DomainError("series: n_cap must be at least 1");
}

// ---------------------------------------------------------------------------
// Free space

namespace {

double f_poly(double x) { return 1.0 + x + x * x; }
double g_poly(double x) { return 3.0 + 3.0 * x + x * x; }

void require_positive_frequency(double u, const char* what) {
  if (!(u > 0.0) || !std::isfinite(u)) {
    throw DomainError(std::string(what) + ": imaginary frequency u must be positive");
  }
}

}  // namespace

GreenElements free_space_elements(const Geometry& g, double u) {
  require_positive_frequency(u, "free_space_elements");
  const double l = g.separation();
  const double xi = l * u;
  const double f = f_poly(xi), gg = g_poly(xi);
  const double decay = std::exp(-xi);
  const double pref = decay / (4.0 * kPi * u * u * l * l * l);  // 1/(4 pi u^2 l^3)
  const double l2 = l * l;
  const double s = g.sin_angle(), gam = g.gamma();

  GreenElements e;
  e.rr = pref * (f * gam - gg * g.l_a() * g.l_b() / l2);
  e.rtheta = -s * pref * (f + gg * g.r_a() * g.l_a() / l2);
  e.thetar = -s * pref * (f - gg * g.r_b() * g.l_b() / l2);
  e.thetatheta = -pref * (f * gam - gg * g.r_a() * g.r_b() * s * s / l2);
  e.phiphi = -pref * f;
  return e;
}

Tensor3 free_space_dyadic(const Vec3& lvec, double u) {
  require_positive_frequency(u, "free_space_dyadic");
  const double l = std::hypot(lvec[0], lvec[1], lvec[2]);
  if (!(l > 0.0)) throw DomainError("free_space_dyadic: zero separation");
  const double xi = l * u;
  const double pref = std::exp(-xi) / (4.0 * kPi * u * u * l * l * l);
  const double f = f_poly(xi), gg = g_poly(xi);
  Tensor3 t{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      t[i][j] = pref * ((i == j ? f : 0.0) - gg * lvec[i] * lvec[j] / (l * l));
    }
  }
  return t;
}

Tensor3 to_cartesian(const Geometry& g, const GreenElements& e) {
  const Tensor3 ea = g.basis_a(), eb = g.basis_b();
  // local indices: 0 = r, 1 = theta, 2 = phi
  const double local[3][3] = {{e.rr, e.rtheta, 0.0}, {e.thetar, e.thetatheta, 0.0},
                              {0.0, 0.0, e.phiphi}};
  Tensor3 t{};
  for (int p = 0; p < 3; ++p) {
    for (int q = 0; q < 3; ++q) {
      double sum = 0.0;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) sum += local[i][j] * ea[i][p] * eb[j][q];
      }
      t[p][q] = sum;
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Mie coefficients
//
// On the imaginary axis, with z = ix:
//   j_n(ix) = i^n i_n(x),   [z j_n]'(ix) = i^n [x i_n]'
//   h_n(ix) = -(2/pi) i^-n k_n(x),   [z h_n]'(ix) = -(2/pi) i^-n [x k_n]'
// so B_n(iu) = (-1)^n (pi/2) (i_n(x0)/k_n(x0)) beta_n with the real ratio
//   beta_n = (m rho_i(x0) - rho_i(x1)) / (m rho_k(x0) - rho_i(x1)),
// m = eps (TM) or mu (TE), rho = [x f_n]'/f_n. i_n(x1) cancels.

namespace {

double reflection_ratio(double m, double rho_i0, double rho_k0, double rho_i1) {
  return (m * rho_i0 - rho_i1) / (m * rho_k0 - rho_i1);
}

}  // namespace

MieCoefficients mie_coefficients(int n, double u, const SphereResponse& sphere) {
  if (n < 1) throw DomainError("mie_coefficients: order must be at least 1");
  require_positive_frequency(u, "mie_coefficients");
  const double eps = permittivity_iu(sphere.eps, u);
  const double mu = permeability_iu(sphere.mu, u);
  if (eps == 1.0 && mu == 1.0) return {};

  const double x0 = u * sphere.radius;
  const double x1 = std::sqrt(eps * mu) * x0;
  const auto rows = specfun::modified_spherical_bessel(n, x0, std::max(n, specfun::kDefaultOrderCap));
  const auto r1 = specfun::i_ratios(n, x1);
  const auto& row = rows.back();
  const double rho_i1 = x1 / r1.back() - n;

  // i_n(x0)/k_n(x0) = (i e^{-x0}) / (k e^{x0}) * e^{2 x0}
  const ExtReal ik = row.i_ext / row.k_ext * specfun::exp_ext(2.0 * x0);
  const double base = (n % 2 == 0 ? 1.0 : -1.0) * 0.5 * kPi * ik.to_double();
  return {base * reflection_ratio(mu, row.i_log_deriv, row.k_log_deriv, rho_i1),
          base * reflection_ratio(eps, row.i_log_deriv, row.k_log_deriv, rho_i1)};
}

// ---------------------------------------------------------------------------
// Scattering series
//
// With W_n = i_n(x0) k_n(a) k_n(b) / k_n(x0) (a = u r_A, b = u r_B) and the
// phases above, every product B_n Q_n^(i) is (4/pi^2) b_n q_n with real
// factors, and the (-1)^n from B_n cancels the one from the Hankel pair:
//   rr   = 1/(2 pi^2 u r_A r_B)        sum n(n+1)(2n+1) P_n beta^N W
//   rt   = -sin/(2 pi^2 u r_A r_B)     sum (2n+1) P_n' beta^N W rho_k(b)
//   tr   = -sin/(2 pi^2 u r_A r_B)     sum (2n+1) P_n' beta^N W rho_k(a)
//   tt   = u/(2 pi^2) sum (2n+1)/(n(n+1)) W [beta^M P_n' - beta^N E F_n]
//   pp   = u/(2 pi^2) sum (2n+1)/(n(n+1)) W [beta^M F_n - beta^N E P_n']
// where E = rho_k(a) rho_k(b) / (u^2 r_A r_B).

namespace {

// exp(-745) is the last non-zero double; beyond it every term underflows.
constexpr double kMaxDecayExponent = 745.0;

struct SeriesContext {
  double eps, mu;
  double x0, x1, a, b;
  double decay;  // a + b - 2 x0
  double gamma, sin_angle;
  double u, r_a, r_b;
};

struct SeriesOutcome {
  std::array<double, 5> sums{};  // rr, rt, tr, tt, pp (inner sums)
  bool converged{false};
  int terms{0};
};

SeriesOutcome sum_series(const SeriesContext& c, int n_max, const SeriesSpec* spec) {
  const auto r0 = specfun::i_ratios(n_max, c.x0);
  const auto r1 = specfun::i_ratios(n_max, c.x1);
  const bool same_ab = c.a == c.b;

  ExtReal i0(specfun::i0_scaled(c.x0));
  specfun::KStepper k0(c.x0), ka(c.a), kb(c.b);
  specfun::LegendreStepper leg(c.gamma);
  const ExtReal decay = specfun::exp_ext(-c.decay);
  const double inv_u2rr = 1.0 / (c.u * c.u * c.r_a * c.r_b);

  const int need = spec ? std::max(2, spec->n_min_terms) : 0;
  int small_run = 0;

  SeriesOutcome out;
  auto& s = out.sums;
  std::array<double, 5> peak{};
  for (int n = 1; n <= n_max; ++n) {
    const auto idx = static_cast<std::size_t>(n);
    i0 *= r0[idx];
    k0.advance();
    ka.advance();
    if (!same_ab) kb.advance();
    if (n > 1) leg.advance();
    const specfun::KStepper& kbr = same_ab ? ka : kb;

    const double rho_i0 = c.x0 / r0[idx] - n;
    const double rho_i1 = c.x1 / r1[idx] - n;
    const double rho_k0 = k0.log_deriv();
    const double rho_ka = ka.log_deriv();
    const double rho_kb = kbr.log_deriv();

    const double w = (i0 * ka.scaled() * kbr.scaled() / k0.scaled() * decay).to_double();
    const double beta_n = reflection_ratio(c.eps, rho_i0, rho_k0, rho_i1);
    const double beta_m = reflection_ratio(c.mu, rho_i0, rho_k0, rho_i1);

    const auto& row = leg.row();
    const double nn = n;
    const double e = rho_ka * rho_kb * inv_u2rr;
    const double cnn = (2.0 * nn + 1.0) / (nn * (nn + 1.0));
    const std::array<double, 5> term{
        nn * (nn + 1.0) * (2.0 * nn + 1.0) * row.p * beta_n * w,
        (2.0 * nn + 1.0) * row.pprime * beta_n * w * rho_kb,
        (2.0 * nn + 1.0) * row.pprime * beta_n * w * rho_ka,
        cnn * w * (beta_m * row.pprime - beta_n * e * row.f),
        cnn * w * (beta_m * row.f - beta_n * e * row.pprime)};

    bool all_small = true;
    for (std::size_t i = 0; i < 5; ++i) {
      s[i] += term[i];
      peak[i] = std::max(peak[i], std::abs(s[i]));
      // Against the largest partial sum so far: once the sum has cancelled
      // below that level, round-off already limits its relative accuracy.
      if (!(std::abs(term[i]) <= (spec ? spec->rel_tol : 0.0) * peak[i])) {
        all_small = false;
      }
      if (!std::isfinite(s[i])) {
        throw ConvergenceError("scattering series: non-finite partial sum at order " +
                               std::to_string(n));
      }
    }
    out.terms = n;
    if (spec) {
      small_run = all_small ? small_run + 1 : 0;
      if (small_run >= need) {
        out.converged = true;
        return out;
      }
    }
  }
  return out;
}

GreenElements finish(const SeriesContext& c, const std::array<double, 5>& s) {
  const double radial = 1.0 / (2.0 * kPi * kPi * c.u * c.r_a * c.r_b);
  const double tangential = c.u / (2.0 * kPi * kPi);
  return {radial * s[0], -c.sin_angle * radial * s[1], -c.sin_angle * radial * s[2],
          tangential * s[3], tangential * s[4]};
}

std::optional<SeriesContext> make_context(const Geometry& g, double u,
                                          const SphereResponse& sphere) {
  require_positive_frequency(u, "scattering_elements");
  validate(sphere);
  if (std::abs(sphere.radius - g.radius()) > 1e-14 * sphere.radius) {
    throw DomainError("scattering_elements: geometry and sphere radii differ");
  }
  SeriesContext c{};
  c.eps = permittivity_iu(sphere.eps, u);
  c.mu = permeability_iu(sphere.mu, u);
  c.u = u;
  c.r_a = g.r_a();
  c.r_b = g.r_b();
  c.x0 = u * sphere.radius;
  c.x1 = std::sqrt(c.eps * c.mu) * c.x0;
  c.a = u * g.r_a();
  c.b = u * g.r_b();
  c.decay = c.a + c.b - 2.0 * c.x0;
  c.gamma = std::clamp(g.gamma(), -1.0, 1.0);
  c.sin_angle = g.sin_angle();
  if ((c.eps == 1.0 && c.mu == 1.0) || c.decay > kMaxDecayExponent) return std::nullopt;
  return c;
}

}  // namespace

GreenElements scattering_elements(const Geometry& g, double u, const SphereResponse& sphere,
                                  const SeriesSpec& spec, SeriesDiagnostics* diagnostics) {
  validate(spec);
  const auto ctx = make_context(g, u, sphere);
  if (!ctx) {
    if (diagnostics) diagnostics->terms = 0;
    return {};
  }

  // Terms fall off like t^n, t = R^2/(r_A r_B), once n exceeds the arguments.
  const double t = sphere.radius * sphere.radius / (g.r_a() * g.r_b());
  const double geometric = (std::log(spec.rel_tol) - 5.0) / std::log(t);
  const double guess = std::ceil(std::max(ctx->a, ctx->b)) + std::ceil(geometric) + 8.0;
  int n_max = static_cast<int>(std::min<double>(spec.n_cap, std::max(16.0, guess)));

  for (;;) {
    const auto out = sum_series(*ctx, n_max, &spec);
    if (out.converged) {
      if (diagnostics) diagnostics->terms = out.terms;
      return finish(*ctx, out.sums);
    }
    if (n_max >= spec.n_cap) {
      throw ConvergenceError("scattering series did not converge within n_cap = " +
                             std::to_string(spec.n_cap) + " orders (u = " +
                             std::to_string(u) + ")");
    }
    n_max = static_cast<int>(std::min<long>(2L * n_max, spec.n_cap));
  }
}

GreenElements scattering_partial_sum(const Geometry& g, double u, const SphereResponse& sphere,
                                     int n_terms) {
  if (n_terms < 1) throw DomainError("scattering_partial_sum: n_terms must be at least 1");
  const auto ctx = make_context(g, u, sphere);
  if (!ctx) return {};
  return finish(*ctx, sum_series(*ctx, n_terms, nullptr).sums);
}

double scattering_trace_coincident(double r, double u, const SphereResponse& sphere,
                                   const SeriesSpec& spec) {
  const auto g = Geometry::coincident(sphere.radius, r);
  const auto e = scattering_elements(g, u, sphere, spec);
  // At Theta = 0, P_n'(1) = F_n(1) = n(n+1)/2, so the two tangential
  // elements come out of identical arithmetic.
  if (e.thetatheta != e.phiphi) {
    throw std::logic_error("scattering_trace_coincident: tangential elements differ at Theta = 0");
  }
  // e_theta and e_phi at B (phi = pi) are the negatives of those at A.
  return e.rr - e.thetatheta - e.phiphi;
}

}  // namespace vdw
