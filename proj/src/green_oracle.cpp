#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "vdw/errors.hpp"
#include "vdw/green.hpp"

namespace vdw {

namespace {

using ld = long double;
using cld = std::complex<long double>;

constexpr ld kPiL = 3.141592653589793238462643383279502884L;

void require_finite(const cld& v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw OverflowError(std::string("direct-sum oracle: ") + what +
                        " left the long double range");
  }
}

// j_n(z) = z^n/(2n+1)!! sum_k (-z^2/2)^k / (k! (2n+3)(2n+5)...(2n+2k+1))
cld bessel_j(int n, cld z) {
  cld lead = 1.0L;
  for (int k = 1; k <= n; ++k) lead *= z / static_cast<ld>(2 * k + 1);
  const cld w = -z * z / 2.0L;
  cld term = 1.0L, sum = 1.0L;
  for (int k = 1; k < 100000; ++k) {
    term *= w / (static_cast<ld>(k) * static_cast<ld>(2 * n + 2 * k + 1));
    sum += term;
    if (std::abs(term) <= 1e-22L * std::abs(sum)) break;
  }
  return lead * sum;
}

// h_n(z) = (-i)^{n+1} e^{iz}/z sum_{k=0}^{n} a_k (i/(2z))^k,
// a_0 = 1, a_{k+1} = a_k (n+k+1)(n-k)/(k+1)
cld hankel_h1(int n, cld z) {
  const cld I(0.0L, 1.0L);
  const cld step = I / (2.0L * z);
  cld term = 1.0L, sum = 1.0L;
  for (int k = 0; k < n; ++k) {
    term *= step * static_cast<ld>(n + k + 1) * static_cast<ld>(n - k) /
            static_cast<ld>(k + 1);
    sum += term;
  }
  cld phase = 1.0L;
  for (int k = 0; k <= n; ++k) phase *= -I;
  return phase * std::exp(I * z) / z * sum;
}

struct RadialRow {
  cld f;      // f_n(z)
  cld riccati;  // [z f_n]'
};

RadialRow hankel_row(int n, cld z) {
  const cld h = hankel_h1(n, z);
  const cld hm = hankel_h1(n - 1, z);
  return {h, z * hm - static_cast<ld>(n) * h};
}

RadialRow bessel_row(int n, cld z) {
  const cld j = bessel_j(n, z);
  const cld jm = bessel_j(n - 1, z);
  return {j, z * jm - static_cast<ld>(n) * j};
}

struct ComplexMie {
  cld magnetic, electric;
};

ComplexMie complex_mie(int n, ld u, const SphereResponse& sphere) {
  const ld eps = permittivity_iu(sphere.eps, static_cast<double>(u));
  const ld mu = permeability_iu(sphere.mu, static_cast<double>(u));
  const cld z0(0.0L, u * static_cast<ld>(sphere.radius));
  const cld z1 = std::sqrt(eps * mu) * z0;
  const RadialRow j0 = bessel_row(n, z0);
  const RadialRow j1 = bessel_row(n, z1);
  const RadialRow h0 = hankel_row(n, z0);
  auto coeff = [&](ld m) {
    const cld num = m * j0.riccati * j1.f - j1.riccati * j0.f;
    const cld den = m * h0.riccati * j1.f - j1.riccati * h0.f;
    return -num / den;
  };
  ComplexMie out{coeff(mu), coeff(eps)};
  require_finite(out.magnetic, "B_n^M");
  require_finite(out.electric, "B_n^N");
  return out;
}

// Normalised associated Legendre functions
//   p[m] = sqrt((n-m)!/(n+m)!) P_n^m(cos theta),
//   d[m] = sqrt((n-m)!/(n+m)!) dP_n^m(cos theta)/d theta,
// so that C_nm P P = (2 - delta_m0) p p. Condon-Shortley phase omitted; it
// cancels in every product of two equal-m factors.
class NormalizedLegendre {
 public:
  NormalizedLegendre(ld theta, int n_max)
      : x_(std::cos(theta)), s_(std::sin(theta)), n_max_(n_max) {
    table_.assign(static_cast<std::size_t>(n_max + 1) * (n_max + 1), 0.0L);
    ld diag = 1.0L;
    for (int m = 0; m <= n_max; ++m) {
      if (m > 0) diag *= s_ * std::sqrt(static_cast<ld>(2 * m - 1) / static_cast<ld>(2 * m));
      at(m, m) = diag;
      if (m + 1 <= n_max) at(m + 1, m) = x_ * std::sqrt(static_cast<ld>(2 * m + 1)) * diag;
      for (int n = m + 2; n <= n_max; ++n) {
        const ld a = static_cast<ld>(2 * n - 1) * x_ * at(n - 1, m);
        const ld b = std::sqrt(static_cast<ld>((n - 1) * (n - 1) - m * m)) * at(n - 2, m);
        at(n, m) = (a - b) / std::sqrt(static_cast<ld>(n * n - m * m));
      }
    }
  }

  ld p(int n, int m) const { return table_[index(n, m)]; }

  ld dtheta(int n, int m) const {
    const ld prev = n - 1 >= m ? p(n - 1, m) : 0.0L;
    return (static_cast<ld>(n) * x_ * p(n, m) -
            std::sqrt(static_cast<ld>(n * n - m * m)) * prev) /
           s_;
  }

  ld m_over_sin(int n, int m) const { return static_cast<ld>(m) * p(n, m) / s_; }

 private:
  std::size_t index(int n, int m) const {
    return static_cast<std::size_t>(n) * (n_max_ + 1) + static_cast<std::size_t>(m);
  }
  ld& at(int n, int m) { return table_[index(n, m)]; }

  ld x_, s_;
  int n_max_;
  std::vector<ld> table_;
};

using CVec = std::array<cld, 3>;  // (r, theta, phi)

struct Radial {
  cld m;      // h_n(qr)
  cld n_r;    // n(n+1) h_n(qr)/(qr)
  cld n_tan;  // [z h_n]'(qr)/(qr)
};

Radial radial_factors(int n, cld z) {
  const RadialRow h = hankel_row(n, z);
  const ld nn = n;
  Radial r{h.f, nn * (nn + 1.0L) * h.f / z, h.riccati / z};
  require_finite(r.m, "h_n");
  require_finite(r.n_tan, "[z h_n]'");
  return r;
}

// Wave functions of one (n, m, p) at a point; `parity` = +1 even, -1 odd.
CVec wave_m(const NormalizedLegendre& leg, int n, int m, int parity, ld phi, const cld& h) {
  const ld c = std::cos(m * phi), s = std::sin(m * phi);
  if (parity > 0) return {0.0L, -leg.m_over_sin(n, m) * s * h, -leg.dtheta(n, m) * c * h};
  return {0.0L, leg.m_over_sin(n, m) * c * h, -leg.dtheta(n, m) * s * h};
}

CVec wave_n(const NormalizedLegendre& leg, int n, int m, int parity, ld phi,
            const Radial& rad) {
  const ld c = std::cos(m * phi), s = std::sin(m * phi);
  const ld P = leg.p(n, m);
  if (parity > 0) {
    return {P * c * rad.n_r, leg.dtheta(n, m) * c * rad.n_tan,
            -leg.m_over_sin(n, m) * s * rad.n_tan};
  }
  return {P * s * rad.n_r, leg.dtheta(n, m) * s * rad.n_tan,
          leg.m_over_sin(n, m) * c * rad.n_tan};
}

void require_off_axis(const Geometry& g) {
  const auto off = [](double t) { return std::abs(std::sin(t)) > 1e-8; };
  if (!off(g.theta_a()) || !off(g.theta_b())) {
    throw DomainError("direct-sum oracle: atoms must lie off the z axis");
  }
}

}  // namespace

MieCoefficients mie_coefficients_reference(int n, double u, const SphereResponse& sphere) {
  if (n < 1) throw DomainError("mie_coefficients_reference: order must be at least 1");
  if (!(u > 0.0)) throw DomainError("mie_coefficients_reference: u must be positive");
  const auto c = complex_mie(n, u, sphere);
  return {static_cast<double>(c.magnetic.real()), static_cast<double>(c.electric.real())};
}

OracleResult scattering_direct_sum_oracle(const Geometry& g, double u,
                                          const SphereResponse& sphere, int n_max) {
  if (n_max < 1 || n_max > kOracleOrderCap) {
    throw DomainError("direct-sum oracle: n_max must lie in [1, " +
                      std::to_string(kOracleOrderCap) + "]");
  }
  if (!(u > 0.0)) throw DomainError("direct-sum oracle: u must be positive");
  require_off_axis(g);

  const ld phi_a = 0.0L, phi_b = kPiL;
  const NormalizedLegendre leg_a(g.theta_a(), n_max), leg_b(g.theta_b(), n_max);
  const cld q(0.0L, static_cast<ld>(u));
  const cld za = q * static_cast<ld>(g.r_a()), zb = q * static_cast<ld>(g.r_b());

  cld acc[3][3] = {};
  for (int n = 1; n <= n_max; ++n) {
    const ComplexMie b = complex_mie(n, u, sphere);
    const Radial ra = radial_factors(n, za), rb = radial_factors(n, zb);
    const ld weight = static_cast<ld>(2 * n + 1) / static_cast<ld>(n * (n + 1));
    cld order[3][3] = {};
    for (int m = 0; m <= n; ++m) {
      const ld cnm = m == 0 ? 1.0L : 2.0L;
      for (int parity : {+1, -1}) {
        const CVec ma = wave_m(leg_a, n, m, parity, phi_a, ra.m);
        const CVec mb = wave_m(leg_b, n, m, parity, phi_b, rb.m);
        const CVec na = wave_n(leg_a, n, m, parity, phi_a, ra);
        const CVec nb = wave_n(leg_b, n, m, parity, phi_b, rb);
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            order[i][j] += cnm * (b.magnetic * ma[i] * mb[j] + b.electric * na[i] * nb[j]);
          }
        }
      }
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        acc[i][j] += weight * order[i][j];
        require_finite(acc[i][j], "partial sum");
      }
    }
  }

  // i w/(4 pi c) at w = iu
  const ld pref = -static_cast<ld>(u) / (4.0L * kPiL);
  auto value = [&](int i, int j) { return pref * acc[i][j]; };

  OracleResult out;
  out.elements = {static_cast<double>(value(0, 0).real()),
                  static_cast<double>(value(0, 1).real()),
                  static_cast<double>(value(1, 0).real()),
                  static_cast<double>(value(1, 1).real()),
                  static_cast<double>(value(2, 2).real())};
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      worst = std::max(worst, static_cast<double>(std::abs(value(i, j).imag())));
    }
  }
  out.max_imaginary = worst;
  return out;
}

WaveSums wave_function_sums(const Geometry& g, int n) {
  if (n < 1) throw DomainError("wave_function_sums: order must be at least 1");
  require_off_axis(g);
  const ld phi_a = 0.0L, phi_b = kPiL;
  const NormalizedLegendre leg_a(g.theta_a(), n), leg_b(g.theta_b(), n);
  const Radial unit{1.0L, 1.0L, 1.0L};

  WaveSums out;
  auto add = [](Tensor3& t, ld w, const CVec& a, const CVec& b) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        t[i][j] += static_cast<double>(w * (a[i] * b[j]).real());
      }
    }
  };
  for (int m = 0; m <= n; ++m) {
    const ld cnm = m == 0 ? 1.0L : 2.0L;
    for (int parity : {+1, -1}) {
      Tensor3& mt = parity > 0 ? out.m_even : out.m_odd;
      Tensor3& nt = parity > 0 ? out.n_even : out.n_odd;
      add(mt, cnm, wave_m(leg_a, n, m, parity, phi_a, unit.m),
          wave_m(leg_b, n, m, parity, phi_b, unit.m));
      add(nt, cnm, wave_n(leg_a, n, m, parity, phi_a, unit),
          wave_n(leg_b, n, m, parity, phi_b, unit));
    }
  }
  return out;
}

}  // namespace vdw
