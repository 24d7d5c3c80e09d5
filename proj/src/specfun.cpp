#include "vdw/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vdw/errors.hpp"
#include "vdw/units.hpp"

namespace vdw::specfun {

// ---------------------------------------------------------------------------
// ExtReal

ExtReal::ExtReal(double value) : mantissa_(value) { normalize(); }

ExtReal ExtReal::pow2(std::int64_t e) {
  ExtReal out(0.5);
  out.exponent_ = e + 1;
  return out;
}

void ExtReal::normalize() {
  if (mantissa_ == 0.0 || !std::isfinite(mantissa_)) {
    exponent_ = 0;
    return;
  }
  int e = 0;
  mantissa_ = std::frexp(mantissa_, &e);
  exponent_ += e;
}

double ExtReal::to_double() const {
  if (mantissa_ == 0.0 || !std::isfinite(mantissa_)) return mantissa_;
  constexpr std::int64_t kLimit = 4096;
  const auto e = std::clamp<std::int64_t>(exponent_, -kLimit, kLimit);
  return std::ldexp(mantissa_, static_cast<int>(e));
}

double ExtReal::log_abs() const {
  if (mantissa_ == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(std::abs(mantissa_)) +
         static_cast<double>(exponent_) * std::numbers::ln2;
}

ExtReal& ExtReal::operator*=(const ExtReal& other) {
  mantissa_ *= other.mantissa_;
  exponent_ += other.exponent_;
  normalize();
  return *this;
}

ExtReal& ExtReal::operator/=(const ExtReal& other) {
  mantissa_ /= other.mantissa_;
  exponent_ -= other.exponent_;
  normalize();
  return *this;
}

ExtReal exp_ext(double y) {
  const double e2 = std::floor(y / std::numbers::ln2);
  const ExtReal out(std::exp(y - e2 * std::numbers::ln2));
  return out * ExtReal::pow2(static_cast<std::int64_t>(e2));
}

// ---------------------------------------------------------------------------
// Modified spherical Bessel functions

double i0_scaled(double x) { return -std::expm1(-2.0 * x) / (2.0 * x); }

double k0_scaled(double x) { return kPi / (2.0 * x); }

std::vector<double> i_ratios(int n_max, double x) {
  const int n_start = n_max + std::max(20, static_cast<int>(std::ceil(x)));
  std::vector<double> r(static_cast<std::size_t>(n_max) + 1);
  double next = 0.0;  // r_{n+1}
  for (int n = n_start; n >= 1; --n) {
    const double rn = 1.0 / ((2.0 * n + 1.0) / x + next);
    if (n <= n_max) r[static_cast<std::size_t>(n)] = rn;
    next = rn;
  }
  r[0] = std::tanh(x);
  return r;
}

KStepper::KStepper(double x) : x_(x), scaled_(k0_scaled(x)) {}

void KStepper::advance() {
  ++order_;
  ratio_ = (2.0 * order_ - 1.0) / x_ + 1.0 / ratio_;
  scaled_ *= ratio_;
}

std::vector<ScaledBesselPair> modified_spherical_bessel(int n_max, double x,
                                                        int order_cap) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("modified_spherical_bessel: argument must be positive, got " +
                      std::to_string(x));
  }
  if (n_max < 0) throw DomainError("modified_spherical_bessel: negative order");
  if (n_max > order_cap) {
    throw OrderCapError("modified_spherical_bessel: order " + std::to_string(n_max) +
                        " exceeds cap " + std::to_string(order_cap));
  }

  const auto r = i_ratios(n_max, x);
  std::vector<ScaledBesselPair> rows;
  rows.reserve(static_cast<std::size_t>(n_max) + 1);

  ExtReal i_ext(i0_scaled(x));
  KStepper k(x);
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) {
      i_ext *= r[static_cast<std::size_t>(n)];
      k.advance();
    }
    ScaledBesselPair row;
    row.order = n;
    row.x = x;
    row.i_ext = i_ext;
    row.k_ext = k.scaled();
    row.i_log_deriv = x / r[static_cast<std::size_t>(n)] - n;
    row.k_log_deriv = k.log_deriv();
    row.i_scaled = i_ext.to_double();
    row.k_scaled = row.k_ext.to_double();
    row.i_ricc_scaled = row.i_log_deriv * row.i_scaled;
    row.k_ricc_scaled = row.k_log_deriv * row.k_scaled;
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Legendre polynomials

namespace {
// Below this 1 - gamma^2 the quotient form of P_n' loses digits; switch to
// P'_{n+1} = P'_{n-1} + (2n+1) P_n.
constexpr double kQuotientThreshold = 1e-3;
}  // namespace

LegendreStepper::LegendreStepper(double gamma)
    : gamma_(gamma), one_minus_g2_((1.0 - gamma) * (1.0 + gamma)) {
  row_.order = 1;
  row_.gamma = gamma;
  row_.p = gamma;
  row_.pprime = 1.0;
  fill_f();
}

void LegendreStepper::fill_f() {
  const double n = row_.order;
  row_.f = n * (n + 1.0) * row_.p - gamma_ * row_.pprime;
}

void LegendreStepper::advance() {
  const int n = row_.order;  // current order, stepping to n + 1
  const double p_next = ((2.0 * n + 1.0) * gamma_ * row_.p - n * p_prev_) / (n + 1.0);

  double pprime_next;
  const int m = n + 1;
  if (one_minus_g2_ == 0.0) {
    const double sign = (gamma_ > 0.0 || m % 2 == 1) ? 1.0 : -1.0;
    pprime_next = sign * 0.5 * m * (m + 1.0);
  } else if (one_minus_g2_ >= kQuotientThreshold) {
    pprime_next = m * (row_.p - gamma_ * p_next) / one_minus_g2_;
  } else {
    pprime_next = pprime_prev_ + (2.0 * n + 1.0) * row_.p;
  }

  p_prev_ = row_.p;
  pprime_prev_ = row_.pprime;
  row_.order = m;
  row_.p = p_next;
  row_.pprime = pprime_next;
  fill_f();
}

std::vector<LegendreRow> legendre_rows(int n_max, double gamma) {
  if (!(std::abs(gamma) <= 1.0)) {
    throw DomainError("legendre_rows: |gamma| must not exceed 1, got " +
                      std::to_string(gamma));
  }
  if (n_max < 1) throw DomainError("legendre_rows: n_max must be at least 1");
  std::vector<LegendreRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max));
  LegendreStepper step(gamma);
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) step.advance();
    rows.push_back(step.row());
  }
  return rows;
}

}  // namespace vdw::specfun
