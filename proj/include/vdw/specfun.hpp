#pragma once

#include <cstdint>
#include <vector>

namespace vdw::specfun {

inline constexpr int kDefaultOrderCap = 2000;

/// Positive-or-zero real stored as mantissa * 2^exponent with a 64-bit
/// exponent. Used for products of Bessel factors that individually leave the
/// double range at high order.
class ExtReal {
 public:
  ExtReal() = default;
  explicit ExtReal(double value);
  static ExtReal pow2(std::int64_t e);

  double mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }

  /// Nearest double; saturates to 0 or +-inf outside the double range.
  double to_double() const;
  /// Natural log of |value|; -inf for zero.
  double log_abs() const;

  ExtReal& operator*=(const ExtReal& other);
  ExtReal& operator/=(const ExtReal& other);
  ExtReal& operator*=(double factor) { return *this *= ExtReal(factor); }

  friend ExtReal operator*(ExtReal a, const ExtReal& b) { return a *= b; }
  friend ExtReal operator/(ExtReal a, const ExtReal& b) { return a /= b; }

 private:
  void normalize();

  double mantissa_{0.0};
  std::int64_t exponent_{0};
};

/// e^y as an ExtReal, valid far outside the double exponent range.
ExtReal exp_ext(double y);

/// Modified spherical Bessel functions i_n, k_n of one order at one argument,
/// with k_0(x) = (pi/2) e^{-x} / x. The scaled doubles may saturate for
/// orders far beyond the argument; the extended forms never do.
struct ScaledBesselPair {
  int order{0};
  double x{0.0};
  double i_scaled{0.0};       ///< i_n(x) e^{-x}
  double k_scaled{0.0};       ///< k_n(x) e^{+x}
  double i_ricc_scaled{0.0};  ///< [x i_n(x)]' e^{-x}
  double k_ricc_scaled{0.0};  ///< [x k_n(x)]' e^{+x}
  ExtReal i_ext;              ///< i_n(x) e^{-x}, extended range
  ExtReal k_ext;              ///< k_n(x) e^{+x}, extended range
  double i_log_deriv{0.0};    ///< [x i_n]' / i_n
  double k_log_deriv{0.0};    ///< [x k_n]' / k_n
};

/// i_0(x) e^{-x} = (1 - e^{-2x}) / (2x).
double i0_scaled(double x);
/// k_0(x) e^{x} = pi / (2x).
double k0_scaled(double x);

/// Ratios r[n] = i_n(x) / i_{n-1}(x) for n = 0..n_max (r[0] = tanh x, the
/// ratio against i_{-1} = cosh(x)/x), from the backward continued fraction
/// started at n_max + max(20, ceil(x)).
std::vector<double> i_ratios(int n_max, double x);

/// Upward recurrence for k_n(x) e^{x} and [x k_n]'/k_n, one order per step.
class KStepper {
 public:
  explicit KStepper(double x);

  int order() const { return order_; }
  const ExtReal& scaled() const { return scaled_; }
  double log_deriv() const { return -x_ / ratio_ - order_; }

  void advance();

 private:
  double x_;
  int order_{0};
  double ratio_{1.0};  // k_n / k_{n-1}
  ExtReal scaled_;
};

/// Rows n = 0..n_max. Throws DomainError for x <= 0 and OrderCapError when
/// n_max exceeds order_cap.
std::vector<ScaledBesselPair> modified_spherical_bessel(
    int n_max, double x, int order_cap = kDefaultOrderCap);

struct LegendreRow {
  int order{1};
  double gamma{0.0};
  double p{0.0};       ///< P_n(gamma)
  double pprime{0.0};  ///< P_n'(gamma)
  double f{0.0};       ///< n(n+1) P_n - gamma P_n'
};

/// Streams Legendre rows upward from n = 1.
class LegendreStepper {
 public:
  explicit LegendreStepper(double gamma);

  const LegendreRow& row() const { return row_; }
  void advance();

 private:
  void fill_f();

  double gamma_;
  double one_minus_g2_;
  double p_prev_{1.0};       // P_{n-1}
  double pprime_prev_{0.0};  // P'_{n-1}
  LegendreRow row_;
};

/// Rows n = 1..n_max. Throws DomainError for |gamma| > 1 or n_max < 1.
std::vector<LegendreRow> legendre_rows(int n_max, double gamma);

}  // namespace vdw::specfun
