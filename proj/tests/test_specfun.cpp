#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "vdw/errors.hpp"
#include "vdw/specfun.hpp"

using namespace vdw::specfun;
using doctest::Approx;

namespace {

// P_n(0.37) and P_n'(0.37), exact rational evaluation of the explicit
// Rodrigues sum rounded to double.
struct LegendreRef {
  int n;
  double p, pprime;
};
constexpr LegendreRef kLegendre037[] = {
    {1, 0.37, 1.0},
    {2, -0.29465, 1.11},
    {3, -0.4283675, -0.47325},
    {4, -0.05638045625, -1.8885725},
    {5, 0.3051446161375, -0.98067410625},
    {6, 0.2539734781549375, 1.4680182775125},
    {7, -0.08703646669996437, 2.3209811097641877},
    {8, -0.2826083421586706, 0.16247127701303438},
    {9, -0.12014608206425811, -2.4833607069332126},
    {10, 0.16988481225163007, -2.12030428220787},
    {11, 0.22922416471252244, 1.084220350351019},
    {12, 0.00683039224463626, 3.1518515061801464},
    {13, -0.2067314498682603, 1.2549801564669256},
    {14, -0.15386016309744227, -2.429897640262882},
    {15, 0.08288804987467258, -3.2069645733589005},
    {16, 0.20366427365775802, 0.1396319058519681},
    {17, 0.06826658725685085, 3.5139564573471147},
    {18, -0.14323557484475935, 2.5289624598417477},
    {19, -0.16787861001305635, -1.7857598119089808},
    {20, 0.01494937897810122, -4.01830333066745},
    {21, 0.17068353711232964, -1.1728352738068308},
    {22, 0.1091653689507745, 3.3210887651627248},
    {23, -0.08423627928003725, 3.7396063289780215},
    {24, -0.1656530159394859, -0.6380163609990259},
    {25, -0.039264739050479405, -4.377391452056787},
    {26, 0.1307846066386385, -2.6405180525734755},
    {27, 0.13279886487022835, 2.554192699791053},
    {28, -0.02959740996907473, 4.663419515289084},
    {29, -0.14974405491773032, 0.8671403315537937},
    {30, -0.08035292765836287, -4.171479724857006},
    {31, 0.08641148613815032, -4.034388255606341},
    {32, 0.14078726560279792, 1.2724439018464642},
    {33, 0.018811096403832703, 5.1167840085755225},
    {34, -0.12293096132474465, 2.532787360903255},
    {35, -0.1079429920100298, -3.3654523228318585},
    {36, 0.040747812396182775, -5.13116507180886},
    {37, 0.13477151689681, -0.3908620179105155},
    {38, 0.05874317197967669, 4.976698695451889},
    {39, -0.08840319672763565, 4.13236222452459},
    {40, -0.12187522868890453, -2.007153846031328},
    {41, -0.0028407984073425025, -5.739531299276677},
    {42, 0.11689627278941898, -2.2429401138407554},
    {43, 0.08827212354268865, 4.196651887823937},
    {44, -0.04966045620695156, 5.436734634373158},
    {45, -0.12265093908384923, -0.22312871459475186},
    {46, -0.04119427368783443, -5.724500822257124},
    {47, 0.0898818774523124, -4.0541961675633535},
    {48, 0.10615580949535414, 2.814277535712554},
    {49, -0.01029383908005581, 6.242917353485998},
    {50, -0.11157395981549595, 1.7951874667870287},
};

}  // namespace

TEST_CASE("order zero closed forms") {
  const auto rows = modified_spherical_bessel(1, 1.0);
  CHECK(rows[0].i_scaled == Approx(std::sinh(1.0) * std::exp(-1.0)).epsilon(1e-15));
  CHECK(rows[0].k_scaled == Approx(std::numbers::pi / 2).epsilon(1e-15));
  CHECK(i0_scaled(1.0) == Approx(0.43233235838169365).epsilon(1e-15));
  CHECK(k0_scaled(2.0) == Approx(std::numbers::pi / 4).epsilon(1e-15));
}

TEST_CASE("i_1(2) against its closed form and the power series") {
  const auto rows = modified_spherical_bessel(1, 2.0);
  const double closed = std::exp(-2.0) * (2.0 * std::cosh(2.0) - std::sinh(2.0)) / 4.0;
  CHECK(rows[1].i_scaled == Approx(closed).epsilon(1e-14));
  CHECK(rows[1].i_scaled == Approx(oracle::i_scaled_series(1, 2.0)).epsilon(1e-14));
  CHECK(rows[1].i_scaled == Approx(0.1318683645832753).epsilon(1e-14));
}

TEST_CASE("scaled values match series and closed-form oracles") {
  for (double x : {1e-3, 0.05, 0.3, 1.0, 4.0, 17.0, 60.0}) {
    const auto rows = modified_spherical_bessel(30, x);
    for (int n = 0; n <= 30; ++n) {
      const double i_ref = oracle::i_scaled_series(n, x);
      if (i_ref > 1e-280) {
        INFO("n = " << n << ", x = " << x);
        CHECK(oracle::rel(rows[n].i_scaled, i_ref) < 1e-13);
      }
      const double k_ref = oracle::k_scaled_closed(n, x);
      if (std::isfinite(k_ref) && k_ref < 1e280) {
        INFO("n = " << n << ", x = " << x);
        CHECK(oracle::rel(rows[n].k_scaled, k_ref) < 1e-13);
      }
    }
  }
}

TEST_CASE("Wronskian in scaled form") {
  // i_n k_n' - i_n' k_n = -pi / (2 x^2)  <=>  i_s k_r - i_r k_s = -pi / (2 x)
  auto check = [](int n, double x) {
    const auto rows = modified_spherical_bessel(n, x);
    const auto& r = rows[n];
    const double w = r.i_scaled * r.k_ricc_scaled - r.i_ricc_scaled * r.k_scaled;
    INFO("n = " << n << ", x = " << x);
    CHECK(oracle::rel(w, -std::numbers::pi / (2.0 * x)) < 1e-12);
  };
  check(5, 0.3);
  for (double x : {0.01, 0.2, 1.0, 3.0, 25.0, 150.0, 600.0}) {
    for (int n : {0, 1, 2, 7, 20, 45}) check(n, x);
  }
}

TEST_CASE("positivity and decreasing product i_n k_n") {
  for (double x : {0.02, 0.7, 5.0, 90.0}) {
    const auto rows = modified_spherical_bessel(200, x);
    for (int n = 0; n <= 200; ++n) {
      const auto& r = rows[n];
      CHECK(r.i_ext.mantissa() > 0.0);
      CHECK(r.k_ext.mantissa() > 0.0);
      CHECK(std::isfinite(r.i_log_deriv));
      CHECK(std::isfinite(r.k_log_deriv));
      if (n > 0) {
        const double prev = (rows[n - 1].i_ext * rows[n - 1].k_ext).log_abs();
        CHECK((r.i_ext * r.k_ext).log_abs() < prev);
      }
    }
  }
}

TEST_CASE("log-derivatives agree with the scaled Riccati values") {
  const auto rows = modified_spherical_bessel(25, 3.5);
  for (const auto& r : rows) {
    CHECK(r.i_log_deriv == Approx(r.i_ricc_scaled / r.i_scaled).epsilon(1e-13));
    CHECK(r.k_log_deriv == Approx(r.k_ricc_scaled / r.k_scaled).epsilon(1e-13));
  }
}

TEST_CASE("extended range survives high order at small argument") {
  const auto rows = modified_spherical_bessel(1500, 0.01);
  const auto& r = rows.back();
  CHECK(std::isfinite(r.i_ext.log_abs()));
  CHECK(std::isfinite(r.k_ext.log_abs()));
  // i_n k_n -> pi / (2 (2n+1) x) e^{0} for n >> x
  const double expected = std::log(std::numbers::pi / (2.0 * 3001.0 * 0.01));
  CHECK((r.i_ext * r.k_ext).log_abs() == Approx(expected).epsilon(1e-6));
}

TEST_CASE("ExtReal arithmetic") {
  const ExtReal a(3.0), b = ExtReal::pow2(-5000);
  CHECK((a * b / b).to_double() == Approx(3.0));
  CHECK(b.to_double() == 0.0);
  CHECK(b.log_abs() == Approx(-5000.0 * std::log(2.0)));
  CHECK(exp_ext(-2000.0).log_abs() == Approx(-2000.0).epsilon(1e-14));
  CHECK(exp_ext(1.5).to_double() == Approx(std::exp(1.5)).epsilon(1e-15));
  CHECK(ExtReal(0.0).log_abs() == -INFINITY);
}

TEST_CASE("bessel argument and order errors") {
  CHECK_THROWS_AS(modified_spherical_bessel(3, 0.0), vdw::DomainError);
  CHECK_THROWS_AS(modified_spherical_bessel(3, -1.0), vdw::DomainError);
  CHECK_THROWS_AS(modified_spherical_bessel(kDefaultOrderCap + 1, 1.0), vdw::OrderCapError);
  CHECK_THROWS_AS(modified_spherical_bessel(11, 1.0, 10), vdw::OrderCapError);
}

TEST_CASE("Legendre small cases") {
  const auto rows = legendre_rows(2, 0.0);
  CHECK(rows[1].order == 2);
  CHECK(rows[1].p == Approx(-0.5));
  CHECK(rows[1].pprime == Approx(0.0));
  CHECK(rows[1].f == Approx(-3.0));
  for (double g : {-1.0, -0.4, 0.0, 0.25, 1.0}) {
    const auto r1 = legendre_rows(1, g);
    CHECK(r1[0].p == g);
    CHECK(r1[0].f == Approx(g));
  }
}

TEST_CASE("Legendre rows against exact Rodrigues values at 0.37") {
  const auto rows = legendre_rows(50, 0.37);
  for (const auto& ref : kLegendre037) {
    const auto& r = rows[ref.n - 1];
    INFO("n = " << ref.n);
    CHECK(std::abs(r.p - ref.p) < 1e-13 * std::max(1.0, std::abs(ref.p)));
    CHECK(std::abs(r.pprime - ref.pprime) < 1e-13 * std::max(1.0, std::abs(ref.pprime)));
  }
  const auto small = legendre_rows(12, -0.83);
  for (int n = 1; n <= 12; ++n) {
    CHECK(small[n - 1].p == Approx(oracle::legendre_rodrigues(n, -0.83)).epsilon(1e-13));
  }
}

TEST_CASE("Legendre recurrence, endpoints and F") {
  auto gen = oracle::rng();
  for (int trial = 0; trial < 200; ++trial) {
    const double g = oracle::uniform(gen, -1.0, 1.0);
    const auto rows = legendre_rows(120, g);
    for (int n = 2; n < 120; ++n) {
      const double lhs = (n + 1) * rows[n].p;
      const double rhs = (2 * n + 1) * g * rows[n - 1].p - n * rows[n - 2].p;
      const double scale = std::max({std::abs(lhs), (2 * n + 1) * std::abs(g * rows[n - 1].p),
                                     n * std::abs(rows[n - 2].p)});
      CHECK(std::abs(lhs - rhs) <= 1e-13 * scale);
    }
    for (const auto& r : rows) {
      const double n = r.order;
      CHECK(r.f == n * (n + 1) * r.p - r.gamma * r.pprime);
    }
  }
  for (double s : {1.0, -1.0}) {
    const auto rows = legendre_rows(40, s);
    for (const auto& r : rows) {
      const int n = r.order;
      const double sign = (n % 2 == 0) ? 1.0 : s;
      CHECK(r.p == Approx(sign));
      const double dsign = ((n + 1) % 2 == 0) ? 1.0 : s;
      CHECK(r.pprime == Approx(dsign * n * (n + 1) / 2.0));
    }
  }
}

TEST_CASE("Legendre derivative near the endpoints") {
  // P_n'(g) from the recurrence form n (P_{n-1} - g P_n) / (1 - g^2) loses
  // accuracy as g -> 1; compare with the Taylor expansion about 1.
  const double eps = 1e-7, g = 1.0 - eps;
  const auto rows = legendre_rows(30, g);
  for (const auto& r : rows) {
    const double n = r.order, m = n * (n + 1);
    const double expected = m / 2.0 - eps * m * (m - 2.0) / 8.0;
    CHECK(r.pprime == Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("Legendre argument errors") {
  CHECK_THROWS_AS(legendre_rows(3, 1.0000001), vdw::DomainError);
  CHECK_THROWS_AS(legendre_rows(0, 0.5), vdw::DomainError);
}
