#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include "doctest.h"
#include "fermi/errors.hpp"
#include "fermi/hardsphere.hpp"
#include "fermi/measures.hpp"

using namespace fermi;
using namespace fermi::hardsphere;

namespace {

const double kPi = std::numbers::pi;
const double kLn2 = std::numbers::ln2;

// Direct transcription of the printed closed forms, no rewrites. Fine away
// from x = 1 and for moderate x.
double printed_below(double x, int nu, double y) {
  const double s = std::sqrt(2 - x * x);
  const double br = (7 * kLn2 - 8) * x * x * x + (10 - 3 * kLn2) * x + 2 * std::log((1 + x) / (1 - x)) -
                    2 * s * s * s * std::log((s + x) / (s - x));
  return 1 - (nu - 1) / (3 * kPi * kPi * x) * y * y * br;
}

double printed_above(double x, int nu, double y) {
  const double common = (7 * x * x * x - 3 * x - 6) * std::log((x - 1) / (x + 1)) +
                        (7 * x * x * x - 3 * x + 2) * kLn2 - 8 * x * x * x + 22 * x * x + 6 * x - 24;
  if (x < std::numbers::sqrt2) {
    const double s = std::sqrt(2 - x * x);
    const double br = std::log((2 + x + s) / (2 + x - s)) + std::log((1 + s) / (1 - s)) -
                      2 * std::log((x + s) / (x - s));
    return (nu - 1) / (6 * kPi * kPi * x) * y * y * (common + 2 * s * s * s * br);
  }
  const double s = std::sqrt(x * x - 2);
  if (x < 3) {
    const double br = std::atan((x + 2) / s) + std::atan(1 / s) - 2 * std::atan(x / s);
    return (nu - 1) / (6 * kPi * kPi * x) * y * y * (common - 4 * s * s * s * br);
  }
  const double br = 2 * std::atan(x / s) - std::atan((x - 2) / s) - std::atan((x + 2) / s);
  return 2 * (nu - 1) / (3 * kPi * kPi * x) * y * y *
         (2 * std::log((x + 1) / (x - 1)) - 2 * x + s * s * s * br);
}

const HardSphereParams kRef{4, 0.3};

}  // namespace

TEST_CASE("ideal gas is a step") {
  const HardSphereParams p{4, 0.0};
  for (double x : {0.0, 0.3, 0.999}) CHECK(nbar_below(x, p) == 1.0);
  for (double x : {1.001, 1.5, 2.5, 7.0}) CHECK(nbar_above(x, p) == 0.0);
  CHECK(discontinuity(p) == 1.0);
  CHECK(asymptotic_below(1.0, p) == 1.0);
  CHECK(asymptotic_above(1.0, p) == 0.0);
}

TEST_CASE("values against high-precision references") {
  // 30-digit evaluations of the printed expressions, rounded.
  struct Ref {
    double x, v;
  };
  const Ref below[] = {{0.5, 0.96203956114528246337},
                       {1e-4, 0.96424879380406613633},
                       {0.999, 0.94416427818139998034},
                       {0.9999999, 0.9438378038532084154}};
  for (const auto& r : below) {
    CAPTURE(r.x);
    CHECK(std::abs(nbar_below(r.x, kRef) - r.v) < 1e-12);
  }
  const Ref above[] = {{1.0000001, 0.019686570035552084825}, {1.2, 0.0072941463861071223665},
                       {1.41, 0.0038533650405003241376},  {1.5, 0.0030392809845349764163},
                       {2.0, 0.00098253057749205592482},  {2.9, 0.00020061657720590810417},
                       {3.1, 0.00015049359363586698915},  {5.0, 0.000020435255039051419608},
                       {50.0, 1.9463009557422215644e-9},  {1000.0, 1.2158556627348693825e-14},
                       {1e5, 1.215854203853955761789e-22}};
  for (const auto& r : above) {
    CAPTURE(r.x);
    CHECK(std::abs(nbar_above(r.x, kRef) / r.v - 1) < 1e-11);
  }
}

TEST_CASE("stable forms agree with the printed forms where those are well conditioned") {
  for (double x : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    CAPTURE(x);
    CHECK(std::abs(nbar_below(x, kRef) - printed_below(x, 4, 0.3)) < 1e-12);
  }
  for (double x : {1.1, 1.3, 1.6, 2.2, 2.8, 3.5, 4.0}) {
    CAPTURE(x);
    CHECK(std::abs(nbar_above(x, kRef) / printed_above(x, 4, 0.3) - 1) < 1e-9);
  }
}

TEST_CASE("x = 0 uses the analytic limit") {
  const double limit = 1 - 3 * 0.09 * (6 - 3 * kLn2) / (3 * kPi * kPi);
  CHECK(std::abs(nbar_below(0.0, kRef) - limit) < 1e-15);
  CHECK(std::abs(nbar_below(1e-4, kRef) - limit) < 1e-8);
}

TEST_CASE("one-sided limits at the Fermi surface") {
  const double below = 1 - 2.0 / (3 * kPi * kPi) * 3 * 0.09 * (3 * kLn2 + 1);
  const double above = 2.0 / (3 * kPi * kPi) * 3 * 0.09 * (3 * kLn2 - 1);
  CHECK(std::abs(nbar_below(1 - 1e-12, kRef) - below) < 1e-9);
  CHECK(std::abs(nbar_above(1 + 1e-12, kRef) - above) < 1e-9);
  CHECK(below == doctest::Approx(0.94384).epsilon(1e-5));
  CHECK(above == doctest::Approx(0.01970).epsilon(1e-3));
}

TEST_CASE("seams are continuous") {
  for (double s : {std::numbers::sqrt2, 3.0}) {
    for (double eps : {1e-3, 1e-5, 1e-7, 1e-9, 1e-11}) {
      CAPTURE(s);
      CAPTURE(eps);
      const double jump = std::abs(nbar_above(s - eps, kRef) - nbar_above(s + eps, kRef));
      CHECK(jump < std::max(1e-9, 0.05 * eps));
    }
    CHECK(std::isfinite(nbar_above(s, kRef)));
  }
}

TEST_CASE("asymptotic forms near the surface") {
  CHECK(std::abs(asymptotic_below(0.99, kRef) - nbar_below(0.99, kRef)) < 5e-3);
  CHECK(std::abs(asymptotic_above(1.01, kRef) - nbar_above(1.01, kRef)) < 5e-3);
  CHECK(std::abs(asymptotic_above(1.001, kRef) - nbar_above(1.001, kRef)) < 1e-4);
  // Error shrinks like (x-1)^2 up to logs on both sides.
  const double e1 = std::abs(asymptotic_below(1 - 1e-2, kRef) - nbar_below(1 - 1e-2, kRef));
  const double e2 = std::abs(asymptotic_below(1 - 1e-3, kRef) - nbar_below(1 - 1e-3, kRef));
  CHECK(e2 < e1 / 30);
  const double a1 = std::abs(asymptotic_above(1 + 1e-2, kRef) - nbar_above(1 + 1e-2, kRef));
  const double a2 = std::abs(asymptotic_above(1 + 1e-3, kRef) - nbar_above(1 + 1e-3, kRef));
  CHECK(a2 < a1 / 30);
  CHECK_THROWS_AS(asymptotic_below(0.7, kRef), DomainError);
  CHECK_THROWS_AS(asymptotic_above(1.3, kRef), DomainError);
}

TEST_CASE("discontinuity") {
  CHECK(discontinuity(kRef) == doctest::Approx(0.92415).epsilon(1e-5));
  for (double y : {0.05, 0.2, 0.3, 0.45, 0.6}) {
    const HardSphereParams p{4, y};
    CHECK(std::abs(asymptotic_below(1.0, p) - asymptotic_above(1.0, p) - discontinuity(p)) < 1e-12);
    CHECK((1 - discontinuity(p)) / (y * y) == doctest::Approx(12 * kLn2 / (kPi * kPi)).epsilon(1e-13));
  }
  double prev = 1.0;
  for (double y = 0.05; y <= 0.6; y += 0.05) {
    const double z = discontinuity({4, y});
    CHECK(z < prev);
    prev = z;
  }
}

TEST_CASE("sign properties on random points") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> ybelow(0.01, 0.6), xin(1e-6, 1 - 1e-9), xout(1e-9, 40);
  for (int i = 0; i < 2000; ++i) {
    const HardSphereParams p{4, ybelow(rng)};
    CHECK(nbar_below(xin(rng), p) < 1.0);
    CHECK(nbar_above(1 + xout(rng), p) > 0.0);
  }
}

TEST_CASE("tail goes as x^-4") {
  const double plateau = 2 * 3 * 0.09 / (3 * kPi * kPi) * 2.0 / 3.0;
  double prev = 0.0;
  for (double x : {10.0, 30.0, 100.0, 1e3, 1e4}) {
    const double v = std::pow(x, 4) * nbar_above(x, kRef);
    CHECK(v > 0);
    if (prev > 0) CHECK(std::abs(v - plateau) < std::abs(prev - plateau) + 1e-15);
    prev = v;
  }
  CHECK(prev == doctest::Approx(plateau).epsilon(1e-7));
}

TEST_CASE("normalization across y") {
  for (int i = 0; i <= 10; ++i) {
    const double y = 0.05 * i;
    CAPTURE(y);
    CHECK(std::abs(measures::normalization(as_distribution({4, y})) - 1) < 1e-6);
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(nbar_below(1.0, kRef), DomainError);
  CHECK_THROWS_AS(nbar_below(-0.1, kRef), DomainError);
  CHECK_THROWS_AS(nbar_above(1.0, kRef), DomainError);
  CHECK_THROWS_AS(nbar(1.0, kRef), DomainError);
  CHECK_THROWS_AS(nbar_below(0.5, {0, 0.3}), DomainError);
  CHECK_THROWS_AS(nbar_below(0.5, {4, -0.1}), DomainError);
  CHECK_THROWS_AS(validate({4, 0.61}), DomainError);
  CHECK_NOTHROW(validate({4, 0.61}, 0.7));
}

TEST_CASE("system scale") {
  CHECK(fermi_wavenumber_from_radius(1.0, 4) == doctest::Approx(std::cbrt(9 * kPi / 8)).epsilon(1e-15));
  CHECK(fermi_wavenumber_from_radius(1.0, 4) == doctest::Approx(1.52324).epsilon(1e-5));
  CHECK(fermi_wavenumber_from_density(8 * 0.16, 4) / fermi_wavenumber_from_density(0.16, 4) ==
        doctest::Approx(2.0).epsilon(1e-14));
  for (double r0 : {0.8, 1.0, 1.14, 1.3}) {
    const auto s = SystemScale::from_radius(r0, 4);
    CHECK(std::abs(s.radius(4) / r0 - 1) < 1e-12);
  }
  const auto s = SystemScale::from_density(0.16, 4);
  CHECK(std::abs(s.k_fermi() - std::cbrt(6 * kPi * kPi * 0.16 / 4)) < 1e-14);
  CHECK(s.volume() == doctest::Approx(4.0 / 3 * kPi * std::pow(s.k_fermi(), 3)).epsilon(1e-15));
  CHECK_THROWS_AS(SystemScale(0.0), DomainError);
  CHECK_THROWS_AS(fermi_wavenumber_from_density(-1, 4), DomainError);
  CHECK_THROWS_AS(fermi_wavenumber_from_radius(0, 4), DomainError);
}

TEST_CASE("energy ratio") {
  const EnergyCoefficients c{{0.35, 0.19, 0.04, -0.1}};
  CHECK(energy_ratio(0.0, c) == 1.0);
  const double h = 1e-7;
  CHECK((energy_ratio(h, c) - 1) / h == doctest::Approx(c.d[0]).epsilon(1e-5));
  CHECK(energy_ratio(0.3, c) ==
        doctest::Approx(1 + 0.35 * 0.3 + 0.19 * 0.09 + 0.04 * 0.027 - 0.1 * 0.0081 * std::log(0.3)));
  CHECK_THROWS_AS(energy_ratio(0.3, std::optional<EnergyCoefficients>{}), ConfigError);
  CHECK_THROWS_AS(energy_ratio(-0.1, c), DomainError);
}

TEST_CASE("distribution adapter") {
  const auto d = as_distribution(kRef);
  REQUIRE(d.singular_points().size() == 3);
  CHECK(d.singular_points()[0] == 1.0);
  CHECK(d.tail_kind() == TailKind::kPowerLaw);
  CHECK(d.tail_exponent() == 4.0);
  CHECK(d(0.5) == nbar_below(0.5, kRef));
  CHECK(d(2.0) == nbar_above(2.0, kRef));
}
