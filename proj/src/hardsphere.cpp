#include "fermi/hardsphere.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fermi/errors.hpp"

namespace fermi::hardsphere {
namespace {

using std::numbers::ln2;
using std::numbers::pi;
using std::numbers::sqrt2;

// Prefactor (nu-1) y^2 / (3 pi^2) shared by every branch.
double strength(const HardSphereParams& p) { return (p.nu - 1) * p.y * p.y / (3.0 * pi * pi); }

// atanh(z)/z, finite at z = 0.
double atanh_over(double z) {
  if (std::abs(z) < 1e-4) {
    const double z2 = z * z;
    return 1.0 + z2 * (1.0 / 3.0 + z2 * (1.0 / 5.0 + z2 / 7.0));
  }
  return std::atanh(z) / z;
}

// Sum_{k>=0} t^k / (2k + 3): (atanh(z) - z) / z^3 with t = z^2.
double atanh_remainder(double t) {
  double sum = 0.0;
  double term = 1.0;
  for (int k = 0; k < 200; ++k) {
    const double add = term / (2 * k + 3);
    sum += add;
    if (add < 1e-18 * sum) break;
    term *= t;
  }
  return sum;
}

// Sum_{k>=0} (-t)^k / (2k + 3) with the sign of (atan(u) - u) / u^3 = -(...).
double atan_remainder(double t) {
  double sum = 0.0;
  double term = 1.0;
  for (int k = 0; k < 200; ++k) {
    const double add = term / (2 * k + 3);
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    term *= -t;
  }
  return -sum;
}

// Bracket of the x < 1 piece divided by x:
//   (7 ln2 - 8) x^2 + (10 - 3 ln2) + 4 atanh(x)/x - 4 s^2 atanh(x/s)/(x/s),
// s = sqrt(2 - x^2). Both atanh terms diverge at x -> 1 and cancel.
double bracket_below_over_x(double x) {
  const double s = std::sqrt(2.0 - x * x);
  double tail;
  if (x / s < 0.5) {
    tail = 4.0 * s * s * atanh_over(x / s);
  } else {
    // atanh(x/s) = 0.5 ln((s+x)^2 / (2 (1-x)(1+x))), avoiding s - x.
    const double a = 0.5 * std::log((s + x) * (s + x) / (2.0 * (1.0 - x) * (1.0 + x)));
    tail = 4.0 * s * s * s * a / x;
  }
  return (7.0 * ln2 - 8.0) * x * x + (10.0 - 3.0 * ln2) + 4.0 * atanh_over(x) - tail;
}

// 1 < x < sqrt2. The ln(x-1) divergences of the printed form are gathered
// into one term whose coefficient vanishes at x = 1.
double bracket_branch1(double x) {
  const double t = x - 1.0;
  const double s = std::sqrt(std::max(0.0, 2.0 - x * x));
  const double s3 = s * s * s;
  const double x3 = x * x * x;
  const double c = 7.0 * x3 - 3.0 * x - 6.0;
  const double poly = (7.0 * x3 - 3.0 * x + 2.0) * ln2 - 8.0 * x3 + 22.0 * x * x + 6.0 * x - 24.0;
  const double logs = 2.0 * std::atanh(s / (2.0 + x)) + 2.0 * std::log1p(s) -
                      4.0 * std::log(x + s) + 2.0 * ln2 + std::log(2.0 + t);
  const double log_t = (t > 0.0) ? std::log(t) : 0.0;
  return (c + 2.0 * s3) * log_t - c * std::log(x + 1.0) + poly + 2.0 * s3 * logs;
}

// sqrt2 <= x < 3, printed form.
double bracket_branch2(double x) {
  const double s = std::sqrt(std::max(0.0, x * x - 2.0));
  const double x3 = x * x * x;
  const double poly = (7.0 * x3 - 3.0 * x + 2.0) * ln2 - 8.0 * x3 + 22.0 * x * x + 6.0 * x - 24.0;
  const double angles = std::atan((x + 2.0) / s) + std::atan(1.0 / s) - 2.0 * std::atan(x / s);
  return (7.0 * x3 - 3.0 * x - 6.0) * std::log((x - 1.0) / (x + 1.0)) + poly -
         4.0 * s * s * s * angles;
}

// x >= 3. The printed bracket
//   2 ln((x+1)/(x-1)) - 2x + s^3 [2 atan(x/s) - atan((x-2)/s) - atan((x+2)/s)]
// cancels from O(x) down to O(x^{-3}). Combining the arctangents into
// atan(u), u = 2 x s / (x^4 - 2x^2 - 1), and expanding in z = 1/x gives
//   z^3 [4 h(z^2) + (2 - 4z^2)/(1 - 2z^2 - z^4) - w^{3/2} q^3 g(u^2)]
// with w = 1 - 2z^2, q = 2 sqrt(w)/(1 - 2z^2 - z^4), u = z^2 q. Returned
// without the leading z^3, so the caller controls underflow.
double bracket_branch3_scaled(double z) {
  const double z2 = z * z;
  const double w = 1.0 - 2.0 * z2;
  const double den = 1.0 - 2.0 * z2 - z2 * z2;
  const double q = 2.0 * std::sqrt(w) / den;
  const double u = z2 * q;
  return 4.0 * atanh_remainder(z2) + (2.0 - 4.0 * z2) / den +
         w * std::sqrt(w) * q * q * q * atan_remainder(u * u);
}

void require_valid(const HardSphereParams& p) {
  if (p.nu < 1) throw DomainError("degeneracy nu must be >= 1");
  if (!(p.y >= 0.0) || !std::isfinite(p.y)) throw DomainError("k_F c must be finite and >= 0");
}

}  // namespace

std::array<double, 3> seams() { return {1.0, sqrt2, 3.0}; }

void validate(const HardSphereParams& p, double y_max) {
  require_valid(p);
  if (p.y > y_max) {
    std::ostringstream os;
    os << "k_F c = " << p.y << " exceeds the expansion validity guard " << y_max;
    throw DomainError(os.str());
  }
}

SystemScale::SystemScale(double k_fermi) : k_fermi_(k_fermi) {
  if (!(k_fermi > 0.0) || !std::isfinite(k_fermi)) throw DomainError("k_F must be positive");
}

SystemScale SystemScale::from_density(double rho, int nu) {
  return SystemScale(fermi_wavenumber_from_density(rho, nu));
}

SystemScale SystemScale::from_radius(double r0, int nu) {
  return SystemScale(fermi_wavenumber_from_radius(r0, nu));
}

double SystemScale::volume() const noexcept { return 4.0 / 3.0 * pi * k_fermi_ * k_fermi_ * k_fermi_; }

double SystemScale::radius(int nu) const { return radius_from_fermi_wavenumber(k_fermi_, nu); }

double fermi_wavenumber_from_density(double rho, int nu) {
  if (!(rho > 0.0) || nu < 1) throw DomainError("density and degeneracy must be positive");
  return std::cbrt(6.0 * pi * pi * rho / nu);
}

double fermi_wavenumber_from_radius(double r0, int nu) {
  if (!(r0 > 0.0) || nu < 1) throw DomainError("radius and degeneracy must be positive");
  return std::cbrt(9.0 * pi / (2.0 * nu)) / r0;
}

double radius_from_fermi_wavenumber(double k_fermi, int nu) {
  if (!(k_fermi > 0.0) || nu < 1) throw DomainError("k_F and degeneracy must be positive");
  return std::cbrt(9.0 * pi / (2.0 * nu)) / k_fermi;
}

double nbar_below(double x, const HardSphereParams& p) {
  require_valid(p);
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("nbar_below requires 0 <= x < 1");
  return 1.0 - strength(p) * bracket_below_over_x(x);
}

double nbar_above(double x, const HardSphereParams& p) {
  require_valid(p);
  if (!(x > 1.0)) throw DomainError("nbar_above requires x > 1");
  if (p.y == 0.0) return 0.0;
  const double k = strength(p);
  if (x < sqrt2) return k * bracket_branch1(x) / (2.0 * x);
  if (x < 3.0) return k * bracket_branch2(x) / (2.0 * x);
  if (std::isinf(x)) return 0.0;
  const double z = 1.0 / x;
  const double z2 = z * z;
  return 2.0 * k * z2 * z2 * bracket_branch3_scaled(z);
}

double nbar(double x, const HardSphereParams& p) {
  if (x < 1.0) return nbar_below(x, p);
  if (x > 1.0) return nbar_above(x, p);
  throw DomainError("nbar is discontinuous at the Fermi surface x = 1");
}

double asymptotic_below(double x, const HardSphereParams& p) {
  require_valid(p);
  if (!(x > 0.8 && x <= 1.0)) throw DomainError("asymptotic_below requires 0.8 < x <= 1");
  const double d = x - 1.0;
  const double log_term = (d == 0.0) ? 0.0 : d * std::log(std::abs(d));
  return 1.0 - 2.0 * strength(p) * (3.0 * ln2 + 1.0 - 3.0 * log_term + (6.0 * ln2 - 7.0) * d);
}

double asymptotic_above(double x, const HardSphereParams& p) {
  require_valid(p);
  if (!(x >= 1.0 && x < 1.2)) throw DomainError("asymptotic_above requires 1 <= x < 1.2");
  const double d = x - 1.0;
  const double log_term = (d == 0.0) ? 0.0 : d * std::log(d);
  return 2.0 * strength(p) * (3.0 * ln2 - 1.0 + 3.0 * log_term - (6.0 * ln2 - 7.0) * d);
}

double discontinuity(const HardSphereParams& p) {
  require_valid(p);
  return 1.0 - 4.0 / (pi * pi) * ln2 * (p.nu - 1) * p.y * p.y;
}

double energy_ratio(double y, const EnergyCoefficients& c) {
  if (!(y >= 0.0) || !std::isfinite(y)) throw DomainError("energy_ratio requires y >= 0");
  for (double d : c.d) {
    if (!std::isfinite(d)) throw ConfigError("energy coefficients must be finite");
  }
  if (y == 0.0) return 1.0;
  const double y2 = y * y;
  return 1.0 + c.d[0] * y + c.d[1] * y2 + c.d[2] * y2 * y + c.d[3] * y2 * y2 * std::log(y);
}

double energy_ratio(double y, const std::optional<EnergyCoefficients>& c) {
  if (!c) throw ConfigError("energy coefficients D1..D4 have not been loaded");
  return energy_ratio(y, *c);
}

MomentumDistribution as_distribution(const HardSphereParams& p) {
  require_valid(p);
  std::ostringstream label;
  label << "hardsphere(nu=" << p.nu << ", y=" << p.y << ")";
  const auto s = seams();
  return MomentumDistribution(
      label.str(), [p](double x) { return nbar(x, p); }, {s.begin(), s.end()},
      TailKind::kPowerLaw, 4.0);
}

}  // namespace fermi::hardsphere
