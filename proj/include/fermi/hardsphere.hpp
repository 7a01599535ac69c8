#pragma once

// Dilute hard-sphere Fermi gas to second order in the correlation strength
// y = k_F c (c = hard-core radius). All momenta are in units of k_F.

#include <array>
#include <optional>

#include "fermi/distribution.hpp"

namespace fermi::hardsphere {

inline constexpr double kDefaultYMax = 0.6;

/// Seams of the piecewise distribution: the Fermi surface, sqrt(2) and 3.
std::array<double, 3> seams();

struct HardSphereParams {
  int nu = 4;      // spin-isospin degeneracy
  double y = 0.0;  // k_F c

  bool operator==(const HardSphereParams&) const = default;
};

/// Throws DomainError unless nu >= 1 and 0 <= y <= y_max.
void validate(const HardSphereParams& p, double y_max = kDefaultYMax);

/// Fermi wavenumber plus the momentum-space volume it implies.
class SystemScale {
 public:
  explicit SystemScale(double k_fermi);

  static SystemScale from_density(double rho, int nu);
  static SystemScale from_radius(double r0, int nu);

  double k_fermi() const noexcept { return k_fermi_; }
  /// V_k = (4/3) pi k_F^3, in fm^-3.
  double volume() const noexcept;
  /// Inverse of from_radius for the given degeneracy.
  double radius(int nu) const;

 private:
  double k_fermi_;
};

/// k_F = (6 pi^2 rho / nu)^{1/3}.
double fermi_wavenumber_from_density(double rho, int nu);
/// k_F = (9 pi / (2 nu))^{1/3} / r0.
double fermi_wavenumber_from_radius(double r0, int nu);
double radius_from_fermi_wavenumber(double k_fermi, int nu);

/// Coefficients of e(y) = 1 + D1 y + D2 y^2 + D3 y^3 + D4 y^4 ln y.
/// Supplied by the user (Baker 1982, Table VI); never built in.
struct EnergyCoefficients {
  std::array<double, 4> d{};

  bool operator==(const EnergyCoefficients&) const = default;
};

/// nbar below the Fermi surface, 0 <= x < 1. x = 0 uses the analytic limit.
double nbar_below(double x, const HardSphereParams& p);

/// nbar above the Fermi surface, x > 1, across the branches (1, sqrt2),
/// [sqrt2, 3) and [3, inf). Decays as x^{-4}.
double nbar_above(double x, const HardSphereParams& p);

/// Piecewise nbar; throws DomainError at x = 1 where it jumps.
double nbar(double x, const HardSphereParams& p);

/// Near-surface expansions including the (x-1) ln|x-1| term, obtained from
/// the closed forms above (d = x - 1, K = (nu-1) y^2 / (3 pi^2)):
///   below: 1 - 2K [3 ln2 + 1 - 3 d ln|d| + (6 ln2 - 7) d]
///   above:     2K [3 ln2 - 1 + 3 d ln d  - (6 ln2 - 7) d]
/// The forms usually quoted carry -15/2 in the first and -3 d ln d in the
/// second; both disagree with the closed forms at first order in d.
/// Below: 0.8 < x <= 1. Above: 1 <= x < 1.2. At x = 1 they give the one-sided limits.
double asymptotic_below(double x, const HardSphereParams& p);
double asymptotic_above(double x, const HardSphereParams& p);

/// Z = 1 - (4/pi^2) ln2 (nu-1) y^2.
double discontinuity(const HardSphereParams& p);

/// Ground-state energy per particle in units of the ideal-gas energy.
double energy_ratio(double y, const EnergyCoefficients& c);
/// Throws ConfigError when the coefficients were not loaded.
double energy_ratio(double y, const std::optional<EnergyCoefficients>& c);

/// Adapter for the measures: singular points {1, sqrt2, 3}, tail exponent 4.
MomentumDistribution as_distribution(const HardSphereParams& p);

}  // namespace fermi::hardsphere
