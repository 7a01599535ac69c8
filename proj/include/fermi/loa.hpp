#pragma once

// Low Order Approximation (cluster expansion truncated at low order) of the
// nuclear-matter momentum distribution with Gaussian correlations
// f(r) = 1 - exp(-beta^2 r^2). Momenta in fm^-1.

#include "fermi/distribution.hpp"

namespace fermi::loa {

inline constexpr double kDefaultFermiWavenumber = 1.33;  // fm^-1
inline constexpr double kWindowBetaMin = 1.01;           // fm^-1
inline constexpr double kWindowBetaMax = 2.482;          // fm^-1

struct LoaParams {
  double k_fermi = kDefaultFermiWavenumber;
  double beta = 1.5;

  bool operator==(const LoaParams&) const = default;
};

/// Throws DomainError unless k_F > 0 and beta > 0.
void validate(const LoaParams& p);

/// True for beta inside the window where the truncated expansion is trusted.
bool in_validity_window(const LoaParams& p);

struct WoundParameter {
  double k_dir = 0.0;
};

/// Y(k, mu) for mu in {2, 4, 8}; continuous at k = 0 and vanishing as k -> inf.
double y_function(double k, int mu, const LoaParams& p);

/// k_dir = (k_F/beta)^3 / (3 sqrt(2 pi)).
WoundParameter wound_parameter(const LoaParams& p);

/// rho * integral [f(r) - 1]^2 d^3r with rho = 2 k_F^3 / (3 pi^2), by quadrature.
/// Independent route to wound_parameter.
double wound_parameter_by_quadrature(const LoaParams& p, double tol = 1e-13);

/// n_LOA(k) = theta(k_F - k) [1 - k_dir + Y(k,8)] + 8 [k_dir Y(k,2) - Y(k,4)^2].
/// At k = k_F the value above the surface is returned.
double n_loa(double k, const LoaParams& p);

/// Jump at k_F: 1 - k_dir + Y(k_F, 8).
double discontinuity(const LoaParams& p);

/// nbar(x) = n_LOA(x k_F); singular point {1}, Gaussian tail.
MomentumDistribution as_distribution(const LoaParams& p);

}  // namespace fermi::loa
