#pragma once

// Information entropy, disequilibrium and LMC complexity of a momentum
// distribution. Entropies are in nats.

#include <limits>
#include <optional>

#include "fermi/distribution.hpp"
#include "fermi/hardsphere.hpp"
#include "fermi/quadrature.hpp"

namespace fermi::measures {

struct Options {
  /// Absolute accuracy of each returned measure.
  double tol = quad::kDefaultTolerance;
  /// Upper end of the momentum window for S_cor and D_cor. Infinity integrates
  /// the full tail; a finite value restricts both measures to 0 <= x <= x_max.
  double x_max = std::numeric_limits<double>::infinity();
  /// Values in [-negative_tolerance, 0) are rounding noise and read as 0.
  double negative_tolerance = 1e-12;
};

/// 3 * integral_0^inf x^2 nbar dx over the whole axis (x_max is ignored).
double normalization(const MomentumDistribution& d, const Options& options = {});

/// S_cor = -3 [int_0^{1-} + int_{1+}^{x_max}] x^2 nbar ln nbar dx, with 0 ln 0 = 0.
double entropy_cor(const MomentumDistribution& d, const Options& options = {});

/// D_cor = 3 [int_0^{1-} + int_{1+}^{x_max}] x^2 nbar^2 dx.
double disequilibrium_cor(const MomentumDistribution& d, const Options& options = {});

/// C = D_cor exp(S_cor).
double complexity(const MomentumDistribution& d, const Options& options = {});

/// S_k = ln V_k + S_cor.
double entropy_total(const MomentumDistribution& d, const hardsphere::SystemScale& scale,
                     const Options& options = {});

/// D_k = D_cor / V_k.
double disequilibrium_total(const MomentumDistribution& d, const hardsphere::SystemScale& scale,
                            const Options& options = {});

/// H = exp(S).
double information_content(double entropy);

struct MeasureSet {
  double parameter = 0.0;  // y for the hard-sphere gas, beta for LOA
  double s_cor = 0.0;
  double d_cor = 1.0;
  double complexity = 1.0;
  double z = 1.0;
  std::optional<double> energy;
};

/// All measures for one parameter point; complexity is D_cor exp(S_cor) exactly.
MeasureSet evaluate(const MomentumDistribution& d, double parameter, double z,
                    std::optional<double> energy, const Options& options = {});

}  // namespace fermi::measures
