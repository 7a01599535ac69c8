#include "fermi/measures.hpp"

#include <cmath>
#include <sstream>

#include "fermi/errors.hpp"

namespace fermi::measures {
namespace {

enum class Kernel { kMass, kSquare, kEntropy };

double checked(const MomentumDistribution& d, double x, double tolerance) {
  const double n = d(x);
  if (n < 0.0) {
    if (n >= -tolerance) return 0.0;
    std::ostringstream os;
    os.precision(17);
    os << d.label() << ": nbar(" << x << ") = " << n << " < 0";
    throw DistributionError(os.str());
  }
  return n;
}

double kernel_value(Kernel k, double x, double n) {
  switch (k) {
    case Kernel::kMass:
      return x * x * n;
    case Kernel::kSquare:
      return x * x * n * n;
    case Kernel::kEntropy:
      return n > 0.0 ? x * x * n * std::log(n) : 0.0;
  }
  return 0.0;
}

// Tail exponent of x^2 K(nbar) for nbar ~ x^{-p}. The entropy kernel carries
// an extra ln x; its remainder is within 1/ln X of the power-law estimate,
// far below the tol/10 truncation threshold.
double kernel_tail(Kernel k, const MomentumDistribution& d) {
  const double p = d.tail_exponent();
  if (std::isinf(p)) return p;
  return k == Kernel::kSquare ? 2.0 * p - 2.0 : p - 2.0;
}

// int_0^{x_max} x^2 K(nbar) dx, split at the Fermi surface.
double integrate(const MomentumDistribution& d, Kernel k, double x_max, double tol,
                 double negative_tolerance) {
  if (!(x_max > 1.0)) throw DomainError("momentum window x_max must exceed 1");
  quad::Integrand f{[&d, k, negative_tolerance](double x) {
                      return kernel_value(k, x, checked(d, x, negative_tolerance));
                    },
                    d.singular_points(), kernel_tail(k, d)};
  // Declared singular at the surface so both pieces are graded toward x = 1.
  f.singular_points.push_back(1.0);
  const double below = quad::integrate_finite(f, 0.0, 1.0, tol / 2.0).value;
  const double above = std::isinf(x_max) ? quad::integrate_semiinfinite(f, 1.0, tol / 2.0).value
                                         : quad::integrate_finite(f, 1.0, x_max, tol / 2.0).value;
  return below + above;
}

}  // namespace

double normalization(const MomentumDistribution& d, const Options& options) {
  return 3.0 * integrate(d, Kernel::kMass, std::numeric_limits<double>::infinity(),
                         options.tol / 3.0, options.negative_tolerance);
}

double entropy_cor(const MomentumDistribution& d, const Options& options) {
  return -3.0 *
         integrate(d, Kernel::kEntropy, options.x_max, options.tol / 3.0, options.negative_tolerance);
}

double disequilibrium_cor(const MomentumDistribution& d, const Options& options) {
  return 3.0 *
         integrate(d, Kernel::kSquare, options.x_max, options.tol / 3.0, options.negative_tolerance);
}

double complexity(const MomentumDistribution& d, const Options& options) {
  return disequilibrium_cor(d, options) * std::exp(entropy_cor(d, options));
}

double entropy_total(const MomentumDistribution& d, const hardsphere::SystemScale& scale,
                     const Options& options) {
  return std::log(scale.volume()) + entropy_cor(d, options);
}

double disequilibrium_total(const MomentumDistribution& d, const hardsphere::SystemScale& scale,
                            const Options& options) {
  return disequilibrium_cor(d, options) / scale.volume();
}

double information_content(double entropy) { return std::exp(entropy); }

MeasureSet evaluate(const MomentumDistribution& d, double parameter, double z,
                    std::optional<double> energy, const Options& options) {
  MeasureSet m;
  m.parameter = parameter;
  m.s_cor = entropy_cor(d, options);
  m.d_cor = disequilibrium_cor(d, options);
  m.complexity = m.d_cor * std::exp(m.s_cor);
  m.z = z;
  m.energy = energy;
  return m;
}

}  // namespace fermi::measures
