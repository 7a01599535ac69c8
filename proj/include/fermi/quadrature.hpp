#pragma once

// Adaptive Gauss-Kronrod (G10/K21) integration for integrands with integrable
// endpoint singularities (log, weak power) and power-law or faster tails.
//
// Integrals are split at the declared singular points and each piece is
// geometrically pre-refined toward singular endpoints before the global
// error-driven bisection starts. Nodes are interior to every subinterval, so
// the integrand is never evaluated at a breakpoint.

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fermi::quad {

inline constexpr double kDefaultTolerance = 1e-8;

struct Integrand {
  std::function<double(double)> eval;
  /// Points where the integrand (or a derivative) is singular or has a seam.
  std::vector<double> singular_points;
  /// f(x) ~ x^{-p} as x -> infinity. +infinity marks faster-than-power decay.
  std::optional<double> tail_exponent;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // absolute
  std::size_t evaluations = 0;
};

struct Options {
  double tol = kDefaultTolerance;  // absolute
  std::size_t max_intervals = 20000;
  /// Number of geometric cuts placed toward each singular endpoint.
  int grading_levels = 24;
  double grading_ratio = 0.5;
  /// Semi-infinite integrals give up if the tail has not decayed by here.
  double max_extent = 1e40;
};

class QuadratureError : public std::runtime_error {
 public:
  enum class Kind { kInvalidArgument, kNonFinite, kNonConvergence, kBadTail };

  QuadratureError(Kind kind, const std::string& what, QuadratureResult best = {},
                  std::optional<double> abscissa = std::nullopt)
      : std::runtime_error(what), kind_(kind), best_(best), abscissa_(abscissa) {}

  Kind kind() const noexcept { return kind_; }
  /// Best estimate available when the error was raised.
  const QuadratureResult& best_estimate() const noexcept { return best_; }
  /// Abscissa of the offending evaluation, for kNonFinite.
  std::optional<double> abscissa() const noexcept { return abscissa_; }

 private:
  Kind kind_;
  QuadratureResult best_;
  std::optional<double> abscissa_;
};

QuadratureResult integrate_finite(const Integrand& f, double a, double b, const Options& options);
QuadratureResult integrate_finite(const Integrand& f, double a, double b,
                                  double tol = kDefaultTolerance);

/// Integral over [a, inf). The domain is covered by doubling panels until the
/// power-law remainder bound |f(X)| X / (p - 1) drops below tol/10; that
/// remainder is then added to the value. Without a usable tail hint the decay
/// exponent is estimated from samples, and a non-decaying integrand is rejected.
QuadratureResult integrate_semiinfinite(const Integrand& f, double a, const Options& options);
QuadratureResult integrate_semiinfinite(const Integrand& f, double a,
                                        double tol = kDefaultTolerance);

}  // namespace fermi::quad
