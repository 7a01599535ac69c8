#pragma once

// Least-squares fits of v = offset + alpha u^beta and v = intercept + slope u.

#include <cstddef>
#include <span>
#include <string_view>

namespace fermi::fit {

enum class ModelKind { kPowerLaw, kShiftedPowerLaw, kLinear };

std::string_view to_string(ModelKind kind);

struct Point {
  double u = 0.0;
  double v = 0.0;
};

struct FitResult {
  ModelKind kind = ModelKind::kLinear;
  /// alpha for power laws, intercept for lines.
  double a = 0.0;
  /// beta for power laws, slope for lines.
  double b = 0.0;
  double offset = 0.0;
  double rms = 0.0;  // sqrt(mean squared residual in v)
  double r_squared = 0.0;
  std::size_t n_points = 0;
  int iterations = 0;
};

/// Fits v = offset + alpha u^beta by Gauss-Newton on the residuals in v,
/// seeded from a log-log regression on (v - offset). Requires >= 3 points,
/// u > 0 and (v - offset) nonzero with one sign. Throws FitError otherwise or
/// when the normal equations are singular.
FitResult fit_power_law(std::span<const Point> points, double offset = 0.0);

/// Ordinary least squares line; requires >= 2 points with distinct u.
FitResult fit_linear(std::span<const Point> points);

/// Model value at u.
double predict(const FitResult& fit, double u);

}  // namespace fermi::fit
