#include "fermi/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fermi/errors.hpp"

namespace fermi::fit {
namespace {

constexpr int kMaxIterations = 100;
constexpr double kStepTolerance = 1e-12;

// Points sorted by (u, v) so every accumulation runs in the same order
// whatever the caller's ordering.
std::vector<Point> canonical(std::span<const Point> points) {
  std::vector<Point> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const Point& l, const Point& r) { return l.u < r.u || (l.u == r.u && l.v < r.v); });
  return sorted;
}

struct Line {
  double intercept;
  double slope;
};

Line least_squares_line(const std::vector<double>& us, const std::vector<double>& vs) {
  const double n = static_cast<double>(us.size());
  double mu = 0.0, mv = 0.0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    mu += us[i];
    mv += vs[i];
  }
  mu /= n;
  mv /= n;
  double suu = 0.0, suv = 0.0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    suu += (us[i] - mu) * (us[i] - mu);
    suv += (us[i] - mu) * (vs[i] - mv);
  }
  if (!(suu > 0.0)) throw FitError("linear fit needs at least two distinct abscissae");
  const double slope = suv / suu;
  return {mv - slope * mu, slope};
}

void fill_statistics(FitResult& r, const std::vector<Point>& pts) {
  double mean = 0.0;
  for (const auto& p : pts) mean += p.v;
  mean /= static_cast<double>(pts.size());
  double sse = 0.0, sst = 0.0;
  for (const auto& p : pts) {
    const double e = p.v - predict(r, p.u);
    sse += e * e;
    sst += (p.v - mean) * (p.v - mean);
  }
  r.n_points = pts.size();
  r.rms = std::sqrt(sse / static_cast<double>(pts.size()));
  r.r_squared = sst > 0.0 ? 1.0 - sse / sst : 1.0;
}

double sum_squares(const std::vector<Point>& pts, double offset, double alpha, double beta) {
  double s = 0.0;
  for (const auto& p : pts) {
    const double e = p.v - offset - alpha * std::pow(p.u, beta);
    s += e * e;
  }
  return s;
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kPowerLaw:
      return "power-law";
    case ModelKind::kShiftedPowerLaw:
      return "shifted-power-law";
    case ModelKind::kLinear:
      return "linear";
  }
  return "unknown";
}

double predict(const FitResult& fit, double u) {
  if (fit.kind == ModelKind::kLinear) return fit.a + fit.b * u;
  return fit.offset + fit.a * std::pow(u, fit.b);
}

FitResult fit_linear(std::span<const Point> points) {
  if (points.size() < 2) throw FitError("linear fit needs at least two points");
  const auto pts = canonical(points);
  std::vector<double> us, vs;
  for (const auto& p : pts) {
    if (!std::isfinite(p.u) || !std::isfinite(p.v)) throw FitError("non-finite data point");
    us.push_back(p.u);
    vs.push_back(p.v);
  }
  const Line line = least_squares_line(us, vs);
  FitResult r;
  r.kind = ModelKind::kLinear;
  r.a = line.intercept;
  r.b = line.slope;
  fill_statistics(r, pts);
  return r;
}

FitResult fit_power_law(std::span<const Point> points, double offset) {
  if (points.size() < 3) throw FitError("power-law fit needs at least three points");
  if (!std::isfinite(offset)) throw FitError("offset must be finite");
  const auto pts = canonical(points);

  // Seed: ln|v - offset| = ln|alpha| + beta ln u.
  double sign = 0.0;
  std::vector<double> lu, lv;
  for (const auto& p : pts) {
    if (!std::isfinite(p.u) || !std::isfinite(p.v)) throw FitError("non-finite data point");
    if (!(p.u > 0.0)) throw FitError("power-law fit requires u > 0");
    const double w = p.v - offset;
    const double s = (w > 0.0) ? 1.0 : (w < 0.0 ? -1.0 : 0.0);
    if (s == 0.0 || (sign != 0.0 && s != sign)) {
      throw FitError("v - offset must be nonzero and of one sign for the log-log seed");
    }
    sign = s;
    lu.push_back(std::log(p.u));
    lv.push_back(std::log(std::abs(w)));
  }
  const Line seed = least_squares_line(lu, lv);
  double alpha = sign * std::exp(seed.intercept);
  double beta = seed.slope;

  FitResult r;
  r.kind = offset == 0.0 ? ModelKind::kPowerLaw : ModelKind::kShiftedPowerLaw;
  r.offset = offset;

  double sse = sum_squares(pts, offset, alpha, beta);
  int it = 0;
  for (; it < kMaxIterations && sse > 0.0; ++it) {
    // Normal equations J^T J delta = J^T r for J = [u^beta, alpha u^beta ln u].
    double a11 = 0.0, a12 = 0.0, a22 = 0.0, g1 = 0.0, g2 = 0.0;
    for (const auto& p : pts) {
      const double ub = std::pow(p.u, beta);
      const double j1 = ub;
      const double j2 = alpha * ub * std::log(p.u);
      const double e = p.v - offset - alpha * ub;
      a11 += j1 * j1;
      a12 += j1 * j2;
      a22 += j2 * j2;
      g1 += j1 * e;
      g2 += j2 * e;
    }
    const double det = a11 * a22 - a12 * a12;
    if (!(std::abs(det) > 1e-14 * a11 * a22)) {
      throw FitError("singular normal equations in power-law fit");
    }
    const double d_alpha = (a22 * g1 - a12 * g2) / det;
    const double d_beta = (a11 * g2 - a12 * g1) / det;

    // Halve the step until the sum of squares stops increasing.
    double step = 1.0;
    double trial = sum_squares(pts, offset, alpha + d_alpha, beta + d_beta);
    while (trial > sse && step > 1e-10) {
      step *= 0.5;
      trial = sum_squares(pts, offset, alpha + step * d_alpha, beta + step * d_beta);
    }
    if (trial > sse) break;
    alpha += step * d_alpha;
    beta += step * d_beta;
    sse = trial;
    const double rel = std::max(std::abs(step * d_alpha) / std::abs(alpha),
                                std::abs(step * d_beta) / std::max(std::abs(beta), 1e-300));
    if (rel < kStepTolerance) {
      ++it;
      break;
    }
  }
  if (!std::isfinite(beta)) throw FitError("power-law exponent diverged");
  r.a = alpha;
  r.b = beta;
  r.iterations = it;
  fill_statistics(r, pts);
  return r;
}

}  // namespace fermi::fit
