#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "fermi/errors.hpp"
#include "fermi/fitting.hpp"

using namespace fermi;
using fit::Point;

namespace {

std::vector<Point> power_data(double a, double b, double offset, int n = 21) {
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) {
    const double u = 0.05 + 0.025 * i;
    pts.push_back({u, offset + a * std::pow(u, b)});
  }
  return pts;
}

}  // namespace

TEST_CASE("exact power-law recovery") {
  const auto r = fit::fit_power_law(power_data(2.5, 1.7, 0.0));
  CHECK(std::abs(r.a - 2.5) < 1e-10);
  CHECK(std::abs(r.b - 1.7) < 1e-10);
  CHECK(r.kind == fit::ModelKind::kPowerLaw);
  CHECK(r.n_points == 21);
  CHECK(r.rms >= 0);
}

TEST_CASE("exact recovery over a parameter sweep") {
  for (double a : {0.1, 1.0, 10.0}) {
    for (double b : {0.5, 1.0, 2.0}) {
      for (double off : {0.0, 1.0}) {
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(off);
        const auto r = fit::fit_power_law(power_data(a, b, off), off);
        CHECK(r.rms < 1e-10);
        CHECK(std::abs(r.a / a - 1) < 1e-9);
        CHECK(std::abs(r.b - b) < 1e-9);
      }
    }
  }
}

TEST_CASE("shifted power law with a negative amplitude") {
  const auto r = fit::fit_power_law(power_data(-0.79871, 1.83155, 1.0), 1.0);
  CHECK(r.kind == fit::ModelKind::kShiftedPowerLaw);
  CHECK(std::abs(r.a + 0.79871) < 1e-10);
  CHECK(std::abs(r.b - 1.83155) < 1e-10);
  CHECK(fit::predict(r, 0.5) == doctest::Approx(1 - 0.79871 * std::pow(0.5, 1.83155)));
}

TEST_CASE("noisy data minimizes residuals in v") {
  auto pts = power_data(2.0, 1.5, 0.0);
  std::mt19937 rng(7);
  std::normal_distribution<double> noise(0.0, 1e-3);
  for (auto& p : pts) p.v += noise(rng);
  const auto r = fit::fit_power_law(pts);
  auto sse = [&](double a, double b) {
    double s = 0;
    for (const auto& p : pts) s += std::pow(p.v - a * std::pow(p.u, b), 2);
    return s;
  };
  const double best = sse(r.a, r.b);
  for (double da : {-1e-4, 1e-4}) CHECK(sse(r.a + da, r.b) >= best);
  for (double db : {-1e-4, 1e-4}) CHECK(sse(r.a, r.b + db) >= best);
}

TEST_CASE("invariant under reordering") {
  auto pts = power_data(1.3, 0.8, 1.0);
  std::mt19937 rng(99);
  std::normal_distribution<double> noise(0.0, 1e-4);
  for (auto& p : pts) p.v += noise(rng);
  const auto ref = fit::fit_power_law(pts, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(pts.begin(), pts.end(), rng);
    const auto r = fit::fit_power_law(pts, 1.0);
    CHECK(r.a == ref.a);
    CHECK(r.b == ref.b);
    const auto l = fit::fit_linear(pts);
    CHECK(l.b == fit::fit_linear(pts).b);
  }
}

TEST_CASE("halved exponent against the squared variable") {
  const auto py = power_data(2.16379, 1.67053, 0.0);
  std::vector<Point> pz;
  for (const auto& p : py) pz.push_back({0.25 * p.u * p.u, p.v});
  const auto ry = fit::fit_power_law(py);
  const auto rz = fit::fit_power_law(pz);
  CHECK(std::abs(rz.b - ry.b / 2) < 1e-9);
}

TEST_CASE("exact line") {
  std::vector<Point> pts;
  for (int i = 0; i < 10; ++i) pts.push_back({0.1 * i, 3 * 0.1 * i - 1});
  const auto r = fit::fit_linear(pts);
  CHECK(std::abs(r.a + 1) < 1e-14);
  CHECK(std::abs(r.b - 3) < 1e-14);
  CHECK(r.r_squared == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.kind == fit::ModelKind::kLinear);
}

TEST_CASE("linear residuals are orthogonal to [1, u]") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> uu(0, 2), noise(-0.1, 0.1);
  std::vector<Point> pts;
  for (int i = 0; i < 40; ++i) {
    const double u = uu(rng);
    pts.push_back({u, 0.5 - 2 * u + noise(rng)});
  }
  const auto r = fit::fit_linear(pts);
  double s0 = 0, s1 = 0;
  for (const auto& p : pts) {
    const double res = p.v - fit::predict(r, p.u);
    s0 += res;
    s1 += res * p.u;
  }
  CHECK(std::abs(s0) < 1e-10);
  CHECK(std::abs(s1) < 1e-10);
  CHECK(r.r_squared > 0.9);
  CHECK(r.r_squared <= 1.0);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(fit::fit_power_law(power_data(1, 1, 0, 2)), FitError);
  std::vector<Point> mixed{{0.1, 0.9}, {0.2, 1.1}, {0.3, 1.2}};
  CHECK_THROWS_AS(fit::fit_power_law(mixed, 1.0), FitError);
  std::vector<Point> nonpos{{0.0, 1.0}, {0.2, 1.1}, {0.3, 1.2}};
  CHECK_THROWS_AS(fit::fit_power_law(nonpos), FitError);
  std::vector<Point> same_u{{0.5, 1.0}, {0.5, 1.1}, {0.5, 1.2}};
  CHECK_THROWS_AS(fit::fit_power_law(same_u), FitError);
  CHECK_THROWS_AS(fit::fit_linear(same_u), FitError);
  CHECK_THROWS_AS(fit::fit_linear(std::vector<Point>{{1, 1}}), FitError);
}
