#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fermi/errors.hpp"
#include "fermi/hardsphere.hpp"
#include "fermi/loa.hpp"
#include "fermi/measures.hpp"
#include "oracle/graded_mesh.hpp"

using namespace fermi;
using namespace fermi::measures;

namespace {

MomentumDistribution hs(double y) { return hardsphere::as_distribution({4, y}); }

Options window(double x_max) {
  Options o;
  o.x_max = x_max;
  return o;
}

}  // namespace

TEST_CASE("ideal step") {
  const auto d = hs(0.0);
  CHECK(std::abs(entropy_cor(d)) < 1e-12);
  CHECK(std::abs(disequilibrium_cor(d) - 1) < 1e-12);
  CHECK(std::abs(complexity(d) - 1) < 1e-12);
  CHECK(information_content(0.0) == 1.0);
}

TEST_CASE("full-tail values at y = 0.3 and 0.5") {
  // Independent high-precision integrations of the same definitions.
  const auto d3 = hs(0.3);
  CHECK(std::abs(entropy_cor(d3) - 0.3879938112946515) < 1e-8);
  CHECK(std::abs(disequilibrium_cor(d3) - 0.9145529207540164) < 1e-8);
  CHECK(std::abs(complexity(d3) - 1.348069901665906) < 1e-7);
  const auto d5 = hs(0.5);
  CHECK(std::abs(entropy_cor(d5) - 0.9484574153145879) < 1e-8);
  CHECK(std::abs(disequilibrium_cor(d5) - 0.7729898338031137) < 1e-8);
}

TEST_CASE("window x <= 5") {
  const auto o = window(5.0);
  CHECK(std::abs(entropy_cor(hs(0.3), o) - 0.278338787307253) < 1e-8);
  CHECK(std::abs(disequilibrium_cor(hs(0.3), o) - 0.9145528903081676) < 1e-8);
  CHECK(std::abs(entropy_cor(hs(0.5), o) - 0.6649043792952896) < 1e-8);
  CHECK(std::abs(disequilibrium_cor(hs(0.5), o) - 0.7729895988814402) < 1e-8);
}

TEST_CASE("y = 0.5 against the published power laws (window x <= 5)") {
  const auto o = window(5.0);
  const auto d = hs(0.5);
  CHECK(entropy_cor(d, o) == doctest::Approx(2.16379 * std::pow(0.5, 1.67053)).epsilon(0.10));
  CHECK(disequilibrium_cor(d, o) ==
        doctest::Approx(1 - 0.79871 * std::pow(0.5, 1.83155)).epsilon(0.10));
  CHECK(complexity(d, o) == doctest::Approx(1 + 1.68358 * std::pow(0.5, 1.67566)).epsilon(0.10));
}

TEST_CASE("graded-mesh oracle at y = 0.3") {
  const auto ref = oracle::hard_sphere({4, 0.3});
  CHECK(std::abs(ref.norm - 1) < 1e-8);
  Options o;
  o.tol = 1e-10;
  CHECK(std::abs(entropy_cor(hs(0.3), o) - ref.s_cor) < 1e-6);
  CHECK(std::abs(disequilibrium_cor(hs(0.3), o) - ref.d_cor) < 1e-8);
}

TEST_CASE("complexity identity with factors at different tolerances") {
  const auto d = hs(0.3);
  Options loose, tight;
  loose.tol = 1e-7;
  tight.tol = 1e-11;
  const double c = complexity(d, tight);
  const double s = entropy_cor(d, tight);
  const double dd = disequilibrium_cor(d, tight);
  CHECK(std::abs(c / (dd * std::exp(s)) - 1) < 1e-12);
  CHECK(std::abs(complexity(d, loose) - c) < 1e-6);
  const auto m = evaluate(d, 0.3, hardsphere::discontinuity({4, 0.3}), std::nullopt);
  CHECK(std::abs(m.complexity / (m.d_cor * std::exp(m.s_cor)) - 1) < 1e-15);
}

TEST_CASE("monotone in y, with and without the window") {
  for (double x_max : {5.0, std::numeric_limits<double>::infinity()}) {
    const auto o = window(x_max);
    double ps = -1, pd = 2, pc = 0;
    for (double y = 0.05; y <= 0.5501; y += 0.025) {
      const auto m = evaluate(hs(y), y, 0, std::nullopt, o);
      CAPTURE(y);
      CHECK(m.s_cor > ps);
      CHECK(m.d_cor < pd);
      CHECK(m.complexity > pc);
      CHECK(m.s_cor >= 0);
      ps = m.s_cor;
      pd = m.d_cor;
      pc = m.complexity;
    }
  }
}

TEST_CASE("windowed entropy against a graded trapezoid over [0, 5]") {
  const hardsphere::HardSphereParams p{4, 0.4};
  const auto o = window(5.0);
  auto ent = [&](double x) {
    if (x == 1.0) return 0.0;
    const double n = hardsphere::nbar(x, p);
    return x * x * n * std::log(n);
  };
  const double ref = -3 * (oracle::graded_trapezoid(ent, 0.0, 1.0, 400000) +
                              oracle::graded_trapezoid(ent, 1.0, 5.0, 600000));
  CHECK(std::abs(entropy_cor(hardsphere::as_distribution(p), o) - ref) < 1e-6);
}

TEST_CASE("dimensional forms") {
  const hardsphere::SystemScale s(1.33);
  const auto ideal = hs(0.0);
  CHECK(entropy_total(ideal, s) == doctest::Approx(2.2879).epsilon(1e-4));
  CHECK(disequilibrium_total(ideal, s) == doctest::Approx(0.10148).epsilon(1e-4));
  const auto d = hs(0.3);
  const double c = complexity(d);
  for (double kf : {1.0, 1.33}) {
    const hardsphere::SystemScale sk(kf);
    const double ck = disequilibrium_total(d, sk) * information_content(entropy_total(d, sk));
    CHECK(std::abs(ck / c - 1) < 1e-12);
  }
}

TEST_CASE("LOA measures depend on k_F / beta only") {
  const auto a = loa::as_distribution({1.0, 1.5 / 1.33});
  const auto b = loa::as_distribution({1.33, 1.5});
  CHECK(std::abs(complexity(a) / complexity(b) - 1) < 1e-12);
}

TEST_CASE("LOA trends versus 1 - Z") {
  double pw = 0, ps = -1, pd = 2, pc = 0;
  for (double beta : {2.482, 1.5, 1.01}) {
    const loa::LoaParams p{1.33, beta};
    const auto m = evaluate(loa::as_distribution(p), beta, loa::discontinuity(p), std::nullopt);
    CHECK(1 - m.z > pw);
    CHECK(m.s_cor > ps);
    CHECK(m.d_cor < pd);
    CHECK(m.complexity > pc);
    pw = 1 - m.z;
    ps = m.s_cor;
    pd = m.d_cor;
    pc = m.complexity;
  }
}

TEST_CASE("LOA approaches the ideal gas as beta grows") {
  const auto m = evaluate(loa::as_distribution({1.33, 1e3}), 1e3, 0, std::nullopt);
  CHECK(std::abs(m.s_cor) < 1e-9);
  CHECK(std::abs(m.d_cor - 1) < 1e-9);
  CHECK(std::abs(m.complexity - 1) < 1e-9);
}

TEST_CASE("negative distributions are rejected") {
  const MomentumDistribution bad("bad", [](double x) { return x < 1 ? 1.0 : -1e-3 / (x * x * x * x); },
                                 {1.0}, TailKind::kPowerLaw, 4.0);
  CHECK_THROWS_AS(entropy_cor(bad), DistributionError);
  CHECK_THROWS_AS(disequilibrium_cor(bad), DistributionError);
  const MomentumDistribution noise("noise",
                                   [](double x) { return x < 1 ? 1.0 : -1e-14 / (x * x * x * x); },
                                   {1.0}, TailKind::kPowerLaw, 4.0);
  CHECK(std::abs(disequilibrium_cor(noise) - 1) < 1e-10);
  CHECK_THROWS_AS(entropy_cor(hs(0.3), window(0.5)), DomainError);
}
