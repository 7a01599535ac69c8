#include "fermi/loa.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fermi/errors.hpp"
#include "fermi/quadrature.hpp"

namespace fermi::loa {
namespace {

using std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;

}  // namespace

void validate(const LoaParams& p) {
  if (!(p.k_fermi > 0.0) || !std::isfinite(p.k_fermi)) throw DomainError("k_F must be positive");
  if (!(p.beta > 0.0) || !std::isfinite(p.beta)) throw DomainError("beta must be positive");
}

bool in_validity_window(const LoaParams& p) {
  return p.beta >= kWindowBetaMin && p.beta <= kWindowBetaMax;
}

double y_function(double k, int mu, const LoaParams& p) {
  validate(p);
  if (mu != 2 && mu != 4 && mu != 8) throw DomainError("Y(k, mu) is defined for mu in {2, 4, 8}");
  if (!(k >= 0.0)) throw DomainError("Y(k, mu) requires k >= 0");

  const double c_mu = std::pow(mu / 2.0, 1.5) / (8.0 * kSqrtPi);
  const double width = p.beta * std::sqrt(static_cast<double>(mu));
  const double a = p.k_fermi / width;  // (k_F +- k)/width = a +- h
  const double h = k / width;

  // (exp(-(a+h)^2) - exp(-(a-h)^2)) / (2h) = -exp(-a^2-h^2) sinh(2ah)/h.
  double gauss_term;
  if (h == 0.0) {
    gauss_term = -2.0 * a * std::exp(-a * a);
  } else if (2.0 * a * h < 1.0) {
    gauss_term = -std::exp(-a * a - h * h) * std::sinh(2.0 * a * h) / h;
  } else {
    gauss_term = (std::exp(-(a + h) * (a + h)) - std::exp(-(a - h) * (a - h))) / (2.0 * h);
  }

  // int_0^{a+h} e^{-t^2} + sgn(a-h) int_0^{|a-h|} e^{-t^2} = (sqrt(pi)/2)(erf(a+h) + erf(a-h)).
  // Above the surface the two nearly cancel; erfc keeps the difference exact.
  const double integrals = (h > a) ? 0.5 * kSqrtPi * (std::erfc(h - a) - std::erfc(h + a))
                                   : 0.5 * kSqrtPi * (std::erf(a + h) + std::erf(a - h));
  return c_mu * (gauss_term + integrals);
}

WoundParameter wound_parameter(const LoaParams& p) {
  validate(p);
  const double r = p.k_fermi / p.beta;
  return {r * r * r / (3.0 * std::sqrt(2.0 * pi))};
}

double wound_parameter_by_quadrature(const LoaParams& p, double tol) {
  validate(p);
  const double rho = 2.0 * p.k_fermi * p.k_fermi * p.k_fermi / (3.0 * pi * pi);
  const double b2 = p.beta * p.beta;
  quad::Integrand f{[rho, b2](double r) {
                      const double g = std::exp(-b2 * r * r);  // f(r) - 1
                      return rho * 4.0 * pi * r * r * g * g;
                    },
                    {},
                    std::numeric_limits<double>::infinity()};
  return quad::integrate_semiinfinite(f, 0.0, tol).value;
}

namespace {

// Side of the surface passed explicitly: x k_F can round onto k_F.
double n_loa_side(double k, bool below, const LoaParams& p) {
  const double k_dir = wound_parameter(p).k_dir;
  const double y4 = y_function(k, 4, p);
  double n = 8.0 * (k_dir * y_function(k, 2, p) - y4 * y4);
  if (below) n += 1.0 - k_dir + y_function(k, 8, p);
  return n;
}

}  // namespace

double n_loa(double k, const LoaParams& p) {
  validate(p);
  if (!(k >= 0.0)) throw DomainError("n_LOA requires k >= 0");
  return n_loa_side(k, k < p.k_fermi, p);
}

double discontinuity(const LoaParams& p) {
  return 1.0 - wound_parameter(p).k_dir + y_function(p.k_fermi, 8, p);
}

MomentumDistribution as_distribution(const LoaParams& p) {
  validate(p);
  std::ostringstream label;
  label << "loa(k_F=" << p.k_fermi << ", beta=" << p.beta << ")";
  return MomentumDistribution(
      label.str(),
      [p](double x) {
        if (x == 1.0) throw DomainError("nbar is discontinuous at the Fermi surface x = 1");
        if (!(x >= 0.0)) throw DomainError("nbar requires x >= 0");
        return n_loa_side(x * p.k_fermi, x < 1.0, p);
      },
      {1.0}, TailKind::kExponential, 0.0);
}

}  // namespace fermi::loa
