#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace fermi {

enum class TailKind { kPowerLaw, kExponential };

/// Dimensionless momentum distribution nbar(x), x = k/k_F, normalized so that
/// 3 * integral_0^inf x^2 nbar(x) dx = 1. Immutable after construction.
class MomentumDistribution {
 public:
  using Function = std::function<double(double)>;

  MomentumDistribution(std::string label, Function nbar, std::vector<double> singular_points,
                       TailKind tail, double tail_exponent);

  double operator()(double x) const { return nbar_(x); }

  const std::string& label() const noexcept { return label_; }
  /// Sorted, includes the Fermi surface x = 1.
  const std::vector<double>& singular_points() const noexcept { return singular_points_; }
  TailKind tail_kind() const noexcept { return tail_; }
  /// nbar ~ x^{-p} for power-law tails; +infinity for exponential tails.
  double tail_exponent() const noexcept { return tail_exponent_; }

 private:
  std::string label_;
  Function nbar_;
  std::vector<double> singular_points_;
  TailKind tail_;
  double tail_exponent_;
};

}  // namespace fermi
