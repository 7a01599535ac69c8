#include "fermi/distribution.hpp"

#include <algorithm>
#include <limits>

#include "fermi/errors.hpp"

namespace fermi {

MomentumDistribution::MomentumDistribution(std::string label, Function nbar,
                                           std::vector<double> singular_points, TailKind tail,
                                           double tail_exponent)
    : label_(std::move(label)),
      nbar_(std::move(nbar)),
      singular_points_(std::move(singular_points)),
      tail_(tail),
      tail_exponent_(tail == TailKind::kExponential ? std::numeric_limits<double>::infinity()
                                                    : tail_exponent) {
  if (!nbar_) throw DomainError("momentum distribution needs an evaluation function");
  if (tail_ == TailKind::kPowerLaw && !(tail_exponent_ > 3.0)) {
    // x^2 nbar must be integrable.
    throw DomainError("power-law tail exponent must exceed 3");
  }
  std::sort(singular_points_.begin(), singular_points_.end());
  singular_points_.erase(std::unique(singular_points_.begin(), singular_points_.end()),
                         singular_points_.end());
}

}  // namespace fermi
