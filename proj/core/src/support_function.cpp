#include "minkflow/support_function.hpp"

#include <algorithm>
#include <string>

#include "minkflow/errors.hpp"

namespace minkflow {

SupportFunction SupportFunction::from_harmonics(std::span<const Harmonic> harmonics) {
  if (harmonics.empty()) throw InvalidUnitBall("unit ball needs at least one harmonic");
  int max_order = 0;
  for (const auto& h : harmonics) {
    if (h.order < 0) {
      throw InvalidUnitBall("harmonic order must be nonnegative, got " + std::to_string(h.order));
    }
    if (h.order % 2 != 0) {
      throw InvalidUnitBall("harmonic of odd order " + std::to_string(h.order) +
                            " is not allowed: the unit ball must be origin-symmetric");
    }
    if (h.order == 0 && h.sin_coef != 0.0) {
      throw InvalidUnitBall("harmonic of order 0 cannot carry a sine coefficient");
    }
    max_order = std::max(max_order, h.order);
  }
  std::vector<double> c(max_order + 1, 0.0), s(max_order + 1, 0.0);
  std::vector<bool> seen(max_order + 1, false);
  for (const auto& h : harmonics) {
    if (seen[h.order]) {
      throw InvalidUnitBall("harmonic of order " + std::to_string(h.order) + " given twice");
    }
    seen[h.order] = true;
    c[h.order] = h.cos_coef;
    s[h.order] = h.sin_coef;
  }
  std::vector<Harmonic> stored(harmonics.begin(), harmonics.end());
  std::ranges::sort(stored, {}, &Harmonic::order);
  return SupportFunction(TrigPolynomial(std::move(c), std::move(s)), std::move(stored));
}

SupportFunction SupportFunction::euclidean() {
  const Harmonic unit{0, 1.0, 0.0};
  return from_harmonics(std::span(&unit, 1));
}

}  // namespace minkflow
