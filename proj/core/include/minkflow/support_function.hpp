#pragma once

#include <span>
#include <vector>

#include "minkflow/trig_polynomial.hpp"

namespace minkflow {

/// One Fourier term of a support function: cos_coef cos(order t) + sin_coef sin(order t).
struct Harmonic {
  int order{0};
  double cos_coef{0.0};
  double sin_coef{0.0};

  friend bool operator==(const Harmonic&, const Harmonic&) = default;
};

/// Support function a(theta) of an origin-symmetric unit ball, stored as a
/// truncated Fourier series.
///
/// Only even orders are accepted, which makes a(theta + pi) = a(theta) hold
/// exactly. Positivity and strict convexity depend on the sampling grid and are
/// checked when a UnitBall is built.
class SupportFunction {
 public:
  /// Throws InvalidUnitBall naming the first odd, negative or duplicated order.
  static SupportFunction from_harmonics(std::span<const Harmonic> harmonics);

  /// a == 1, the Euclidean disc.
  static SupportFunction euclidean();

  [[nodiscard]] double value(double theta) const { return poly_(theta); }
  [[nodiscard]] double d1(double theta) const { return poly_.derivative(theta, 1); }
  [[nodiscard]] double d2(double theta) const { return poly_.derivative(theta, 2); }
  [[nodiscard]] double d3(double theta) const { return poly_.derivative(theta, 3); }

  [[nodiscard]] int max_order() const { return poly_.degree(); }
  [[nodiscard]] const TrigPolynomial& polynomial() const { return poly_; }
  [[nodiscard]] const std::vector<Harmonic>& harmonics() const { return harmonics_; }

 private:
  SupportFunction(TrigPolynomial poly, std::vector<Harmonic> harmonics)
      : poly_(std::move(poly)), harmonics_(std::move(harmonics)) {}

  TrigPolynomial poly_;
  std::vector<Harmonic> harmonics_;
};

}  // namespace minkflow
