#pragma once

#include <vector>

namespace minkflow {

/// Real trigonometric polynomial c_0 + sum_{m=1..M} (c_m cos m t + s_m sin m t).
///
/// Evaluation, differentiation, products and definite integrals are exact, so
/// quantities derived from a band-limited support function carry no
/// discretization error of their own.
class TrigPolynomial {
 public:
  TrigPolynomial() : cos_(1, 0.0), sin_(1, 0.0) {}
  TrigPolynomial(std::vector<double> cos_coefs, std::vector<double> sin_coefs);

  [[nodiscard]] int degree() const { return static_cast<int>(cos_.size()) - 1; }
  [[nodiscard]] double cos_coef(int m) const { return m <= degree() ? cos_[m] : 0.0; }
  [[nodiscard]] double sin_coef(int m) const { return m <= degree() ? sin_[m] : 0.0; }

  [[nodiscard]] double operator()(double t) const;
  /// Value of the n-th derivative at t.
  [[nodiscard]] double derivative(double t, int n) const;
  [[nodiscard]] TrigPolynomial differentiated(int n = 1) const;

  /// Exact integral over [t0, t1].
  [[nodiscard]] double integrate(double t0, double t1) const;

  friend TrigPolynomial operator+(const TrigPolynomial& a, const TrigPolynomial& b);
  friend TrigPolynomial operator*(const TrigPolynomial& a, const TrigPolynomial& b);
  friend TrigPolynomial operator*(double s, const TrigPolynomial& a);

 private:
  std::vector<double> cos_;
  std::vector<double> sin_;
};

}  // namespace minkflow
