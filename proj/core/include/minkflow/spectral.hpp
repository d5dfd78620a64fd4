#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace minkflow {

/// Trigonometric interpolant of N equispaced samples on [0, 2pi), N even.
///
/// Used wherever a sampled periodic quantity must be evaluated or integrated
/// off the grid: partial integrals of smooth periodic data are spectrally
/// accurate this way, where a cumulative trapezoid rule would only be O(h^2).
class PeriodicInterpolant {
 public:
  PeriodicInterpolant() = default;
  explicit PeriodicInterpolant(std::span<const double> samples);

  [[nodiscard]] int size() const { return n_; }
  [[nodiscard]] double mean() const { return coefs_.empty() ? 0.0 : coefs_[0].real(); }

  [[nodiscard]] double operator()(double theta) const;
  /// Exact integral of the interpolant over [0, theta] (theta may exceed 2pi).
  [[nodiscard]] double integral_from_zero(double theta) const;
  [[nodiscard]] double integral(double theta0, double theta1) const {
    return integral_from_zero(theta1) - integral_from_zero(theta0);
  }

  /// Complex coefficient of e^{i m theta}, 0 <= m <= N/2.
  [[nodiscard]] std::complex<double> coefficient(int m) const { return coefs_.at(m); }

  /// The same interpolant plus a constant.
  [[nodiscard]] PeriodicInterpolant shifted(double c) const;

 private:
  friend struct PeriodicPrimitive periodic_primitive(std::span<const double> samples);
  friend std::pair<struct PeriodicPrimitive, struct PeriodicPrimitive> periodic_primitive_pair(
      std::span<const double> u, std::span<const double> v);

  int n_{0};
  std::vector<std::complex<double>> coefs_;
};

/// Mean-free antiderivative samples together with their interpolant.
struct PeriodicPrimitive {
  std::vector<double> values;
  PeriodicInterpolant interpolant;
  double mean{0.0};
};

/// As periodic_antiderivative, reusing one transform for the interpolant.
PeriodicPrimitive periodic_primitive(std::span<const double> samples);

/// Primitives of two real sequences through a single complex transform.
std::pair<PeriodicPrimitive, PeriodicPrimitive> periodic_primitive_pair(std::span<const double> u,
                                                                         std::span<const double> v);

/// Samples of the mean-free antiderivative F with F(0) = 0 and F' = f - mean(f).
/// Returns the removed mean through `mean_out` when given.
std::vector<double> periodic_antiderivative(std::span<const double> samples,
                                            double* mean_out = nullptr);

/// Periodic trapezoid rule sum_i f_i * 2pi/N.
double periodic_integral(std::span<const double> samples);

}  // namespace minkflow
