#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace minkflow {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Support function data that cannot describe a smooth, symmetric, strictly convex ball.
class InvalidUnitBall : public Error {
 public:
  InvalidUnitBall(const std::string& what, std::vector<int> nodes = {})
      : Error(what), nodes_(std::move(nodes)) {}
  [[nodiscard]] const std::vector<int>& offending_nodes() const { return nodes_; }

 private:
  std::vector<int> nodes_;
};

/// Curvature samples with k <= 0 somewhere.
class NonPositiveCurvature : public Error {
 public:
  explicit NonPositiveCurvature(std::vector<int> nodes);
  [[nodiscard]] const std::vector<int>& offending_nodes() const { return nodes_; }

 private:
  std::vector<int> nodes_;
};

/// The first-harmonic moments of (a + a'')/k do not vanish, so k closes no curve.
class ClosureViolation : public Error {
 public:
  ClosureViolation(double r_sin, double r_cos, double tolerance);
  [[nodiscard]] double r_sin() const { return r_sin_; }
  [[nodiscard]] double r_cos() const { return r_cos_; }

 private:
  double r_sin_;
  double r_cos_;
};

class RadiusTooLarge : public Error {
 public:
  RadiusTooLarge(double r, double mu0);
};

class NotSymmetric : public Error {
 public:
  explicit NotSymmetric(double defect);
  [[nodiscard]] double defect() const { return defect_; }

 private:
  double defect_;
};

class NoBisectingChord : public Error {
 public:
  using Error::Error;
};

/// A time step that would leave the admissible set (positivity or closure).
class StepRejected : public Error {
 public:
  using Error::Error;
};

}  // namespace minkflow
