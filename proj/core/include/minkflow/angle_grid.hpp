#pragma once

#include <numbers>

namespace minkflow {

/// Uniform periodic grid theta_i = i * 2pi / N on [0, 2pi).
class AngleGrid {
 public:
  /// Throws std::invalid_argument unless n >= 16 and n is even.
  explicit AngleGrid(int n);

  [[nodiscard]] int size() const { return n_; }
  [[nodiscard]] double spacing() const { return 2.0 * std::numbers::pi / n_; }
  [[nodiscard]] double angle(int i) const { return i * spacing(); }

  /// Periodic wrap of a node index.
  [[nodiscard]] int wrap(int i) const { return ((i % n_) + n_) % n_; }

  friend bool operator==(const AngleGrid&, const AngleGrid&) = default;

 private:
  int n_;
};

}  // namespace minkflow
