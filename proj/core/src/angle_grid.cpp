#include "minkflow/angle_grid.hpp"

#include <stdexcept>
#include <string>

namespace minkflow {

AngleGrid::AngleGrid(int n) : n_(n) {
  if (n < 16 || n % 2 != 0) {
    throw std::invalid_argument("angle grid needs an even node count >= 16, got " +
                                std::to_string(n));
  }
}

}  // namespace minkflow
