#include "minkflow/errors.hpp"

#include <sstream>

namespace minkflow {

namespace {

std::string list_nodes(const std::vector<int>& nodes) {
  std::ostringstream os;
  const std::size_t shown = std::min<std::size_t>(nodes.size(), 12);
  for (std::size_t i = 0; i < shown; ++i) {
    os << (i ? ", " : "") << nodes[i];
  }
  if (nodes.size() > shown) os << ", ... (" << nodes.size() << " total)";
  return os.str();
}

}  // namespace

NonPositiveCurvature::NonPositiveCurvature(std::vector<int> nodes)
    : Error("curvature must be strictly positive; offending nodes: " + list_nodes(nodes)),
      nodes_(std::move(nodes)) {}

ClosureViolation::ClosureViolation(double r_sin, double r_cos, double tolerance)
    : Error([&] {
        std::ostringstream os;
        os.precision(6);
        os << "curvature does not close a curve: R_sin = " << r_sin << ", R_cos = " << r_cos
           << " (tolerance " << tolerance << ")";
        return os.str();
      }()),
      r_sin_(r_sin),
      r_cos_(r_cos) {}

RadiusTooLarge::RadiusTooLarge(double r, double mu0)
    : Error("offset radius " + std::to_string(r) +
            " reaches the minimum curvature radius " + std::to_string(mu0) +
            "; the parallel curve would have corners") {}

NotSymmetric::NotSymmetric(double defect)
    : Error("curve is not centrally symmetric (defect " + std::to_string(defect) + ")"),
      defect_(defect) {}

}  // namespace minkflow
