#include <iostream>

#include "minkflow_app/acceptance.hpp"

int main() {
  const auto results = minkflow::app::run_acceptance({}, &std::cout);
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
