#include "fplan/parallel.hpp"

#include <cstdlib>

namespace fplan {

int worker_count() {
  if (const char* env = std::getenv("PLANNER_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::max(2u, hw));
}

}  // namespace fplan
