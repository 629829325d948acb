#include "radpair/parallel.hpp"

#include <cstdlib>
#include <string>

namespace radpair {

unsigned default_worker_count() {
  if (const char* env = std::getenv("RADPAIR_WORKERS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace radpair
