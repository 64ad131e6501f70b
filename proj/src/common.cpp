#include "slopkit/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace slopkit {

bool all_finite(const Vec& values) noexcept {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

std::size_t worker_count(std::size_t jobs) {
  if (jobs <= 1) return jobs;
  std::size_t limit = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SLOPKIT_THREADS")) {
    char* end = nullptr;
    const unsigned long parsed = std::strtoul(env, &end, 10);
    if (end != env && parsed >= 1) limit = std::min<std::size_t>(limit, parsed);
  }
  return std::min(jobs, limit);
}

}  // namespace slopkit
