#include "sweep.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace tnormlab::detail {

unsigned worker_count(std::size_t work_items) {
  constexpr std::size_t kMinItemsPerWorker = 4096;
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TNORMLAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) hw = static_cast<unsigned>(n);
  }
  const std::size_t by_work = std::max<std::size_t>(1, work_items / kMinItemsPerWorker);
  return static_cast<unsigned>(std::min<std::size_t>(hw, by_work));
}

}  // namespace tnormlab::detail
