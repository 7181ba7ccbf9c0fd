#pragma once

// Data-parallel max-gap reduction over an index range. Chunks are
// contiguous; the merge keeps the larger gap and, on ties, the smaller
// index, so the outcome does not depend on the thread count.

#include <cstddef>
#include <exception>
#include <limits>
#include <thread>
#include <vector>

#include "tnormlab/report.hpp"

namespace tnormlab::detail {

struct Best {
  double gap = -1.0;
  std::size_t index = std::numeric_limits<std::size_t>::max();
  Witness witness;

  bool found() const noexcept { return index != std::numeric_limits<std::size_t>::max(); }

  void offer(std::size_t i, const Witness& w) {
    if (w.gap > gap || (w.gap == gap && i < index)) {
      gap = w.gap;
      index = i;
      witness = w;
    }
  }
};

unsigned worker_count(std::size_t work_items);

template <class Fn>
Best max_gap(std::size_t count, Fn&& eval) {
  const unsigned workers = worker_count(count);
  std::vector<Best> local(workers);
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (count + workers - 1) / workers;

  auto run = [&](unsigned w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = begin + chunk < count ? begin + chunk : count;
    try {
      for (std::size_t i = begin; i < end; ++i) local[w].offer(i, eval(i));
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Best best;
  for (const Best& b : local) {
    if (b.found()) best.offer(b.index, b.witness);
  }
  return best;
}

}  // namespace tnormlab::detail
