#include "helix/parallel.hpp"

#include <algorithm>
#include <atomic>

namespace helix {
namespace {

std::atomic<int> g_max_threads{0};  // 0: use hardware concurrency

}  // namespace

int max_threads() {
  int n = g_max_threads.load();
  if (n > 0) return n;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void set_max_threads(int n) { g_max_threads.store(std::max(n, 0)); }

}  // namespace helix
