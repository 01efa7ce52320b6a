#include "tfinv/parallel.hpp"

#include <algorithm>

namespace tfinv {

namespace {
int g_workers = 1;
}

void set_workers(int n) { g_workers = std::max(1, n); }
int workers() { return g_workers; }

} // namespace tfinv
