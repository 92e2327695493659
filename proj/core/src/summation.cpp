#include "macid/summation.hpp"

namespace macid {

namespace {
unsigned g_parallelism = [] {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1u : hc;
}();
}  // namespace

void set_parallelism(unsigned n) { g_parallelism = n == 0 ? 1u : n; }

unsigned parallelism() { return g_parallelism; }

}  // namespace macid
