#include "macid/alphabet.hpp"

#include <cstdlib>
#include <string>

namespace macid {

uint64_t state_cap() {
  static const uint64_t cap = [] {
    if (const char* env = std::getenv("MACID_MAX_STATES")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v > 0) return static_cast<uint64_t>(v);
    }
    return kDefaultStateCap;
  }();
  return cap;
}

uint64_t pow_u64(uint64_t base, int exp) {
  uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > (uint64_t{1} << 62) / base)
      throw CapExceededError("sequence space size overflows: " + std::to_string(base) + "^" +
                             std::to_string(exp));
    r *= base;
  }
  return r;
}

void check_state_cap(Alphabet x, Alphabet y, Alphabet z, int n) {
  const uint64_t cap = state_cap();
  unsigned __int128 total = 1;
  for (uint64_t s : {static_cast<uint64_t>(x.size), static_cast<uint64_t>(y.size),
                     static_cast<uint64_t>(z.size)}) {
    for (int i = 0; i < n; ++i) {
      total *= s;
      if (total > cap)
        throw CapExceededError("enumeration cap exceeded: |X|=" + std::to_string(x.size) +
                               " |Y|=" + std::to_string(y.size) + " |Z|=" +
                               std::to_string(z.size) + " n=" + std::to_string(n) + " (cap " +
                               std::to_string(cap) + " states)");
    }
  }
}

SeqSpace::SeqSpace(Alphabet a, int n) : a_(a), n_(n) {
  if (a.size < 1) throw ValidationError("alphabet size must be >= 1");
  if (n < 1) throw ValidationError("block length must be >= 1");
  size_ = pow_u64(a.size, n);
}

void SeqSpace::decode(uint64_t index, std::span<uint32_t> out) const {
  for (int i = n_; i-- > 0;) {
    out[static_cast<size_t>(i)] = static_cast<uint32_t>(index % a_.size);
    index /= a_.size;
  }
}

std::vector<uint32_t> SeqSpace::decode(uint64_t index) const {
  std::vector<uint32_t> out(static_cast<size_t>(n_));
  decode(index, out);
  return out;
}

uint64_t SeqSpace::encode(std::span<const uint32_t> digits) const {
  uint64_t idx = 0;
  for (int i = 0; i < n_; ++i) {
    uint32_t d = digits[static_cast<size_t>(i)];
    if (d >= a_.size) throw ValidationError("symbol out of alphabet range");
    idx = idx * a_.size + d;
  }
  return idx;
}

}  // namespace macid
