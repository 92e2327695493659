#include "macid/triple_set.hpp"

#include <bit>

namespace macid {

TripleSet::TripleSet(Alphabet x, Alphabet y, Alphabet z, int n, bool fill)
    : x_(x), y_(y), z_(z), n_(n) {
  check_state_cap(x, y, z, n);
  xn_ = pow_u64(x.size, n);
  yn_ = pow_u64(y.size, n);
  zn_ = pow_u64(z.size, n);
  total_ = xn_ * yn_ * zn_;
  bits_.assign((total_ + 63) / 64, fill ? ~uint64_t{0} : 0);
  if (fill && (total_ & 63)) bits_.back() = (uint64_t{1} << (total_ & 63)) - 1;
}

uint64_t TripleSet::cardinality() const {
  uint64_t c = 0;
  for (uint64_t w : bits_) c += static_cast<uint64_t>(std::popcount(w));
  return c;
}

TripleSet TripleSet::complement() const {
  TripleSet out(x_, y_, z_, n_, false);
  for (size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = ~bits_[i];
  if (total_ & 63) out.bits_.back() &= (uint64_t{1} << (total_ & 63)) - 1;
  return out;
}

bool TripleSet::dims_match(Alphabet x, Alphabet y, Alphabet z, int n) const {
  return x_ == x && y_ == y && z_ == z && n_ == n;
}

}  // namespace macid
