#include "macid/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace macid {

BigUint::BigUint(uint64_t v) {
  if (v) {
    limbs_.push_back(static_cast<uint32_t>(v));
    if (v >> 32) limbs_.push_back(static_cast<uint32_t>(v >> 32));
  }
}

void BigUint::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint& BigUint::operator*=(uint64_t m) {
  if (m == 0 || limbs_.empty()) {
    limbs_.clear();
    return *this;
  }
  uint64_t lo = m & 0xffffffffULL, hi = m >> 32;
  std::vector<uint32_t> out(limbs_.size() + 3, 0);
  auto add_at = [&out](size_t i, uint64_t v) {
    while (v) {
      if (i >= out.size()) out.push_back(0);
      uint64_t s = out[i] + (v & 0xffffffffULL);
      out[i] = static_cast<uint32_t>(s);
      v = (v >> 32) + (s >> 32);
      ++i;
    }
  };
  for (size_t i = 0; i < limbs_.size(); ++i) {
    add_at(i, limbs_[i] * lo);
    if (hi) add_at(i + 1, limbs_[i] * hi);
  }
  limbs_ = std::move(out);
  trim();
  return *this;
}

BigUint& BigUint::operator+=(const BigUint& rhs) {
  size_t n = std::max(limbs_.size(), rhs.limbs_.size());
  limbs_.resize(n + 1, 0);
  uint64_t carry = 0;
  for (size_t i = 0; i < n; ++i) {
    uint64_t s = carry + limbs_[i] + (i < rhs.limbs_.size() ? rhs.limbs_[i] : 0);
    limbs_[i] = static_cast<uint32_t>(s);
    carry = s >> 32;
  }
  limbs_[n] = static_cast<uint32_t>(carry);
  trim();
  return *this;
}

BigUint& BigUint::divide_exact(uint64_t d) {
  if (d == 0) throw std::invalid_argument("BigUint: divide by zero");
  if (d >> 32) throw std::invalid_argument("BigUint: divisor too large");
  uint64_t rem = 0;
  for (size_t i = limbs_.size(); i-- > 0;) {
    uint64_t cur = (rem << 32) | limbs_[i];
    limbs_[i] = static_cast<uint32_t>(cur / d);
    rem = cur % d;
  }
  if (rem != 0) throw std::invalid_argument("BigUint: division not exact");
  trim();
  return *this;
}

bool BigUint::operator<(const BigUint& rhs) const {
  if (limbs_.size() != rhs.limbs_.size()) return limbs_.size() < rhs.limbs_.size();
  for (size_t i = limbs_.size(); i-- > 0;)
    if (limbs_[i] != rhs.limbs_[i]) return limbs_[i] < rhs.limbs_[i];
  return false;
}

bool BigUint::operator<=(const BigUint& rhs) const { return !(rhs < *this); }

uint64_t BigUint::to_u64() const {
  if (limbs_.size() > 2) throw std::overflow_error("BigUint: does not fit u64");
  uint64_t v = 0;
  if (limbs_.size() > 1) v = static_cast<uint64_t>(limbs_[1]) << 32;
  if (!limbs_.empty()) v |= limbs_[0];
  return v;
}

std::string BigUint::to_string() const {
  if (limbs_.empty()) return "0";
  std::vector<uint32_t> tmp = limbs_;
  std::string digits;
  while (!tmp.empty()) {
    uint64_t rem = 0;
    for (size_t i = tmp.size(); i-- > 0;) {
      uint64_t cur = (rem << 32) | tmp[i];
      tmp[i] = static_cast<uint32_t>(cur / 10);
      rem = cur % 10;
    }
    digits.push_back(static_cast<char>('0' + rem));
    while (!tmp.empty() && tmp.back() == 0) tmp.pop_back();
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

BigUint BigUint::binomial(uint64_t n, uint64_t k) {
  if (k > n) return BigUint();
  if (k > n - k) k = n - k;
  BigUint acc(1);
  // multiply/divide alternately; C(n, i) stays integral at every step
  for (uint64_t i = 1; i <= k; ++i) {
    acc *= (n - k + i);
    acc.divide_exact(i);
  }
  return acc;
}

BigUint BigUint::pow(uint64_t base, uint64_t exp) {
  BigUint acc(1);
  for (uint64_t i = 0; i < exp; ++i) acc *= base;
  return acc;
}

}  // namespace macid
