#pragma once

#include <span>
#include <vector>

#include "macid/alphabet.hpp"

namespace macid {

inline constexpr double kProbTol = 1e-12;

// Exact probability vector over the dense index of A^n. Immutable after
// construction; validated to be nonnegative and normalized within kProbTol.
class SequenceDistribution {
 public:
  SequenceDistribution(Alphabet a, int n, std::vector<double> probs);

  static SequenceDistribution uniform(Alphabet a, int n);
  static SequenceDistribution point_mass(Alphabet a, int n, uint64_t seq_index);
  // n-fold product of one per-letter distribution.
  static SequenceDistribution iid(Alphabet a, int n, std::span<const double> letter);
  // Random point of the simplex (normalized exponentials), reproducible.
  static SequenceDistribution random(Alphabet a, int n, uint64_t seed);

  Alphabet alphabet() const { return a_; }
  int block_len() const { return n_; }
  uint64_t size() const { return probs_.size(); }
  double operator[](uint64_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

  // Cumulative distribution over the dense index, for inverse-CDF sampling.
  const std::vector<double>& cdf() const;

  bool operator==(const SequenceDistribution& rhs) const {
    return a_ == rhs.a_ && n_ == rhs.n_ && probs_ == rhs.probs_;
  }

 private:
  Alphabet a_;
  int n_;
  std::vector<double> probs_;
  mutable std::vector<double> cdf_;
};

// Nonnegative measure on Z^n. A full response totals 1; a partial response
// totals at most 1.
class ResponseMeasure {
 public:
  ResponseMeasure(Alphabet a, int n, std::vector<double> mass);

  Alphabet alphabet() const { return a_; }
  int block_len() const { return n_; }
  uint64_t size() const { return mass_.size(); }
  double operator[](uint64_t i) const { return mass_[i]; }
  std::span<const double> mass() const { return mass_; }
  double total() const { return total_; }

  // Mass on a subset of Z^n given as a membership predicate over indices.
  template <class Pred>
  double mass_on(Pred pred) const {
    double s = 0.0;
    for (uint64_t i = 0; i < mass_.size(); ++i)
      if (pred(i)) s += mass_[i];
    return s;
  }

 private:
  Alphabet a_;
  int n_;
  std::vector<double> mass_;
  double total_;
};

// L1 distance sum |p - q| (unnormalized convention: 2 for disjoint supports).
double variational_distance(const ResponseMeasure& p, const ResponseMeasure& q);

}  // namespace macid
