#include "macid/distribution.hpp"

#include <cmath>
#include <string>

#include "macid/rng.hpp"
#include "macid/summation.hpp"

namespace macid {

namespace {
double checked_sum(std::span<const double> v, const char* what) {
  PairwiseSum acc;
  for (double p : v) {
    if (!(p >= 0.0)) throw ValidationError(std::string(what) + ": negative or NaN entry");
    acc.add(p);
  }
  return acc.value();
}
}  // namespace

SequenceDistribution::SequenceDistribution(Alphabet a, int n, std::vector<double> probs)
    : a_(a), n_(n), probs_(std::move(probs)) {
  SeqSpace space(a, n);
  if (probs_.size() != space.size())
    throw DimensionError("distribution vector has " + std::to_string(probs_.size()) +
                         " entries, expected " + std::to_string(space.size()));
  double total = checked_sum(probs_, "distribution");
  if (std::abs(total - 1.0) > kProbTol)
    throw ValidationError("distribution sums to " + std::to_string(total) + ", expected 1");
}

SequenceDistribution SequenceDistribution::uniform(Alphabet a, int n) {
  SeqSpace space(a, n);
  std::vector<double> p(space.size(), 1.0 / static_cast<double>(space.size()));
  return SequenceDistribution(a, n, std::move(p));
}

SequenceDistribution SequenceDistribution::point_mass(Alphabet a, int n, uint64_t seq_index) {
  SeqSpace space(a, n);
  if (seq_index >= space.size()) throw ValidationError("point mass index out of range");
  std::vector<double> p(space.size(), 0.0);
  p[seq_index] = 1.0;
  return SequenceDistribution(a, n, std::move(p));
}

SequenceDistribution SequenceDistribution::iid(Alphabet a, int n, std::span<const double> letter) {
  if (letter.size() != a.size) throw DimensionError("per-letter vector size mismatch");
  SeqSpace space(a, n);
  std::vector<double> p(space.size());
  std::vector<uint32_t> digits(static_cast<size_t>(n));
  for (uint64_t i = 0; i < space.size(); ++i) {
    space.decode(i, digits);
    double v = 1.0;
    for (uint32_t d : digits) v *= letter[d];
    p[i] = v;
  }
  // renormalize away the product round-off so the constructor tolerance holds
  PairwiseSum acc;
  for (double v : p) acc.add(v);
  double total = acc.value();
  if (total <= 0.0) throw ValidationError("per-letter distribution sums to zero");
  for (double& v : p) v /= total;
  return SequenceDistribution(a, n, std::move(p));
}

SequenceDistribution SequenceDistribution::random(Alphabet a, int n, uint64_t seed) {
  SeqSpace space(a, n);
  std::vector<double> p(space.size());
  PairwiseSum acc;
  for (uint64_t i = 0; i < space.size(); ++i) {
    p[i] = -std::log(1.0 - counter_u01(seed, /*stream=*/0x5d, i));
    acc.add(p[i]);
  }
  double total = acc.value();
  for (double& v : p) v /= total;
  return SequenceDistribution(a, n, std::move(p));
}

const std::vector<double>& SequenceDistribution::cdf() const {
  if (cdf_.empty()) {
    cdf_.resize(probs_.size());
    double run = 0.0;
    for (uint64_t i = 0; i < probs_.size(); ++i) {
      run += probs_[i];
      cdf_[i] = run;
    }
    cdf_.back() = 1.0;
  }
  return cdf_;
}

ResponseMeasure::ResponseMeasure(Alphabet a, int n, std::vector<double> mass)
    : a_(a), n_(n), mass_(std::move(mass)) {
  SeqSpace space(a, n);
  if (mass_.size() != space.size())
    throw DimensionError("measure vector has " + std::to_string(mass_.size()) +
                         " entries, expected " + std::to_string(space.size()));
  total_ = checked_sum(mass_, "measure");
}

double variational_distance(const ResponseMeasure& p, const ResponseMeasure& q) {
  if (!(p.alphabet() == q.alphabet()) || p.block_len() != q.block_len())
    throw DimensionError("variational distance: mismatched alphabets or block lengths");
  PairwiseSum acc;
  for (uint64_t i = 0; i < p.size(); ++i) acc.add(std::abs(p[i] - q[i]));
  return acc.value();
}

}  // namespace macid
