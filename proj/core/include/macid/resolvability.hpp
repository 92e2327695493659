#pragma once

#include "macid/bigint.hpp"
#include "macid/bounds.hpp"

namespace macid {

// Number of m-types on a k-point space, C(m+k-1, k-1), exactly; also checks
// the k^m cardinality bound (with k = alphabet_size^n this is the |X|^{nM}
// bound used by the converse counting argument).
BigUint count_m_types(uint64_t alphabet_size_pow_n, uint64_t m);

// Codeword lists realizing M1-/M2-type approximations of (px, py). Induced
// distributions have all masses integer multiples of 1/M, held as counts.
struct ResolvabilityCode {
  uint64_t m1 = 0, m2 = 0;
  std::vector<uint64_t> codewords1;  // dense X^n indices, size m1
  std::vector<uint64_t> codewords2;  // dense Y^n indices, size m2
  uint64_t seed = 0;

  std::vector<uint64_t> counts1(uint64_t xn) const;
  std::vector<uint64_t> counts2(uint64_t yn) const;
  SequenceDistribution induced_px(Alphabet x, int n) const;
  SequenceDistribution induced_py(Alphabet y, int n) const;
};

// Codewords drawn i.i.d. from (px, py) by inverse CDF over the dense index;
// bit-for-bit reproducible for a fixed seed, independent of evaluation order.
ResolvabilityCode sample_code(const SequenceDistribution& px, const SequenceDistribution& py,
                              uint64_t m1, uint64_t m2, int n, uint64_t seed);

// M_t = ceil(e^{n R_t}), guarded against FP wobble at integer boundaries.
uint64_t codebook_size(double rate, int n);

struct ApproxResponses {
  ResponseMeasure q1;  // response of (approx X, true Y)
  ResponseMeasure q2;  // response of (true X, approx Y)
  ResponseMeasure q3;  // response of (approx X, approx Y)

  const ResponseMeasure& at(int t) const { return t == 1 ? q1 : t == 2 ? q2 : q3; }
};

ApproxResponses approx_responses(const ResolvabilityCode& code, const SequenceDistribution& px,
                                 const SequenceDistribution& py, const MacChannel& w, int n);

struct BranchDerand {
  double lambda = 0.0;       // mass of the approximate partial response on S^c
  double phi = 0.0;          // L1 gap of the partial responses on S
  double theta = 0.0;        // E[1_{S^c}] + sqrt(zeta)
  double zeta = 0.0;         // zeta_{n,t,S}
  double outside_prob = 0.0; // E[1_{S^c}] under the true inputs
  bool vacuous = false;      // theta == 0 branch excluded (lambda+phi must be 0)
};

struct DerandomizationRecord {
  std::array<BranchDerand, 3> branch{};
  double criterion = 0.0;  // sum_t (lambda_t + phi_t) / theta_t
  bool accepted = false;   // criterion <= 3
};

DerandomizationRecord derandomization_record(const ResolvabilityCode& code,
                                             const SequenceDistribution& px,
                                             const SequenceDistribution& py, const MacChannel& w,
                                             int n, const TripleSet& s1, const TripleSet& s2,
                                             const TripleSet& s3, RatePoint rates);

struct SelectResult {
  bool success = false;
  ResolvabilityCode code;
  DerandomizationRecord record;
  int trials_used = 0;
  double best_criterion = 0.0;        // smallest criterion seen across trials
  std::array<double, 3> d_exact{};    // d(Q, approx response t), exact
  std::array<double, 3> bound{};      // 4 E[1_{S_t^c}] + 3 sqrt(zeta_t)
  bool certificate_ok = false;        // d_exact <= bound for all t
};

// Resamples codebooks until the derandomization criterion accepts, then
// certifies the distance bound per branch by exact computation. S_t defaults
// to T_{t,gamma} at the given rates.
SelectResult select_code(const SequenceDistribution& px, const SequenceDistribution& py,
                         const MacChannel& w, int n, RatePoint rates, double gamma,
                         int max_trials, uint64_t seed);

// Same, with caller-supplied sets.
SelectResult select_code_with_sets(const SequenceDistribution& px,
                                   const SequenceDistribution& py, const MacChannel& w, int n,
                                   RatePoint rates, const TripleSet& s1, const TripleSet& s2,
                                   const TripleSet& s3, int max_trials, uint64_t seed);

// Per-seed experiment rows (CLI `resolve` payload).
struct ResolveRow {
  int n;
  double r1, r2;
  int t;
  double d_exact;
  double bound;
  bool accepted;
  int trials_used;
  uint64_t seed;
};

std::vector<ResolveRow> resolve_rows(const SequenceDistribution& px,
                                     const SequenceDistribution& py, const MacChannel& w, int n,
                                     RatePoint rates, double gamma, int max_trials,
                                     std::span<const uint64_t> seeds);

// Aggregate sweep over block lengths and rate points.
struct SweepRow {
  int n;
  double r1, r2;
  int t;
  double d_mean, d_min, d_max;
  double bound;
  double accept_rate;
};

// Inputs given per letter and extended i.i.d. to each block length.
std::vector<SweepRow> resolvability_sweep(const MacChannel& w, std::span<const double> px_letter,
                                          std::span<const double> py_letter,
                                          std::span<const int> n_list,
                                          std::span<const RatePoint> rate_grid, double gamma,
                                          int max_trials, std::span<const uint64_t> seeds);

}  // namespace macid
