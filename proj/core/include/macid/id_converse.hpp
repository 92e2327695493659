#pragma once

#include "macid/bounds.hpp"
#include "macid/resolvability.hpp"

namespace macid {

// Decoding regions D_{i,j} subset Z^n for an N1 x N2 identification code,
// stored as word-aligned bitmask rows.
class DecoderArray {
 public:
  DecoderArray(uint64_t n1, uint64_t n2, uint64_t zn);

  uint64_t n1() const { return n1_; }
  uint64_t n2() const { return n2_; }
  uint64_t zn() const { return zn_; }
  uint64_t words_per_row() const { return wpr_; }

  void set(uint64_t i, uint64_t j, uint64_t z) {
    bits_[(i * n2_ + j) * wpr_ + (z >> 6)] |= uint64_t{1} << (z & 63);
  }
  bool contains(uint64_t i, uint64_t j, uint64_t z) const {
    return (bits_[(i * n2_ + j) * wpr_ + (z >> 6)] >> (z & 63)) & 1;
  }
  std::span<const uint64_t> row(uint64_t i, uint64_t j) const {
    return {bits_.data() + (i * n2_ + j) * wpr_, wpr_};
  }

 private:
  uint64_t n1_, n2_, zn_, wpr_;
  std::vector<uint64_t> bits_;
};

// Identification code: N1 x-input distributions, N2 y-input distributions,
// and (possibly overlapping) decoding regions per message pair.
struct IdCode {
  int n = 0;
  std::vector<SequenceDistribution> inputs1;
  std::vector<SequenceDistribution> inputs2;
  DecoderArray decoders;

  uint64_t n1() const { return inputs1.size(); }
  uint64_t n2() const { return inputs2.size(); }

  static IdCode from_json_text(const std::string& text, const MacChannel& w);
  static IdCode load(const std::string& path, const MacChannel& w);
  std::string to_json_text() const;
};

struct IdErrorReport {
  uint64_t n1 = 0, n2 = 0;
  std::vector<double> mu;      // row-major N1 x N2: Q_ij(D_ij^c)
  std::vector<double> lambda;  // max_{(k,l) != (i,j)} Q_kl(D_ij)
  double mu_max = 0, lambda_max = 0;
  double mu_avg = 0, lambda_avg = 0;
  double r1n = 0, r2n = 0;     // (1/n) log log N_i, nats; NaN-free only for N >= 2
  bool rate1_defined = false;  // N1 >= 2
  bool rate2_defined = false;
  bool degenerate_lambda = false;  // N1*N2 == 1: lambda defined as 0
};

// Exact mu/lambda matrices and summary statistics. Deduplicates input rows,
// responses and decoder masks so structured codes with huge N1*N2 stay cheap;
// throws CapExceededError when the distinct-class tables would not.
IdErrorReport evaluate_id_code(const IdCode& code, const MacChannel& w);

// Rate thresholds of the converse statements (nats/symbol).
double required_id_rate_max(double rate, int n, uint32_t alphabet_size);
double required_id_rate_avg(double rate, double tau, int n, uint32_t alphabet_size);

struct RateCheck {
  bool ok = false;
  double r1 = 0, r2 = 0;
  double required1 = 0, required2 = 0;
  double margin1 = 0, margin2 = 0;  // r - required
};

enum class ErrorCriterion { Max, Avg };

RateCheck check_rate_condition(const IdErrorReport& report, RatePoint rates,
                               ErrorCriterion criterion, double tau, uint32_t x_size,
                               uint32_t y_size, int n);

// nu_{n,tau}(R1, R2, |X|, |Y|): the three-term average-criterion slack,
// double-exponentially decaying in n.
double nu_value(int n, double tau, double r1, double r2, uint32_t x_size, uint32_t y_size);

struct ConverseVerdict {
  bool rate_ok = false;
  RateCheck rate;
  bool vacuous = false;    // error sum >= 1, or rate condition not met
  std::string label;
  double error_sum = 0;    // mu + lambda under the chosen criterion
  double lhs = 0;          // 1 - error_sum
  double omega = 0;        // searched bound value (code inputs injected)
  double nu = 0;           // 0 under the max criterion
  double rhs = 0;
  bool holds = false;      // lhs <= rhs
};

ConverseVerdict check_max_converse(const IdCode& code, const IdErrorReport& report,
                                   const MacChannel& w, RatePoint rates, double gamma,
                                   const InputSearchPolicy& policy);
ConverseVerdict check_avg_converse(const IdCode& code, const IdErrorReport& report,
                                   const MacChannel& w, RatePoint rates, double gamma,
                                   double tau, const InputSearchPolicy& policy);

// ---- collision demonstrator ----------------------------------------------------

struct CollisionPair {
  uint64_t i1, j1, i2, j2;
  double distance;  // exact d(Q_{i1 j1}, Q_{i2 j2})
};

struct CollisionReport {
  double eta = 0;            // clustering radius: searched omega value
  uint64_t clusters = 0;     // distinct approximate-response centers used
  uint64_t assigned = 0;     // cells with an accepted approximation within eta
  uint64_t unassigned = 0;
  std::vector<CollisionPair> collisions;         // via shared centers, d <= 2 eta
  std::vector<CollisionPair> oracle_collisions;  // exhaustive pairs with d <= 2 eta
  double mu_n = 0, lambda_n = 0;
  bool bound_consistent = true;  // 2 (1 - mu - lambda) <= d for every reported pair
};

// Quantizes the code's responses by the resolvability construction (one
// select_code run per distinct input pair) and reports near-coincident pairs,
// realizing the pigeonhole step of the converse at toy scale.
CollisionReport collision_demo(const IdCode& code, const MacChannel& w, RatePoint rates,
                               double gamma, uint64_t seed, int max_trials,
                               const InputSearchPolicy& policy);

// ---- toy code generators --------------------------------------------------------

// Point-mass inputs cycling over the sequence spaces; decoders are the argmax
// output of each cell's response.
IdCode make_point_mass_code(const MacChannel& w, int n, uint64_t n1, uint64_t n2);

// Distinct i.i.d. inputs spread over the parameter simplex with seeded jitter;
// decoders assign each z to the cell whose response strictly dominates there.
IdCode make_spread_iid_code(const MacChannel& w, int n, uint64_t n1, uint64_t n2, uint64_t seed);

// Inputs cycled from small pools of jittered i.i.d. distributions; decoders
// drawn per cell from a pool of random masks.
IdCode make_pooled_random_code(const MacChannel& w, int n, uint64_t n1, uint64_t n2,
                               uint64_t input_pool, uint64_t decoder_pool, uint64_t seed);

}  // namespace macid
