#pragma once

#include <array>
#include <optional>
#include <string>

#include "macid/density.hpp"

namespace macid {

struct RatePoint {
  double r1 = 0.0;  // nats per symbol
  double r2 = 0.0;

  RatePoint shifted(double gamma) const { return {r1 - gamma, r2 - gamma}; }
};

// One branch of the bound: omega1 = Pr{(X,Y,Z) outside T_{t,gamma}},
// omega2 = zeta over T_{t,gamma}, omega = 4*omega1 + 3*sqrt(omega2).
struct BranchOmega {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double omega = 0.0;
};

struct OmegaBreakdown {
  double gamma = 0.0;
  std::array<BranchOmega, 3> branch{};  // t = 1, 2, 3 at indices 0, 1, 2
  int min_branch = 0;                   // 1-based t achieving the min
  double omega_min = 0.0;
};

// Search family for the sup over input pairs. Grid modes walk i.i.d. product
// inputs over simplex grids; explicit pairs can be injected in any mode. The
// search yields a lower bound on the true sup over all n-letter inputs.
struct InputSearchPolicy {
  enum class Mode { IidGrid, IidGridAscent, ExplicitList };
  Mode mode = Mode::IidGrid;
  int grid_resolution = 10;  // simplex subdivisions per dimension
  int ascent_iters = 0;
  uint64_t seed = 0;
  std::vector<std::pair<SequenceDistribution, SequenceDistribution>> explicit_list;
};

// T_{t,gamma} as a materialized bitmask (zero-probability triples are out).
TripleSet t_set(int t, RatePoint rates, double gamma, const SequenceDistribution& px,
                const SequenceDistribution& py, const MacChannel& w, int n);

// zeta_{n,t,S}(rates, px, py | W^n): expectation of the exponential tilt over S.
double zeta(int t, RatePoint rates, const TripleSet& s, const SequenceDistribution& px,
            const SequenceDistribution& py, const MacChannel& w, int n);
double zeta(int t, RatePoint rates, const TripleSet& s, const JointContext& ctx);

// All branch quantities at one (rates, gamma, inputs) point, exactly.
OmegaBreakdown omega_point(RatePoint rates, double gamma, const JointContext& ctx);
OmegaBreakdown omega_point(RatePoint rates, double gamma, const SequenceDistribution& px,
                           const SequenceDistribution& py, const MacChannel& w, int n);

struct OmegaChannelResult {
  double omega = 0.0;  // max over searched inputs of omega_min (lower bound on the sup)
  OmegaBreakdown best{};
  std::optional<SequenceDistribution> best_px, best_py;
  uint64_t candidates = 0;
};

OmegaChannelResult omega_channel(RatePoint rates, double gamma, const MacChannel& w, int n,
                                 const InputSearchPolicy& policy);

// Enumerates the i.i.d. product-input candidates of a policy (grid order is
// lexicographic over simplex compositions; explicit pairs come first).
std::vector<std::pair<SequenceDistribution, SequenceDistribution>> policy_candidates(
    const MacChannel& w, int n, const InputSearchPolicy& policy);

// ---- identity verification for the bound functions ---------------------------

struct OmegaCheckInstance {
  MacChannel w;
  SequenceDistribution px, py;
  int n;
  RatePoint rates;
  std::string label;
};

struct OmegaIdentityReport {
  uint64_t instances = 0;
  uint64_t checks = 0;
  std::vector<std::string> violations;  // "<instance>: <check>: lhs=.. rhs=.. excess=.."
  std::vector<double> omega_values;     // every omega_min computed along the way

  bool ok() const { return violations.empty(); }
};

// Verifies the shift identities, exponential bounds, tau-difference bounds and
// ranges on each instance at the given (gamma, tau), 0 <= gamma < tau.
OmegaIdentityReport verify_omega_identities(std::span<const OmegaCheckInstance> instances,
                                            double gamma, double tau, double tol = 1e-10);

// Random test instance: seeded memoryless channel with alphabet sizes in
// [2, max_alpha], dense random inputs, rates in [0, 1.5].
OmegaCheckInstance make_random_instance(uint64_t seed, int max_alpha = 3, int max_n = 3);

}  // namespace macid
