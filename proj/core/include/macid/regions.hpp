#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "macid/bounds.hpp"
#include "macid/spectrum.hpp"

namespace macid {

// {(R1, R2) >= 0 : R1 <= c1, R2 <= c2, R1 + R2 <= c12}.
struct Pentagon {
  double c1 = 0, c2 = 0, c12 = 0;

  // smallest slack across the three faces; >0 strictly inside, <0 outside
  double margin(RatePoint p) const {
    return std::min({c1 - p.r1, c2 - p.r2, c12 - p.r1 - p.r2});
  }
};

// A rectangle {R1 <= a, R2 <= b} as a pentagon (the sum face is implied).
inline Pentagon rectangle(double a, double b) { return {a, b, a + b}; }

// Base pentagon plus the two corner rectangles of the augmented outer region.
struct AugmentedOuterRegion {
  Pentagon base;
  Pentagon corner1;  // {R1 <= I(X;Z), R2 <= I(Y;Z|X)}
  Pentagon corner2;  // {R1 <= I(X;Z|Y), R2 <= I(Y;Z)}

  std::array<Pentagon, 3> pentagons() const { return {base, corner1, corner2}; }
};

// Union of pentagons over a searched input family (inner approximation).
struct RegionUnion {
  std::vector<Pentagon> pentagons;

  double margin(RatePoint p) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& pent : pentagons) best = std::max(best, pent.margin(p));
    return best;
  }
};

enum class Membership { Inside, Boundary, Outside };

inline constexpr double kBoundaryTol = 1e-9;

Membership membership(RatePoint p, const RegionUnion& region, double tol = kBoundaryTol);
const char* membership_name(Membership m);

enum class RegionKind { Inf, Sup, Prime };

// Pentagon of the finite-n quantile proxies for one independent input pair.
Pentagon pentagon_for_inputs(const SequenceDistribution& px, const SequenceDistribution& py,
                             const MacChannel& w, int n, double epsilon, RegionKind which);

// Augmented outer region from sup proxies (adds the corner rectangles).
AugmentedOuterRegion augmented_region_for_inputs(const SequenceDistribution& px,
                                                 const SequenceDistribution& py,
                                                 const MacChannel& w, int n, double epsilon);

// Asymptotic (single-letter) versions for memoryless channels and i.i.d. inputs.
Pentagon asymptotic_pentagon(std::span<const double> px1, std::span<const double> py1,
                             const MacChannel& w);
AugmentedOuterRegion asymptotic_augmented_region(std::span<const double> px1,
                                                 std::span<const double> py1,
                                                 const MacChannel& w);

// Union over the policy's i.i.d. grid (finite-n proxies at block length n).
RegionUnion union_region(const MacChannel& w, int n, double epsilon,
                         const InputSearchPolicy& policy, RegionKind which);

// Union of asymptotic single-letter pentagons over the policy's grid.
RegionUnion asymptotic_union(const MacChannel& w, const InputSearchPolicy& policy,
                             RegionKind which);

struct DecayRow {
  RatePoint point;
  Membership cls;  // against the asymptotic Prime region
  int n;
  double omega;
};

// Omega decay table: for each rate point, classify against the asymptotic
// augmented outer region and evaluate the searched omega at each n.
std::vector<DecayRow> strong_converse_sweep(const MacChannel& w,
                                            std::span<const RatePoint> points, double gamma,
                                            std::span<const int> n_list,
                                            const InputSearchPolicy& policy);

}  // namespace macid
