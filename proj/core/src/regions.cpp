#include "macid/regions.hpp"

namespace macid {

Membership membership(RatePoint p, const RegionUnion& region, double tol) {
  if (p.r1 < 0.0 || p.r2 < 0.0) return Membership::Outside;
  double m = region.margin(p);
  if (m > tol) return Membership::Inside;
  if (m >= -tol) return Membership::Boundary;
  return Membership::Outside;
}

const char* membership_name(Membership m) {
  switch (m) {
    case Membership::Inside: return "inside";
    case Membership::Boundary: return "boundary";
    case Membership::Outside: return "outside";
  }
  return "?";
}

namespace {

struct FiveRates {
  double xgy, ygx, joint, xonly, yonly;
};

FiveRates five_rates(const JointContext& ctx, double epsilon, bool sup) {
  auto rate = [&](DensityKind k) {
    DensityLaw law = density_law(k, ctx);
    return sup ? law_quantile_sup(law, epsilon) : law_quantile_inf(law, epsilon);
  };
  return {rate(DensityKind::XgivenY), rate(DensityKind::YgivenX), rate(DensityKind::Joint),
          rate(DensityKind::Xonly), rate(DensityKind::Yonly)};
}

FiveRates five_rates_asymptotic(std::span<const double> px1, std::span<const double> py1,
                                const MacChannel& w) {
  auto mi = [&](DensityKind k) { return single_letter_mi(k, px1, py1, w); };
  return {mi(DensityKind::XgivenY), mi(DensityKind::YgivenX), mi(DensityKind::Joint),
          mi(DensityKind::Xonly), mi(DensityKind::Yonly)};
}

Pentagon base_pentagon(const FiveRates& r) { return {r.xgy, r.ygx, r.joint}; }

AugmentedOuterRegion augmented(const FiveRates& r) {
  return {base_pentagon(r), rectangle(r.xonly, r.ygx), rectangle(r.xgy, r.yonly)};
}

}  // namespace

Pentagon pentagon_for_inputs(const SequenceDistribution& px, const SequenceDistribution& py,
                             const MacChannel& w, int n, double epsilon, RegionKind which) {
  if (which == RegionKind::Prime)
    throw UsageError("pentagon_for_inputs builds inf/sup pentagons; use augmented_region_for_inputs");
  JointContext ctx(px, py, w, n);
  return base_pentagon(five_rates(ctx, epsilon, which == RegionKind::Sup));
}

AugmentedOuterRegion augmented_region_for_inputs(const SequenceDistribution& px,
                                                 const SequenceDistribution& py,
                                                 const MacChannel& w, int n, double epsilon) {
  JointContext ctx(px, py, w, n);
  return augmented(five_rates(ctx, epsilon, /*sup=*/true));
}

Pentagon asymptotic_pentagon(std::span<const double> px1, std::span<const double> py1,
                             const MacChannel& w) {
  return base_pentagon(five_rates_asymptotic(px1, py1, w));
}

AugmentedOuterRegion asymptotic_augmented_region(std::span<const double> px1,
                                                 std::span<const double> py1,
                                                 const MacChannel& w) {
  return augmented(five_rates_asymptotic(px1, py1, w));
}

RegionUnion union_region(const MacChannel& w, int n, double epsilon,
                         const InputSearchPolicy& policy, RegionKind which) {
  RegionUnion out;
  for (const auto& [px, py] : policy_candidates(w, n, policy)) {
    if (which == RegionKind::Prime) {
      for (const Pentagon& p : augmented_region_for_inputs(px, py, w, n, epsilon).pentagons())
        out.pentagons.push_back(p);
    } else {
      out.pentagons.push_back(pentagon_for_inputs(px, py, w, n, epsilon, which));
    }
  }
  return out;
}

namespace {

// per-letter parameter grids of the policy, for asymptotic unions
std::vector<std::pair<std::vector<double>, std::vector<double>>> letter_grid(
    const MacChannel& w, const InputSearchPolicy& policy) {
  // reuse the candidate machinery at n=1: probabilities ARE the letters
  InputSearchPolicy p1 = policy;
  p1.explicit_list.clear();
  std::vector<std::pair<std::vector<double>, std::vector<double>>> out;
  for (const auto& [px, py] : policy_candidates(w, 1, p1))
    out.emplace_back(std::vector<double>(px.probs().begin(), px.probs().end()),
                     std::vector<double>(py.probs().begin(), py.probs().end()));
  return out;
}

}  // namespace

RegionUnion asymptotic_union(const MacChannel& w, const InputSearchPolicy& policy,
                             RegionKind which) {
  if (!w.memoryless_kind())
    throw ValidationError("asymptotic regions require a memoryless channel");
  RegionUnion out;
  for (const auto& [lx, ly] : letter_grid(w, policy)) {
    FiveRates r = five_rates_asymptotic(lx, ly, w);
    if (which == RegionKind::Prime) {
      for (const Pentagon& p : augmented(r).pentagons()) out.pentagons.push_back(p);
    } else {
      out.pentagons.push_back(base_pentagon(r));  // inf == sup asymptotically here
    }
  }
  return out;
}

std::vector<DecayRow> strong_converse_sweep(const MacChannel& w,
                                            std::span<const RatePoint> points, double gamma,
                                            std::span<const int> n_list,
                                            const InputSearchPolicy& policy) {
  RegionUnion prime = asymptotic_union(w, policy, RegionKind::Prime);
  std::vector<DecayRow> rows;
  for (const RatePoint& pt : points) {
    Membership cls = membership(pt, prime);
    for (int n : n_list) {
      OmegaChannelResult oc = omega_channel(pt, gamma, w, n, policy);
      rows.push_back({pt, cls, n, oc.omega});
    }
  }
  return rows;
}

}  // namespace macid
