#pragma once

#include "macid/density.hpp"

namespace macid {

struct DensityAtom {
  double value;  // nats per symbol, (1/n) * density
  double prob;
};

// Exact law of the normalized information density under px * py * W^n.
// Atoms sorted ascending; values closer than kAtomMergeTol are merged.
struct DensityLaw {
  DensityKind kind;
  int n = 0;
  std::vector<DensityAtom> atoms;

  double mean() const;
  double total_prob() const;
};

inline constexpr double kAtomMergeTol = 1e-12;

DensityLaw density_law(DensityKind kind, const JointContext& ctx);
DensityLaw density_law(DensityKind kind, const SequenceDistribution& px,
                       const SequenceDistribution& py, const MacChannel& w, int n);

// Finite-n quantile surrogates for the probabilistic liminf/limsup:
//   inf proxy = sup{a : Pr[A <= a] <= eps}, sup proxy = inf{a : Pr[A >= a] <= eps}.
double law_quantile_inf(const DensityLaw& law, double epsilon);
double law_quantile_sup(const DensityLaw& law, double epsilon);

// Quantile proxies for the three densities of the region definitions.
// Order: XgivenY, YgivenX, Joint. These are finite-n PROXIES of the
// asymptotic spectral rates, not the limits themselves.
struct SpectralRates {
  double inf_rate[3];
  double sup_rate[3];
  double epsilon;
};

SpectralRates spectral_rates(const SequenceDistribution& px, const SequenceDistribution& py,
                             const MacChannel& w, int n, double epsilon);

// Exact single-letter mutual information of the given kind in nats (mean of
// the n=1 law). Memoryless channels only.
double single_letter_mi(DensityKind kind, std::span<const double> px1,
                        std::span<const double> py1, const MacChannel& w);

}  // namespace macid
