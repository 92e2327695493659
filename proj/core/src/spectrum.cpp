#include "macid/spectrum.hpp"

#include <cmath>
#include <map>

namespace macid {

namespace {

// Accumulates (value, prob) pairs, merging values within kAtomMergeTol onto
// the first-seen representative.
class LawBuilder {
 public:
  void add(double value, double prob) {
    auto it = atoms_.lower_bound(value - kAtomMergeTol);
    if (it != atoms_.end() && std::abs(it->first - value) <= kAtomMergeTol) {
      it->second += prob;
      return;
    }
    atoms_.emplace_hint(it, value, prob);
  }

  std::vector<DensityAtom> take() const {
    std::vector<DensityAtom> out;
    out.reserve(atoms_.size());
    for (const auto& [v, p] : atoms_) out.push_back({v, p});
    return out;
  }

 private:
  std::map<double, double> atoms_;
};

}  // namespace

double DensityLaw::mean() const {
  PairwiseSum acc;
  for (const auto& a : atoms) acc.add(a.value * a.prob);
  return acc.value();
}

double DensityLaw::total_prob() const {
  PairwiseSum acc;
  for (const auto& a : atoms) acc.add(a.prob);
  return acc.value();
}

DensityLaw density_law(DensityKind kind, const JointContext& ctx) {
  LawBuilder builder;
  const double inv_n = 1.0 / ctx.block_len();
  ctx.for_each_triple([&](uint64_t xi, uint64_t yi, uint64_t zi, double pp, double w) {
    builder.add(inv_n * ctx.density(kind, xi, yi, zi), pp * w);
  });
  DensityLaw law{kind, ctx.block_len(), builder.take()};
  double total = law.total_prob();
  if (std::abs(total - 1.0) > 1e-10)
    throw ValidationError("density law total probability deviates from 1 by " +
                          std::to_string(total - 1.0));
  return law;
}

DensityLaw density_law(DensityKind kind, const SequenceDistribution& px,
                       const SequenceDistribution& py, const MacChannel& w, int n) {
  JointContext ctx(px, py, w, n);
  return density_law(kind, ctx);
}

double law_quantile_inf(const DensityLaw& law, double epsilon) {
  if (law.atoms.empty()) throw ValidationError("empty density law");
  double cum = 0.0;
  for (const auto& a : law.atoms) {
    cum += a.prob;
    if (cum > epsilon) return a.value;
  }
  return law.atoms.back().value;
}

double law_quantile_sup(const DensityLaw& law, double epsilon) {
  if (law.atoms.empty()) throw ValidationError("empty density law");
  double tail = 0.0;
  for (auto it = law.atoms.rbegin(); it != law.atoms.rend(); ++it) {
    tail += it->prob;
    if (tail > epsilon) return it->value;
  }
  return law.atoms.front().value;
}

SpectralRates spectral_rates(const SequenceDistribution& px, const SequenceDistribution& py,
                             const MacChannel& w, int n, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5))
    throw UsageError("epsilon must lie in (0, 0.5)");
  JointContext ctx(px, py, w, n);
  SpectralRates out{};
  out.epsilon = epsilon;
  const DensityKind kinds[3] = {DensityKind::XgivenY, DensityKind::YgivenX, DensityKind::Joint};
  for (int i = 0; i < 3; ++i) {
    DensityLaw law = density_law(kinds[i], ctx);
    out.inf_rate[i] = law_quantile_inf(law, epsilon);
    out.sup_rate[i] = law_quantile_sup(law, epsilon);
  }
  return out;
}

double single_letter_mi(DensityKind kind, std::span<const double> px1,
                        std::span<const double> py1, const MacChannel& w) {
  if (!w.memoryless_kind())
    throw ValidationError("single-letter mutual information requires a memoryless channel");
  SequenceDistribution px(w.in1(), 1, std::vector<double>(px1.begin(), px1.end()));
  SequenceDistribution py(w.in2(), 1, std::vector<double>(py1.begin(), py1.end()));
  return density_law(kind, px, py, w, 1).mean();
}

}  // namespace macid
