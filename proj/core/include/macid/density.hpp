#pragma once

#include <memory>

#include "macid/response.hpp"

namespace macid {

// The five information densities used by the bound machinery: conditional
// i(x;z|y), i(y;z|x), joint i(xy;z), and unconditional i(x;z), i(y;z).
enum class DensityKind { XgivenY, YgivenX, Joint, Xonly, Yonly };

const char* density_kind_name(DensityKind k);
DensityKind density_kind_from_name(const std::string& name);

// One (px, py, W^n) ensemble with its conditional marginal tables. Central
// object behind laws, T sets, zeta and omega evaluations. Immutable; holds
// copies of the inputs so it can outlive the caller's locals.
class JointContext {
 public:
  JointContext(SequenceDistribution px, SequenceDistribution py, const MacChannel& w, int n);

  const SequenceDistribution& px() const { return px_; }
  const SequenceDistribution& py() const { return py_; }
  const MacChannel& channel() const { return w_; }
  int block_len() const { return n_; }
  const KernelView& view() const { return view_; }
  uint64_t xn() const { return view_.xn(); }
  uint64_t yn() const { return view_.yn(); }
  uint64_t zn() const { return view_.zn(); }

  std::span<const double> pz() const { return marg_.pz; }
  std::span<const double> pzx_row(uint64_t xi) const { return marg_.pzx_row(xi); }
  std::span<const double> pzy_row(uint64_t yi) const { return marg_.pzy_row(yi); }

  // Unnormalized density in nats; -inf when the numerator vanishes, +inf when
  // only the denominator does.
  double density(DensityKind kind, uint64_t xi, uint64_t yi, uint64_t zi) const;

  // Joint probability px(x) py(y) W^n(z|x,y).
  double prob(uint64_t xi, uint64_t yi, uint64_t zi) const {
    return px_[xi] * py_[yi] * view_.at(xi, yi, zi);
  }

  template <class T, class MakeT, class PerPair, class Merge>
  T reduce_pairs(MakeT make, PerPair per_pair, Merge merge) const {
    return reduce_over_pairs<T>(px_, py_, view_, make, per_pair, merge);
  }

  // Sequential deterministic sweep over positive-probability triples.
  // visit(xi, yi, zi, pp, w) with pp = px(x) py(y) and w = W^n(z|x,y) > 0.
  template <class Visit>
  void for_each_triple(Visit visit) const {
    std::vector<double> scratch;
    for (uint64_t xi = 0; xi < xn(); ++xi) {
      if (px_[xi] == 0.0) continue;
      for (uint64_t yi = 0; yi < yn(); ++yi) {
        const double pp = px_[xi] * py_[yi];
        if (pp == 0.0) continue;
        auto wrow = view_.row(xi, yi, scratch);
        for (uint64_t zi = 0; zi < zn(); ++zi)
          if (wrow[zi] != 0.0) visit(xi, yi, zi, pp, wrow[zi]);
      }
    }
  }

 private:
  SequenceDistribution px_, py_;
  const MacChannel& w_;
  int n_;
  KernelView view_;
  ConditionalMarginals marg_;
};

// Standalone density evaluation (spec'd operation; builds the marginals).
double density_at(DensityKind kind, uint64_t xi, uint64_t yi, uint64_t zi,
                  const SequenceDistribution& px, const SequenceDistribution& py,
                  const MacChannel& w, int n);

}  // namespace macid
