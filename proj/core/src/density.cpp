#include "macid/density.hpp"

#include <cmath>
#include <limits>

namespace macid {

const char* density_kind_name(DensityKind k) {
  switch (k) {
    case DensityKind::XgivenY: return "x_given_y";
    case DensityKind::YgivenX: return "y_given_x";
    case DensityKind::Joint: return "joint";
    case DensityKind::Xonly: return "x_only";
    case DensityKind::Yonly: return "y_only";
  }
  return "?";
}

DensityKind density_kind_from_name(const std::string& name) {
  if (name == "x_given_y") return DensityKind::XgivenY;
  if (name == "y_given_x") return DensityKind::YgivenX;
  if (name == "joint") return DensityKind::Joint;
  if (name == "x_only") return DensityKind::Xonly;
  if (name == "y_only") return DensityKind::Yonly;
  throw UsageError("unknown density kind '" + name +
                   "' (expected x_given_y|y_given_x|joint|x_only|y_only)");
}

JointContext::JointContext(SequenceDistribution px, SequenceDistribution py, const MacChannel& w,
                           int n)
    : px_(std::move(px)), py_(std::move(py)), w_(w), n_(n), view_(w, n) {
  check_channel_inputs(px_, py_, w_, n_);
  marg_ = conditional_marginals(px_, py_, w_, n_);
}

double JointContext::density(DensityKind kind, uint64_t xi, uint64_t yi, uint64_t zi) const {
  double num, den;
  switch (kind) {
    case DensityKind::XgivenY:
      num = view_.at(xi, yi, zi);
      den = pzy_row(yi)[zi];
      break;
    case DensityKind::YgivenX:
      num = view_.at(xi, yi, zi);
      den = pzx_row(xi)[zi];
      break;
    case DensityKind::Joint:
      num = view_.at(xi, yi, zi);
      den = pz()[zi];
      break;
    case DensityKind::Xonly:
      num = pzx_row(xi)[zi];
      den = pz()[zi];
      break;
    case DensityKind::Yonly:
      num = pzy_row(yi)[zi];
      den = pz()[zi];
      break;
    default:
      num = den = 0.0;
  }
  if (num == 0.0) return -std::numeric_limits<double>::infinity();
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return std::log(num / den);
}

double density_at(DensityKind kind, uint64_t xi, uint64_t yi, uint64_t zi,
                  const SequenceDistribution& px, const SequenceDistribution& py,
                  const MacChannel& w, int n) {
  JointContext ctx(px, py, w, n);
  return ctx.density(kind, xi, yi, zi);
}

}  // namespace macid
