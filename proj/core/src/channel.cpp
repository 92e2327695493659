#include "macid/channel.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "macid/distribution.hpp"
#include "macid/summation.hpp"

namespace macid {

namespace {

void validate_rows(std::span<const double> kernel, uint64_t rows, uint64_t row_len,
                   const std::string& what) {
  for (uint64_t r = 0; r < rows; ++r) {
    PairwiseSum acc;
    for (uint64_t z = 0; z < row_len; ++z) {
      double v = kernel[r * row_len + z];
      if (!(v >= 0.0))
        throw ValidationError(what + ": negative or NaN entry in row " + std::to_string(r));
      acc.add(v);
    }
    double s = acc.value();
    if (std::abs(s - 1.0) > kProbTol)
      throw ValidationError(what + ": row " + std::to_string(r) + " sums to " +
                            std::to_string(s) + ", expected 1");
  }
}

}  // namespace

MacChannel::MacChannel(Kind k, Alphabet x, Alphabet y, Alphabet z, int n,
                       std::vector<double> kernel)
    : kind_(k), x_(x), y_(y), z_(z), n_(n), kernel_(std::move(kernel)) {}

MacChannel MacChannel::memoryless(Alphabet x, Alphabet y, Alphabet z,
                                  std::vector<double> kernel) {
  if (x.size < 1 || y.size < 1 || z.size < 1) throw ValidationError("alphabet sizes must be >= 1");
  uint64_t rows = static_cast<uint64_t>(x.size) * y.size;
  if (kernel.size() != rows * z.size)
    throw DimensionError("memoryless kernel has wrong size");
  validate_rows(kernel, rows, z.size, "memoryless kernel");
  return MacChannel(Kind::Memoryless, x, y, z, 0, std::move(kernel));
}

MacChannel MacChannel::explicit_kernel(Alphabet x, Alphabet y, Alphabet z, int n,
                                       std::vector<double> kernel) {
  check_state_cap(x, y, z, n);
  uint64_t xn = pow_u64(x.size, n), yn = pow_u64(y.size, n), zn = pow_u64(z.size, n);
  if (kernel.size() != xn * yn * zn) throw DimensionError("explicit kernel has wrong size");
  validate_rows(kernel, xn * yn, zn, "explicit kernel");
  return MacChannel(Kind::Explicit, x, y, z, n, std::move(kernel));
}

MacChannel MacChannel::builtin(const std::string& name) {
  auto deterministic = [](Alphabet x, Alphabet y, Alphabet z, auto out_of) {
    std::vector<double> k(static_cast<uint64_t>(x.size) * y.size * z.size, 0.0);
    for (uint32_t a = 0; a < x.size; ++a)
      for (uint32_t b = 0; b < y.size; ++b)
        k[(static_cast<uint64_t>(a) * y.size + b) * z.size + out_of(a, b)] = 1.0;
    return k;
  };
  if (name == "binary-adder") {
    Alphabet x{2}, y{2}, z{3};
    return memoryless(x, y, z, deterministic(x, y, z, [](uint32_t a, uint32_t b) { return a + b; }));
  }
  if (name == "binary-multiplier") {
    Alphabet x{2}, y{2}, z{2};
    return memoryless(x, y, z, deterministic(x, y, z, [](uint32_t a, uint32_t b) { return a * b; }));
  }
  if (name.rfind("noisy-adder(", 0) == 0 && name.back() == ')') {
    double p = 0.0;
    try {
      p = std::stod(name.substr(12, name.size() - 13));
    } catch (const std::exception&) {
      throw UsageError("cannot parse flip probability in '" + name + "'");
    }
    if (!(p >= 0.0 && p <= 1.0)) throw UsageError("flip probability must be in [0,1]");
    Alphabet x{2}, y{2}, z{3};
    std::vector<double> k(static_cast<uint64_t>(x.size) * y.size * z.size, 0.0);
    for (uint32_t a = 0; a < 2; ++a)
      for (uint32_t b = 0; b < 2; ++b)
        for (uint32_t c = 0; c < 3; ++c)
          k[(static_cast<uint64_t>(a) * 2 + b) * 3 + c] = (c == a + b) ? 1.0 - p : p / 2.0;
    return memoryless(x, y, z, std::move(k));
  }
  throw UsageError("unknown builtin channel '" + name + "'");
}

MacChannel MacChannel::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("channel file parse error: ") + e.what());
  }
  try {
    Alphabet x{j.at("x_size").get<uint32_t>()};
    Alphabet y{j.at("y_size").get<uint32_t>()};
    Alphabet z{j.at("z_size").get<uint32_t>()};
    std::string kind = j.at("kind").get<std::string>();
    const auto& kj = j.at("kernel");
    std::vector<double> flat;
    for (const auto& row_x : kj)
      for (const auto& row_y : row_x)
        for (const auto& v : row_y) flat.push_back(v.get<double>());
    if (kind == "memoryless") return memoryless(x, y, z, std::move(flat));
    if (kind == "explicit") return explicit_kernel(x, y, z, j.at("n").get<int>(), std::move(flat));
    throw ValidationError("channel kind must be 'memoryless' or 'explicit'");
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("channel file field error: ") + e.what());
  }
}

MacChannel MacChannel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open channel file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string MacChannel::to_json_text() const {
  nlohmann::json j;
  j["x_size"] = x_.size;
  j["y_size"] = y_.size;
  j["z_size"] = z_.size;
  j["kind"] = kind_ == Kind::Memoryless ? "memoryless" : "explicit";
  if (kind_ == Kind::Explicit) j["n"] = n_;
  uint64_t rows_x = kind_ == Kind::Memoryless ? x_.size : pow_u64(x_.size, n_);
  uint64_t rows_y = kind_ == Kind::Memoryless ? y_.size : pow_u64(y_.size, n_);
  uint64_t zlen = kind_ == Kind::Memoryless ? z_.size : pow_u64(z_.size, n_);
  nlohmann::json kx = nlohmann::json::array();
  for (uint64_t a = 0; a < rows_x; ++a) {
    nlohmann::json ky = nlohmann::json::array();
    for (uint64_t b = 0; b < rows_y; ++b) {
      nlohmann::json kz = nlohmann::json::array();
      for (uint64_t c = 0; c < zlen; ++c) kz.push_back(kernel_[(a * rows_y + b) * zlen + c]);
      ky.push_back(std::move(kz));
    }
    kx.push_back(std::move(ky));
  }
  j["kernel"] = std::move(kx);
  return j.dump(2);
}

void MacChannel::dump(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write channel file '" + path + "'");
  out << to_json_text() << '\n';
}

MacChannel MacChannel::resolve(const std::string& path_or_name) {
  if (path_or_name.find('.') != std::string::npos || path_or_name.find('/') != std::string::npos) {
    std::ifstream probe(path_or_name);
    if (probe) return load(path_or_name);
  }
  try {
    return builtin(path_or_name);
  } catch (const UsageError&) {
    std::ifstream probe(path_or_name);
    if (probe) return load(path_or_name);
    throw UsageError("channel '" + path_or_name + "' is neither a builtin name nor a readable file");
  }
}

MacChannel MacChannel::tensor_power(int n) const {
  if (kind_ != Kind::Memoryless) throw ValidationError("tensor_power requires a memoryless kernel");
  check_state_cap(x_, y_, z_, n);
  KernelView view(*this, n);
  std::vector<double> full(view.xn() * view.yn() * view.zn());
  std::vector<double> scratch;
  for (uint64_t xi = 0; xi < view.xn(); ++xi)
    for (uint64_t yi = 0; yi < view.yn(); ++yi) {
      auto row = view.row(xi, yi, scratch);
      std::copy(row.begin(), row.end(), full.begin() + static_cast<ptrdiff_t>((xi * view.yn() + yi) * view.zn()));
    }
  return explicit_kernel(x_, y_, z_, n, std::move(full));
}

KernelView::KernelView(const MacChannel& w, int n)
    : w_(w), n_(n), xs_(w.in1(), n), ys_(w.in2(), n), zs_(w.out(), n) {
  if (!w.valid_at(n))
    throw DimensionError("explicit channel stored at n=" + std::to_string(w.explicit_block_len()) +
                         " cannot be used at n=" + std::to_string(n));
  if (n < 1 || n > 63) throw ValidationError("block length out of supported range [1, 63]");
  xn_ = xs_.size();
  yn_ = ys_.size();
  zn_ = zs_.size();
}

std::span<const double> KernelView::row(uint64_t xi, uint64_t yi,
                                        std::vector<double>& scratch) const {
  if (w_.kind() == MacChannel::Kind::Explicit)
    return {w_.raw_kernel().data() + (xi * yn_ + yi) * zn_, zn_};
  scratch.resize(zn_);
  const uint32_t zsize = w_.out().size;
  // per-position letter rows for this (x, y)
  const double* rows[64];
  {
    uint64_t x = xi, y = yi;
    for (int i = n_; i-- > 0;) {
      rows[i] = w_.letter_row(static_cast<uint32_t>(x % w_.in1().size),
                              static_cast<uint32_t>(y % w_.in2().size))
                    .data();
      x /= w_.in1().size;
      y /= w_.in2().size;
    }
  }
  // odometer over z digits with a running prefix-product stack
  uint32_t digit[64] = {0};
  double prefix[65];
  prefix[0] = 1.0;
  for (int i = 0; i < n_; ++i) prefix[i + 1] = prefix[i] * rows[i][0];
  for (uint64_t zi = 0;;) {
    scratch[zi] = prefix[n_];
    if (++zi == zn_) break;
    int pos = n_ - 1;
    while (digit[pos] == zsize - 1) {
      digit[pos] = 0;
      --pos;
    }
    ++digit[pos];
    for (int i = pos; i < n_; ++i) prefix[i + 1] = prefix[i] * rows[i][digit[i]];
  }
  return scratch;
}

double KernelView::at(uint64_t xi, uint64_t yi, uint64_t zi) const {
  if (w_.kind() == MacChannel::Kind::Explicit)
    return w_.raw_kernel()[(xi * yn_ + yi) * zn_ + zi];
  double v = 1.0;
  uint64_t x = xi, y = yi, z = zi;
  for (int i = 0; i < n_; ++i) {
    v *= w_.letter(static_cast<uint32_t>(x % w_.in1().size),
                   static_cast<uint32_t>(y % w_.in2().size),
                   static_cast<uint32_t>(z % w_.out().size));
    x /= w_.in1().size;
    y /= w_.in2().size;
    z /= w_.out().size;
  }
  return v;
}

}  // namespace macid
