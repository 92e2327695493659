#pragma once

#include <span>
#include <string>
#include <vector>

#include "macid/alphabet.hpp"

namespace macid {

// Two-input one-output channel kernel. Memoryless kernels hold one per-letter
// table w[x][y][z] and extend to any block length by products; explicit
// kernels tabulate W^n at one fixed n and are valid only there. Rows are
// validated to sum to 1 within kProbTol at load time.
class MacChannel {
 public:
  enum class Kind { Memoryless, Explicit };

  static MacChannel memoryless(Alphabet x, Alphabet y, Alphabet z, std::vector<double> kernel);
  static MacChannel explicit_kernel(Alphabet x, Alphabet y, Alphabet z, int n,
                                    std::vector<double> kernel);

  // "binary-adder", "binary-multiplier", or "noisy-adder(p)".
  static MacChannel builtin(const std::string& name);

  // Channel spec file (JSON). See README for the schema.
  static MacChannel from_json_text(const std::string& text);
  static MacChannel load(const std::string& path);
  std::string to_json_text() const;
  void dump(const std::string& path) const;

  // Loads a file path or resolves a builtin name.
  static MacChannel resolve(const std::string& path_or_name);

  Kind kind() const { return kind_; }
  Alphabet in1() const { return x_; }
  Alphabet in2() const { return y_; }
  Alphabet out() const { return z_; }
  bool memoryless_kind() const { return kind_ == Kind::Memoryless; }
  int explicit_block_len() const { return n_; }
  bool valid_at(int n) const { return kind_ == Kind::Memoryless || n == n_; }

  // Per-letter entry w(z|x,y); memoryless only.
  double letter(uint32_t x, uint32_t y, uint32_t z) const {
    return kernel_[(static_cast<uint64_t>(x) * y_.size + y) * z_.size + z];
  }
  std::span<const double> letter_row(uint32_t x, uint32_t y) const {
    return {kernel_.data() + (static_cast<uint64_t>(x) * y_.size + y) * z_.size, z_.size};
  }

  // Materializes the n-fold product of a memoryless kernel as an explicit
  // channel (test utility; subject to the state cap).
  MacChannel tensor_power(int n) const;

  std::span<const double> raw_kernel() const { return kernel_; }

 private:
  MacChannel(Kind k, Alphabet x, Alphabet y, Alphabet z, int n, std::vector<double> kernel);

  Kind kind_;
  Alphabet x_, y_, z_;
  int n_;  // meaningful for Explicit only
  std::vector<double> kernel_;
};

// W^n evaluated at block length n: streams per-letter products for memoryless
// kernels (W^n itself is never materialized), reads the table for explicit.
class KernelView {
 public:
  KernelView(const MacChannel& w, int n);

  uint64_t xn() const { return xn_; }
  uint64_t yn() const { return yn_; }
  uint64_t zn() const { return zn_; }
  int block_len() const { return n_; }

  // Full row W^n(.|x,y) over z in lexicographic order. Uses `scratch` as
  // backing store when the row has to be computed.
  std::span<const double> row(uint64_t xi, uint64_t yi, std::vector<double>& scratch) const;

  // Single entry W^n(z|x,y).
  double at(uint64_t xi, uint64_t yi, uint64_t zi) const;

 private:
  const MacChannel& w_;
  int n_;
  uint64_t xn_, yn_, zn_;
  SeqSpace xs_, ys_, zs_;
};

}  // namespace macid
