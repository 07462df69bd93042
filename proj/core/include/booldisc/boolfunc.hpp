#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace booldisc {

/// Largest supported input width. 2^n x 2^n dense matrices stay <= 4096^2.
inline constexpr int kMaxInputBits = 12;

/// An n-bit string with explicit length. Bit i is 1-based with i = 1 the most
/// significant position, matching the truth-table index convention
/// idx(x) = sum_i x_i 2^(n-i).
struct BitVec {
  int n = 0;
  std::uint32_t bits = 0;
};

/// Number of differing coordinates. Throws std::invalid_argument on length mismatch.
int hamming(const BitVec& a, const BitVec& b);

/// Hamming distance between two strings already packed as truth-table indices.
int hamming_idx(std::uint32_t x, std::uint32_t y);

/// Value of coordinate i (1-based, MSB-first) of the string with index idx.
inline int bit_at(std::uint32_t idx, int i, int n) {
  return static_cast<int>((idx >> (n - i)) & 1u);
}

/// Index of the string with coordinate i flipped.
inline std::uint32_t flip_bit(std::uint32_t idx, int i, int n) {
  return idx ^ (1u << (n - i));
}

/// A Boolean function on n bits stored as a 2^n-entry truth table,
/// table[idx(x)] = f(x) with idx(x) = sum_i x_i 2^(n-i).
class BoolFunc {
 public:
  BoolFunc(int n, std::vector<std::uint8_t> table);

  static BoolFunc constant(int n, int value);
  static BoolFunc and_function(int n);
  static BoolFunc or_function(int n);
  static BoolFunc majority(int n);  // n odd
  static BoolFunc parity(const BitVec& mask);
  /// Decodes the hex truth-table form; digit k holds table[4k..4k+3] with
  /// table[4k] in the digit's least significant bit.
  static BoolFunc from_raw(int n, std::string_view hex);
  /// Parses the `n:<int>;tt:<hex>` text form.
  static BoolFunc from_text(std::string_view text);

  int n() const { return n_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(table_.size()); }
  int operator()(std::uint32_t idx) const { return table_[idx]; }
  const std::vector<std::uint8_t>& table() const { return table_; }

  std::string to_hex() const;
  std::string to_text() const;
  BoolFunc complement() const;

  bool operator==(const BoolFunc&) const = default;

 private:
  int n_;
  std::vector<std::uint8_t> table_;
};

/// The preimage partition S0 = f^{-1}(0), S1 = f^{-1}(1), both idx-ascending.
struct Preimages {
  std::vector<std::uint32_t> s0;
  std::vector<std::uint32_t> s1;
};

/// Coefficients of f(x) = b0 xor b1 x1 xor ... xor bn xn; m counts nonzero bi.
struct AffineCoefficients {
  int b0 = 0;
  std::vector<int> b;
  int m = 0;
};

/// Parsed function descriptor (CLI grammar:
/// const0|const1|and|or|maj|parity:<bitmask>|raw:<n>:<hex>).
struct FuncSpec {
  enum class Kind { Const0, Const1, And, Or, Maj, Parity, Raw };
  Kind kind = Kind::Const0;
  int n = 0;  // 0 means "take n from context"
  std::uint32_t mask = 0;
  std::string hex;
};

FuncSpec parse_descriptor(std::string_view text);

/// Materializes a descriptor. n_hint supplies n for the families that do not
/// carry one (const/and/or/maj); descriptors with their own n must match it
/// when both are given.
BoolFunc from_spec(const FuncSpec& spec, int n_hint = 0);

Preimages preimages(const BoolFunc& f);

/// Returns the unique affine coefficients when f is affine, absent otherwise.
/// Candidates are read off f(0) and f(e_i) and then verified on all inputs.
std::optional<AffineCoefficients> is_affine(const BoolFunc& f);

/// When flipping coordinate i maps S0 bijectively onto S1, returns the
/// (n-1)-bit function g with f(x) = g(x without x_i) xor x_i, defined by
/// restricting f to x_i = 0. Absent otherwise.
std::optional<BoolFunc> xor_decompose(const BoolFunc& f, int i);

/// Spectrum of h(x) = (-1)^f(x) in the parity basis, normalized so that
/// sum_S h_hat(S)^2 = 1. Entry idx(S) corresponds to the subset with
/// coordinate i present iff bit i of the index is set. O(n 2^n).
std::vector<double> walsh_spectrum(const BoolFunc& f);

}  // namespace booldisc
