#include "booldisc/boolfunc.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <stdexcept>

namespace booldisc {

namespace {

std::uint32_t table_size_for(int n) {
  if (n < 1 || n > kMaxInputBits) {
    throw std::invalid_argument("input width n must be in [1, " +
                                std::to_string(kMaxInputBits) + "], got " + std::to_string(n));
  }
  return 1u << n;
}

// Hex digits required by the truth-table text form: one digit per four table
// bits, with a single digit covering the n = 1 case.
std::size_t hex_digits_for(int n) {
  std::uint32_t size = table_size_for(n);
  return size < 4 ? 1 : size / 4;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

int hamming(const BitVec& a, const BitVec& b) {
  if (a.n != b.n) {
    throw std::invalid_argument("hamming: length mismatch (" + std::to_string(a.n) + " vs " +
                                std::to_string(b.n) + ")");
  }
  return std::popcount(a.bits ^ b.bits);
}

int hamming_idx(std::uint32_t x, std::uint32_t y) { return std::popcount(x ^ y); }

BoolFunc::BoolFunc(int n, std::vector<std::uint8_t> table) : n_(n), table_(std::move(table)) {
  std::uint32_t size = table_size_for(n);
  if (table_.size() != size) {
    throw std::invalid_argument("truth table must have 2^n entries");
  }
  for (auto v : table_) {
    if (v > 1) throw std::invalid_argument("truth table entries must be 0 or 1");
  }
}

BoolFunc BoolFunc::constant(int n, int value) {
  return BoolFunc(n, std::vector<std::uint8_t>(table_size_for(n), value ? 1 : 0));
}

BoolFunc BoolFunc::and_function(int n) {
  std::vector<std::uint8_t> table(table_size_for(n), 0);
  table.back() = 1;
  return BoolFunc(n, std::move(table));
}

BoolFunc BoolFunc::or_function(int n) {
  std::vector<std::uint8_t> table(table_size_for(n), 1);
  table.front() = 0;
  return BoolFunc(n, std::move(table));
}

BoolFunc BoolFunc::majority(int n) {
  if (n % 2 == 0) throw std::invalid_argument("majority requires odd n");
  std::uint32_t size = table_size_for(n);
  std::vector<std::uint8_t> table(size);
  for (std::uint32_t x = 0; x < size; ++x) {
    table[x] = std::popcount(x) > n / 2 ? 1 : 0;
  }
  return BoolFunc(n, std::move(table));
}

BoolFunc BoolFunc::parity(const BitVec& mask) {
  std::uint32_t size = table_size_for(mask.n);
  if (mask.bits >= size) throw std::invalid_argument("parity mask wider than n bits");
  std::vector<std::uint8_t> table(size);
  for (std::uint32_t x = 0; x < size; ++x) {
    table[x] = std::popcount(x & mask.bits) & 1;
  }
  return BoolFunc(mask.n, std::move(table));
}

BoolFunc BoolFunc::from_raw(int n, std::string_view hex) {
  std::uint32_t size = table_size_for(n);
  if (hex.size() != hex_digits_for(n)) {
    throw std::invalid_argument("raw truth table for n=" + std::to_string(n) + " needs " +
                                std::to_string(hex_digits_for(n)) + " hex digits, got " +
                                std::to_string(hex.size()));
  }
  std::vector<std::uint8_t> table(size, 0);
  for (std::size_t k = 0; k < hex.size(); ++k) {
    int v = hex_value(hex[k]);
    if (v < 0) throw std::invalid_argument("invalid hex digit in truth table");
    for (int b = 0; b < 4; ++b) {
      std::uint32_t idx = static_cast<std::uint32_t>(4 * k + b);
      int bit = (v >> b) & 1;
      if (idx >= size) {
        if (bit) throw std::invalid_argument("hex digit sets bits beyond the table size");
        continue;
      }
      table[idx] = static_cast<std::uint8_t>(bit);
    }
  }
  return BoolFunc(n, std::move(table));
}

BoolFunc BoolFunc::from_text(std::string_view text) {
  if (!text.starts_with("n:")) throw std::invalid_argument("expected `n:<int>;tt:<hex>`");
  std::size_t semi = text.find(';');
  if (semi == std::string_view::npos || text.substr(semi + 1, 3) != "tt:") {
    throw std::invalid_argument("expected `n:<int>;tt:<hex>`");
  }
  int n = 0;
  for (char c : text.substr(2, semi - 2)) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("malformed n in truth-table text");
    }
    n = n * 10 + (c - '0');
    if (n > 1000) break;  // bail before overflow; range check follows
  }
  return from_raw(n, text.substr(semi + 4));
}

std::string BoolFunc::to_hex() const {
  std::string out(hex_digits_for(n_), '0');
  static constexpr char kDigits[] = "0123456789abcdef";
  for (std::size_t k = 0; k < out.size(); ++k) {
    int v = 0;
    for (int b = 0; b < 4; ++b) {
      std::uint32_t idx = static_cast<std::uint32_t>(4 * k + b);
      if (idx < table_.size() && table_[idx]) v |= 1 << b;
    }
    out[k] = kDigits[v];
  }
  return out;
}

std::string BoolFunc::to_text() const { return "n:" + std::to_string(n_) + ";tt:" + to_hex(); }

BoolFunc BoolFunc::complement() const {
  std::vector<std::uint8_t> table(table_.size());
  for (std::size_t i = 0; i < table_.size(); ++i) table[i] = table_[i] ^ 1;
  return BoolFunc(n_, std::move(table));
}

FuncSpec parse_descriptor(std::string_view text) {
  FuncSpec spec;
  if (text == "const0") {
    spec.kind = FuncSpec::Kind::Const0;
  } else if (text == "const1") {
    spec.kind = FuncSpec::Kind::Const1;
  } else if (text == "and") {
    spec.kind = FuncSpec::Kind::And;
  } else if (text == "or") {
    spec.kind = FuncSpec::Kind::Or;
  } else if (text == "maj") {
    spec.kind = FuncSpec::Kind::Maj;
  } else if (text.starts_with("parity:")) {
    spec.kind = FuncSpec::Kind::Parity;
    std::string_view bits = text.substr(7);
    if (bits.empty() || bits.size() > static_cast<std::size_t>(kMaxInputBits)) {
      throw std::invalid_argument("parity mask must have 1.." + std::to_string(kMaxInputBits) +
                                  " bits");
    }
    spec.n = static_cast<int>(bits.size());
    for (char c : bits) {
      if (c != '0' && c != '1') throw std::invalid_argument("parity mask must be a 0/1 string");
      spec.mask = (spec.mask << 1) | static_cast<std::uint32_t>(c - '0');
    }
  } else if (text.starts_with("raw:")) {
    spec.kind = FuncSpec::Kind::Raw;
    std::string_view rest = text.substr(4);
    std::size_t colon = rest.find(':');
    if (colon == std::string_view::npos || colon == 0) {
      throw std::invalid_argument("raw descriptor is raw:<n>:<hex>");
    }
    for (char c : rest.substr(0, colon)) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw std::invalid_argument("raw descriptor is raw:<n>:<hex>");
      }
      spec.n = spec.n * 10 + (c - '0');
      if (spec.n > 1000) break;
    }
    spec.hex = std::string(rest.substr(colon + 1));
  } else {
    throw std::invalid_argument("unknown function descriptor: " + std::string(text));
  }
  return spec;
}

BoolFunc from_spec(const FuncSpec& spec, int n_hint) {
  int n = spec.n != 0 ? spec.n : n_hint;
  if (spec.n != 0 && n_hint != 0 && spec.n != n_hint) {
    throw std::invalid_argument("descriptor fixes n=" + std::to_string(spec.n) +
                                " but n=" + std::to_string(n_hint) + " was requested");
  }
  switch (spec.kind) {
    case FuncSpec::Kind::Const0:
      return BoolFunc::constant(n, 0);
    case FuncSpec::Kind::Const1:
      return BoolFunc::constant(n, 1);
    case FuncSpec::Kind::And:
      return BoolFunc::and_function(n);
    case FuncSpec::Kind::Or:
      return BoolFunc::or_function(n);
    case FuncSpec::Kind::Maj:
      return BoolFunc::majority(n);
    case FuncSpec::Kind::Parity:
      return BoolFunc::parity(BitVec{spec.n, spec.mask});
    case FuncSpec::Kind::Raw:
      return BoolFunc::from_raw(spec.n, spec.hex);
  }
  throw std::invalid_argument("unreachable descriptor kind");
}

Preimages preimages(const BoolFunc& f) {
  Preimages pre;
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    (f(x) ? pre.s1 : pre.s0).push_back(x);
  }
  return pre;
}

std::optional<AffineCoefficients> is_affine(const BoolFunc& f) {
  int n = f.n();
  AffineCoefficients coef;
  coef.b0 = f(0);
  coef.b.resize(n);
  std::uint32_t bmask = 0;
  for (int i = 1; i <= n; ++i) {
    std::uint32_t ei = 1u << (n - i);
    coef.b[i - 1] = f(ei) ^ coef.b0;
    if (coef.b[i - 1]) {
      bmask |= ei;
      ++coef.m;
    }
  }
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    int predicted = coef.b0 ^ (std::popcount(x & bmask) & 1);
    if (predicted != f(x)) return std::nullopt;
  }
  return coef;
}

std::optional<BoolFunc> xor_decompose(const BoolFunc& f, int i) {
  int n = f.n();
  if (n < 2) throw std::invalid_argument("xor_decompose requires n >= 2");
  if (i < 1 || i > n) throw std::invalid_argument("coordinate index out of range");
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    if (f(x) == f(flip_bit(x, i, n))) return std::nullopt;
  }
  // g inherits f restricted to x_i = 0; position i is spliced out of the index.
  int low_bits = n - i;
  std::uint32_t low_mask = (1u << low_bits) - 1;
  std::vector<std::uint8_t> table(f.size() / 2);
  for (std::uint32_t z = 0; z < table.size(); ++z) {
    std::uint32_t idx = ((z >> low_bits) << (low_bits + 1)) | (z & low_mask);
    table[z] = static_cast<std::uint8_t>(f(idx));
  }
  return BoolFunc(n - 1, std::move(table));
}

std::vector<double> walsh_spectrum(const BoolFunc& f) {
  std::size_t size = f.size();
  std::vector<double> h(size);
  for (std::size_t x = 0; x < size; ++x) h[x] = f(static_cast<std::uint32_t>(x)) ? -1.0 : 1.0;
  for (std::size_t len = 1; len < size; len <<= 1) {
    for (std::size_t block = 0; block < size; block += len << 1) {
      for (std::size_t j = block; j < block + len; ++j) {
        double a = h[j];
        double b = h[j + len];
        h[j] = a + b;
        h[j + len] = a - b;
      }
    }
  }
  double scale = 1.0 / static_cast<double>(size);
  for (double& v : h) v *= scale;
  return h;
}

}  // namespace booldisc
