#pragma once

// Monomials in the variables x[i,j] (row-major) and an optional t.
//
// Exponents are packed densely into a fixed array of byte slots; slot
// (i-1)*cols + (j-1) holds x[i,j] and the last slot holds t. Because byte
// order matches variable order, lex comparison is a plain memcmp.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <functional>
#include <stdexcept>
#include <string>

namespace linkdet {

inline constexpr int kSlots = 32;
inline constexpr int kTSlot = kSlots - 1;
inline constexpr int kMaxXVars = kSlots - 1;
inline constexpr int kMaxExponent = 255;

class ExponentOverflow : public std::overflow_error {
 public:
  ExponentOverflow() : std::overflow_error("monomial exponent exceeds 255") {}
};

/// Shape of the x-variable grid. Needed to name variables, not to compare them.
struct Layout {
  int rows = 0;
  int cols = 0;

  Layout() = default;
  Layout(int rows_, int cols_) : rows(rows_), cols(cols_) {
    if (rows < 0 || cols < 0 || rows * cols > kMaxXVars)
      throw std::invalid_argument("variable grid too large: " + std::to_string(rows) + "x" + std::to_string(cols));
  }
  int num_x() const { return rows * cols; }
  int slot(int i, int j) const {
    if (i < 1 || i > rows || j < 1 || j > cols)
      throw std::out_of_range("x[" + std::to_string(i) + "," + std::to_string(j) + "] outside grid");
    return (i - 1) * cols + (j - 1);
  }
  friend bool operator==(const Layout&, const Layout&) = default;
};

struct VarId {
  enum class Kind : std::uint8_t { X, T };
  Kind kind = Kind::X;
  int i = 0;
  int j = 0;

  static VarId x(int i, int j) { return {Kind::X, i, j}; }
  static VarId t() { return {Kind::T, 0, 0}; }
  int slot(const Layout& layout) const { return kind == Kind::T ? kTSlot : layout.slot(i, j); }
  friend bool operator==(const VarId&, const VarId&) = default;
};

class Monomial {
 public:
  Monomial() { exps_.fill(0); }

  static Monomial var(int slot, int e = 1) {
    Monomial m;
    m.set(slot, e);
    return m;
  }
  static Monomial x(const Layout& layout, int i, int j, int e = 1) { return var(layout.slot(i, j), e); }
  static Monomial t(int e = 1) { return var(kTSlot, e); }

  int operator[](int slot) const { return exps_[static_cast<std::size_t>(slot)]; }
  void set(int slot, int e) {
    if (e < 0 || e > kMaxExponent) throw ExponentOverflow();
    exps_[static_cast<std::size_t>(slot)] = static_cast<std::uint8_t>(e);
  }

  int degree() const {
    int d = 0;
    for (auto e : exps_) d += e;
    return d;
  }
  /// Degree in the x variables only.
  int x_degree() const { return degree() - exps_[kTSlot]; }
  int t_degree() const { return exps_[kTSlot]; }
  bool is_one() const { return degree() == 0; }

  bool divides(const Monomial& other) const {
    for (int k = 0; k < kSlots; ++k)
      if (exps_[k] > other.exps_[k]) return false;
    return true;
  }
  bool coprime(const Monomial& other) const {
    for (int k = 0; k < kSlots; ++k)
      if (exps_[k] && other.exps_[k]) return false;
    return true;
  }

  Monomial operator*(const Monomial& other) const {
    Monomial r;
    for (int k = 0; k < kSlots; ++k) {
      int e = exps_[k] + other.exps_[k];
      if (e > kMaxExponent) throw ExponentOverflow();
      r.exps_[k] = static_cast<std::uint8_t>(e);
    }
    return r;
  }
  /// Exact quotient; requires other.divides(*this).
  Monomial operator/(const Monomial& other) const {
    Monomial r;
    for (int k = 0; k < kSlots; ++k) {
      if (other.exps_[k] > exps_[k]) throw std::domain_error("monomial does not divide");
      r.exps_[k] = static_cast<std::uint8_t>(exps_[k] - other.exps_[k]);
    }
    return r;
  }
  Monomial lcm(const Monomial& other) const {
    Monomial r;
    for (int k = 0; k < kSlots; ++k) r.exps_[k] = std::max(exps_[k], other.exps_[k]);
    return r;
  }
  Monomial without_t() const {
    Monomial r = *this;
    r.exps_[kTSlot] = 0;
    return r;
  }
  /// Squarefree part (the support).
  Monomial support() const {
    Monomial r;
    for (int k = 0; k < kSlots; ++k) r.exps_[k] = exps_[k] ? 1 : 0;
    return r;
  }
  bool squarefree() const {
    return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e <= 1; });
  }

  template <class W>
  std::int64_t weight(const W& w) const {
    std::int64_t s = 0;
    for (int k = 0; k < kSlots; ++k) s += static_cast<std::int64_t>(w[static_cast<std::size_t>(k)]) * exps_[k];
    return s;
  }

  const std::array<std::uint8_t, kSlots>& exponents() const { return exps_; }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
  /// Lex order with x[1,1] > x[1,2] > ... > x[rows,cols] > t.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    int c = std::memcmp(a.exps_.data(), b.exps_.data(), kSlots);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  std::size_t hash() const {
    std::uint64_t words[kSlots / 8];
    std::memcpy(words, exps_.data(), kSlots);
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : words) h = (h ^ w) * 0x100000001b3ULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }

  std::string to_string(const Layout& layout) const {
    std::string out;
    auto emit = [&](const std::string& name, int e) {
      if (!out.empty()) out += '*';
      out += name;
      if (e > 1) out += '^' + std::to_string(e);
    };
    for (int i = 1; i <= layout.rows; ++i)
      for (int j = 1; j <= layout.cols; ++j)
        if (int e = (*this)[layout.slot(i, j)]) emit("x[" + std::to_string(i) + "," + std::to_string(j) + "]", e);
    if (t_degree()) emit("t", t_degree());
    return out.empty() ? "1" : out;
  }

 private:
  std::array<std::uint8_t, kSlots> exps_;
};

/// Three-way lex comparison of monomials.
inline std::strong_ordering lex_compare(const Monomial& a, const Monomial& b) { return a <=> b; }

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Integer weight per slot.
using WeightVector = std::array<std::int64_t, kSlots>;

inline WeightVector t_degree_weight() {
  WeightVector w{};
  w[kTSlot] = 1;
  return w;
}

}  // namespace linkdet
