#pragma once

// Instance parameters and the three matrix families: the staircase
// matrices A_l, the degeneration matrix B over k[t], and the generic matrix.

#include "linkdet/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace linkdet {

/// How the linking scalar s is realised: 0, 1, or the variable t.
enum class SMode { Zero, Unit, T };

inline std::string to_string(SMode m) {
  switch (m) {
    case SMode::Zero: return "zero";
    case SMode::Unit: return "unit";
    case SMode::T: return "t";
  }
  return "?";
}

inline SMode parse_smode(const std::string& s) {
  if (s == "zero" || s == "0") return SMode::Zero;
  if (s == "unit" || s == "1") return SMode::Unit;
  if (s == "t") return SMode::T;
  throw std::invalid_argument("unknown s_mode: " + s);
}

class InvalidInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct InstanceParams {
  int d = 1;
  int n = 1;
  int r1 = 1;
  int rn = 0;
  std::vector<int> c;  // c_1 .. c_{n-1}
  int r = 1;
  SMode s_mode = SMode::Zero;
  FieldSpec field{};
  int degree_bound = 0;

  int rows() const { return r1 + rn; }
  Layout layout() const { return Layout(rows(), d); }
  int num_vars() const { return rows() * d; }
  /// c_m with c_0 = 0 and c_n = d.
  int c_at(int m) const {
    if (m <= 0) return 0;
    if (m >= n) return d;
    return c[static_cast<std::size_t>(m - 1)];
  }
  /// True when (r+1)-minors exist at all.
  bool has_minors() const { return r + 1 <= std::min(d, rows()); }
  /// (d - r)(r1 + rn - r), or 0 for the zero ideal.
  int expected_codim() const { return has_minors() ? (d - r) * (rows() - r) : 0; }

  void validate() const {
    auto fail = [](const std::string& what) { throw InvalidInstance(what); };
    if (d < 1) fail("d must be at least 1");
    if (n < 1) fail("n must be at least 1");
    if (r1 < 1) fail("r1 must be at least 1");
    if (rn < 0) fail("rn must be nonnegative");
    if (r < 1) fail("r must be at least 1");
    if (static_cast<int>(c.size()) != n - 1) fail("c must have n-1 entries");
    for (std::size_t m = 0; m < c.size(); ++m) {
      if (c[m] < 0 || c[m] > d) fail("c entries must lie in [0, d]");
      if (m > 0 && c[m] < c[m - 1]) fail("c must be nondecreasing");
    }
    if (rows() * d > kMaxXVars) fail("too many variables for the monomial packing");
    if (degree_bound < 0) fail("degree_bound must be nonnegative");
  }

  std::string key() const {
    std::string s = "d" + std::to_string(d) + "-n" + std::to_string(n) + "-r1_" + std::to_string(r1) + "-rn" +
                    std::to_string(rn) + "-c";
    for (std::size_t m = 0; m < c.size(); ++m) s += (m ? "." : "") + std::to_string(c[m]);
    return s + "-r" + std::to_string(r) + "-" + to_string(s_mode);
  }

  friend bool operator==(const InstanceParams&, const InstanceParams&) = default;
};

/// e_{1,j,l} = #{ m < l : j > d - c_m }.
inline int exp_e1(int j, int l, const InstanceParams& p) {
  if (j < 1 || j > p.d || l < 1 || l > p.n) throw std::out_of_range("exp_e1 index out of range");
  int count = 0;
  for (int m = 1; m < l; ++m)
    if (j > p.d - p.c_at(m)) ++count;
  return count;
}

/// e_{2,j,l} = #{ l <= m <= n-1 : j <= d - c_m }.
inline int exp_e2(int j, int l, const InstanceParams& p) {
  if (j < 1 || j > p.d || l < 1 || l > p.n) throw std::out_of_range("exp_e2 index out of range");
  int count = 0;
  for (int m = l; m <= p.n - 1; ++m)
    if (j <= p.d - p.c_at(m)) ++count;
  return count;
}

/// epsilon_{1,j} = #{ m : j > d - c_m }, m over 1..n-1.
inline int eps1(int j, const InstanceParams& p) {
  int count = 0;
  for (int cm : p.c) count += j > p.d - cm;
  return count;
}

/// epsilon_{2,j} = #{ m : j <= d - c_m }, m over 1..n-1.
inline int eps2(int j, const InstanceParams& p) {
  int count = 0;
  for (int cm : p.c) count += j <= p.d - cm;
  return count;
}

/// Per-variable weights epsilon used by the degeneration.
inline WeightVector degeneration_weights(const InstanceParams& p) {
  WeightVector w{};
  Layout lay = p.layout();
  for (int i = 1; i <= p.rows(); ++i)
    for (int j = 1; j <= p.d; ++j) w[static_cast<std::size_t>(lay.slot(i, j))] = i <= p.r1 ? eps1(j, p) : eps2(j, p);
  return w;
}

template <Field K>
class SymbolicMatrix {
 public:
  SymbolicMatrix(const K& field, int rows, int cols)
      : field_(field), rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows * cols), Polynomial<K>(field)) {}

  const K& field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Polynomial<K>& at(int i, int j) const { return entries_[index(i, j)]; }
  void set(int i, int j, Polynomial<K> v) { entries_[index(i, j)] = std::move(v); }

  /// true where the entry is identically zero.
  std::vector<std::vector<bool>> zero_pattern() const {
    std::vector<std::vector<bool>> z(static_cast<std::size_t>(rows_), std::vector<bool>(static_cast<std::size_t>(cols_)));
    for (int i = 1; i <= rows_; ++i)
      for (int j = 1; j <= cols_; ++j) z[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = at(i, j).is_zero();
    return z;
  }

  friend bool operator==(const SymbolicMatrix&, const SymbolicMatrix&) = default;

 private:
  std::size_t index(int i, int j) const {
    if (i < 1 || i > rows_ || j < 1 || j > cols_) throw std::out_of_range("matrix index out of range");
    return static_cast<std::size_t>((i - 1) * cols_ + (j - 1));
  }

  K field_;
  int rows_, cols_;
  std::vector<Polynomial<K>> entries_;
};

namespace detail {

// s^e * x[i,j] under the given realisation of s
template <Field K>
Polynomial<K> scaled_variable(const K& k, const Layout& lay, int i, int j, int e, SMode mode) {
  Monomial x = Monomial::x(lay, i, j);
  switch (mode) {
    case SMode::Zero: return e == 0 ? Polynomial<K>::monomial(k, x) : Polynomial<K>(k);
    case SMode::Unit: return Polynomial<K>::monomial(k, x);
    case SMode::T: return Polynomial<K>::monomial(k, x * Monomial::t(e));
  }
  return Polynomial<K>(k);
}

}  // namespace detail

/// The staircase matrix A_l; bottom rows carry the e_2 exponents.
template <Field K>
SymbolicMatrix<K> build_A(int l, const InstanceParams& p, const K& k) {
  if (l < 1 || l > p.n) throw std::out_of_range("chain index out of range");
  SymbolicMatrix<K> a(k, p.rows(), p.d);
  Layout lay = p.layout();
  for (int i = 1; i <= p.rows(); ++i)
    for (int j = 1; j <= p.d; ++j) {
      int e = i <= p.r1 ? exp_e1(j, l, p) : exp_e2(j, l, p);
      a.set(i, j, detail::scaled_variable(k, lay, i, j, e, p.s_mode));
    }
  return a;
}

/// The degeneration matrix B over k[t]; independent of s_mode.
template <Field K>
SymbolicMatrix<K> build_B(const InstanceParams& p, const K& k) {
  SymbolicMatrix<K> b(k, p.rows(), p.d);
  Layout lay = p.layout();
  for (int i = 1; i <= p.rows(); ++i)
    for (int j = 1; j <= p.d; ++j) {
      int e = i <= p.r1 ? eps1(j, p) : eps2(j, p);
      b.set(i, j, detail::scaled_variable(k, lay, i, j, e, SMode::T));
    }
  return b;
}

template <Field K>
SymbolicMatrix<K> build_generic(const InstanceParams& p, const K& k) {
  SymbolicMatrix<K> g(k, p.rows(), p.d);
  Layout lay = p.layout();
  for (int i = 1; i <= p.rows(); ++i)
    for (int j = 1; j <= p.d; ++j) g.set(i, j, Polynomial<K>::monomial(k, Monomial::x(lay, i, j)));
  return g;
}

/// Row and column selections (1-based, strictly increasing, equal length).
struct MinorIndex {
  std::vector<int> rows;
  std::vector<int> cols;

  int size() const { return static_cast<int>(rows.size()); }
  /// Number of selected rows in the top block.
  int m1(int r1) const {
    return static_cast<int>(std::count_if(rows.begin(), rows.end(), [&](int i) { return i <= r1; }));
  }
  int m2(int r1) const { return size() - m1(r1); }

  void validate(int max_row, int max_col) const {
    auto increasing_in = [](const std::vector<int>& v, int hi) {
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] < 1 || v[k] > hi) return false;
        if (k && v[k] <= v[k - 1]) return false;
      }
      return true;
    };
    if (rows.size() != cols.size() || rows.empty()) throw std::invalid_argument("minor index sizes differ or are empty");
    if (!increasing_in(rows, max_row) || !increasing_in(cols, max_col))
      throw std::invalid_argument("minor index must be strictly increasing and in range");
  }

  std::string to_string() const {
    auto list = [](const std::vector<int>& v) {
      std::string s = "{";
      for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
      return s + "}";
    };
    return "rows " + list(rows) + " cols " + list(cols);
  }

  friend bool operator==(const MinorIndex&, const MinorIndex&) = default;
  friend auto operator<=>(const MinorIndex&, const MinorIndex&) = default;
};

/// All k-subsets of {1..n} in lex order.
inline std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  std::iota(cur.begin(), cur.end(), 1);
  for (;;) {
    out.push_back(cur);
    int pos = k - 1;
    while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == n - k + pos + 1) --pos;
    if (pos < 0) break;
    ++cur[static_cast<std::size_t>(pos)];
    for (int q = pos + 1; q < k; ++q) cur[static_cast<std::size_t>(q)] = cur[static_cast<std::size_t>(q - 1)] + 1;
  }
  return out;
}

/// Every (size x size) minor position, ordered by (rows, cols).
inline std::vector<MinorIndex> all_minor_indices(int rows, int cols, int size) {
  std::vector<MinorIndex> out;
  for (auto& rs : combinations(rows, size))
    for (auto& cs : combinations(cols, size)) out.push_back({rs, cs});
  return out;
}

inline std::vector<MinorIndex> all_minor_indices(const InstanceParams& p) {
  return all_minor_indices(p.rows(), p.d, p.r + 1);
}

/// Parity of a permutation of 0..n-1, +1 or -1.
inline int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t a = 0; a < perm.size(); ++a)
    for (std::size_t b = a + 1; b < perm.size(); ++b) inversions += perm[a] > perm[b];
  return inversions % 2 ? -1 : 1;
}

/// Determinant of the selected submatrix by signed permutation expansion.
template <Field K>
Polynomial<K> minor(const SymbolicMatrix<K>& m, const MinorIndex& idx) {
  idx.validate(m.rows(), m.cols());
  const K& k = m.field();
  const int size = idx.size();
  std::vector<int> perm(static_cast<std::size_t>(size));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<typename Polynomial<K>::Term> terms;
  do {
    Polynomial<K> prod = Polynomial<K>::constant(k, permutation_sign(perm) > 0 ? k.one() : k.neg(k.one()));
    for (int w = 0; w < size && !prod.is_zero(); ++w)
      prod = prod * m.at(idx.rows[static_cast<std::size_t>(w)], idx.cols[static_cast<std::size_t>(perm[static_cast<std::size_t>(w)])]);
    for (const auto& t : prod.terms()) terms.push_back(t);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Polynomial<K>::from_terms(k, std::move(terms));
}

}  // namespace linkdet
