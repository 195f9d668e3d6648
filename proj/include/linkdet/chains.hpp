#pragma once

// s-linked chains of free modules over a field or a truncated power-series
// ring k[t]/(t^N): axiom checks, rank profiles, frames, and the reduction of
// a chain to the staircase matrices A_l.

#include "linkdet/exactnum.hpp"
#include "linkdet/linkedmatrix.hpp"

#include <json.hpp>

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace linkdet {

/// Base ring: k with a chosen scalar s (truncation 1), or k[t]/(t^N) with s = t.
template <Field K>
class ChainBase {
 public:
  using Scalar = typename K::Elem;
  using Elem = std::vector<Scalar>;  // coefficients of t^0 .. t^{N-1}

  static ChainBase over_field(const K& k, Scalar s) { return ChainBase(k, 1, std::move(s)); }
  static ChainBase truncated(const K& k, int N) {
    if (N < 2) throw std::invalid_argument("truncation order must be at least 2");
    return ChainBase(k, N, k.zero());
  }

  const K& field() const { return field_; }
  int truncation() const { return N_; }
  bool s_is_t() const { return N_ >= 2; }
  /// s lies in the maximal ideal (the s = 0 fibre exists).
  bool s_is_nonunit() const { return s_is_t() || field_.is_zero(s_scalar_); }
  const Scalar& s_scalar() const { return s_scalar_; }

  Elem zero() const { return Elem(static_cast<std::size_t>(N_), field_.zero()); }
  Elem one() const { return constant(field_.one()); }
  Elem constant(const Scalar& c) const {
    Elem e = zero();
    e[0] = c;
    return e;
  }
  Elem s() const {
    if (!s_is_t()) return constant(s_scalar_);
    Elem e = zero();
    e[1] = field_.one();
    return e;
  }
  Elem s_pow(int e) const {
    Elem r = one();
    for (int k = 0; k < e; ++k) r = mul(r, s());
    return r;
  }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = field_.add(a[k], b[k]);
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = field_.sub(a[k], b[k]);
    return r;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    Elem r = zero();
    for (int i = 0; i < N_; ++i) {
      if (field_.is_zero(a[static_cast<std::size_t>(i)])) continue;
      for (int j = 0; i + j < N_; ++j)
        r[static_cast<std::size_t>(i + j)] =
            field_.add(r[static_cast<std::size_t>(i + j)], field_.mul(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]));
    }
    return r;
  }
  bool is_zero(const Elem& a) const {
    return std::all_of(a.begin(), a.end(), [&](const Scalar& c) { return field_.is_zero(c); });
  }
  bool equal(const Elem& a, const Elem& b) const { return is_zero(sub(a, b)); }
  bool is_unit(const Elem& a) const { return !field_.is_zero(a[0]); }
  Elem inv(const Elem& a) const {
    if (!is_unit(a)) throw DivisionByZero();
    Elem b = zero();
    b[0] = field_.inv(a[0]);
    for (int k = 1; k < N_; ++k) {
      Scalar acc = field_.zero();
      for (int m = 1; m <= k; ++m)
        acc = field_.add(acc, field_.mul(a[static_cast<std::size_t>(m)], b[static_cast<std::size_t>(k - m)]));
      b[static_cast<std::size_t>(k)] = field_.neg(field_.mul(b[0], acc));
    }
    return b;
  }
  Elem random(std::mt19937_64& rng) const {
    Elem e = zero();
    for (auto& c : e) c = field_.random(rng);
    return e;
  }

  nlohmann::json to_json() const {
    return {{"field", field_.name()}, {"truncation", N_}, {"s", s_is_t() ? "t" : field_.to_string(s_scalar_)}};
  }

  friend bool operator==(const ChainBase&, const ChainBase&) = default;

 private:
  ChainBase(const K& k, int N, Scalar s) : field_(k), N_(N), s_scalar_(std::move(s)) {}

  K field_;
  int N_;
  Scalar s_scalar_;
};

/// Dense matrix over a field.
template <Field K>
struct FieldMatrix {
  using Scalar = typename K::Elem;
  int rows = 0, cols = 0;
  std::vector<Scalar> a;

  FieldMatrix() = default;
  FieldMatrix(const K& k, int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r * c), k.zero()) {}
  Scalar& operator()(int i, int j) { return a[static_cast<std::size_t>(i * cols + j)]; }
  const Scalar& operator()(int i, int j) const { return a[static_cast<std::size_t>(i * cols + j)]; }
};

/// Dense matrix over a ChainBase.
template <Field K>
struct RingMatrix {
  using Elem = typename ChainBase<K>::Elem;
  int rows = 0, cols = 0;
  std::vector<Elem> a;

  RingMatrix() = default;
  RingMatrix(const ChainBase<K>& R, int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r * c), R.zero()) {}
  Elem& operator()(int i, int j) { return a[static_cast<std::size_t>(i * cols + j)]; }
  const Elem& operator()(int i, int j) const { return a[static_cast<std::size_t>(i * cols + j)]; }
  friend bool operator==(const RingMatrix&, const RingMatrix&) = default;
};

namespace linalg {

template <Field K>
RingMatrix<K> identity(const ChainBase<K>& R, int d) {
  RingMatrix<K> m(R, d, d);
  for (int i = 0; i < d; ++i) m(i, i) = R.one();
  return m;
}

template <Field K>
RingMatrix<K> mul(const ChainBase<K>& R, const RingMatrix<K>& x, const RingMatrix<K>& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix dimension mismatch");
  RingMatrix<K> m(R, x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (R.is_zero(x(i, k))) continue;
      for (int j = 0; j < y.cols; ++j) m(i, j) = R.add(m(i, j), R.mul(x(i, k), y(k, j)));
    }
  return m;
}

template <Field K>
RingMatrix<K> scale(const ChainBase<K>& R, const typename ChainBase<K>::Elem& c, RingMatrix<K> m) {
  for (auto& e : m.a) e = R.mul(c, e);
  return m;
}

template <Field K>
bool equal(const ChainBase<K>& R, const RingMatrix<K>& x, const RingMatrix<K>& y) {
  if (x.rows != y.rows || x.cols != y.cols) return false;
  for (std::size_t k = 0; k < x.a.size(); ++k)
    if (!R.equal(x.a[k], y.a[k])) return false;
  return true;
}

/// Reduction modulo the maximal ideal (t, or nothing over a field).
template <Field K>
FieldMatrix<K> fiber(const ChainBase<K>& R, const RingMatrix<K>& m) {
  FieldMatrix<K> f(R.field(), m.rows, m.cols);
  for (std::size_t k = 0; k < m.a.size(); ++k) f.a[k] = m.a[k][0];
  return f;
}

template <Field K>
RingMatrix<K> lift(const ChainBase<K>& R, const FieldMatrix<K>& f) {
  RingMatrix<K> m(R, f.rows, f.cols);
  for (std::size_t k = 0; k < f.a.size(); ++k) m.a[k] = R.constant(f.a[k]);
  return m;
}

/// Gauss-Jordan inverse over the local ring; nullopt when the fibre is singular.
template <Field K>
std::optional<RingMatrix<K>> inverse(const ChainBase<K>& R, RingMatrix<K> m) {
  if (m.rows != m.cols) throw std::invalid_argument("inverse of a non-square matrix");
  const int d = m.rows;
  RingMatrix<K> inv = identity(R, d);
  for (int col = 0; col < d; ++col) {
    int piv = -1;
    for (int i = col; i < d && piv < 0; ++i)
      if (R.is_unit(m(i, col))) piv = i;
    if (piv < 0) return std::nullopt;
    for (int j = 0; j < d; ++j) {
      std::swap(m(piv, j), m(col, j));
      std::swap(inv(piv, j), inv(col, j));
    }
    auto pinv = R.inv(m(col, col));
    for (int j = 0; j < d; ++j) {
      m(col, j) = R.mul(pinv, m(col, j));
      inv(col, j) = R.mul(pinv, inv(col, j));
    }
    for (int i = 0; i < d; ++i) {
      if (i == col || R.is_zero(m(i, col))) continue;
      auto f = m(i, col);
      for (int j = 0; j < d; ++j) {
        m(i, j) = R.sub(m(i, j), R.mul(f, m(col, j)));
        inv(i, j) = R.sub(inv(i, j), R.mul(f, inv(col, j)));
      }
    }
  }
  return inv;
}

/// Row-reduced echelon form in place; returns the pivot columns.
template <Field K>
std::vector<int> rref(const K& k, FieldMatrix<K>& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int piv = -1;
    for (int i = row; i < m.rows && piv < 0; ++i)
      if (!k.is_zero(m(i, col))) piv = i;
    if (piv < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(row, j));
    auto pinv = k.inv(m(row, col));
    for (int j = 0; j < m.cols; ++j) m(row, j) = k.mul(pinv, m(row, j));
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || k.is_zero(m(i, col))) continue;
      auto f = m(i, col);
      for (int j = 0; j < m.cols; ++j) m(i, j) = k.sub(m(i, j), k.mul(f, m(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <Field K>
int rank(const K& k, FieldMatrix<K> m) {
  return static_cast<int>(rref(k, m).size());
}

/// Columns spanning the null space.
template <Field K>
FieldMatrix<K> kernel(const K& k, FieldMatrix<K> m) {
  auto pivots = rref(k, m);
  std::vector<int> free;
  for (int j = 0, p = 0; j < m.cols; ++j) {
    if (p < static_cast<int>(pivots.size()) && pivots[static_cast<std::size_t>(p)] == j) ++p;
    else free.push_back(j);
  }
  FieldMatrix<K> ker(k, m.cols, static_cast<int>(free.size()));
  for (std::size_t f = 0; f < free.size(); ++f) {
    ker(free[f], static_cast<int>(f)) = k.one();
    for (std::size_t r = 0; r < pivots.size(); ++r)
      ker(pivots[r], static_cast<int>(f)) = k.neg(m(static_cast<int>(r), free[f]));
  }
  return ker;
}

template <Field K>
FieldMatrix<K> hcat(const K& k, const FieldMatrix<K>& x, const FieldMatrix<K>& y) {
  if (x.rows != y.rows) throw std::invalid_argument("hcat row mismatch");
  FieldMatrix<K> m(k, x.rows, x.cols + y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int j = 0; j < x.cols; ++j) m(i, j) = x(i, j);
    for (int j = 0; j < y.cols; ++j) m(i, x.cols + j) = y(i, j);
  }
  return m;
}

template <Field K>
FieldMatrix<K> mul(const K& k, const FieldMatrix<K>& x, const FieldMatrix<K>& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix dimension mismatch");
  FieldMatrix<K> m(k, x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int l = 0; l < x.cols; ++l) {
      if (k.is_zero(x(i, l))) continue;
      for (int j = 0; j < y.cols; ++j) m(i, j) = k.add(m(i, j), k.mul(x(i, l), y(l, j)));
    }
  return m;
}

/// dim(col U ∩ col V).
template <Field K>
int intersection_dim(const K& k, const FieldMatrix<K>& u, const FieldMatrix<K>& v) {
  return rank(k, u) + rank(k, v) - rank(k, hcat(k, u, v));
}

template <Field K>
bool same_span(const K& k, const FieldMatrix<K>& u, const FieldMatrix<K>& v) {
  int ru = rank(k, u), rv = rank(k, v);
  return ru == rv && rank(k, hcat(k, u, v)) == ru;
}

}  // namespace linalg

template <Field K>
struct LinkedChain {
  int d = 0;
  int n = 1;
  ChainBase<K> base;
  std::vector<RingMatrix<K>> fwd;  // f_i : E_i -> E_{i+1}, i = 1..n-1
  std::vector<RingMatrix<K>> bwd;  // f^i : E_{i+1} -> E_i

  const RingMatrix<K>& f(int i) const { return fwd.at(static_cast<std::size_t>(i - 1)); }
  const RingMatrix<K>& fb(int i) const { return bwd.at(static_cast<std::size_t>(i - 1)); }

  /// f_{j,i} for j <= i, f^{j,i} for j > i; the identity when j == i.
  RingMatrix<K> composite(int j, int i) const {
    RingMatrix<K> m = linalg::identity(base, d);
    if (j <= i)
      for (int k = j; k < i; ++k) m = linalg::mul(base, f(k), m);
    else
      for (int k = j - 1; k >= i; --k) m = linalg::mul(base, fb(k), m);
    return m;
  }
};

struct ChainVerdict {
  bool pass = true;
  std::string condition;  // which axiom failed
  nlohmann::json witness;

  static ChainVerdict failure(std::string cond, nlohmann::json w) { return {false, std::move(cond), std::move(w)}; }
};

/// Conditions (I) exactly over the base and (II), (III) on the s = 0 fibre.
template <Field K>
ChainVerdict verify_chain(const LinkedChain<K>& ch) {
  const auto& R = ch.base;
  const K& k = R.field();
  if (ch.d < 1 || ch.n < 1 || static_cast<int>(ch.fwd.size()) != ch.n - 1 || static_cast<int>(ch.bwd.size()) != ch.n - 1)
    throw std::invalid_argument("chain has the wrong number of maps");
  for (const auto* maps : {&ch.fwd, &ch.bwd})
    for (const auto& m : *maps)
      if (m.rows != ch.d || m.cols != ch.d) throw std::invalid_argument("chain maps must be d x d");

  const auto sid = linalg::scale(R, R.s(), linalg::identity(R, ch.d));
  for (int i = 1; i < ch.n; ++i) {
    if (!linalg::equal(R, linalg::mul(R, ch.f(i), ch.fb(i)), sid))
      return ChainVerdict::failure("I", {{"i", i}, {"composite", "f_i f^i"}});
    if (!linalg::equal(R, linalg::mul(R, ch.fb(i), ch.f(i)), sid))
      return ChainVerdict::failure("I", {{"i", i}, {"composite", "f^i f_i"}});
  }
  // over a unit s the fibre conditions are vacuous
  if (!R.s_is_nonunit()) return {};

  std::vector<FieldMatrix<K>> F, B;
  for (int i = 1; i < ch.n; ++i) {
    F.push_back(linalg::fiber(R, ch.f(i)));
    B.push_back(linalg::fiber(R, ch.fb(i)));
  }
  auto at = [](const auto& v, int i) -> const auto& { return v[static_cast<std::size_t>(i - 1)]; };
  for (int i = 1; i < ch.n; ++i) {
    if (!linalg::same_span(k, linalg::kernel(k, at(B, i)), at(F, i)))
      return ChainVerdict::failure("II", {{"i", i}, {"claim", "ker f^i = im f_i"}});
    if (!linalg::same_span(k, linalg::kernel(k, at(F, i)), at(B, i)))
      return ChainVerdict::failure("II", {{"i", i}, {"claim", "ker f_i = im f^i"}});
  }
  for (int i = 1; i + 1 < ch.n; ++i) {
    if (linalg::intersection_dim(k, at(F, i), linalg::kernel(k, at(F, i + 1))) != 0)
      return ChainVerdict::failure("III", {{"i", i}, {"claim", "im f_i ∩ ker f_{i+1} = 0"}});
    if (linalg::intersection_dim(k, at(B, i + 1), linalg::kernel(k, at(B, i))) != 0)
      return ChainVerdict::failure("III", {{"i", i}, {"claim", "im f^{i+1} ∩ ker f^i = 0"}});
  }
  return {};
}

struct RankProfile {
  std::vector<int> c;
  bool nondecreasing = true;
};

/// c_i = rank of f_i on the closed fibre.
template <Field K>
RankProfile rank_profile(const LinkedChain<K>& ch) {
  RankProfile out;
  for (int i = 1; i < ch.n; ++i) {
    out.c.push_back(linalg::rank(ch.base.field(), linalg::fiber(ch.base, ch.f(i))));
    if (out.c.size() > 1 && out.c.back() < out.c[out.c.size() - 2]) out.nondecreasing = false;
  }
  return out;
}

class FrameConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <Field K>
struct FrameSet {
  std::vector<FieldMatrix<K>> W;  // d x rank_i, constant columns
  std::vector<int> ranks;
};

namespace detail {

template <Field K>
FieldMatrix<K> unit_vector(const K& k, int d, int pos) {
  FieldMatrix<K> v(k, d, 1);
  v(pos, 0) = k.one();
  return v;
}

// span(ker f_i, ker f^{i-1}) on the fibre, with f_n and f^0 injective
template <Field K>
FieldMatrix<K> frame_obstruction(const LinkedChain<K>& ch, int i) {
  const K& k = ch.base.field();
  FieldMatrix<K> span(k, ch.d, 0);
  if (i < ch.n) span = linalg::hcat(k, span, linalg::kernel(k, linalg::fiber(ch.base, ch.f(i))));
  if (i > 1) span = linalg::hcat(k, span, linalg::kernel(k, linalg::fiber(ch.base, ch.fb(i - 1))));
  return span;
}

}  // namespace detail

/// Lemma-style checks (i)-(iii) of a frame set.
template <Field K>
ChainVerdict verify_frames(const LinkedChain<K>& ch, const FrameSet<K>& fr) {
  const auto& R = ch.base;
  const K& k = R.field();
  if (static_cast<int>(fr.W.size()) != ch.n) return ChainVerdict::failure("frames", {{"reason", "wrong number of frames"}});
  int total = 0;
  for (int i = 1; i <= ch.n; ++i) {
    const auto& w = fr.W[static_cast<std::size_t>(i - 1)];
    total += w.cols;
    if (linalg::rank(k, w) != w.cols) return ChainVerdict::failure("frames", {{"i", i}, {"reason", "frame not independent"}});
    if (linalg::intersection_dim(k, w, detail::frame_obstruction(ch, i)) != 0)
      return ChainVerdict::failure("i", {{"i", i}, {"reason", "frame meets span(ker f_i, ker f^{i-1})"}});
  }
  if (total != ch.d) return ChainVerdict::failure("frames", {{"reason", "frame ranks do not sum to d"}, {"sum", total}});
  for (int i = 1; i <= ch.n; ++i) {
    FieldMatrix<K> all(k, ch.d, 0);
    for (int j = ch.n; j >= 1; --j) {
      auto img = linalg::mul(k, linalg::fiber(R, ch.composite(j, i)), fr.W[static_cast<std::size_t>(j - 1)]);
      if (linalg::rank(k, img) != img.cols)
        return ChainVerdict::failure("ii", {{"from", j}, {"to", i}, {"reason", "composite not injective on the frame"}});
      all = linalg::hcat(k, all, img);
    }
    if (linalg::rank(k, all) != ch.d)
      return ChainVerdict::failure("iii", {{"i", i}, {"reason", "direct sum of frame images is not E_i"}});
  }
  return {};
}

/// Greedy complements of span(ker f_i, ker f^{i-1}); randomised restarts on failure.
template <Field K>
FrameSet<K> build_frames(const LinkedChain<K>& ch, std::uint64_t seed = 0, int max_attempts = 32) {
  const K& k = ch.base.field();
  const auto prof = rank_profile(ch);
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    FrameSet<K> fr;
    for (int i = 1; i <= ch.n; ++i) {
      const int lo = i == 1 ? 0 : prof.c[static_cast<std::size_t>(i - 2)];
      const int hi = i == ch.n ? ch.d : prof.c[static_cast<std::size_t>(i - 1)];
      const int want = std::max(0, hi - lo);
      auto base = detail::frame_obstruction(ch, i);
      FieldMatrix<K> w(k, ch.d, 0);
      int have_rank = linalg::rank(k, base);
      for (int cand = 0; w.cols < want && cand < ch.d * 4; ++cand) {
        FieldMatrix<K> v(k, ch.d, 1);
        if (attempt == 0 && cand < ch.d) v = detail::unit_vector(k, ch.d, cand);
        else
          for (int r = 0; r < ch.d; ++r) v(r, 0) = k.random(rng);
        auto trial = linalg::hcat(k, linalg::hcat(k, base, w), v);
        int rk = linalg::rank(k, trial);
        if (rk > have_rank) {
          have_rank = rk;
          w = linalg::hcat(k, w, v);
        }
      }
      fr.W.push_back(w);
      fr.ranks.push_back(w.cols);
    }
    if (verify_frames(ch, fr).pass) return fr;
  }
  throw FrameConstructionError("no frame set found; the chain is likely invalid");
}

/// Maps E_i -> F_1 (+) F_n in frame bases, and the values X they reduce to.
template <Field K>
struct UniversalForm {
  std::vector<RingMatrix<K>> M;  // (r1 + rn) x d each
  RingMatrix<K> X;               // the entries that play the role of x[i,j]
  std::vector<int> c;
};

namespace detail {

template <Field K>
RingMatrix<K> stack(const ChainBase<K>& R, const RingMatrix<K>& top, const RingMatrix<K>& bottom) {
  RingMatrix<K> m(R, top.rows + bottom.rows, top.cols);
  for (int i = 0; i < top.rows; ++i)
    for (int j = 0; j < top.cols; ++j) m(i, j) = top(i, j);
  for (int i = 0; i < bottom.rows; ++i)
    for (int j = 0; j < bottom.cols; ++j) m(top.rows + i, j) = bottom(i, j);
  return m;
}

}  // namespace detail

/// Induced frame bases with the W_n block first; asserts M_i = A_i(s, X) exactly.
template <Field K>
UniversalForm<K> to_universal_form(const LinkedChain<K>& ch, const FrameSet<K>& fr, const RingMatrix<K>& g1,
                                   const RingMatrix<K>& gn) {
  const auto& R = ch.base;
  if (static_cast<int>(fr.W.size()) != ch.n) throw std::invalid_argument("frames missing");
  if (g1.cols != ch.d || gn.cols != ch.d) throw std::invalid_argument("g1, gn must have d columns");
  UniversalForm<K> out;
  for (int i = 1; i < ch.n; ++i) {
    int sum = 0;
    for (int j = 1; j <= i; ++j) sum += fr.ranks[static_cast<std::size_t>(j - 1)];
    out.c.push_back(sum);
  }
  auto basis_of = [&](int i) {
    RingMatrix<K> b(R, ch.d, ch.d);
    int col = 0;
    for (int j = ch.n; j >= 1; --j) {
      auto img = linalg::mul(R, ch.composite(j, i), linalg::lift(R, fr.W[static_cast<std::size_t>(j - 1)]));
      for (int q = 0; q < img.cols; ++q, ++col)
        for (int r = 0; r < ch.d; ++r) b(r, col) = img(r, q);
    }
    return b;
  };
  // X: g1 f^{j,1}(w) on top, g_n f_{j,n}(w) below, for w in W_j in the same order
  {
    RingMatrix<K> top(R, g1.rows, ch.d), bottom(R, gn.rows, ch.d);
    int col = 0;
    for (int j = ch.n; j >= 1; --j) {
      auto w = linalg::lift(R, fr.W[static_cast<std::size_t>(j - 1)]);
      auto t = linalg::mul(R, g1, linalg::mul(R, ch.composite(j, 1), w));
      auto b = linalg::mul(R, gn, linalg::mul(R, ch.composite(j, ch.n), w));
      for (int q = 0; q < w.cols; ++q, ++col) {
        for (int r = 0; r < g1.rows; ++r) top(r, col) = t(r, q);
        for (int r = 0; r < gn.rows; ++r) bottom(r, col) = b(r, q);
      }
    }
    out.X = detail::stack(R, top, bottom);
  }
  InstanceParams shape;
  shape.d = ch.d;
  shape.n = ch.n;
  shape.r1 = g1.rows;
  shape.rn = gn.rows;
  shape.c = out.c;
  for (int i = 1; i <= ch.n; ++i) {
    auto mi = linalg::mul(R, detail::stack(R, linalg::mul(R, g1, ch.composite(i, 1)), linalg::mul(R, gn, ch.composite(i, ch.n))),
                          basis_of(i));
    for (int row = 1; row <= shape.rows(); ++row)
      for (int col = 1; col <= ch.d; ++col) {
        int e = row <= shape.r1 ? exp_e1(col, i, shape) : exp_e2(col, i, shape);
        if (!R.equal(mi(row - 1, col - 1), R.mul(R.s_pow(e), out.X(row - 1, col - 1))))
          throw std::logic_error("frame-basis matrix differs from the staircase form at i=" + std::to_string(i));
      }
    out.M.push_back(std::move(mi));
  }
  return out;
}

/// Zero pattern on the closed fibre.
template <Field K>
std::vector<std::vector<bool>> fiber_zero_pattern(const ChainBase<K>& R, const RingMatrix<K>& m) {
  std::vector<std::vector<bool>> z(static_cast<std::size_t>(m.rows), std::vector<bool>(static_cast<std::size_t>(m.cols)));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) z[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = R.field().is_zero(m(i, j)[0]);
  return z;
}

template <Field K>
RingMatrix<K> random_matrix(const ChainBase<K>& R, int rows, int cols, std::mt19937_64& rng, bool constant = false) {
  RingMatrix<K> m(R, rows, cols);
  for (auto& e : m.a) e = constant ? R.constant(R.field().random(rng)) : R.random(rng);
  return m;
}

template <Field K>
RingMatrix<K> random_invertible(const ChainBase<K>& R, int d, std::mt19937_64& rng) {
  for (;;) {
    auto m = random_matrix(R, d, d, rng);
    if (linalg::rank(R.field(), linalg::fiber(R, m)) == d) return m;
  }
}

/// to_universal_form with constant random g1, gn, re-rolled until X has no zero on the fibre.
template <Field K>
UniversalForm<K> universal_form_generic(const LinkedChain<K>& ch, const FrameSet<K>& fr, int r1, int rn,
                                        std::mt19937_64& rng, int max_tries = 64) {
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    auto uf = to_universal_form(ch, fr, random_matrix(ch.base, r1, ch.d, rng, true), random_matrix(ch.base, rn, ch.d, rng, true));
    bool generic = true;
    for (const auto& row : fiber_zero_pattern(ch.base, uf.X))
      generic = generic && std::none_of(row.begin(), row.end(), [](bool z) { return z; });
    if (generic) return uf;
  }
  throw FrameConstructionError("no g1, gn with X nonzero on the fibre");
}

/// Conjugated canonical model: f_i = diag(1^{c_i}, s^{d-c_i}), f^i = diag(s^{c_i}, 1^{d-c_i}).
template <Field K>
LinkedChain<K> generate_chain(int d, int n, const std::vector<int>& c, const ChainBase<K>& base, std::uint64_t seed) {
  if (d < 1 || n < 1) throw std::invalid_argument("d and n must be positive");
  if (static_cast<int>(c.size()) != n - 1) throw std::invalid_argument("c must have n-1 entries");
  for (std::size_t m = 0; m < c.size(); ++m)
    if (c[m] < 0 || c[m] > d || (m && c[m] < c[m - 1])) throw std::invalid_argument("c must be nondecreasing in [0, d]");
  if (!base.s_is_nonunit() && std::any_of(c.begin(), c.end(), [&](int x) { return x != d; }))
    throw std::invalid_argument("with s a unit every f_i is invertible, so c must be (d, ..., d)");
  std::mt19937_64 rng(seed);
  std::vector<RingMatrix<K>> P, Pinv;
  for (int i = 0; i < n; ++i) {
    P.push_back(random_invertible(base, d, rng));
    Pinv.push_back(*linalg::inverse(base, P.back()));
  }
  LinkedChain<K> ch{d, n, base, {}, {}};
  for (int i = 1; i < n; ++i) {
    RingMatrix<K> D(base, d, d), Db(base, d, d);
    for (int q = 0; q < d; ++q) {
      bool head = q < c[static_cast<std::size_t>(i - 1)];
      D(q, q) = head ? base.one() : base.s();
      Db(q, q) = head ? base.s() : base.one();
    }
    const auto u = static_cast<std::size_t>(i - 1), v = static_cast<std::size_t>(i);
    ch.fwd.push_back(linalg::mul(base, P[v], linalg::mul(base, D, Pinv[u])));
    ch.bwd.push_back(linalg::mul(base, P[u], linalg::mul(base, Db, Pinv[v])));
  }
  return ch;
}

// ---- serialisation ----

template <Field K>
nlohmann::json matrix_to_json(const ChainBase<K>& R, const RingMatrix<K>& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols; ++j) {
      if (R.truncation() == 1) {
        row.push_back(R.field().to_string(m(i, j)[0]));
      } else {
        nlohmann::json coeffs = nlohmann::json::array();
        for (const auto& c : m(i, j)) coeffs.push_back(R.field().to_string(c));
        row.push_back(coeffs);
      }
    }
    rows.push_back(row);
  }
  return rows;
}

template <Field K>
RingMatrix<K> matrix_from_json(const ChainBase<K>& R, const nlohmann::json& j, int d) {
  RingMatrix<K> m(R, d, d);
  if (!j.is_array() || static_cast<int>(j.size()) != d) throw std::invalid_argument("matrix must have d rows");
  for (int r = 0; r < d; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != d) throw std::invalid_argument("matrix must have d columns");
    for (int c = 0; c < d; ++c) {
      const auto& e = row[static_cast<std::size_t>(c)];
      auto elem = R.zero();
      if (R.truncation() == 1) {
        elem[0] = R.field().parse(e.get<std::string>());
      } else {
        if (!e.is_array() || static_cast<int>(e.size()) > R.truncation())
          throw std::invalid_argument("ring entry must list at most N coefficients");
        for (std::size_t k = 0; k < e.size(); ++k) elem[k] = R.field().parse(e[k].get<std::string>());
      }
      m(r, c) = elem;
    }
  }
  return m;
}

template <Field K>
nlohmann::json chain_to_json(const LinkedChain<K>& ch) {
  nlohmann::json fwd = nlohmann::json::array(), bwd = nlohmann::json::array();
  for (const auto& m : ch.fwd) fwd.push_back(matrix_to_json(ch.base, m));
  for (const auto& m : ch.bwd) bwd.push_back(matrix_to_json(ch.base, m));
  return {{"d", ch.d}, {"n", ch.n}, {"base", ch.base.to_json()}, {"f_fwd", fwd}, {"f_bwd", bwd}};
}

template <Field K>
ChainBase<K> base_from_json(const K& k, const nlohmann::json& j) {
  int N = j.value("truncation", 1);
  std::string s = j.value("s", std::string("0"));
  if (N >= 2) {
    if (s != "t") throw std::invalid_argument("a truncated base uses s = t");
    return ChainBase<K>::truncated(k, N);
  }
  return ChainBase<K>::over_field(k, k.parse(s));
}

template <Field K>
LinkedChain<K> chain_from_json(const K& k, const nlohmann::json& j) {
  auto base = base_from_json(k, j.at("base"));
  LinkedChain<K> ch{j.at("d").get<int>(), j.at("n").get<int>(), base, {}, {}};
  for (const auto& m : j.at("f_fwd")) ch.fwd.push_back(matrix_from_json(base, m, ch.d));
  for (const auto& m : j.at("f_bwd")) ch.bwd.push_back(matrix_from_json(base, m, ch.d));
  return ch;
}

}  // namespace linkdet
