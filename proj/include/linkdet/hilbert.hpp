#pragma once

// Hilbert functions and Krull dimension of monomial ideals, plus a
// brute-force graded-rank Hilbert function for arbitrary homogeneous ideals.

#include "linkdet/groebner.hpp"
#include "linkdet/monomial_ideal.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace linkdet {

/// values[D] = dim_k (R/I)_D for D = 0..D_max.
struct HilbertTable {
  std::vector<std::uint64_t> values;

  bool pointwise_le(const HilbertTable& o) const {
    if (values.size() != o.values.size()) throw std::invalid_argument("Hilbert tables of different length");
    for (std::size_t d = 0; d < values.size(); ++d)
      if (values[d] > o.values[d]) return false;
    return true;
  }
  friend bool operator==(const HilbertTable&, const HilbertTable&) = default;
};

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Number of degree-D monomials in v variables.
inline std::uint64_t monomial_count(int v, int D) {
  if (D < 0) return 0;
  if (v == 0) return D == 0 ? 1 : 0;
  return binomial(static_cast<std::uint64_t>(D + v - 1), static_cast<std::uint64_t>(v - 1));
}

namespace detail {

inline void count_standard(const MonomialIdeal& ideal, int num_vars, int d_max, int var, int deg, Monomial& cur,
                           std::vector<std::uint64_t>& counts) {
  if (var == num_vars) {
    ++counts[static_cast<std::size_t>(deg)];
    return;
  }
  for (int e = 0; deg + e <= d_max; ++e) {
    cur.set(var, e);
    // multiples of an ideal member stay in the ideal, so the branch dies here
    if (e > 0 && ideal.contains(cur)) break;
    count_standard(ideal, num_vars, d_max, var + 1, deg + e, cur, counts);
  }
  cur.set(var, 0);
}

}  // namespace detail

/// Counts standard monomials (divisible by no generator) in slots 0..num_vars-1.
inline HilbertTable hf_monomial(const MonomialIdeal& ideal, int num_vars, int d_max) {
  if (d_max < 0) throw std::invalid_argument("d_max must be nonnegative");
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(d_max + 1), 0);
  Monomial cur;
  if (ideal.contains(cur)) return {counts};
  detail::count_standard(ideal, num_vars, d_max, 0, 0, cur, counts);
  return {counts};
}

namespace detail {

// smallest hitting set of the supports, by branch and bound
inline void min_transversal(const std::vector<Monomial>& supports, Monomial& chosen, int size, int& best) {
  if (size >= best) return;
  const Monomial* open = nullptr;
  for (const auto& s : supports)
    if (s.coprime(chosen) && (!open || s.degree() < open->degree())) open = &s;
  if (!open) {
    best = size;
    return;
  }
  for (int v = 0; v < kSlots; ++v) {
    if (!(*open)[v]) continue;
    chosen.set(v, 1);
    min_transversal(supports, chosen, size + 1, best);
    chosen.set(v, 0);
  }
}

}  // namespace detail

/// dim R/I: the largest variable set containing no generator's support. -1 for the unit ideal.
inline int krull_dim_monomial(const MonomialIdeal& ideal, int num_vars) {
  std::vector<Monomial> supports;
  for (const auto& g : ideal.generators()) {
    if (g.is_one()) return -1;
    supports.push_back(g.support());
  }
  MonomialIdeal radical(supports);
  std::vector<Monomial> mins(radical.generators().begin(), radical.generators().end());
  Monomial chosen;
  int best = num_vars + 1;
  detail::min_transversal(mins, chosen, 0, best);
  return num_vars - best;
}

struct OracleOptions {
  /// Upper bound on rows (monomial multiples) per degree slice.
  std::size_t max_rows = 2'000'000;
};

/// Hilbert function by rank of the degree-D slices {m * g}; no Groebner machinery.
template <Field K>
HilbertTable hf_oracle(const K& field, std::span<const Polynomial<K>> gens, int num_vars, int d_max,
                       const OracleOptions& opts = {}) {
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    if (!g.is_homogeneous()) throw std::invalid_argument("hf_oracle needs homogeneous generators");
    if (g.involves_t()) throw std::invalid_argument("hf_oracle works in the x variables only");
    for (const auto& t : g.terms())
      for (int s = num_vars; s < kSlots; ++s)
        if (t.mono[s]) throw std::invalid_argument("generator uses a variable beyond num_vars");
  }
  HilbertTable table;
  for (int D = 0; D <= d_max; ++D) {
    std::unordered_map<Monomial, Polynomial<K>, MonomialHash> pivots;
    std::size_t rows = 0;
    for (const auto& g : gens) {
      if (g.is_zero() || g.degree() > D) continue;
      // all monomials of degree D - deg g
      const int want = D - g.degree();
      auto emit = [&](const Monomial& m) {
        if (++rows > opts.max_rows) throw ResourceLimit("hf_oracle row bound exceeded");
        Polynomial<K> row = g.mul_term(m, field.one());
        while (!row.is_zero()) {
          auto it = pivots.find(row.leading_monomial());
          if (it == pivots.end()) break;
          row = row.sub_mul(Monomial{}, row.leading_coef(), it->second);
        }
        if (!row.is_zero()) {
          Monomial lead = row.leading_monomial();
          pivots.emplace(lead, row.monic());
        }
      };
      if (num_vars == 0) {
        if (want == 0) emit(Monomial{});
        continue;
      }
      // enumerate compositions of `want` into num_vars parts
      Monomial m;
      auto rec = [&](auto&& self, int var, int left) -> void {
        if (var == num_vars - 1) {
          m.set(var, left);
          emit(m);
          m.set(var, 0);
          return;
        }
        for (int e = left; e >= 0; --e) {
          m.set(var, e);
          self(self, var + 1, left - e);
        }
        m.set(var, 0);
      };
      rec(rec, 0, want);
    }
    std::uint64_t total = monomial_count(num_vars, D);
    table.values.push_back(total - pivots.size());
  }
  return table;
}

template <Field K>
HilbertTable hf_oracle(const K& field, const std::vector<Polynomial<K>>& gens, int num_vars, int d_max,
                       const OracleOptions& opts = {}) {
  return hf_oracle(field, std::span<const Polynomial<K>>(gens), num_vars, d_max, opts);
}

}  // namespace linkdet
