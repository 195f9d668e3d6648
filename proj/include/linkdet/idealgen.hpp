#pragma once

// Generator sets of I_r, J_r and the weight degeneration J'_r.

#include "linkdet/linkedmatrix.hpp"

#include <algorithm>
#include <vector>

namespace linkdet {

enum class Provenance { Ir, Jr, JrPrime, Custom };

template <Field K>
struct IdealBasis {
  std::vector<Polynomial<K>> generators;
  Provenance provenance = Provenance::Custom;

  std::size_t size() const { return generators.size(); }
};

/// Drops zero and repeated generators, keeping first occurrences in order.
template <Field K>
IdealBasis<K> make_ideal_basis(const std::vector<Polynomial<K>>& gens, Provenance prov) {
  IdealBasis<K> out{{}, prov};
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    if (std::find(out.generators.begin(), out.generators.end(), g) != out.generators.end()) continue;
    out.generators.push_back(g);
  }
  return out;
}

/// All (size x size) minors of m, in index order, zeros included.
template <Field K>
std::vector<Polynomial<K>> all_minors(const SymbolicMatrix<K>& m, int size) {
  std::vector<Polynomial<K>> out;
  for (const auto& idx : all_minor_indices(m.rows(), m.cols(), size)) out.push_back(minor(m, idx));
  return out;
}

/// Minors of every A_l, ordered by (rows, cols, l).
template <Field K>
IdealBasis<K> gen_Ir(const InstanceParams& p, const K& k) {
  std::vector<SymbolicMatrix<K>> mats;
  for (int l = 1; l <= p.n; ++l) mats.push_back(build_A(l, p, k));
  std::vector<Polynomial<K>> gens;
  for (const auto& idx : all_minor_indices(p))
    for (const auto& a : mats) gens.push_back(minor(a, idx));
  return make_ideal_basis(gens, Provenance::Ir);
}

template <Field K>
IdealBasis<K> gen_Jr(const InstanceParams& p, const K& k) {
  return make_ideal_basis(all_minors(build_generic(p, k), p.r + 1), Provenance::Jr);
}

/// Lowest-t part of the B minor at idx, with t set to 1.
template <Field K>
Polynomial<K> gen_g(const MinorIndex& idx, const InstanceParams& p, const K& k) {
  auto lowest = initial_by_weight(minor(build_B(p, k), idx), t_degree_weight());
  return substitute_t(lowest, k.one());
}

/// Minimal-weight initial forms of the generic minors under the epsilon weights.
template <Field K>
IdealBasis<K> gen_JrPrime(const InstanceParams& p, const K& k) {
  const auto generic = build_generic(p, k);
  const auto w = degeneration_weights(p);
  std::vector<Polynomial<K>> gens;
  for (const auto& idx : all_minor_indices(p)) gens.push_back(initial_by_weight(minor(generic, idx), w));
  return make_ideal_basis(gens, Provenance::JrPrime);
}

}  // namespace linkdet
