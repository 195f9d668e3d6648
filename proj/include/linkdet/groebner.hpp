#pragma once

// Multivariate division and Buchberger's algorithm under lex order.

#include "linkdet/monomial_ideal.hpp"
#include "linkdet/polynomial.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace linkdet {

class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GroebnerOptions {
  /// Upper bound on critical pairs ever queued.
  std::size_t max_pairs = 2'000'000;
};

template <Field K>
struct DivisionResult {
  std::vector<Polynomial<K>> quotients;
  Polynomial<K> remainder;
};

/// f = sum q_i g_i + r with no term of r divisible by any LM(g_i).
template <Field K>
DivisionResult<K> divide(const Polynomial<K>& f, std::span<const Polynomial<K>> gs) {
  const K& k = f.field();
  for (const auto& g : gs)
    if (g.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  DivisionResult<K> out{std::vector<Polynomial<K>>(gs.size(), Polynomial<K>(k)), Polynomial<K>(k)};
  std::vector<typename Polynomial<K>::Term> rem;
  Polynomial<K> p = f;
  while (!p.is_zero()) {
    const auto& lt = p.leading_term();
    bool reduced = false;
    for (std::size_t i = 0; i < gs.size(); ++i) {
      if (!gs[i].leading_monomial().divides(lt.mono)) continue;
      Monomial m = lt.mono / gs[i].leading_monomial();
      auto c = k.div(lt.coef, gs[i].leading_coef());
      out.quotients[i] = out.quotients[i] + Polynomial<K>::term(k, m, c);
      p = p.sub_mul(m, c, gs[i]);
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.push_back(lt);
      p = p - Polynomial<K>::term(k, lt.mono, lt.coef);
    }
  }
  out.remainder = Polynomial<K>::from_terms(k, std::move(rem));
  return out;
}

/// Remainder of f on division by gs (quotients discarded).
template <Field K>
Polynomial<K> normal_form(const Polynomial<K>& f, std::span<const Polynomial<K>* const> gs) {
  const K& k = f.field();
  std::vector<typename Polynomial<K>::Term> rem;
  Polynomial<K> p = f;
  while (!p.is_zero()) {
    const auto lt = p.leading_term();
    const Polynomial<K>* reducer = nullptr;
    for (const auto* g : gs)
      if (g->leading_monomial().divides(lt.mono)) {
        reducer = g;
        break;
      }
    if (reducer) {
      p = p.sub_mul(lt.mono / reducer->leading_monomial(), k.div(lt.coef, reducer->leading_coef()), *reducer);
    } else {
      rem.push_back(lt);
      p = p - Polynomial<K>::term(k, lt.mono, lt.coef);
    }
  }
  return Polynomial<K>::from_terms(k, std::move(rem));
}

template <Field K>
Polynomial<K> normal_form(const Polynomial<K>& f, std::span<const Polynomial<K>> gs) {
  std::vector<const Polynomial<K>*> ptrs;
  for (const auto& g : gs) ptrs.push_back(&g);
  return normal_form(f, std::span<const Polynomial<K>* const>(ptrs));
}

template <Field K>
Polynomial<K> s_polynomial(const Polynomial<K>& f, const Polynomial<K>& g) {
  const K& k = f.field();
  Monomial l = f.leading_monomial().lcm(g.leading_monomial());
  auto a = f.mul_term(l / f.leading_monomial(), k.inv(f.leading_coef()));
  return a.sub_mul(l / g.leading_monomial(), k.inv(g.leading_coef()), g);
}

template <Field K>
class GroebnerBasis {
 public:
  GroebnerBasis(std::vector<Polynomial<K>> gens, bool reduced) : gens_(std::move(gens)), reduced_(reduced) {}

  std::span<const Polynomial<K>> generators() const { return gens_; }
  bool reduced() const { return reduced_; }
  std::size_t size() const { return gens_.size(); }

  bool leading_ideal_contains(const Monomial& m) const {
    return std::any_of(gens_.begin(), gens_.end(), [&](const auto& g) { return g.leading_monomial().divides(m); });
  }
  Polynomial<K> reduce(const Polynomial<K>& f) const { return normal_form(f, std::span<const Polynomial<K>>(gens_)); }
  bool ideal_contains(const Polynomial<K>& f) const { return reduce(f).is_zero(); }

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) { return a.gens_ == b.gens_; }

 private:
  std::vector<Polynomial<K>> gens_;
  bool reduced_;
};

namespace detail {

template <Field K>
class Buchberger {
 public:
  Buchberger(const K& field, const GroebnerOptions& opts) : field_(field), opts_(opts) {}

  void insert(Polynomial<K> h) {
    h = reduce_by_active(h);
    if (h.is_zero()) return;
    h = h.monic();
    store_.push_back(std::move(h));
    update(store_.size() - 1);
  }

  void run() {
    while (!pairs_.empty()) {
      auto best = pairs_.begin();
      for (auto it = pairs_.begin(); it != pairs_.end(); ++it)
        if (pair_key(*it) < pair_key(*best)) best = it;
      Pair p = *best;
      *best = pairs_.back();
      pairs_.pop_back();
      auto h = reduce_by_active(s_polynomial(store_[p.i], store_[p.j]));
      if (h.is_zero()) continue;
      store_.push_back(h.monic());
      update(store_.size() - 1);
    }
  }

  GroebnerBasis<K> reduced_basis() const {
    std::vector<Polynomial<K>> basis;
    for (std::size_t i : active_) basis.push_back(store_[i]);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      std::vector<const Polynomial<K>*> others;
      for (std::size_t j = 0; j < basis.size(); ++j)
        if (j != i) others.push_back(&basis[j]);
      basis[i] = normal_form(basis[i], std::span<const Polynomial<K>* const>(others)).monic();
    }
    std::sort(basis.begin(), basis.end(),
              [](const auto& a, const auto& b) { return a.leading_monomial() > b.leading_monomial(); });
    return GroebnerBasis<K>(std::move(basis), true);
  }

 private:
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };

  auto pair_key(const Pair& p) const { return std::make_tuple(p.lcm.degree(), p.lcm, p.i, p.j); }

  Polynomial<K> reduce_by_active(const Polynomial<K>& f) const {
    std::vector<const Polynomial<K>*> ptrs;
    for (std::size_t i : active_) ptrs.push_back(&store_[i]);
    return normal_form(f, std::span<const Polynomial<K>* const>(ptrs));
  }

  const Monomial& lm(std::size_t i) const { return store_[i].leading_monomial(); }

  // Gebauer-Moeller installation of a new basis element (Becker-Weispfenning UPDATE).
  void update(std::size_t h) {
    const Monomial& lh = lm(h);
    std::vector<Pair> candidates;
    for (std::size_t g : active_) candidates.push_back({g, h, lh.lcm(lm(g))});

    std::vector<Pair> kept;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const auto& p = candidates[c];
      bool keep = lh.coprime(lm(p.i));
      if (!keep) {
        keep = true;
        for (std::size_t o = c + 1; o < candidates.size() && keep; ++o)
          if (candidates[o].lcm.divides(p.lcm)) keep = false;
        for (const auto& q : kept)
          if (keep && q.lcm.divides(p.lcm)) keep = false;
      }
      if (keep) kept.push_back(p);
    }

    std::vector<Pair> next;
    for (const auto& p : pairs_) {
      bool drop = lh.divides(p.lcm) && lm(p.i).lcm(lh) != p.lcm && lh.lcm(lm(p.j)) != p.lcm;
      if (!drop) next.push_back(p);
    }
    for (const auto& p : kept)
      if (!lh.coprime(lm(p.i))) next.push_back(p);
    pairs_ = std::move(next);

    total_pairs_ += candidates.size();
    if (total_pairs_ > opts_.max_pairs)
      throw ResourceLimit("critical pair bound exceeded (" + std::to_string(opts_.max_pairs) + ")");

    std::vector<std::size_t> still;
    for (std::size_t g : active_)
      if (!lh.divides(lm(g))) still.push_back(g);
    still.push_back(h);
    active_ = std::move(still);
  }

  K field_;
  GroebnerOptions opts_;
  std::vector<Polynomial<K>> store_;
  std::vector<std::size_t> active_;
  std::vector<Pair> pairs_;
  std::size_t total_pairs_ = 0;
};

}  // namespace detail

/// Reduced lex Groebner basis of the ideal generated by gens.
template <Field K>
GroebnerBasis<K> buchberger(const K& field, std::span<const Polynomial<K>> gens, const GroebnerOptions& opts = {}) {
  detail::Buchberger<K> engine(field, opts);
  for (const auto& g : gens)
    if (!g.is_zero()) engine.insert(g);
  engine.run();
  return engine.reduced_basis();
}

template <Field K>
GroebnerBasis<K> buchberger(const K& field, const std::vector<Polynomial<K>>& gens, const GroebnerOptions& opts = {}) {
  return buchberger(field, std::span<const Polynomial<K>>(gens), opts);
}

/// Leading monomials of a reduced basis.
template <Field K>
MonomialIdeal initial_ideal(const GroebnerBasis<K>& gb) {
  if (!gb.reduced()) throw std::invalid_argument("initial_ideal expects a reduced basis");
  std::vector<Monomial> lms;
  for (const auto& g : gb.generators()) lms.push_back(g.leading_monomial());
  return MonomialIdeal(std::move(lms));
}

}  // namespace linkdet
