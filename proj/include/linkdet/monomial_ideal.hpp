#pragma once

#include "linkdet/monomial.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

namespace linkdet {

/// A monomial ideal held by its minimal generators, sorted descending.
class MonomialIdeal {
 public:
  MonomialIdeal() = default;
  explicit MonomialIdeal(std::vector<Monomial> gens) : gens_(minimalize(std::move(gens))) {}

  std::span<const Monomial> generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  bool empty() const { return gens_.empty(); }

  bool contains(const Monomial& m) const {
    return std::any_of(gens_.begin(), gens_.end(), [&](const Monomial& g) { return g.divides(m); });
  }
  bool is_subset_of(const MonomialIdeal& other) const {
    return std::all_of(gens_.begin(), gens_.end(), [&](const Monomial& g) { return other.contains(g); });
  }
  /// A generator of this ideal outside other, if any.
  std::optional<Monomial> witness_not_in(const MonomialIdeal& other) const {
    for (const auto& g : gens_)
      if (!other.contains(g)) return g;
    return std::nullopt;
  }
  bool squarefree() const {
    return std::all_of(gens_.begin(), gens_.end(), [](const Monomial& g) { return g.squarefree(); });
  }

  friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;

 private:
  static std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
    // a divisor never has larger degree, so scanning by degree keeps only minimal elements
    std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
      return a.degree() != b.degree() ? a.degree() < b.degree() : a > b;
    });
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    std::vector<Monomial> kept;
    for (const auto& g : gens)
      if (std::none_of(kept.begin(), kept.end(), [&](const Monomial& h) { return h.divides(g); })) kept.push_back(g);
    std::sort(kept.begin(), kept.end(), std::greater<>{});
    return kept;
  }

  std::vector<Monomial> gens_;
};

}  // namespace linkdet
