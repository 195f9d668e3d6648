#pragma once

// Sparse multivariate polynomials over an exact field, terms kept in
// strictly descending lex order with no zero coefficients.

#include "linkdet/exactnum.hpp"
#include "linkdet/monomial.hpp"

#include <algorithm>
#include <cctype>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace linkdet {

template <Field K>
class Polynomial {
 public:
  using Elem = typename K::Elem;
  struct Term {
    Monomial mono;
    Elem coef;
  };

  explicit Polynomial(const K& field) : field_(field) {}

  static Polynomial constant(const K& field, const Elem& c) { return term(field, Monomial{}, c); }
  static Polynomial term(const K& field, const Monomial& m, const Elem& c) {
    Polynomial p(field);
    if (!field.is_zero(c)) p.terms_.push_back({m, c});
    return p;
  }
  static Polynomial monomial(const K& field, const Monomial& m) { return term(field, m, field.one()); }

  /// Builds a canonical polynomial from terms in any order, merging repeats.
  static Polynomial from_terms(const K& field, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
    Polynomial p(field);
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coef = field.add(p.terms_.back().coef, t.coef);
        if (field.is_zero(p.terms_.back().coef)) p.terms_.pop_back();
      } else if (!field.is_zero(t.coef)) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  const K& field() const { return field_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  const Monomial& leading_monomial() const { return lead().mono; }
  const Elem& leading_coef() const { return lead().coef; }
  const Term& leading_term() const { return lead(); }

  bool contains(const Monomial& m) const { return find(m) != nullptr; }
  Elem coefficient(const Monomial& m) const {
    const Term* t = find(m);
    return t ? t->coef : field_.zero();
  }

  int degree() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }
  bool is_homogeneous() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const Term& t) { return t.mono.degree() == terms_.front().mono.degree(); });
  }
  bool involves_t() const {
    return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.mono.t_degree() > 0; });
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coef = field_.neg(t.coef);
    return r;
  }
  Polynomial operator+(const Polynomial& g) const { return combine(g, field_.one()); }
  Polynomial operator-(const Polynomial& g) const { return combine(g, field_.neg(field_.one())); }

  Polynomial operator*(const Polynomial& g) const {
    if (is_zero() || g.is_zero()) return Polynomial(field_);
    if (g.size() == 1) return mul_term(g.terms_.front().mono, g.terms_.front().coef);
    if (size() == 1) return g.mul_term(terms_.front().mono, terms_.front().coef);
    std::vector<Term> prod;
    prod.reserve(size() * g.size());
    for (const auto& a : terms_)
      for (const auto& b : g.terms_) prod.push_back({a.mono * b.mono, field_.mul(a.coef, b.coef)});
    return from_terms(field_, std::move(prod));
  }

  /// c * m * this. Multiplying by a monomial preserves term order.
  Polynomial mul_term(const Monomial& m, const Elem& c) const {
    Polynomial r(field_);
    if (field_.is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, field_.mul(t.coef, c)});
    return r;
  }
  Polynomial scaled(const Elem& c) const { return mul_term(Monomial{}, c); }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return scaled(field_.inv(leading_coef()));
  }

  /// this - c * m * g, fused into a single merge.
  Polynomial sub_mul(const Monomial& m, const Elem& c, const Polynomial& g) const {
    return combine_shifted(g, m, field_.neg(c));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t k = 0; k < a.terms_.size(); ++k)
      if (a.terms_[k].mono != b.terms_[k].mono || !a.field_.equal(a.terms_[k].coef, b.terms_[k].coef)) return false;
    return true;
  }

  /// Serialised as "c*x[i,j]^e*...", terms joined by " + " / " - ".
  std::string to_string(const Layout& layout) const {
    if (is_zero()) return "0";
    std::string out;
    const Elem minus_one = field_.neg(field_.one());
    for (const auto& t : terms_) {
      bool negative = false;
      std::string coef;
      if (field_.is_one(t.coef)) {
      } else if (field_.equal(t.coef, minus_one)) {
        negative = true;
      } else {
        coef = field_.to_string(t.coef);
        if (coef.front() == '-') {
          negative = true;
          coef.erase(0, 1);
        }
      }
      if (out.empty()) out += negative ? "-" : "";
      else out += negative ? " - " : " + ";
      if (t.mono.is_one()) out += coef.empty() ? "1" : coef;
      else out += (coef.empty() ? "" : coef + "*") + t.mono.to_string(layout);
    }
    return out;
  }

 private:
  const Term& lead() const {
    if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
    return terms_.front();
  }
  const Term* find(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& x) { return t.mono > x; });
    return it != terms_.end() && it->mono == m ? &*it : nullptr;
  }
  Polynomial combine(const Polynomial& g, const Elem& c) const { return combine_shifted(g, Monomial{}, c); }

  // this + c * m * g
  Polynomial combine_shifted(const Polynomial& g, const Monomial& m, const Elem& c) const {
    Polynomial r(field_);
    r.terms_.reserve(terms_.size() + g.terms_.size());
    auto a = terms_.begin();
    auto b = g.terms_.begin();
    while (a != terms_.end() || b != g.terms_.end()) {
      if (b == g.terms_.end()) {
        r.terms_.push_back(*a++);
        continue;
      }
      Monomial bm = b->mono * m;
      if (a == terms_.end() || bm > a->mono) {
        r.terms_.push_back({bm, field_.mul(c, b->coef)});
        ++b;
      } else if (bm == a->mono) {
        Elem s = field_.add(a->coef, field_.mul(c, b->coef));
        if (!field_.is_zero(s)) r.terms_.push_back({a->mono, std::move(s)});
        ++a;
        ++b;
      } else {
        r.terms_.push_back(*a++);
      }
    }
    return r;
  }

  K field_;
  std::vector<Term> terms_;
};

/// Terms of f whose weight is minimal; the zero polynomial maps to itself.
template <Field K>
Polynomial<K> initial_by_weight(const Polynomial<K>& f, const WeightVector& w) {
  if (f.is_zero()) return f;
  std::int64_t best = f.terms().front().mono.weight(w);
  for (const auto& t : f.terms()) best = std::min(best, t.mono.weight(w));
  std::vector<typename Polynomial<K>::Term> kept;
  for (const auto& t : f.terms())
    if (t.mono.weight(w) == best) kept.push_back(t);
  return Polynomial<K>::from_terms(f.field(), std::move(kept));
}

/// Specialises t to a field value.
template <Field K>
Polynomial<K> substitute_t(const Polynomial<K>& f, const typename K::Elem& value) {
  const K& k = f.field();
  std::vector<typename Polynomial<K>::Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) out.push_back({t.mono.without_t(), k.mul(t.coef, k.pow(value, t.mono.t_degree()))});
  return Polynomial<K>::from_terms(k, std::move(out));
}

/// Substitutes x_slot -> factor[slot] * x_slot for every slot.
template <Field K>
Polynomial<K> rescale_variables(const Polynomial<K>& f, const std::array<typename K::Elem, kSlots>& factor) {
  const K& k = f.field();
  std::vector<typename Polynomial<K>::Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) {
    auto c = t.coef;
    for (int s = 0; s < kSlots; ++s)
      if (t.mono[s]) c = k.mul(c, k.pow(factor[static_cast<std::size_t>(s)], t.mono[s]));
    out.push_back({t.mono, c});
  }
  return Polynomial<K>::from_terms(k, std::move(out));
}

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

template <Field K>
class PolyParser {
 public:
  PolyParser(const K& field, const Layout& layout, std::string_view text) : field_(field), layout_(layout) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) src_ += ch;
  }

  Polynomial<K> parse() {
    std::vector<typename Polynomial<K>::Term> terms;
    if (src_.empty()) fail("empty polynomial");
    bool first = true;
    while (pos_ < src_.size()) {
      bool negative = false;
      if (peek() == '+' || peek() == '-') negative = src_[pos_++] == '-';
      else if (!first) fail("expected '+' or '-'");
      auto t = parse_term();
      if (negative) t.coef = field_.neg(t.coef);
      terms.push_back(std::move(t));
      first = false;
    }
    return Polynomial<K>::from_terms(field_, std::move(terms));
  }

 private:
  typename Polynomial<K>::Term parse_term() {
    typename Polynomial<K>::Term t{Monomial{}, field_.one()};
    for (;;) {
      if (peek() == 'x') {
        ++pos_;
        expect('[');
        int i = parse_int();
        expect(',');
        int j = parse_int();
        expect(']');
        if (i < 1 || i > layout_.rows || j < 1 || j > layout_.cols) fail("variable outside the grid");
        t.mono = t.mono * Monomial::x(layout_, i, j, parse_power());
      } else if (peek() == 't') {
        ++pos_;
        t.mono = t.mono * Monomial::t(parse_power());
      } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (peek() == '/') {
          ++pos_;
          while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        }
        t.coef = field_.mul(t.coef, field_.parse(std::string_view(src_).substr(start, pos_ - start)));
      } else {
        fail("unexpected character");
      }
      if (peek() != '*') return t;
      ++pos_;
    }
  }
  int parse_power() {
    if (peek() != '^') return 1;
    ++pos_;
    return parse_int();
  }
  int parse_int() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
    int v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (src_[pos_++] - '0');
      if (v > 1'000'000) fail("integer too large");
    }
    return v;
  }
  void expect(char ch) {
    if (peek() != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }
  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + src_ + "\"");
  }

  K field_;
  Layout layout_;
  std::string src_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the format produced by Polynomial::to_string.
template <Field K>
Polynomial<K> parse_polynomial(const K& field, const Layout& layout, std::string_view text) {
  return detail::PolyParser<K>(field, layout, text).parse();
}

}  // namespace linkdet
