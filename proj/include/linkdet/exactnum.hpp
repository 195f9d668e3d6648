#pragma once

// Exact coefficient fields: the rationals (GMP) and prime fields F_p.

#include <gmpxx.h>

#include <charconv>
#include <concepts>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace linkdet {

class InvalidField : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero") {}
};

constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t q = 3; q * q <= n; q += 2)
    if (n % q == 0) return false;
  return true;
}

/// Residues modulo a prime p < 2^32, always stored in [0, p).
class PrimeField {
 public:
  using Elem = std::uint32_t;

  explicit PrimeField(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) {
    if (p > 0xffffffffULL || !is_prime(p))
      throw InvalidField("not a prime below 2^32: " + std::to_string(p));
  }

  std::uint32_t characteristic() const { return p_; }
  std::string name() const { return "Fp:" + std::to_string(p_); }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Elem>(r < 0 ? r + p_ : r);
  }
  bool is_zero(Elem a) const { return a == 0; }
  bool is_one(Elem a) const { return a == 1; }
  bool equal(Elem a, Elem b) const { return a == b; }

  Elem add(Elem a, Elem b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Elem>(s >= p_ ? s - p_ : s);
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : static_cast<Elem>(std::uint64_t{a} + p_ - b); }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const { return static_cast<Elem>(std::uint64_t{a} * b % p_); }

  Elem inv(Elem a) const {
    if (a == 0) throw DivisionByZero();
    // extended Euclid on (a, p)
    std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      t -= q * new_t;
      std::swap(t, new_t);
      r -= q * new_r;
      std::swap(r, new_r);
    }
    return from_int(t);
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, std::uint64_t e) const {
    Elem result = 1;
    while (e) {
      if (e & 1) result = mul(result, a);
      a = mul(a, a);
      e >>= 1;
    }
    return result;
  }

  /// Integers or "a/b" fractions, reduced into the field.
  Elem parse(std::string_view s) const {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return parse_int(s);
    return div(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
  }
  std::string to_string(Elem a) const { return std::to_string(a); }

  Elem random(std::mt19937_64& rng) const { return static_cast<Elem>(rng() % p_); }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  Elem parse_int(std::string_view s) const {
    bool negative = !s.empty() && s.front() == '-';
    if (negative || (!s.empty() && s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    // reduce digit by digit so arbitrarily long literals are accepted
    Elem v = 0;
    for (char ch : s) {
      if (ch < '0' || ch > '9') throw std::invalid_argument("bad integer literal: " + std::string(s));
      v = add(mul(v, 10), static_cast<Elem>(ch - '0'));
    }
    return negative ? neg(v) : v;
  }

  std::uint32_t p_;
};

/// Arbitrary-precision rationals; GMP keeps every value canonical.
class RationalField {
 public:
  using Elem = mpq_class;

  std::uint32_t characteristic() const { return 0; }
  std::string name() const { return "QQ"; }

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(std::int64_t v) const { return Elem(mpz_class(std::to_string(v))); }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool is_one(const Elem& a) const { return a == 1; }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const {
    if (sgn(a) == 0) throw DivisionByZero();
    return 1 / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const {
    Elem result = 1;
    while (e) {
      if (e & 1) result *= a;
      a *= a;
      e >>= 1;
    }
    return result;
  }

  Elem parse(std::string_view s) const {
    std::string text(s);
    if (!text.empty() && text.front() == '+') text.erase(0, 1);
    Elem v;
    if (v.set_str(text, 10) != 0) throw std::invalid_argument("bad rational literal: " + text);
    v.canonicalize();
    return v;
  }
  std::string to_string(const Elem& a) const { return a.get_str(); }

  Elem random(std::mt19937_64& rng) const {
    auto num = static_cast<long>(rng() % 41) - 20;
    auto den = static_cast<long>(rng() % 9) + 1;
    Elem v(num, den);
    v.canonicalize();
    return v;
  }

  friend bool operator==(const RationalField&, const RationalField&) = default;
};

template <class K>
concept Field = std::copyable<K> && std::equality_comparable<K> &&
    requires(const K& k, const typename K::Elem& a, std::int64_t n) {
      { k.zero() } -> std::same_as<typename K::Elem>;
      { k.one() } -> std::same_as<typename K::Elem>;
      { k.from_int(n) } -> std::same_as<typename K::Elem>;
      { k.add(a, a) } -> std::same_as<typename K::Elem>;
      { k.sub(a, a) } -> std::same_as<typename K::Elem>;
      { k.mul(a, a) } -> std::same_as<typename K::Elem>;
      { k.inv(a) } -> std::same_as<typename K::Elem>;
      { k.is_zero(a) } -> std::same_as<bool>;
      { k.to_string(a) } -> std::same_as<std::string>;
    };

static_assert(Field<PrimeField>);
static_assert(Field<RationalField>);

/// Textual field selector: "QQ" / "rational", "Fp:<p>", or a bare prime.
struct FieldSpec {
  enum class Kind { Rational, Prime };
  Kind kind = Kind::Prime;
  std::uint64_t prime = 32003;

  static FieldSpec rational() { return {Kind::Rational, 0}; }
  static FieldSpec prime_field(std::uint64_t p) {
    if (p > 0xffffffffULL || !is_prime(p)) throw InvalidField("not a prime below 2^32: " + std::to_string(p));
    return {Kind::Prime, p};
  }

  static FieldSpec parse(std::string_view s) {
    if (s == "QQ" || s == "rational" || s == "Q") return rational();
    if (s.starts_with("Fp:")) s.remove_prefix(3);
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), p);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw InvalidField("unrecognised field: " + std::string(s));
    return prime_field(p);
  }

  std::string to_string() const { return kind == Kind::Rational ? "QQ" : "Fp:" + std::to_string(prime); }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Invokes fn with the concrete field object the description names.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.kind == FieldSpec::Kind::Rational) return fn(RationalField{});
  return fn(PrimeField{spec.prime});
}

}  // namespace linkdet
