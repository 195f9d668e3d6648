#include "linkdet/groebner.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace linkdet;

namespace {
const Layout kLay(2, 3);
const PrimeField kF(32003);
using P = Polynomial<PrimeField>;
P parse(const std::string& s) { return parse_polynomial(kF, kLay, s); }
Monomial mono(const std::string& s) { return parse(s).leading_monomial(); }

std::vector<P> minors_2x3() {
  return {parse("x[1,1]*x[2,2] - x[1,2]*x[2,1]"), parse("x[1,1]*x[2,3] - x[1,3]*x[2,1]"),
          parse("x[1,2]*x[2,3] - x[1,3]*x[2,2]")};
}

// random homogeneous quadrics in the six variables
std::vector<P> random_ideal(std::mt19937_64& rng, int gens) {
  std::vector<P> out;
  for (int g = 0; g < gens; ++g) {
    std::vector<P::Term> ts;
    for (int k = 0; k < 3; ++k) {
      Monomial m = Monomial::var(static_cast<int>(rng() % 6)) * Monomial::var(static_cast<int>(rng() % 6));
      ts.push_back({m, kF.from_int(static_cast<std::int64_t>(rng() % 5) + 1)});
    }
    out.push_back(P::from_terms(kF, ts));
  }
  return out;
}
}  // namespace

TEST(Divide, Basics) {
  auto g = parse("x[1,1]*x[2,2] - x[1,2]");
  std::vector<P> gs{g};
  auto res = divide(g, std::span<const P>(gs));
  EXPECT_TRUE(res.remainder.is_zero());
  EXPECT_EQ(res.quotients[0], parse("1"));

  auto f = parse("x[1,1]*x[2,2]");
  std::vector<P> hs{parse("x[1,2]")};
  EXPECT_EQ(divide(f, std::span<const P>(hs)).remainder, f);
}

TEST(Divide, ReconstructsDividend) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    auto gs = random_ideal(rng, 3);
    auto f = random_ideal(rng, 1)[0] * random_ideal(rng, 1)[0];
    auto res = divide(f, std::span<const P>(gs));
    P sum = res.remainder;
    for (std::size_t i = 0; i < gs.size(); ++i) sum = sum + res.quotients[i] * gs[i];
    EXPECT_EQ(sum, f);
    for (const auto& t : res.remainder.terms())
      for (const auto& g : gs) EXPECT_FALSE(g.leading_monomial().divides(t.mono));
  }
}

TEST(Divide, ExplicitIdealMemberReducesToZero) {
  auto a = parse("x[1,1]*x[2,2]");
  auto b = parse("x[1,1]*x[2,3] - x[2,1]*x[1,3]");
  auto f = parse("x[2,3]") * a - parse("x[2,2]") * b;
  EXPECT_EQ(f, parse("x[2,1]*x[2,2]*x[1,3]"));
  // neither leading monomial divides f, so plain division leaves it untouched;
  // membership shows up only against the Groebner basis
  std::vector<P> gs{a, b};
  EXPECT_EQ(divide(f, std::span<const P>(gs)).remainder, f);
  auto gb = buchberger(kF, gs);
  EXPECT_TRUE(divide(f, gb.generators()).remainder.is_zero());
  EXPECT_TRUE(gb.ideal_contains(f));
}

TEST(Buchberger, SingleVariable) {
  auto gb = buchberger(kF, std::vector<P>{parse("x[1,1]")});
  ASSERT_EQ(gb.size(), 1u);
  EXPECT_EQ(gb.generators()[0], parse("x[1,1]"));
}

TEST(Buchberger, GenericMinorsAreTheirOwnBasis) {
  auto gb = buchberger(kF, minors_2x3());
  ASSERT_EQ(gb.size(), 3u);
  for (const auto& m : minors_2x3())
    EXPECT_NE(std::find(gb.generators().begin(), gb.generators().end(), m.monic()), gb.generators().end());
  EXPECT_EQ(initial_ideal(gb), MonomialIdeal({mono("x[1,1]*x[2,2]"), mono("x[1,1]*x[2,3]"), mono("x[1,2]*x[2,3]")}));
}

TEST(Buchberger, ZeroedGeneratorsProduceNewLeader) {
  auto gb = buchberger(kF, std::vector<P>{parse("x[1,1]*x[2,2]"), parse("x[1,2]*x[2,3]"),
                                           parse("x[1,1]*x[2,3] - x[2,1]*x[1,3]")});
  EXPECT_TRUE(gb.leading_ideal_contains(mono("x[2,1]*x[2,2]*x[1,3]")));
  auto in_i = initial_ideal(gb);
  auto in_j = initial_ideal(buchberger(kF, minors_2x3()));
  EXPECT_TRUE(in_j.is_subset_of(in_i));
  EXPECT_FALSE(in_i == in_j);
}

TEST(Buchberger, ReducedAndSPolynomialsVanish) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    auto gens = random_ideal(rng, 3);
    auto gb = buchberger(kF, gens);
    auto g = gb.generators();
    for (std::size_t i = 0; i < g.size(); ++i) {
      EXPECT_TRUE(kF.is_one(g[i].leading_coef()));
      for (std::size_t j = 0; j < g.size(); ++j) {
        if (i == j) continue;
        for (const auto& t : g[j].terms()) EXPECT_FALSE(g[i].leading_monomial().divides(t.mono));
        EXPECT_TRUE(gb.reduce(s_polynomial(g[i], g[j])).is_zero());
      }
    }
    for (const auto& f : gens) EXPECT_TRUE(gb.ideal_contains(f));
  }
}

TEST(Buchberger, CanonicalUnderPermutation) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 25; ++trial) {
    auto gens = random_ideal(rng, 4);
    auto ref = buchberger(kF, gens);
    for (int shuffle = 0; shuffle < 4; ++shuffle) {
      std::shuffle(gens.begin(), gens.end(), rng);
      EXPECT_EQ(buchberger(kF, gens), ref);
    }
  }
}

TEST(Buchberger, RationalAgreesWithLargePrime) {
  RationalField q;
  auto to_q = [&](const P& p) {
    std::vector<Polynomial<RationalField>::Term> ts;
    for (const auto& t : p.terms()) ts.push_back({t.mono, q.from_int(static_cast<std::int64_t>(t.coef))});
    return Polynomial<RationalField>::from_terms(q, ts);
  };
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 15; ++trial) {
    auto gens = random_ideal(rng, 3);
    std::vector<Polynomial<RationalField>> qgens;
    for (const auto& g : gens) qgens.push_back(to_q(g));
    EXPECT_EQ(initial_ideal(buchberger(q, qgens)), initial_ideal(buchberger(kF, gens)));
  }
}

TEST(Buchberger, PairBoundRaisesResourceLimit) {
  std::mt19937_64 rng(2);
  auto gens = random_ideal(rng, 5);
  EXPECT_THROW(buchberger(kF, gens, GroebnerOptions{1}), ResourceLimit);
}

TEST(InitialIdeal, NeedsReducedBasis) {
  GroebnerBasis<PrimeField> raw({parse("x[1,1]")}, false);
  EXPECT_THROW(initial_ideal(raw), std::invalid_argument);
}
