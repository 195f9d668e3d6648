#include "linkdet/polynomial.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace linkdet;

namespace {
const Layout kLay(3, 5);
const PrimeField kF(32003);
using P = Polynomial<PrimeField>;
P parse(const std::string& s) { return parse_polynomial(kF, kLay, s); }

P random_poly(std::mt19937_64& rng, int terms) {
  std::vector<P::Term> ts;
  for (int k = 0; k < terms; ++k) {
    Monomial m;
    for (int s = 0; s < 6; ++s) m.set(s, static_cast<int>(rng() % 3));
    if (rng() % 2) m.set(kTSlot, static_cast<int>(rng() % 3));
    ts.push_back({m, kF.from_int(static_cast<std::int64_t>(rng() % 7) - 3)});
  }
  return P::from_terms(kF, ts);
}
}  // namespace

TEST(Polynomial, CanonicalTermOrder) {
  auto p = parse("x[2,1] + x[1,1]*x[1,2] - 3*x[1,1]*x[1,2] + t");
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p.leading_monomial(), parse("x[1,1]*x[1,2]").leading_monomial());
  EXPECT_EQ(p.leading_coef(), kF.from_int(-2));
  for (std::size_t k = 1; k < p.size(); ++k) EXPECT_GT(p.terms()[k - 1].mono, p.terms()[k].mono);
  EXPECT_TRUE((p - p).is_zero());
}

TEST(Polynomial, FormatMatchesReportConvention) {
  EXPECT_EQ(parse("x[1,1]*x[2,2] - x[2,1]*x[1,2]").to_string(kLay), "x[1,1]*x[2,2] - x[1,2]*x[2,1]");
  EXPECT_EQ(parse("2*x[1,1]^2*t^3 + 5").to_string(kLay), "2*x[1,1]^2*t^3 + 5");
  EXPECT_EQ(P(kF).to_string(kLay), "0");
  EXPECT_EQ(parse("-x[3,5]").to_string(kLay), "-x[3,5]");
}

TEST(Polynomial, ParseFormatRoundTrip) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    auto p = random_poly(rng, static_cast<int>(rng() % 6));
    EXPECT_EQ(parse(p.to_string(kLay)), p) << p.to_string(kLay);
  }
  RationalField q;
  auto r = parse_polynomial(q, kLay, "3/4*x[1,2] - 1/3*x[2,2]^2");
  EXPECT_EQ(parse_polynomial(q, kLay, r.to_string(kLay)), r);
}

TEST(Polynomial, ParseErrors) {
  EXPECT_THROW(parse("x[4,1]"), ParseError);
  EXPECT_THROW(parse("x[1,1"), ParseError);
  EXPECT_THROW(parse("y"), ParseError);
  EXPECT_THROW(parse("x[1,1] +"), ParseError);
}

TEST(Polynomial, RingAxiomsOnRandomPolynomials) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_poly(rng, 4), b = random_poly(rng, 3), c = random_poly(rng, 3);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    Monomial m = Monomial::x(kLay, 1, 2);
    EXPECT_EQ(a.sub_mul(m, kF.from_int(5), b), a - b.mul_term(m, kF.from_int(5)));
  }
}

TEST(Polynomial, Queries) {
  auto p = parse("x[1,1]*x[2,2]*t^2 - x[1,2]*x[2,1]");
  EXPECT_TRUE(p.involves_t());
  EXPECT_FALSE(p.is_homogeneous());
  EXPECT_EQ(p.degree(), 4);
  EXPECT_TRUE(p.contains(parse("x[1,2]*x[2,1]").leading_monomial()));
  EXPECT_EQ(p.coefficient(parse("x[1,2]*x[2,1]").leading_monomial()), kF.from_int(-1));
  EXPECT_EQ(p.monic().leading_coef(), kF.one());
}

TEST(InitialByWeight, KeepsMinimalWeightTerms) {
  auto f = parse("x[1,1]*t^4 + x[1,2]*t^4 + x[2,1]*t^8");
  EXPECT_EQ(initial_by_weight(f, t_degree_weight()), parse("x[1,1]*t^4 + x[1,2]*t^4"));
  auto single = parse("x[1,1]*x[2,2]");
  EXPECT_EQ(initial_by_weight(single, t_degree_weight()), single);
  WeightVector flat{};
  flat.fill(1);
  auto hom = parse("x[1,1]*x[2,2] - x[1,2]*x[2,1]");
  EXPECT_EQ(initial_by_weight(hom, flat), hom);
  EXPECT_TRUE(initial_by_weight(P(kF), flat).is_zero());
}

TEST(Substitution, TandRescaling) {
  auto f = parse("x[1,1]*t^2 + x[1,2]*t");
  EXPECT_EQ(substitute_t(f, kF.from_int(3)), parse("9*x[1,1] + 3*x[1,2]"));
  EXPECT_EQ(substitute_t(f, kF.zero()), P(kF));
  std::array<PrimeField::Elem, kSlots> factor;
  factor.fill(kF.one());
  factor[static_cast<std::size_t>(kLay.slot(1, 1))] = kF.from_int(2);
  EXPECT_EQ(rescale_variables(parse("x[1,1]^2*x[1,2]"), factor), parse("4*x[1,1]^2*x[1,2]"));
}
