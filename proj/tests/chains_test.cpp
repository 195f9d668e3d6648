#include "linkdet/chains.hpp"

#include <gtest/gtest.h>

using namespace linkdet;

namespace {
const PrimeField kF(32003);
using Base = ChainBase<PrimeField>;
using Mat = RingMatrix<PrimeField>;

Mat diag(const Base& R, std::vector<typename Base::Elem> entries) {
  Mat m(R, static_cast<int>(entries.size()), static_cast<int>(entries.size()));
  for (std::size_t k = 0; k < entries.size(); ++k) m(static_cast<int>(k), static_cast<int>(k)) = entries[k];
  return m;
}

LinkedChain<PrimeField> identity_chain(const Base& R, int d, int n) {
  LinkedChain<PrimeField> ch{d, n, R, {}, {}};
  for (int i = 1; i < n; ++i) {
    ch.fwd.push_back(linalg::identity(R, d));
    ch.bwd.push_back(linalg::scale(R, R.s(), linalg::identity(R, d)));
  }
  return ch;
}

InstanceParams shape(int d, int n, std::vector<int> c, int r1, int rn) {
  InstanceParams p;
  p.d = d;
  p.n = n;
  p.c = std::move(c);
  p.r1 = r1;
  p.rn = rn;
  return p;
}
}  // namespace

TEST(ChainBase, TruncatedArithmetic) {
  auto R = Base::truncated(kF, 4);
  auto t = R.s();
  EXPECT_TRUE(R.is_zero(R.s_pow(4)));
  EXPECT_FALSE(R.is_zero(R.s_pow(3)));
  auto u = R.add(R.one(), t);
  EXPECT_TRUE(R.equal(R.mul(u, R.inv(u)), R.one()));
  EXPECT_THROW(R.inv(t), DivisionByZero);
  EXPECT_FALSE(R.is_unit(t));
  EXPECT_THROW(Base::truncated(kF, 1), std::invalid_argument);
}

TEST(RingInverse, RandomInvertibleMatrices) {
  std::mt19937_64 rng(1);
  auto R = Base::truncated(kF, 4);
  for (int trial = 0; trial < 20; ++trial) {
    auto m = random_invertible(R, 4, rng);
    auto inv = linalg::inverse(R, m);
    ASSERT_TRUE(inv);
    EXPECT_TRUE(linalg::equal(R, linalg::mul(R, m, *inv), linalg::identity(R, 4)));
  }
  EXPECT_FALSE(linalg::inverse(R, diag(R, {R.one(), R.s()})));
}

TEST(FieldLinalg, KernelAndRank) {
  FieldMatrix<PrimeField> m(kF, 2, 3);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(1, 0) = 2;
  m(1, 1) = 4;
  m(1, 2) = 1;
  EXPECT_EQ(linalg::rank(kF, m), 2);
  auto ker = linalg::kernel(kF, m);
  ASSERT_EQ(ker.cols, 1);
  auto prod = linalg::mul(kF, m, ker);
  for (auto v : prod.a) EXPECT_EQ(v, 0u);
}

TEST(VerifyChain, IdentityChain) {
  for (const auto& R : {Base::over_field(kF, 0), Base::over_field(kF, 7), Base::truncated(kF, 4)}) {
    auto ch = identity_chain(R, 3, 3);
    EXPECT_TRUE(verify_chain(ch).pass);
    EXPECT_EQ(rank_profile(ch).c, (std::vector<int>{3, 3}));
    auto fr = build_frames(ch);
    EXPECT_EQ(fr.ranks, (std::vector<int>{3, 0, 0}));
  }
}

TEST(VerifyChain, DiagonalPair) {
  auto R = Base::over_field(kF, 0);
  LinkedChain<PrimeField> ch{2, 2, R, {diag(R, {R.one(), R.zero()})}, {diag(R, {R.zero(), R.one()})}};
  auto v = verify_chain(ch);
  EXPECT_TRUE(v.pass) << v.condition;
  EXPECT_EQ(rank_profile(ch).c, std::vector<int>{1});
  auto fr = build_frames(ch);
  EXPECT_EQ(fr.ranks, (std::vector<int>{1, 1}));
  EXPECT_TRUE(verify_frames(ch, fr).pass);
}

TEST(VerifyChain, ZeroMapsFailExactness) {
  auto R = Base::over_field(kF, 0);
  LinkedChain<PrimeField> ch{2, 2, R, {Mat(R, 2, 2)}, {Mat(R, 2, 2)}};
  auto v = verify_chain(ch);
  EXPECT_FALSE(v.pass);
  EXPECT_EQ(v.condition, "II");
}

TEST(VerifyChain, CompositionMustBeS) {
  auto R = Base::truncated(kF, 3);
  LinkedChain<PrimeField> ch{2, 2, R, {linalg::identity(R, 2)}, {linalg::identity(R, 2)}};
  auto v = verify_chain(ch);
  EXPECT_FALSE(v.pass);
  EXPECT_EQ(v.condition, "I");
}

TEST(VerifyChain, TransversalityFailure) {
  // im f_1 meets ker f_2: c = (1, 1) but with the second map killing e1
  auto R = Base::over_field(kF, 0);
  auto e1 = diag(R, {R.one(), R.zero()}), e2 = diag(R, {R.zero(), R.one()});
  LinkedChain<PrimeField> ch{2, 3, R, {e1, e2}, {e2, e1}};
  auto v = verify_chain(ch);
  EXPECT_FALSE(v.pass);
  EXPECT_EQ(v.condition, "III");
}

TEST(VerifyChain, DimensionMismatch) {
  auto R = Base::over_field(kF, 0);
  LinkedChain<PrimeField> ch{2, 2, R, {Mat(R, 3, 3)}, {Mat(R, 2, 2)}};
  EXPECT_THROW(verify_chain(ch), std::invalid_argument);
}

TEST(GenerateChain, RoundTripsRankProfile) {
  for (const auto& R : {Base::over_field(kF, 0), Base::truncated(kF, 4)})
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto ch = generate_chain(5, 4, {1, 3, 3}, R, seed);
      EXPECT_TRUE(verify_chain(ch).pass);
      auto prof = rank_profile(ch);
      EXPECT_EQ(prof.c, (std::vector<int>{1, 3, 3}));
      EXPECT_TRUE(prof.nondecreasing);
    }
}

TEST(GenerateChain, FullRankAndUnitScalar) {
  auto ch = generate_chain(3, 3, {3, 3}, Base::over_field(kF, 5), 2);
  EXPECT_TRUE(verify_chain(ch).pass);
  for (const auto& f : ch.fwd) EXPECT_TRUE(linalg::inverse(ch.base, f));
  EXPECT_THROW(generate_chain(3, 2, {1}, Base::over_field(kF, 5), 2), std::invalid_argument);
  EXPECT_THROW(generate_chain(3, 3, {2, 1}, Base::over_field(kF, 0), 2), std::invalid_argument);
}

TEST(GenerateChain, Deterministic) {
  auto R = Base::truncated(kF, 4);
  EXPECT_EQ(chain_to_json(generate_chain(4, 3, {1, 2}, R, 99)).dump(), chain_to_json(generate_chain(4, 3, {1, 2}, R, 99)).dump());
  EXPECT_NE(chain_to_json(generate_chain(4, 3, {1, 2}, R, 99)).dump(), chain_to_json(generate_chain(4, 3, {1, 2}, R, 98)).dump());
}

TEST(Frames, RanksAndProperties) {
  auto ch = generate_chain(5, 4, {1, 3, 3}, Base::truncated(kF, 4), 4);
  auto fr = build_frames(ch);
  EXPECT_EQ(fr.ranks, (std::vector<int>{1, 2, 0, 2}));
  EXPECT_TRUE(verify_frames(ch, fr).pass);
  // a frame that lies in the kernel of f_1 is rejected
  auto ker = linalg::kernel(kF, linalg::fiber(ch.base, ch.f(1)));
  auto bad = fr;
  bad.W[0] = FieldMatrix<PrimeField>(kF, 5, 1);
  for (int r = 0; r < 5; ++r) bad.W[0](r, 0) = ker(r, 0);
  EXPECT_FALSE(verify_frames(ch, bad).pass);
}

TEST(UniversalForm, ZeroPatternsMatchStaircase) {
  std::mt19937_64 rng(10);
  for (const auto& R : {Base::over_field(kF, 0), Base::truncated(kF, 4)})
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto ch = generate_chain(5, 4, {1, 3, 3}, R, seed);
      auto fr = build_frames(ch);
      auto uf = universal_form_generic(ch, fr, 1, 2, rng);
      EXPECT_EQ(uf.c, (std::vector<int>{1, 3, 3}));
      auto p = shape(5, 4, {1, 3, 3}, 1, 2);
      for (int l = 1; l <= 4; ++l)
        EXPECT_EQ(fiber_zero_pattern(R, uf.M[static_cast<std::size_t>(l - 1)]), build_A(l, p, kF).zero_pattern());
    }
}

TEST(UniversalForm, IdentityChainIsGeneric) {
  std::mt19937_64 rng(3);
  auto R = Base::over_field(kF, 0);
  auto ch = identity_chain(R, 3, 3);
  auto uf = universal_form_generic(ch, build_frames(ch), 2, 1, rng);
  // c = (d, d): the top rows pick up s^{l-1}, the bottom rows never vanish
  auto p = shape(3, 3, {3, 3}, 2, 1);
  for (int l = 1; l <= 3; ++l) {
    auto z = fiber_zero_pattern(R, uf.M[static_cast<std::size_t>(l - 1)]);
    EXPECT_EQ(z, build_A(l, p, kF).zero_pattern());
    for (int col = 0; col < 3; ++col) {
      EXPECT_EQ(z[0][static_cast<std::size_t>(col)], l > 1);
      EXPECT_FALSE(z[2][static_cast<std::size_t>(col)]);
    }
  }
}

TEST(UniversalForm, FramesRequired) {
  auto R = Base::over_field(kF, 0);
  auto ch = identity_chain(R, 2, 2);
  std::mt19937_64 rng(0);
  EXPECT_THROW(to_universal_form(ch, FrameSet<PrimeField>{}, random_matrix(R, 1, 2, rng), random_matrix(R, 1, 2, rng)),
               std::invalid_argument);
}

TEST(ChainJson, RoundTrip) {
  for (const auto& R : {Base::over_field(kF, 0), Base::truncated(kF, 3)}) {
    auto ch = generate_chain(4, 3, {1, 2}, R, 5);
    auto back = chain_from_json(kF, chain_to_json(ch));
    EXPECT_EQ(back.fwd, ch.fwd);
    EXPECT_EQ(back.bwd, ch.bwd);
    EXPECT_EQ(back.base, ch.base);
  }
  RationalField q;
  auto qch = generate_chain(3, 2, {1}, ChainBase<RationalField>::over_field(q, q.zero()), 1);
  auto qback = chain_from_json(q, chain_to_json(qch));
  EXPECT_TRUE(verify_chain(qback).pass);
  EXPECT_EQ(qback.fwd, qch.fwd);
}
