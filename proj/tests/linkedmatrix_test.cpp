#include "linkdet/linkedmatrix.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace linkdet;

namespace {
const PrimeField kF(32003);
using P = Polynomial<PrimeField>;

InstanceParams staircase_instance(SMode mode = SMode::Zero) {
  InstanceParams p;
  p.d = 5;
  p.n = 4;
  p.r1 = 1;
  p.rn = 2;
  p.c = {1, 3, 3};
  p.r = 2;
  p.s_mode = mode;
  p.degree_bound = 5;
  return p;
}
P parse(const InstanceParams& p, const std::string& s) { return parse_polynomial(kF, p.layout(), s); }

using Zeros = std::vector<std::pair<int, int>>;
void expect_zeros(const SymbolicMatrix<PrimeField>& m, Zeros zeros) {
  for (int i = 1; i <= m.rows(); ++i)
    for (int j = 1; j <= m.cols(); ++j) {
      bool expect = std::find(zeros.begin(), zeros.end(), std::make_pair(i, j)) != zeros.end();
      EXPECT_EQ(m.at(i, j).is_zero(), expect) << "entry " << i << "," << j;
    }
}
}  // namespace

TEST(Exponents, StaircaseValues) {
  auto p = staircase_instance();
  EXPECT_EQ(exp_e1(5, 2, p), 1);
  EXPECT_EQ(exp_e2(1, 1, p), 3);
  EXPECT_EQ(exp_e2(5, 1, p), 0);
  for (int j = 1; j <= p.d; ++j) {
    EXPECT_EQ(exp_e1(j, 1, p), 0);
    EXPECT_EQ(exp_e2(j, p.n, p), 0);
  }
  EXPECT_THROW(exp_e1(0, 1, p), std::out_of_range);
  EXPECT_THROW(exp_e2(1, 5, p), std::out_of_range);
}

TEST(Exponents, MatchBruteForceCounts) {
  auto p = staircase_instance();
  const int c[] = {0, 1, 3, 3, 5};
  for (int j = 1; j <= 5; ++j)
    for (int l = 1; l <= 4; ++l) {
      int e1 = 0, e2 = 0;
      for (int m = 1; m <= 3; ++m) {
        if (m < l && j > 5 - c[m]) ++e1;
        if (m >= l && j <= 5 - c[m]) ++e2;
      }
      EXPECT_EQ(exp_e1(j, l, p), e1);
      EXPECT_EQ(exp_e2(j, l, p), e2);
    }
  EXPECT_EQ(exp_e1(3, 4, p), 2);
}

TEST(Exponents, EpsilonConsistencyAndMonotonicity) {
  for (int d = 1; d <= 5; ++d)
    for (int c1 = 0; c1 <= d; ++c1)
      for (int c2 = c1; c2 <= d; ++c2) {
        InstanceParams p;
        p.d = d;
        p.n = 3;
        p.c = {c1, c2};
        for (int j = 1; j <= d; ++j) {
          EXPECT_EQ(eps1(j, p), exp_e1(j, p.n, p));
          EXPECT_EQ(eps2(j, p), exp_e2(j, 1, p));
          for (int l = 1; l < p.n; ++l) {
            EXPECT_LE(exp_e1(j, l, p), exp_e1(j, l + 1, p));
            EXPECT_GE(exp_e2(j, l, p), exp_e2(j, l + 1, p));
          }
          if (j > 1)
            for (int l = 1; l <= p.n; ++l) {
              EXPECT_LE(exp_e1(j - 1, l, p), exp_e1(j, l, p));
              EXPECT_GE(exp_e2(j - 1, l, p), exp_e2(j, l, p));
            }
        }
      }
}

TEST(BuildA, StaircaseZeroPatterns) {
  auto p = staircase_instance();
  expect_zeros(build_A(1, p, kF), {{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {3, 3}, {3, 4}});
  expect_zeros(build_A(2, p, kF), {{1, 5}, {2, 1}, {2, 2}, {3, 1}, {3, 2}});
  expect_zeros(build_A(3, p, kF), {{1, 3}, {1, 4}, {1, 5}, {2, 1}, {2, 2}, {3, 1}, {3, 2}});
  expect_zeros(build_A(4, p, kF), {{1, 3}, {1, 4}, {1, 5}});
  // row 3 carries its own variables
  EXPECT_EQ(build_A(1, p, kF).at(3, 5), parse(p, "x[3,5]"));
}

TEST(BuildA, UnitModeIsGeneric) {
  auto p = staircase_instance(SMode::Unit);
  for (int l = 1; l <= p.n; ++l) EXPECT_EQ(build_A(l, p, kF), build_generic(p, kF));
}

TEST(BuildA, TModeCarriesPowers) {
  auto p = staircase_instance(SMode::T);
  EXPECT_EQ(build_A(2, p, kF).at(1, 5), parse(p, "x[1,5]*t"));
  EXPECT_EQ(build_A(1, p, kF).at(2, 1), parse(p, "x[2,1]*t^3"));
  EXPECT_THROW(build_A(5, p, kF), std::out_of_range);
}

TEST(BuildB, DisplayedEntries) {
  auto p = staircase_instance();
  auto b = build_B(p, kF);
  EXPECT_EQ(b.at(1, 5), parse(p, "t^3*x[1,5]"));
  EXPECT_EQ(b.at(2, 1), parse(p, "t^3*x[2,1]"));
  EXPECT_EQ(b.at(1, 3), parse(p, "t^2*x[1,3]"));
  EXPECT_EQ(b.at(2, 3), parse(p, "t*x[2,3]"));
  EXPECT_EQ(eps1(3, p), 2);
  EXPECT_EQ(eps2(3, p), 1);
  auto single = p;
  single.n = 1;
  single.c = {};
  EXPECT_EQ(build_B(single, kF), build_generic(single, kF));
}

TEST(Minor, DisplayedFirstColumnsMinor) {
  auto p = staircase_instance();
  MinorIndex idx{{1, 2, 3}, {1, 2, 3}};
  EXPECT_EQ(minor(build_A(4, p, kF), idx),
            parse(p, "x[1,1]*x[2,2]*x[3,3] - x[1,1]*x[3,2]*x[2,3] - x[2,1]*x[1,2]*x[3,3] + x[3,1]*x[1,2]*x[2,3]"));
  EXPECT_TRUE(minor(build_A(1, p, kF), idx).is_zero());
}

TEST(Minor, MatchesCofactorExpansion) {
  // independent recursive Laplace expansion along the first row
  InstanceParams p;
  p.d = 4;
  p.r1 = 4;
  p.r = 3;
  auto g = build_generic(p, kF);
  std::function<P(std::vector<int>, std::vector<int>)> laplace = [&](std::vector<int> rows, std::vector<int> cols) {
    if (rows.size() == 1) return g.at(rows[0], cols[0]);
    P sum(kF);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      auto rest = cols;
      rest.erase(rest.begin() + static_cast<long>(k));
      auto term = g.at(rows[0], cols[k]) * laplace({rows.begin() + 1, rows.end()}, rest);
      sum = k % 2 ? sum - term : sum + term;
    }
    return sum;
  };
  EXPECT_EQ(minor(g, {{1, 2, 3, 4}, {1, 2, 3, 4}}), laplace({1, 2, 3, 4}, {1, 2, 3, 4}));
  EXPECT_EQ(minor(g, {{1, 3, 4}, {2, 3, 4}}), laplace({1, 3, 4}, {2, 3, 4}));
}

TEST(MinorIndex, DerivedCounts) {
  MinorIndex idx{{1, 2, 3}, {2, 3, 4}};
  EXPECT_EQ(idx.m1(1), 1);
  EXPECT_EQ(idx.m2(1), 2);
  EXPECT_THROW((MinorIndex{{2, 1}, {1, 2}}).validate(3, 3), std::invalid_argument);
  EXPECT_EQ(all_minor_indices(3, 5, 3).size(), 10u);
  EXPECT_EQ(combinations(5, 2).size(), 10u);
  EXPECT_EQ(permutation_sign({1, 0, 2}), -1);
  EXPECT_EQ(permutation_sign({1, 2, 0}), 1);
}

TEST(InstanceParams, Validation) {
  auto p = staircase_instance();
  EXPECT_NO_THROW(p.validate());
  EXPECT_EQ(p.expected_codim(), 3);
  auto bad = p;
  bad.c = {3, 1, 3};
  EXPECT_THROW(bad.validate(), InvalidInstance);
  bad = p;
  bad.c = {1, 3};
  EXPECT_THROW(bad.validate(), InvalidInstance);
  bad = p;
  bad.c = {1, 3, 6};
  EXPECT_THROW(bad.validate(), InvalidInstance);
  bad = p;
  bad.r1 = 0;
  EXPECT_THROW(bad.validate(), InvalidInstance);
  EXPECT_EQ(p.c_at(0), 0);
  EXPECT_EQ(p.c_at(4), 5);
  EXPECT_EQ(parse_smode("t"), SMode::T);
  EXPECT_THROW(parse_smode("two"), std::invalid_argument);
}
