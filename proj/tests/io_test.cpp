#include "linkdet/io.hpp"

#include <gtest/gtest.h>

using namespace linkdet;

TEST(InstanceJson, RoundTrip) {
  auto p = staircase_example();
  EXPECT_EQ(instance_from_json(instance_to_json(p)), p);
  auto j = json::parse(R"({"d":5,"n":4,"r1":1,"rn":2,"c":[1,3,3],"r":2,"s_mode":"zero","field":"Fp:32003","degree_bound":6})");
  auto q = instance_from_json(j);
  EXPECT_EQ(q.c, (std::vector<int>{1, 3, 3}));
  EXPECT_EQ(q.degree_bound, 6);
  j["field"] = "QQ";
  EXPECT_EQ(instance_from_json(j).field.kind, FieldSpec::Kind::Rational);
}

TEST(InstanceJson, RejectsMalformed) {
  EXPECT_THROW(instance_from_json(json::parse(R"({"d":5})")), InvalidInstance);
  EXPECT_THROW(instance_from_json(json::parse(R"({"d":5,"n":2,"r1":1,"c":[7],"r":1})")), InvalidInstance);
  EXPECT_THROW(instance_from_json(json::parse(R"({"d":5,"r1":1,"r":1,"field":"Fp:9"})")), InvalidField);
  EXPECT_THROW(instance_from_json(json::parse(R"({"d":5,"r1":1,"r":1,"s_mode":"sometimes"})")), std::invalid_argument);
}

TEST(ReportJson, SchemaAndDeterminism) {
  auto rep = verify_instance(staircase_example(), PrimeField(32003));
  auto j = report_to_json(rep);
  EXPECT_TRUE(j.contains("instance"));
  EXPECT_TRUE(j["summary"]["all_pass"]);
  for (const auto& c : j["checks"]) {
    EXPECT_TRUE(c.contains("name"));
    EXPECT_TRUE(c.contains("pass"));
    EXPECT_TRUE(c.contains("millis"));
    EXPECT_FALSE(c.contains("witness"));
  }
  auto again = verify_instance(staircase_example(), PrimeField(32003));
  EXPECT_EQ(report_to_json(rep, false).dump(), report_to_json(again, false).dump());
}

TEST(Grid, EnumerationRespectsConstraints) {
  SweepGrid g;
  g.rows_max = 3;
  g.r_max = 2;
  auto all = enumerate_grid(g);
  EXPECT_EQ(all.size(), 1500u);
  for (const auto& p : all) {
    EXPECT_LT(p.r, std::min(p.d, p.rows()));
    EXPECT_NO_THROW(p.validate());
    EXPECT_EQ(p.degree_bound, p.r + 3);
  }
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.key() < b.key(); }));
}

TEST(ParallelMap, KeepsOrderAndPropagatesErrors) {
  std::vector<int> xs(100);
  std::iota(xs.begin(), xs.end(), 0);
  auto sq = parallel_map(xs, 4, [](int x) { return x * x; });
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sq[static_cast<std::size_t>(i)], i * i);
  EXPECT_THROW(parallel_map(xs, 3, [](int x) -> int {
                 if (x == 50) throw std::runtime_error("boom");
                 return x;
               }),
               std::runtime_error);
}
