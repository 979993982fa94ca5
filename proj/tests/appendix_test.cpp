#include "support.hpp"

#include <gtest/gtest.h>

using namespace lbl;
using lbl::testing::lam;
using lbl::testing::load_fixture;

namespace {

/// Two A1 lines with no gluing and one marked point on each.
AtlasSpace two_lines() {
  AtlasSpace s(make_model("A1"));
  s.add_chart("A");
  s.add_chart("B");
  s.add_marked_point({0, s.model().point({1})});
  s.add_marked_point({1, s.model().point({-1})});
  s.lambda_seq = linear_lambda_seq(lam(4), 3);
  return s;
}

} // namespace

TEST(Triangle, SidesAreRealized) {
  for (auto type : {"A1", "A2", "B2"}) {
    ModelSpace m = make_model(type);
    AtlasSpace s = triangle_counterexample(m, {lam(10), lam(2), lam(2)});
    ASSERT_EQ(s.chart_count(), 3u);
    auto &p = s.marked_points();
    ASSERT_EQ(p.size(), 3u);
    EXPECT_EQ(s.distance(p[0], p[2]), lam(10)) << type;
    EXPECT_EQ(s.distance(p[0], p[1]), lam(2)) << type;
    EXPECT_EQ(s.distance(p[1], p[2]), lam(2)) << type;
  }
}

TEST(Triangle, RejectsRealTriangles) {
  ModelSpace m = make_model("A1");
  EXPECT_THROW(triangle_counterexample(m, {lam(4), lam(2), lam(2)}), Error);
  EXPECT_THROW(triangle_counterexample(m, {lam(5), lam(-2), lam(2)}), Error);
  EXPECT_THROW(triangle_counterexample(m, {lam(5, 2), lam(2, 2), lam(2, 2)}), RankMismatch);
}

TEST(Admissible, TriangleAtItsLongestSide) {
  AtlasSpace s = load_fixture("glued_triangle.json");
  EXPECT_TRUE(is_admissible(s, lam(10)).ok());
  auto small = is_admissible(s, lam(1));
  EXPECT_FALSE(small.t2);
  EXPECT_TRUE(small.t0 && small.t1 && small.t3);
}

TEST(Admissible, TripodOverlapsAreHalfLines) {
  auto rep = is_admissible(load_fixture("tripod.json"), lam(100));
  EXPECT_FALSE(rep.t2);
  EXPECT_TRUE(rep.t0);
}

TEST(Admissible, IdenticalChartsViolateT0) {
  AtlasSpace s(make_model("A1"));
  s.add_chart("A");
  s.add_chart("B");
  s.glue(0, 1, {}, s.model().identity_map());
  EXPECT_FALSE(is_admissible(s, lam(1)).t0);
}

TEST(Extension, StepOneCoversAMarkedPair) {
  AtlasSpace s = triangle_counterexample(make_model("A1"), {lam(10), lam(2), lam(2)});
  // C:5 shares no apartment with a = A:o only
  s.add_marked_point({2, s.model().point({5})});
  ASSERT_TRUE(s.common_apartments(s.marked_points()[0], s.marked_points()[3]).empty());
  AtlasSpace t = extend_step1(s, lam(20));
  EXPECT_EQ(t.chart_count(), s.chart_count() + 1);
  EXPECT_EQ(t.chart_id(3), "p1_0");
  for (auto &p : t.marked_points())
    for (auto &q : t.marked_points())
      EXPECT_FALSE(t.common_apartments(p, q).empty());
}

TEST(Extension, StepOneLeavesFarPairsAlone) {
  AtlasSpace s = triangle_counterexample(make_model("A1"), {lam(10), lam(2), lam(2)});
  s.add_marked_point({2, s.model().point({30})});
  EXPECT_EQ(extend_step1(s, lam(20)).chart_count(), s.chart_count());
}

TEST(Extension, StepTwoJoinsDisjointLines) {
  AtlasSpace s = two_lines();
  EXPECT_EQ(s.parallelism_classes().size(), 4u);
  AtlasSpace t = extend_step2(s, lam(8));
  // the ends of A and of B pair up four ways
  EXPECT_EQ(t.chart_count(), 6u);
  EXPECT_TRUE(uncovered_class_pairs(s, t).empty());
  EXPECT_EQ(t.parallelism_classes().size(), 4u);
}

TEST(Extension, RoundsAndLambdaLevel) {
  AtlasSpace s = two_lines();
  AtlasSpace zero = iterate(s, 0);
  EXPECT_EQ(io::to_json(zero), io::to_json(s));

  AtlasSpace one = iterate(s, 1);
  EXPECT_EQ(one.lambda_level, 1u);
  EXPECT_TRUE(is_admissible(one, one.lambda_seq[1]).ok());
  EXPECT_FALSE(one.common_apartments(one.marked_points()[0], one.marked_points()[1]).empty());

  AtlasSpace two = iterate(s, 2);
  EXPECT_EQ(two.lambda_level, 2u);
  EXPECT_GE(two.chart_count(), one.chart_count());
  for (std::size_t i = 0; i < one.chart_count(); ++i)
    EXPECT_EQ(two.chart_id(i), one.chart_id(i));
  EXPECT_THROW(iterate(s, 3), Error);
}

TEST(Extension, TwoApartmentsA2) {
  AtlasSpace s = load_fixture("two_apartments_A2.json");
  AtlasSpace t = extend_round(s);
  auto rep = is_admissible(t, s.lambda_seq[1]);
  EXPECT_TRUE(rep.ok()) << (rep.problems.empty() ? "" : rep.problems.front());
  EXPECT_TRUE(uncovered_class_pairs(s, t).empty());
  for (auto &p : t.marked_points())
    for (auto &q : t.marked_points())
      EXPECT_FALSE(t.common_apartments(p, q).empty());
}

TEST(Extension, LinearLambdaSequence) {
  auto seq = linear_lambda_seq(LambdaScalar({make_rational(3, 2)}), 3);
  ASSERT_EQ(seq.size(), 3u);
  EXPECT_EQ(seq[2], LambdaScalar({make_rational(9, 2)}));
  EXPECT_THROW(linear_lambda_seq(lam(0), 2), Error);
}
