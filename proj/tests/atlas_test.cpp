#include "support.hpp"

#include <gtest/gtest.h>

using namespace lbl;
using lbl::testing::lam;
using lbl::testing::load_fixture;

namespace {

ChartPoint cp(const AtlasSpace &s, const std::string &chart, long x) {
  return {s.chart_index(chart), s.model().point({x})};
}

XGerm germ(const AtlasSpace &s, const std::string &chart, long x, std::size_t w) {
  return {s.chart_index(chart), s.model().chamber(s.model().point({x}), w)};
}

} // namespace

TEST(Tripod, DistancesThroughDifferentCharts) {
  AtlasSpace s = load_fixture("tripod.json");
  EXPECT_EQ(s.distance(cp(s, "chart_12", 5), cp(s, "chart_12", -4)), lam(9));
  EXPECT_EQ(s.distance(cp(s, "chart_12", 5), cp(s, "chart_13", -3)), lam(8));
  // ray 2 at 4 and ray 3 at 3 meet in chart_23
  EXPECT_EQ(s.distance(cp(s, "chart_12", -4), cp(s, "chart_13", -3)), lam(7));
}

TEST(Tripod, CanonicalPointsUseTheFirstChart) {
  AtlasSpace s = load_fixture("tripod.json");
  EXPECT_EQ(s.canonical_point(cp(s, "chart_13", 5)), cp(s, "chart_12", 5));
  EXPECT_EQ(s.canonical_point(cp(s, "chart_23", 4)), cp(s, "chart_12", -4));
  EXPECT_EQ(s.canonical_point(cp(s, "chart_23", -3)), cp(s, "chart_13", -3));
  EXPECT_EQ(s.representatives(cp(s, "chart_12", 0)).size(), 3u);
  EXPECT_EQ(s.charts_containing(cp(s, "chart_12", 5)),
            (std::vector<std::size_t>{0, 1}));
}

TEST(Tripod, ResidueAtTheBranchPoint) {
  AtlasSpace s = load_fixture("tripod.json");
  auto res = s.residue(cp(s, "chart_12", 0));
  ASSERT_EQ(res.chambers.size(), 3u);
  EXPECT_EQ(res.adjacent.size(), 3u);
  EXPECT_TRUE(res.conflicts.empty());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      EXPECT_TRUE(res.co_apartment(i, j));
  EXPECT_EQ(res.apartment_charts.size(), 3u);
}

TEST(Tripod, ResidueAwayFromTheBranchPointIsThin) {
  AtlasSpace s = load_fixture("tripod.json");
  auto res = s.residue(cp(s, "chart_12", 2));
  EXPECT_EQ(res.chambers.size(), 2u);
}

TEST(Tripod, GermOrbitsAndEquality) {
  AtlasSpace s = load_fixture("tripod.json");
  auto up = germ(s, "chart_12", 0, 0);
  EXPECT_EQ(s.germ_orbit(up).size(), 2u);
  EXPECT_TRUE(s.germ_equal(up, germ(s, "chart_13", 0, 0)));
  EXPECT_FALSE(s.germ_equal(up, germ(s, "chart_13", 0, 1)));
  EXPECT_TRUE(s.germ_equal(germ(s, "chart_12", 0, 1), germ(s, "chart_23", 0, 0)));
  EXPECT_EQ(s.charts_containing(up), (std::vector<std::size_t>{0, 1}));
}

TEST(Tripod, ParallelismClassesAreTheThreeEnds) {
  AtlasSpace s = load_fixture("tripod.json");
  auto pc = s.parallelism_classes();
  EXPECT_EQ(pc.size(), 3u);
  EXPECT_EQ(pc.of(0, 0), pc.of(1, 0));
  EXPECT_EQ(pc.of(0, 1), pc.of(2, 0));
  EXPECT_EQ(pc.of(1, 1), pc.of(2, 1));
  for (auto &cls : pc.classes)
    EXPECT_EQ(cls.size(), 2u);
}

TEST(Atlas, MetricScaleMultipliesDistances) {
  AtlasSpace s = load_fixture("tripod.json").with_metric_scale(make_rational(3, 2));
  EXPECT_EQ(s.distance(cp(s, "chart_12", 5), cp(s, "chart_13", -3)), lam(12));
}

TEST(Atlas, DisjointChartsHaveNoDistance) {
  AtlasSpace s = load_fixture("two_apartments_A2.json");
  ChartPoint a{0, s.model().point({1, 0})}, b{1, s.model().point({1, 1})};
  EXPECT_FALSE(s.distance(a, b));
  EXPECT_TRUE(s.common_apartments(a, b).empty());
}

TEST(Atlas, RejectsBadDeclarations) {
  AtlasSpace s(make_model("A1"));
  s.add_chart("A");
  EXPECT_THROW(s.add_chart("A"), Error);
  EXPECT_THROW(s.add_chart(""), Error);
  s.add_chart("B");
  WeylPolyhedron empty{{{{1}, Relation::Ge, lam(1)}, {{1}, Relation::Le, lam(0)}}};
  EXPECT_THROW(s.glue(0, 1, empty, s.model().identity_map()), Error);
  EXPECT_THROW(s.glue(0, 1, {}, AffineMap{5, s.model().origin()}), Error);
  EXPECT_THROW(s.chart_index("C"), Error);
}

TEST(Atlas, GluingDeclaresItsInverse) {
  AtlasSpace s(make_model("A1"));
  s.add_chart("A");
  s.add_chart("B");
  WeylPolyhedron right{{{{1}, Relation::Ge, lam(0)}}};
  s.glue(0, 1, right, AffineMap{1, s.model().point({2})});
  EXPECT_EQ(s.coords_in(ChartPoint{0, s.model().point({3})}, 1), s.model().point({-1}));
  EXPECT_EQ(s.coords_in(ChartPoint{1, s.model().point({-1})}, 0), s.model().point({3}));
  EXPECT_FALSE(s.coords_in(ChartPoint{1, s.model().point({4})}, 0));
}
