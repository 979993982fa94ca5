#include "support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace lbl;
using lbl::testing::lam;
using lbl::testing::random_point;

namespace {

/// Distance from the definition: sum over positive roots found by brute
/// force (nonnegative integer vectors that are roots of the closure).
LambdaScalar oracle_distance(const ModelSpace &m, const ModelPoint &x,
                             const ModelPoint &y) {
  const IntMatrix &c = m.roots().cartan();
  const std::size_t n = c.size();
  std::set<RootVec> roots;
  std::vector<RootVec> todo;
  for (std::size_t i = 0; i < n; ++i) {
    RootVec e(n, 0);
    e[i] = 1;
    roots.insert(e);
    todo.push_back(e);
  }
  while (!todo.empty()) {
    RootVec r = todo.back();
    todo.pop_back();
    for (std::size_t i = 0; i < n; ++i) {
      long p = 0;
      for (std::size_t j = 0; j < n; ++j)
        p += c[i][j] * r[j];
      RootVec s = r;
      s[i] -= p;
      if (roots.insert(s).second)
        todo.push_back(s);
    }
  }
  LambdaScalar d = m.zero();
  for (const auto &r : roots) {
    bool positive = true;
    for (long v : r)
      positive &= v >= 0;
    if (!positive)
      continue;
    LambdaScalar v = m.zero();
    for (std::size_t i = 0; i < n; ++i)
      v += Rational(r[i]) * (y.coords[i] - x.coords[i]);
    d += abs(v);
  }
  return scale(m.metric_scale(), d);
}

ModelPoint pt(const ModelSpace &m, std::vector<long> c) { return m.point(c); }

} // namespace

class MetricTest : public ::testing::TestWithParam<std::tuple<const char *, int>> {};

TEST_P(MetricTest, AxiomsAndOracle) {
  auto [type, k] = GetParam();
  ModelSpace m = make_model(type, k);
  std::mt19937_64 rng(42 + k);
  for (int it = 0; it < 1000; ++it) {
    auto x = random_point(m, rng), y = random_point(m, rng), z = random_point(m, rng);
    auto dxy = m.distance(x, y);
    ASSERT_EQ(dxy, oracle_distance(m, x, y));
    EXPECT_EQ(dxy, m.distance(y, x));
    EXPECT_EQ(dxy.is_zero(), x == y);
    EXPECT_GE(dxy.sign(), 0);
    EXPECT_LE(dxy, m.distance(x, z) + m.distance(z, y));
  }
}

TEST_P(MetricTest, InvariantUnderAffineWeylGroup) {
  auto [type, k] = GetParam();
  ModelSpace m = make_model(type, k);
  std::mt19937_64 rng(7 * k);
  std::uniform_int_distribution<std::size_t> pick(0, m.roots().weyl_order() - 1);
  for (int it = 0; it < 1000; ++it) {
    AffineMap f{pick(rng), random_point(m, rng)};
    auto x = random_point(m, rng), y = random_point(m, rng);
    EXPECT_EQ(m.distance(m.apply(f, x), m.apply(f, y)), m.distance(x, y));
  }
}

INSTANTIATE_TEST_SUITE_P(Types, MetricTest,
                         ::testing::Combine(::testing::Values("A1", "A2", "B2", "G2"),
                                            ::testing::Values(1, 2)));

TEST(Model, SimpleReflectionExample) {
  ModelSpace m = make_model("A2");
  EXPECT_EQ(m.act(m.roots().simple_reflection(0), pt(m, {1, 0})), pt(m, {-1, 1}));
}

TEST(Model, ReflectionFixesItsWall) {
  for (auto t : {"A2", "B2", "G2"}) {
    ModelSpace m = make_model(t);
    std::mt19937_64 rng(3);
    for (std::size_t k = 0; k < m.roots().positive_roots().size(); ++k) {
      const RootVec &a = m.roots().positive_roots()[k];
      for (int it = 0; it < 50; ++it) {
        auto x = random_point(m, rng);
        auto rx = m.reflect(k, x);
        EXPECT_EQ(m.eval_root(a, rx), -m.eval_root(a, x));
        EXPECT_EQ(m.reflect(k, rx), x);
        EXPECT_EQ(m.eval_root(a, make_rational(1, 2) * (x + rx)), m.zero());
      }
    }
  }
}

TEST(Model, CoweightNorm) {
  ModelSpace m = make_model("A2");
  for (long t = 1; t < 6; ++t)
    EXPECT_EQ(m.norm(m.coweight(0, lam(t))), lam(2 * t));
}

TEST(Model, MapCompositionAndInverse) {
  ModelSpace m = make_model("B2");
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, m.roots().weyl_order() - 1);
  for (int it = 0; it < 200; ++it) {
    AffineMap f{pick(rng), random_point(m, rng)}, g{pick(rng), random_point(m, rng)};
    auto x = random_point(m, rng);
    EXPECT_EQ(m.apply(m.compose(f, g), x), m.apply(f, m.apply(g, x)));
    EXPECT_EQ(m.apply(m.inverse(f), m.apply(f, x)), x);
  }
}

TEST(Model, PullbackAndImageAgreeWithMembership) {
  ModelSpace m = make_model("A2");
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::size_t> pick(0, m.roots().weyl_order() - 1);
  WeylPolyhedron p{{{{1, 0}, Relation::Ge, lam(-1)},
                    {{1, 1}, Relation::Le, lam(3)},
                    {{0, 1}, Relation::Ge, lam(0)}}};
  for (int it = 0; it < 300; ++it) {
    AffineMap f{pick(rng), random_point(m, rng)};
    auto x = random_point(m, rng);
    EXPECT_EQ(m.contains(m.pullback(p, f), x), m.contains(p, m.apply(f, x)));
    EXPECT_EQ(m.contains(m.image(p, f), m.apply(f, x)), m.contains(p, x));
  }
}

TEST(Model, ShapeRecognition) {
  ModelSpace m = make_model("A2");
  WeylPolyhedron half{{{{1, 1}, Relation::Ge, lam(2)}, {{1, 1}, Relation::Ge, lam(-4)}}};
  auto h = m.as_half_apartment(half);
  ASSERT_TRUE(h);
  EXPECT_EQ(h->root, (RootVec{1, 1}));
  EXPECT_EQ(h->bound, lam(2));

  WeylSimplex s = m.chamber(pt(m, {1, 2}), 4);
  auto c = m.as_chamber(m.simplex_polyhedron(s));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->base, s.base);
  EXPECT_EQ(m.canonical(*c), m.canonical(s));
  EXPECT_FALSE(m.as_half_apartment(m.simplex_polyhedron(s)));

  WeylPolyhedron point{{{{1, 0}, Relation::Eq, lam(1)},
                        {{1, 1}, Relation::Ge, lam(3)},
                        {{1, 1}, Relation::Le, lam(3)}}};
  auto p = m.as_single_point(point);
  ASSERT_TRUE(p);
  EXPECT_EQ(*p, pt(m, {1, 2}));
  EXPECT_FALSE(m.as_chamber(point));

  WeylPolyhedron empty{{{{1, 0}, Relation::Ge, lam(1)},
                        {{0, 1}, Relation::Ge, lam(1)},
                        {{1, 1}, Relation::Le, lam(1)}}};
  EXPECT_TRUE(m.is_empty(empty));
  EXPECT_FALSE(m.as_half_apartment(empty));
  EXPECT_TRUE(m.is_whole_space(WeylPolyhedron{}));
}

TEST(Model, NormalizeKeepsTheSet) {
  ModelSpace m = make_model("A2");
  WeylPolyhedron p{{{{1, 0}, Relation::Ge, lam(0)},
                    {{0, 1}, Relation::Ge, lam(0)},
                    {{1, 1}, Relation::Ge, lam(-2)},
                    {{1, 0}, Relation::Ge, lam(-5)}}};
  auto n = m.normalize(p);
  EXPECT_EQ(n.constraints.size(), 2u);
  EXPECT_TRUE(m.equal_sets(n, p));
}

TEST(Model, SegmentExample) {
  ModelSpace m = make_model("A2");
  auto seg = m.segment(m.origin(), pt(m, {2, 1}));
  auto v = m.vertices(seg);
  std::set<ModelPoint> got(v.begin(), v.end());
  std::set<ModelPoint> want{pt(m, {0, 0}), pt(m, {0, 1}), pt(m, {2, 0}), pt(m, {2, 1})};
  EXPECT_EQ(got, want);
}

TEST(Model, SegmentContainsEndpointsAndIsInTheMetricInterval) {
  for (auto t : {"A2", "B2", "G2"}) {
    ModelSpace m = make_model(t);
    std::mt19937_64 rng(13);
    for (int it = 0; it < 30; ++it) {
      auto x = random_point(m, rng), y = random_point(m, rng);
      auto seg = m.segment(x, y);
      EXPECT_TRUE(m.contains(seg, x));
      EXPECT_TRUE(m.contains(seg, y));
      for (const auto &v : m.vertices(seg))
        EXPECT_EQ(m.distance(x, v) + m.distance(v, y), m.distance(x, y)) << t;
    }
  }
}

TEST(Model, ChamberRecessionAndGerms) {
  ModelSpace m = make_model("B2");
  for (std::size_t w = 0; w < m.roots().weyl_order(); ++w) {
    auto s = m.chamber(pt(m, {1, -1}), w);
    auto poly = m.simplex_polyhedron(s);
    EXPECT_EQ(m.recession_chambers(poly), 1u);
    EXPECT_TRUE(m.recession_contains(poly, w, m.full_face()));
    EXPECT_TRUE(m.germ_inside(poly, s));
    EXPECT_TRUE(m.simplex_contains(s, s.base));
  }
}

TEST(Model, CorootLatticeTranslations) {
  auto rs = std::make_shared<RootSystem>(RootSystem::from_type("A2"));
  ModelSpace m(rs, 1, 1, TranslationGroup::CorootLattice);
  EXPECT_TRUE(m.in_translation_group(m.point({2, -1})));
  EXPECT_FALSE(m.in_translation_group(m.point({1, 0})));
  EXPECT_FALSE(m.is_valid_map(AffineMap{0, m.point({1, 0})}));
}
