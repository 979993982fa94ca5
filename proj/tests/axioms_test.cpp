#include "support.hpp"

#include <gtest/gtest.h>

using namespace lbl;
using lbl::testing::lam;
using lbl::testing::load_fixture;

namespace {

ProbeConfig small_probes() { return ProbeConfig{2000, 1}; }

ConditionResult result(const std::string &id, Verdict v) {
  ConditionResult r(id);
  r.verdict = v;
  return r;
}

/// Two lines sharing the ray t >= 0, with a marked point on each free ray.
AtlasSpace forked_line() {
  AtlasSpace s(make_model("A1"));
  s.add_chart("A");
  s.add_chart("B");
  s.glue(0, 1, WeylPolyhedron{{{{1}, Relation::Ge, lam(0)}}}, s.model().identity_map());
  s.add_marked_point({0, s.model().point({-2})});
  s.add_marked_point({1, s.model().point({-3})});
  s.add_marked_point({0, s.model().point({4})});
  return s;
}

} // namespace

TEST(Axioms, TripodSatisfiesEverything) {
  AxiomReport rep = check_all(load_fixture("tripod.json"), small_probes());
  for (const char *id : {"A1", "A2", "A3", "A4", "A5", "A6", "TI", "GG", "CO", "LA", "ALA", "FC"}) {
    EXPECT_TRUE(holds(rep.get(id).verdict)) << id;
  }
  EXPECT_TRUE(rep.audit.consistent);
  EXPECT_FALSE(rep.any_fail());
}

class SingleApartment : public ::testing::TestWithParam<const char *> {};

TEST_P(SingleApartment, NothingFails) {
  AxiomReport rep = check_all(load_fixture(GetParam()), small_probes());
  for (auto &r : rep.results)
    EXPECT_NE(r.verdict, Verdict::Fail) << r.id << ": " << r.summary;
  EXPECT_TRUE(rep.audit.consistent);
}

INSTANTIATE_TEST_SUITE_P(Fixtures, SingleApartment,
                         ::testing::Values("single_A1.json", "single_A2.json",
                                           "single_B2.json", "single_G2.json"));

TEST(Axioms, TriangleBreaksTheTriangleInequality) {
  AtlasSpace s = triangle_counterexample(make_model("A1"), {lam(10), lam(2), lam(2)});
  AxiomReport rep = check_all(s, small_probes());
  for (const char *id : {"A1", "A2", "A3", "A4"})
    EXPECT_NE(rep.get(id).verdict, Verdict::Fail) << id;
  EXPECT_EQ(rep.get("A6").verdict, Verdict::Vacuous);
  const auto &ti = rep.get("TI");
  ASSERT_EQ(ti.verdict, Verdict::Fail);
  EXPECT_EQ(ti.witness.at("d_xz"), io::to_json(lam(10)));
  EXPECT_EQ(ti.witness.at("d_xy"), io::to_json(lam(2)));
  EXPECT_EQ(ti.witness.at("d_yz"), io::to_json(lam(2)));
  EXPECT_EQ(rep.get("A5").verdict, Verdict::Fail);
  EXPECT_TRUE(rep.audit.consistent);
  EXPECT_NE(std::find(rep.audit.notes.begin(), rep.audit.notes.end(),
                      "A5 and TI fail jointly"),
            rep.audit.notes.end());
}

TEST(Axioms, ForkedLineFailsExchange) {
  AtlasSpace s = forked_line();
  AxiomReport rep = check_all(s, small_probes());
  EXPECT_EQ(rep.get("A3").verdict, Verdict::Fail);
  EXPECT_EQ(rep.get("EC").verdict, Verdict::Fail);
  EXPECT_EQ(rep.get("GG").verdict, Verdict::Fail);
  EXPECT_TRUE(rep.audit.consistent);
}

class Witnesses : public ::testing::TestWithParam<const char *> {};

TEST_P(Witnesses, EveryFailureReplays) {
  std::string name = GetParam();
  AtlasSpace s = name == "forked" ? forked_line() : load_fixture(name);
  AxiomReport rep = check_all(s, small_probes());
  for (auto &r : rep.results)
    if (r.verdict == Verdict::Fail) {
      EXPECT_TRUE(replay(s, r)) << r.id << ": " << r.witness.dump();
    }
}

INSTANTIATE_TEST_SUITE_P(Fixtures, Witnesses,
                         ::testing::Values("glued_triangle.json", "two_apartments_A2.json",
                                           "forked"));

TEST(Axioms, ReplayRejectsAlteredWitness) {
  AtlasSpace s = load_fixture("glued_triangle.json");
  auto ti = check(s, "TI", small_probes());
  ASSERT_EQ(ti.verdict, Verdict::Fail);
  ti.witness["d_xz"] = io::to_json(lam(3));
  EXPECT_FALSE(replay(s, ti));
}

TEST(Audit, Rules) {
  std::vector<ConditionResult> rs;
  for (auto &id : condition_ids())
    rs.push_back(result(id, Verdict::Pass));
  EXPECT_TRUE(audit(rs).consistent);

  auto set = [&](std::vector<ConditionResult> v, const std::string &id, Verdict x) {
    for (auto &r : v)
      if (r.id == id)
        r.verdict = x;
    return v;
  };
  EXPECT_FALSE(audit(set(rs, "EC", Verdict::Fail)).consistent);
  EXPECT_FALSE(audit(set(rs, "TI", Verdict::Fail)).consistent);
  EXPECT_FALSE(audit(set(rs, "A4", Verdict::Fail)).consistent);
  EXPECT_TRUE(audit(set(set(rs, "A4", Verdict::Fail), "A3", Verdict::Fail)).consistent);
  EXPECT_FALSE(audit(set(rs, "A6", Verdict::Fail)).consistent);
  auto joint = set(set(rs, "TI", Verdict::Fail), "A5", Verdict::Fail);
  auto a = audit(joint);
  EXPECT_TRUE(a.consistent);
  EXPECT_EQ(a.notes.front(), "A5 and TI fail jointly");
  EXPECT_TRUE(audit(set(set(rs, "A3", Verdict::Fail), "A6", Verdict::Fail)).consistent);
  EXPECT_TRUE(audit(set(rs, "A6", Verdict::Vacuous)).consistent);
}

TEST(Axioms, SameSeedSameReport) {
  AtlasSpace s = load_fixture("two_apartments_A2.json");
  EXPECT_EQ(to_json(check_all(s, {500, 9})).dump(), to_json(check_all(s, {500, 9})).dump());
}

TEST(Axioms, MetricScaleChangesNoVerdict) {
  for (const char *name : {"tripod.json", "glued_triangle.json", "two_apartments_A2.json"}) {
    AtlasSpace s = load_fixture(name);
    auto a = check_all(s, small_probes());
    auto b = check_all(s.with_metric_scale(make_rational(3, 2)), small_probes());
    for (std::size_t i = 0; i < a.results.size(); ++i)
      EXPECT_EQ(a.results[i].verdict, b.results[i].verdict) << name << " " << a.results[i].id;
  }
}

TEST(Axioms, UnknownConditionThrows) {
  EXPECT_THROW(check(load_fixture("tripod.json"), "XX"), Error);
}
