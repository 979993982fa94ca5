#include "support.hpp"

#include <gtest/gtest.h>

using namespace lbl;
using lbl::testing::fixture_path;
using lbl::testing::lam;
using lbl::testing::read_file;

namespace {

json tripod_json() { return json::parse(read_file(fixture_path("tripod.json"))); }

std::string error_location(const json &j) {
  try {
    io::atlas_from_json(j);
  } catch (const SchemaError &e) {
    return e.where;
  }
  return "<accepted>";
}

} // namespace

class RoundTrip : public ::testing::TestWithParam<const char *> {};

TEST_P(RoundTrip, WriteReadWriteIsStable) {
  AtlasSpace s = lbl::testing::load_fixture(GetParam());
  json once = io::to_json(s);
  AtlasSpace back = io::atlas_from_json(once);
  EXPECT_EQ(io::to_json(back), once);
  EXPECT_EQ(back.chart_count(), s.chart_count());
  EXPECT_EQ(back.marked_points(), s.marked_points());
  EXPECT_EQ(back.marked_germs(), s.marked_germs());
}

INSTANTIATE_TEST_SUITE_P(Fixtures, RoundTrip,
                         ::testing::Values("tripod.json", "single_A1.json", "single_A2.json",
                                           "single_B2.json", "single_G2.json",
                                           "glued_triangle.json", "two_apartments_A2.json"));

TEST(Serialize, ScalarForms) {
  EXPECT_EQ(io::scalar_from_json(json("3/2"), 1, "x"), LambdaScalar({make_rational(3, 2)}));
  EXPECT_EQ(io::scalar_from_json(json(4), 1, "x"), lam(4));
  EXPECT_EQ(io::scalar_from_json(json::array({"1", "-1/3"}), 2, "x"),
            LambdaScalar({make_rational(1), make_rational(-1, 3)}));
  EXPECT_EQ(io::to_json(LambdaScalar({make_rational(1), make_rational(-1, 3)})),
            json::array({"1/1", "-1/3"}));
  EXPECT_THROW(io::scalar_from_json(json::array({"1"}), 2, "x"), Error);
  EXPECT_THROW(io::scalar_from_json(json("1/0"), 1, "x"), Error);
}

TEST(Serialize, ErrorsCarryTheirLocation) {
  json j = tripod_json();
  j["gluings"][1]["region"][0]["bound"] = "abc";
  EXPECT_EQ(error_location(j).rfind("gluings[1].region[0]", 0), 0u) << error_location(j);

  j = tripod_json();
  j["marked_points"][2]["chart"] = "chart_99";
  EXPECT_EQ(error_location(j), "marked_points[2].chart");

  j = tripod_json();
  j["marked_germs"][0]["weyl_index"] = 7;
  EXPECT_EQ(error_location(j), "marked_germs[0].weyl_index");

  j = tripod_json();
  j.erase("charts");
  EXPECT_EQ(error_location(j), "charts");

  j = tripod_json();
  j["charts"][1] = "chart_12";
  EXPECT_EQ(error_location(j), "charts[1]");

  j = tripod_json();
  j["root_system"] = "Q7";
  EXPECT_EQ(error_location(j), "root_system");

  j = tripod_json();
  j["lambda_seq"] = {"4", "2"};
  EXPECT_EQ(error_location(j), "lambda_seq[1]");

  j = tripod_json();
  j["marked_points"][0]["coords"] = {"1", "2"};
  EXPECT_EQ(error_location(j).rfind("marked_points[0]", 0), 0u);
}

TEST(Serialize, InvalidJsonIsASchemaError) {
  try {
    io::parse_atlas("{ not json");
    FAIL();
  } catch (const SchemaError &e) {
    EXPECT_EQ(e.where, "$");
  }
}

TEST(Serialize, CartanMatrixRootSystem) {
  json j = tripod_json();
  j["root_system"] = {{"cartan", {{2}}}};
  AtlasSpace s = io::atlas_from_json(j);
  EXPECT_EQ(s.roots().weyl_order(), 2u);
  j["root_system"] = {{"cartan", {{2, -1}, {-1, 3}}}};
  EXPECT_EQ(error_location(j), "root_system");
}

TEST(Serialize, LambdaLevel) {
  json j = tripod_json();
  j["lambda_seq"] = {"4", "8", "12"};
  j["lambda_level"] = 1;
  AtlasSpace s = io::atlas_from_json(j);
  EXPECT_EQ(s.lambda_level, 1u);
  EXPECT_EQ(io::to_json(s).at("lambda_level"), 1);
  j["lambda_level"] = 3;
  EXPECT_EQ(error_location(j), "lambda_level");
  j["lambda_level"] = -1;
  EXPECT_EQ(error_location(j), "lambda_level");
}

TEST(Serialize, GluingsKeepTheirSourceDirectionOnly) {
  AtlasSpace s = lbl::testing::load_fixture("tripod.json");
  EXPECT_EQ(io::to_json(s).at("gluings").size(), 3u);
}
