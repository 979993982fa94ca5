#pragma once

#include "lbl/atlas.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace lbl {

using json = nlohmann::json;

/// Malformed atlas or witness document; `where` is a JSON path like
/// "gluings[2].region[0].bound".
class SchemaError : public ParseError {
public:
  SchemaError(std::string where, const std::string &what)
      : ParseError("at " + where + ": " + what), where(std::move(where)) {}
  std::string where;
};

namespace io {

inline std::string at(const std::string &base, const std::string &key) {
  return base.empty() ? key : base + "." + key;
}
inline std::string at(const std::string &base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

inline const json &field(const json &j, const char *key, const std::string &loc) {
  if (!j.is_object())
    throw SchemaError(loc, "expected an object");
  auto it = j.find(key);
  if (it == j.end())
    throw SchemaError(at(loc, key), "missing field");
  return *it;
}

inline const json &array(const json &j, const std::string &loc) {
  if (!j.is_array())
    throw SchemaError(loc, "expected an array");
  return j;
}

inline std::string string_of(const json &j, const std::string &loc) {
  if (!j.is_string())
    throw SchemaError(loc, "expected a string");
  return j.get<std::string>();
}

inline long integer_of(const json &j, const std::string &loc) {
  if (!j.is_number_integer())
    throw SchemaError(loc, "expected an integer");
  return j.get<long>();
}

inline Rational rational_from_json(const json &j, const std::string &loc) {
  if (j.is_number_integer())
    return Rational(j.get<long>());
  if (!j.is_string())
    throw SchemaError(loc, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError &e) {
    throw SchemaError(loc, e.what());
  }
}

inline json to_json(const LambdaScalar &s) {
  json a = json::array();
  for (const auto &c : s.coords())
    a.push_back(to_pq_string(c));
  return a;
}

inline LambdaScalar scalar_from_json(const json &j, std::size_t rank,
                                     const std::string &loc) {
  if (!j.is_array()) {
    if (j.is_string() || j.is_number_integer()) {
      std::vector<Rational> c(rank);
      c[0] = rational_from_json(j, loc);
      return LambdaScalar(std::move(c));
    }
    throw SchemaError(loc, "expected an array of rationals");
  }
  if (j.size() != rank)
    throw SchemaError(loc, "scalar has " + std::to_string(j.size()) +
                               " components, lambda rank is " +
                               std::to_string(rank));
  std::vector<Rational> c;
  for (std::size_t i = 0; i < j.size(); ++i)
    c.push_back(rational_from_json(j[i], at(loc, i)));
  return LambdaScalar(std::move(c));
}

inline json to_json(const ModelPoint &p) {
  json a = json::array();
  for (const auto &c : p.coords)
    a.push_back(to_json(c));
  return a;
}

inline ModelPoint point_from_json(const json &j, const ModelSpace &m,
                                  const std::string &loc) {
  array(j, loc);
  if (j.size() != m.rank())
    throw SchemaError(loc, "point has " + std::to_string(j.size()) +
                               " coordinates, rank is " +
                               std::to_string(m.rank()));
  ModelPoint p;
  for (std::size_t i = 0; i < j.size(); ++i)
    p.coords.push_back(scalar_from_json(j[i], m.lambda_rank(), at(loc, i)));
  return p;
}

inline json to_json(const RootConstraint &c) {
  return json{{"root", c.root}, {"rel", to_string(c.rel)}, {"bound", to_json(c.bound)}};
}

inline json to_json(const WeylPolyhedron &p) {
  json a = json::array();
  for (const auto &c : p.constraints)
    a.push_back(to_json(c));
  return a;
}

inline WeylPolyhedron polyhedron_from_json(const json &j, const ModelSpace &m,
                                           const std::string &loc) {
  array(j, loc);
  WeylPolyhedron p;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string here = at(loc, i);
    const json &root = array(field(j[i], "root", here), at(here, "root"));
    RootVec r;
    for (std::size_t k = 0; k < root.size(); ++k)
      r.push_back(integer_of(root[k], at(at(here, "root"), k)));
    auto sr = m.roots().find_root(r);
    if (r.size() != m.rank() || !sr || sr->sign < 0)
      throw SchemaError(at(here, "root"), "not a positive root");
    std::string rel = string_of(field(j[i], "rel", here), at(here, "rel"));
    Relation relation;
    if (rel == ">=")
      relation = Relation::Ge;
    else if (rel == "<=")
      relation = Relation::Le;
    else if (rel == "=")
      relation = Relation::Eq;
    else
      throw SchemaError(at(here, "rel"), "relation must be \">=\", \"<=\" or \"=\"");
    p.constraints.push_back(
        {r, relation,
         scalar_from_json(field(j[i], "bound", here), m.lambda_rank(),
                          at(here, "bound"))});
  }
  return p;
}

inline json to_json(const AffineMap &m) {
  return json{{"weyl_index", m.weyl}, {"translation", to_json(m.translation)}};
}

inline AffineMap map_from_json(const json &j, const ModelSpace &m,
                               const std::string &loc) {
  long w = integer_of(field(j, "weyl_index", loc), at(loc, "weyl_index"));
  if (w < 0 || static_cast<std::size_t>(w) >= m.roots().weyl_order())
    throw SchemaError(at(loc, "weyl_index"),
                      "Weyl index out of range (group order " +
                          std::to_string(m.roots().weyl_order()) + ")");
  AffineMap out{static_cast<std::size_t>(w), m.origin()};
  if (j.contains("translation"))
    out.translation = point_from_json(j["translation"], m, at(loc, "translation"));
  return out;
}

inline json to_json(const AtlasSpace &s, const ChartPoint &p) {
  return json{{"chart", s.chart_id(p.chart)}, {"coords", to_json(p.coords)}};
}

inline std::size_t chart_from_json(const json &j, const AtlasSpace &s,
                                   const std::string &loc) {
  std::string id = string_of(j, loc);
  auto c = s.find_chart(id);
  if (!c)
    throw SchemaError(loc, "unknown chart '" + id + "'");
  return *c;
}

inline ChartPoint chart_point_from_json(const json &j, const AtlasSpace &s,
                                        const std::string &loc) {
  return ChartPoint{chart_from_json(field(j, "chart", loc), s, at(loc, "chart")),
                    point_from_json(field(j, "coords", loc), s.model(),
                                    at(loc, "coords"))};
}

inline json to_json(const AtlasSpace &s, const XGerm &g) {
  json out{{"chart", s.chart_id(g.chart)},
           {"base", to_json(g.simplex.base)},
           {"weyl_index", g.simplex.direction}};
  if (g.simplex.face != s.model().full_face()) {
    json face = json::array();
    for (std::size_t i = 0; i < s.model().rank(); ++i)
      if (g.simplex.face & (1u << i))
        face.push_back(i);
    out["face"] = face;
  }
  return out;
}

inline XGerm germ_from_json(const json &j, const AtlasSpace &s,
                            const std::string &loc) {
  const ModelSpace &m = s.model();
  XGerm g;
  g.chart = chart_from_json(field(j, "chart", loc), s, at(loc, "chart"));
  g.simplex.base = point_from_json(field(j, "base", loc), m, at(loc, "base"));
  long w = integer_of(field(j, "weyl_index", loc), at(loc, "weyl_index"));
  if (w < 0 || static_cast<std::size_t>(w) >= m.roots().weyl_order())
    throw SchemaError(at(loc, "weyl_index"), "Weyl index out of range");
  g.simplex.direction = static_cast<std::size_t>(w);
  g.simplex.face = m.full_face();
  if (j.contains("face")) {
    const json &face = array(j["face"], at(loc, "face"));
    g.simplex.face = 0;
    for (std::size_t i = 0; i < face.size(); ++i) {
      long k = integer_of(face[i], at(at(loc, "face"), i));
      if (k < 0 || static_cast<std::size_t>(k) >= m.rank())
        throw SchemaError(at(at(loc, "face"), i), "simple root index out of range");
      g.simplex.face |= 1u << k;
    }
  }
  return g;
}

inline json root_system_to_json(const RootSystem &rs) {
  try {
    if (RootSystem::cartan_for_type(rs.name()) == rs.cartan())
      return rs.name();
  } catch (const Error &) {
  }
  return json{{"cartan", rs.cartan()}};
}

inline json to_json(const AtlasSpace &s) {
  json out;
  out["root_system"] = root_system_to_json(s.roots());
  out["lambda_rank"] = s.model().lambda_rank();
  if (s.model().translations() == TranslationGroup::CorootLattice)
    out["translations"] = "coroot_lattice";
  out["charts"] = s.charts();
  json gl = json::array();
  for (const auto &g : s.gluings()) {
    if (g.derived)
      continue;
    gl.push_back(json{{"from", s.chart_id(g.from)},
                      {"to", s.chart_id(g.to)},
                      {"region", to_json(g.region)},
                      {"map", to_json(g.map)}});
  }
  out["gluings"] = gl;
  json mp = json::array();
  for (const auto &p : s.marked_points())
    mp.push_back(to_json(s, p));
  out["marked_points"] = mp;
  json mg = json::array();
  for (const auto &g : s.marked_germs())
    mg.push_back(to_json(s, g));
  out["marked_germs"] = mg;
  if (!s.lambda_seq.empty()) {
    json ls = json::array();
    for (const auto &l : s.lambda_seq)
      ls.push_back(to_json(l));
    out["lambda_seq"] = ls;
  }
  if (s.lambda_level)
    out["lambda_level"] = s.lambda_level;
  if (!s.provenance.empty())
    out["provenance"] = s.provenance;
  return out;
}

inline RootSystem root_system_from_json(const json &j, const std::string &loc) {
  try {
    if (j.is_string())
      return RootSystem::from_type(j.get<std::string>());
    const json &c = array(field(j, "cartan", loc), at(loc, "cartan"));
    IntMatrix m;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const json &row = array(c[i], at(at(loc, "cartan"), i));
      m.emplace_back();
      for (std::size_t k = 0; k < row.size(); ++k)
        m.back().push_back(integer_of(row[k], at(at(at(loc, "cartan"), i), k)));
    }
    return RootSystem::build(m);
  } catch (const SchemaError &) {
    throw;
  } catch (const Error &e) {
    throw SchemaError(loc, e.what());
  }
}

inline AtlasSpace atlas_from_json(const json &j) {
  if (!j.is_object())
    throw SchemaError("$", "atlas must be a JSON object");
  auto rs = std::make_shared<RootSystem>(
      root_system_from_json(field(j, "root_system", ""), "root_system"));
  std::size_t lambda_rank = 1;
  if (j.contains("lambda_rank")) {
    long k = integer_of(j["lambda_rank"], "lambda_rank");
    if (k < 1)
      throw SchemaError("lambda_rank", "must be at least 1");
    lambda_rank = static_cast<std::size_t>(k);
  }
  TranslationGroup tg = TranslationGroup::Full;
  if (j.contains("translations")) {
    std::string t = string_of(j["translations"], "translations");
    if (t == "coroot_lattice")
      tg = TranslationGroup::CorootLattice;
    else if (t != "full")
      throw SchemaError("translations", "expected \"full\" or \"coroot_lattice\"");
  }
  AtlasSpace s(ModelSpace(rs, lambda_rank, 1, tg));
  const json &charts = array(field(j, "charts", ""), "charts");
  for (std::size_t i = 0; i < charts.size(); ++i) {
    try {
      s.add_chart(string_of(charts[i], at("charts", i)));
    } catch (const SchemaError &) {
      throw;
    } catch (const Error &e) {
      throw SchemaError(at("charts", i), e.what());
    }
  }
  if (j.contains("gluings")) {
    const json &gl = array(j["gluings"], "gluings");
    for (std::size_t i = 0; i < gl.size(); ++i) {
      const std::string loc = at("gluings", i);
      std::size_t from = chart_from_json(field(gl[i], "from", loc), s, at(loc, "from"));
      std::size_t to = chart_from_json(field(gl[i], "to", loc), s, at(loc, "to"));
      auto region = polyhedron_from_json(field(gl[i], "region", loc), s.model(),
                                         at(loc, "region"));
      auto map = map_from_json(field(gl[i], "map", loc), s.model(), at(loc, "map"));
      try {
        s.glue(from, to, std::move(region), std::move(map));
      } catch (const Error &e) {
        throw SchemaError(loc, e.what());
      }
    }
  }
  if (j.contains("marked_points")) {
    const json &mp = array(j["marked_points"], "marked_points");
    for (std::size_t i = 0; i < mp.size(); ++i)
      s.add_marked_point(chart_point_from_json(mp[i], s, at("marked_points", i)));
  }
  if (j.contains("marked_germs")) {
    const json &mg = array(j["marked_germs"], "marked_germs");
    for (std::size_t i = 0; i < mg.size(); ++i)
      s.add_marked_germ(germ_from_json(mg[i], s, at("marked_germs", i)));
  }
  if (j.contains("lambda_seq")) {
    const json &ls = array(j["lambda_seq"], "lambda_seq");
    for (std::size_t i = 0; i < ls.size(); ++i) {
      auto l = scalar_from_json(ls[i], lambda_rank, at("lambda_seq", i));
      if (l.sign() <= 0 || (!s.lambda_seq.empty() && !(s.lambda_seq.back() < l)))
        throw SchemaError(at("lambda_seq", i),
                          "lambda sequence must be positive and strictly increasing");
      s.lambda_seq.push_back(std::move(l));
    }
  }
  if (j.contains("lambda_level")) {
    long lv = integer_of(j["lambda_level"], "lambda_level");
    if (lv < 0 || static_cast<std::size_t>(lv) >= std::max<std::size_t>(s.lambda_seq.size(), 1))
      throw SchemaError("lambda_level", "must index into lambda_seq");
    s.lambda_level = static_cast<std::size_t>(lv);
  }
  if (j.contains("provenance")) {
    const json &pv = array(j["provenance"], "provenance");
    for (std::size_t i = 0; i < pv.size(); ++i)
      s.provenance.push_back(pv[i].is_string() ? pv[i].get<std::string>()
                                               : pv[i].dump());
  }
  return s;
}

inline AtlasSpace parse_atlas(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    throw SchemaError("$", std::string("invalid JSON: ") + e.what());
  }
  return atlas_from_json(j);
}

} // namespace io
} // namespace lbl
