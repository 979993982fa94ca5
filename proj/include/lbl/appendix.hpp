#pragma once

#include "lbl/overlaps.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace lbl {

struct AdmissibilityReport {
  bool t0 = true;
  bool t1 = true;
  bool t2 = true;
  bool t3 = true;
  std::vector<std::string> problems;
  bool ok() const { return t0 && t1 && t2 && t3; }
};

/// One parallelism class with every vertex's transport map into the
/// representative vertex's chart.
struct ClassCore {
  std::size_t rep_chart = 0;
  std::size_t rep_w = 0;
  std::vector<std::pair<std::size_t, std::size_t>> nodes;
  /// Maps from node-chart coordinates to representative coordinates.
  std::vector<AffineMap> to_rep;
  /// Intersection of the vector chambers and tree gluing regions, in
  /// representative coordinates.
  WeylPolyhedron core;
  bool has_subchamber = false;
};

/// λ_i = i·λ₁ for i = 1..n.
inline std::vector<LambdaScalar> linear_lambda_seq(const LambdaScalar &lambda1,
                                                   std::size_t n) {
  if (lambda1.sign() <= 0)
    throw Error("lambda must be positive");
  std::vector<LambdaScalar> out;
  for (std::size_t i = 1; i <= n; ++i)
    out.push_back(scale(Rational(static_cast<long>(i)), lambda1));
  return out;
}

namespace detail {

inline WeylPolyhedron point_region(const ModelSpace &m, const ModelPoint &p) {
  WeylPolyhedron out;
  for (std::size_t i = 0; i < m.rank(); ++i) {
    RootVec e(m.rank(), 0);
    e[i] = 1;
    out.constraints.push_back({e, Relation::Eq, p.coords[i]});
  }
  return out;
}

/// Direction u = ω̌₁ scaled to norm 1 in the leading lambda coordinate.
inline ModelPoint unit_axis(const ModelSpace &m) {
  ModelPoint u = m.coweight(0, m.scalar(1));
  Rational n = m.norm(u).coords()[0];
  return (Rational(1) / n) * u;
}

inline ModelPoint along(const ModelPoint &unit, const LambdaScalar &s) {
  ModelPoint out = unit;
  for (auto &c : out.coords) {
    Rational q = c.coords()[0];
    c = scale(q, s);
  }
  return out;
}

inline bool strictly_inside(const ModelSpace &m, std::size_t w, const ModelPoint &x) {
  for (const auto &c : m.cone_coords(w, x).coords)
    if (c.sign() <= 0)
      return false;
  return true;
}

inline std::string unique_chart_id(const AtlasSpace &s, const std::string &stem) {
  if (!s.find_chart(stem))
    return stem;
  for (std::size_t k = 2;; ++k) {
    std::string id = stem + "_" + std::to_string(k);
    if (!s.find_chart(id))
      return id;
  }
}

} // namespace detail

/// Three apartments glued pairwise at single points a, b, c, placed on the
/// ω̌₁ axis so that d_A(a,c) = s1, d_B(a,b) = s2 and d_C(b,c) = s3.
inline AtlasSpace triangle_counterexample(const ModelSpace &m,
                                          const std::array<LambdaScalar, 3> &sides) {
  for (const auto &s : sides) {
    if (s.rank() != m.lambda_rank())
      throw RankMismatch(s.rank(), m.lambda_rank());
    if (s.sign() <= 0)
      throw Error("triangle sides must be positive");
  }
  if (!(sides[0] > sides[1] + sides[2]))
    throw Error("triangle sides must satisfy s1 > s2 + s3, got " +
                sides[0].to_string() + ", " + sides[1].to_string() + ", " +
                sides[2].to_string());
  ModelPoint u = detail::unit_axis(m);
  ModelPoint o = m.origin();
  ModelPoint c_a = detail::along(u, sides[0]);
  ModelPoint b_b = detail::along(u, sides[1]);
  ModelPoint c_c = detail::along(u, sides[2]);
  for (const auto &p : {c_a, b_b, c_c})
    if (!m.in_translation_group(p))
      throw Error("triangle sides are not realizable by translations in W_T");

  AtlasSpace s(m);
  std::size_t A = s.add_chart("A"), B = s.add_chart("B"), C = s.add_chart("C");
  // a = A:o = B:o, b = B:b_b = C:o, c = C:c_c = A:c_a
  s.glue(A, B, detail::point_region(m, o), m.translation(o));
  s.glue(B, C, detail::point_region(m, b_b), m.translation(o - b_b));
  s.glue(C, A, detail::point_region(m, c_c), m.translation(c_a - c_c));
  s.add_marked_point({A, o});
  s.add_marked_point({B, b_b});
  s.add_marked_point({A, c_a});
  s.add_marked_germ({A, m.chamber(o, m.roots().identity())});
  s.add_marked_germ({A, m.chamber(o, m.roots().longest())});
  s.provenance.push_back("triangle " + m.roots().name() + " sides " +
                         sides[0].to_string() + " " + sides[1].to_string() + " " +
                         sides[2].to_string());
  s.provenance.push_back("a = A:o = B:o; b = B:" + b_b.to_string() +
                         " = C:o; c = C:" + c_c.to_string() + " = A:" +
                         c_a.to_string());
  return s;
}

/// Transport data for every parallelism class, in class order.
inline std::vector<ClassCore> class_cores(const AtlasSpace &s,
                                          const ParallelismClasses &classes) {
  const ModelSpace &m = s.model();
  const std::size_t order = s.roots().weyl_order();
  // Edges of the parallelism graph, labelled by gluing.
  std::map<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>> adj;
  for (std::size_t gi = 0; gi < s.gluings().size(); ++gi) {
    const Gluing &g = s.gluings()[gi];
    if (g.derived)
      continue;
    for (std::size_t w = 0; w < order; ++w) {
      if (!m.recession_contains(g.region, w, m.full_face()))
        continue;
      std::size_t a = g.from * order + w;
      std::size_t b = g.to * order + s.roots().multiply(g.map.weyl, w);
      adj[a].emplace_back(b, gi);
      adj[b].emplace_back(a, gi);
    }
  }
  std::vector<ClassCore> out;
  for (const auto &cls : classes.classes) {
    ClassCore cc;
    cc.rep_chart = cls.front().first;
    cc.rep_w = cls.front().second;
    std::map<std::size_t, AffineMap> maps;
    std::size_t root = cc.rep_chart * order + cc.rep_w;
    maps.emplace(root, m.identity_map());
    std::deque<std::size_t> queue{root};
    WeylPolyhedron core;
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      const AffineMap &mv = maps.at(v);
      std::size_t chart = v / order, w = v % order;
      cc.nodes.emplace_back(chart, w);
      cc.to_rep.push_back(mv);
      core = core.intersect(
          m.image(m.simplex_polyhedron(m.chamber(m.origin(), w)), mv));
      for (auto [u, gi] : adj[v]) {
        if (maps.count(u))
          continue;
        const Gluing &g = s.gluings()[gi];
        AffineMap mu = g.from == chart && u / order == g.to
                           ? m.compose(mv, m.inverse(g.map))
                           : m.compose(mv, g.map);
        const AffineMap &from_map = g.from == chart ? mv : mu;
        core = core.intersect(m.image(g.region, from_map));
        maps.emplace(u, mu);
        queue.push_back(u);
      }
    }
    cc.core = m.merge_bounds(core);
    cc.has_subchamber = m.recession_contains(cc.core, cc.rep_w, m.full_face());
    out.push_back(std::move(cc));
  }
  return out;
}

/// Checks (T0)-(T3) at radius lambda.
inline AdmissibilityReport is_admissible(const AtlasSpace &s, const LambdaScalar &lambda) {
  AdmissibilityReport rep;
  const ModelSpace &m = s.model();
  OverlapTable table(s);
  table.compute_all();
  for (const auto &p : table.problems()) {
    rep.t1 = false;
    rep.problems.push_back("T1: " + p.detail);
  }
  for (std::size_t f = 0; f < s.chart_count(); ++f)
    for (auto &[g, ov] : table.row(f)) {
      if (g < f)
        continue;
      for (auto &piece : ov.pieces)
        if (m.is_whole_space(piece.region)) {
          rep.t0 = false;
          rep.problems.push_back("T0: charts '" + s.chart_id(f) + "' and '" +
                                 s.chart_id(g) + "' have the same image");
        }
      if (!rep.t0 || ov.maximal.size() != 1)
        continue;
      const OverlapPiece &piece = ov.region_piece();
      bool ok = false;
      if (auto p = m.as_single_point(piece.region)) {
        ok = !(m.norm(*p) > lambda) && !(m.norm(m.apply(piece.map, *p)) > lambda);
      } else if (auto c = m.as_chamber(piece.region)) {
        std::size_t w2 = s.roots().multiply(piece.map.weyl, c->direction);
        ok = detail::strictly_inside(m, c->direction, c->base) &&
             detail::strictly_inside(m, w2, m.apply(piece.map, c->base));
      }
      if (!ok) {
        rep.t2 = false;
        rep.problems.push_back("T2: overlap of '" + s.chart_id(f) + "' and '" +
                               s.chart_id(g) +
                               "' is neither a point in the centered balls nor a "
                               "chamber inside vector chambers");
      }
    }
  auto classes = s.parallelism_classes();
  auto cores = class_cores(s, classes);
  for (std::size_t q = 0; q < cores.size(); ++q)
    if (!cores[q].has_subchamber) {
      rep.t3 = false;
      rep.problems.push_back("T3: vector chambers of the class of '" +
                             s.chart_id(cores[q].rep_chart) + "'/w" +
                             std::to_string(cores[q].rep_w) +
                             " have no common sub-Weyl chamber");
    }
  return rep;
}

/// The charts where a point has norm at most lambda.
inline std::optional<ChartPoint> in_centered_ball(const AtlasSpace &s,
                                                  const ChartPoint &p,
                                                  const LambdaScalar &lambda) {
  for (auto &r : s.representatives(p))
    if (!(s.model().norm(r.coords) > lambda))
      return r;
  return std::nullopt;
}

/// Covers every marked pair inside the lambda_next balls that has no common
/// apartment with a fresh chart glued at two points.
inline AtlasSpace extend_step1(const AtlasSpace &in, const LambdaScalar &lambda_next) {
  AtlasSpace s = in;
  const ModelSpace &m = s.model();
  ModelPoint u = detail::unit_axis(m);
  ModelPoint xp = detail::along(u, scale(make_rational(1, 2), lambda_next));
  ModelPoint yp = -xp;
  if (xp == yp)
    throw Error("lambda too small to place two distinct points");

  std::vector<ChartPoint> pts;
  std::set<XPoint> seen;
  for (auto &p : in.marked_points())
    if (seen.insert(in.canonical_point(p)).second)
      pts.push_back(p);
  std::size_t added = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (!s.common_apartments(pts[i], pts[j]).empty())
        continue;
      auto x = in_centered_ball(s, pts[i], lambda_next);
      auto y = in_centered_ball(s, pts[j], lambda_next);
      if (!x || !y)
        continue;
      std::string id = detail::unique_chart_id(
          s, "p" + std::to_string(s.lambda_level + 1) + "_" + std::to_string(added++));
      std::size_t c = s.add_chart(id);
      s.glue(c, x->chart, detail::point_region(m, xp),
             m.translation(x->coords - xp));
      s.glue(c, y->chart, detail::point_region(m, yp),
             m.translation(y->coords - yp));
      s.provenance.push_back("step1 lambda " + lambda_next.to_string() + ": " +
                             s.describe(*x) + " and " + s.describe(*y) +
                             " covered by " + id + " at " + xp.to_string() +
                             " and " + yp.to_string());
    }
  return s;
}

/// Covers every pair of parallelism classes without a common apartment by a
/// fresh chart glued along two opposite sub-Weyl chambers.
inline AtlasSpace extend_step2(const AtlasSpace &in, const LambdaScalar &lambda_next) {
  if (in.roots().rank() == 0)
    throw Error("root system has rank 0");
  AtlasSpace s = in;
  const ModelSpace &m = s.model();
  const RootSystem &rs = s.roots();
  auto classes = in.parallelism_classes();
  auto cores = class_cores(in, classes);

  ModelPoint rho = m.origin();
  for (auto &c : rho.coords)
    c = m.scalar(1);
  Rational rho_norm = m.norm(rho).coords()[0];

  // Sub-Weyl chamber S_q = b_q + w_q C_f beyond every centered ball.
  std::vector<ModelPoint> base(cores.size());
  for (std::size_t q = 0; q < cores.size(); ++q) {
    const ClassCore &cc = cores[q];
    if (!cc.has_subchamber)
      throw Error("class of '" + in.chart_id(cc.rep_chart) +
                  "' has no common sub-Weyl chamber");
    ModelPoint p = *m.find_point(cc.core);
    LambdaScalar t = scale(Rational(2), lambda_next);
    for (int attempt = 0;; ++attempt) {
      ModelPoint b = p + m.act(cc.rep_w, detail::along(rho, t));
      bool ok = true;
      for (std::size_t k = 0; k < cc.nodes.size() && ok; ++k) {
        ModelPoint local = m.apply(m.inverse(cc.to_rep[k]), b);
        ok = detail::strictly_inside(m, cc.nodes[k].second, local) &&
             m.norm(local) > lambda_next;
      }
      if (ok) {
        base[q] = b;
        break;
      }
      if (attempt > 64)
        throw Error("could not place a sub-Weyl chamber outside the centered balls");
      t = scale(Rational(2), t);
    }
  }

  std::vector<std::set<std::size_t>> charts_of(cores.size());
  for (std::size_t q = 0; q < cores.size(); ++q)
    for (auto &[c, w] : cores[q].nodes)
      charts_of[q].insert(c);

  ModelPoint b1 = detail::along(rho, scale(Rational(2) / rho_norm, lambda_next));
  const std::size_t w0 = rs.longest();
  std::size_t added = 0;
  for (std::size_t q1 = 0; q1 < cores.size(); ++q1)
    for (std::size_t q2 = q1 + 1; q2 < cores.size(); ++q2) {
      bool covered = false;
      for (auto c : charts_of[q1])
        covered |= charts_of[q2].count(c) > 0;
      if (covered)
        continue;
      std::string id = detail::unique_chart_id(
          s, "r" + std::to_string(s.lambda_level + 1) + "_" + std::to_string(added++));
      std::size_t c = s.add_chart(id);
      const ClassCore &k1 = cores[q1], &k2 = cores[q2];
      // S1 = b1 + C_f onto S_q2, S2 = -b1 + w0 C_f onto S_q1.
      AffineMap phi1{k2.rep_w, base[q2] - m.act(k2.rep_w, b1)};
      std::size_t lin2 = rs.multiply(k1.rep_w, w0);
      AffineMap phi2{lin2, base[q1] - m.act(lin2, -b1)};
      s.glue(c, k2.rep_chart, m.simplex_polyhedron(m.chamber(b1, rs.identity())), phi1);
      s.glue(c, k1.rep_chart, m.simplex_polyhedron(m.chamber(-b1, w0)), phi2);
      s.provenance.push_back(
          "step2 lambda " + lambda_next.to_string() + ": classes " +
          in.chart_id(k1.rep_chart) + "/w" + std::to_string(k1.rep_w) + " and " +
          in.chart_id(k2.rep_chart) + "/w" + std::to_string(k2.rep_w) +
          " covered by " + id + " with sectors at " + base[q1].to_string() +
          " and " + base[q2].to_string());
    }
  return s;
}

/// One round of Step 1 and Step 2 moving to the next radius in lambda_seq.
inline AtlasSpace extend_round(const AtlasSpace &in) {
  if (in.lambda_level + 1 >= in.lambda_seq.size())
    throw Error("lambda sequence exhausted after " +
                std::to_string(in.lambda_seq.size()) + " radii");
  const LambdaScalar &next = in.lambda_seq[in.lambda_level + 1];
  AtlasSpace s = extend_step2(extend_step1(in, next), next);
  s.lambda_level = in.lambda_level + 1;
  return s;
}

inline AtlasSpace iterate(const AtlasSpace &in, std::size_t rounds) {
  AtlasSpace s = in;
  for (std::size_t k = 0; k < rounds; ++k)
    s = extend_round(s);
  return s;
}

/// Class pairs of `before` that no chart of `after` covers; classes are
/// matched through their representative vertex.
inline std::vector<std::pair<std::size_t, std::size_t>>
uncovered_class_pairs(const AtlasSpace &before, const AtlasSpace &after) {
  auto cb = before.parallelism_classes();
  auto ca = after.parallelism_classes();
  std::vector<std::set<std::size_t>> charts(ca.size());
  for (std::size_t q = 0; q < ca.size(); ++q)
    for (auto &[c, w] : ca.classes[q])
      charts[q].insert(c);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t q1 = 0; q1 < cb.size(); ++q1)
    for (std::size_t q2 = q1 + 1; q2 < cb.size(); ++q2) {
      auto [c1, w1] = cb.classes[q1].front();
      auto [c2, w2] = cb.classes[q2].front();
      const auto &a = charts[ca.of(c1, w1)], &b = charts[ca.of(c2, w2)];
      bool covered = false;
      for (auto c : a)
        covered |= b.count(c) > 0;
      if (!covered)
        out.emplace_back(q1, q2);
    }
  return out;
}

} // namespace lbl
