#pragma once

#include "lbl/overlaps.hpp"
#include "lbl/retraction.hpp"
#include "lbl/serialize.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace lbl {

enum class Verdict { Pass, Fail, Vacuous, BoundedPass };

inline const char *to_string(Verdict v) {
  switch (v) {
  case Verdict::Pass:
    return "PASS";
  case Verdict::Fail:
    return "FAIL";
  case Verdict::Vacuous:
    return "VACUOUS";
  case Verdict::BoundedPass:
    return "BOUNDED-PASS";
  }
  return "?";
}

inline bool holds(Verdict v) { return v != Verdict::Fail; }

inline const std::vector<std::string> &condition_ids() {
  static const std::vector<std::string> ids{"A1", "A2", "A3", "A4", "A5",
                                            "A6", "TI", "EC", "SC", "GG",
                                            "CO", "LA", "ALA", "FC"};
  return ids;
}

inline bool is_condition(const std::string &id) {
  const auto &ids = condition_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

struct ConditionResult {
  ConditionResult() = default;
  explicit ConditionResult(std::string id) : id(std::move(id)) {}

  std::string id;
  Verdict verdict = Verdict::BoundedPass;
  /// Replayable description of the violation; null unless FAIL.
  json witness;
  /// One line for the text table.
  std::string summary;
  std::map<std::string, std::size_t> inventory;
  std::vector<std::string> notices;
};

struct AuditResult {
  bool consistent = true;
  std::vector<std::string> findings;
  std::vector<std::string> notes;
};

struct ProbeConfig {
  std::size_t budget = 20000;
  std::uint64_t seed = 1;
};

/// LBL_PROBE_CAP overrides the default budget when set to a positive integer.
inline std::size_t default_probe_budget() {
  if (const char *env = std::getenv("LBL_PROBE_CAP")) {
    char *end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0)
      return static_cast<std::size_t>(v);
  }
  return 20000;
}

struct AxiomReport {
  std::vector<ConditionResult> results;
  AuditResult audit;
  ProbeConfig probes;
  Rational metric_scale = 1;
  std::size_t points = 0;
  std::size_t germs = 0;

  const ConditionResult &get(const std::string &id) const {
    for (const auto &r : results)
      if (r.id == id)
        return r;
    throw Error("no result for condition '" + id + "'");
  }

  bool any_fail() const {
    for (const auto &r : results)
      if (r.verdict == Verdict::Fail)
        return true;
    return false;
  }
};

namespace detail {

/// Pair indices (i < j) over n items, all of them or a seeded sample.
inline std::vector<std::pair<std::size_t, std::size_t>>
probe_pairs(std::size_t n, std::size_t budget, std::uint64_t seed) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t total = n < 2 ? 0 : n * (n - 1) / 2;
  if (total <= budget) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        out.emplace_back(i, j);
    return out;
  }
  std::mt19937_64 rng(seed);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  while (seen.size() < budget) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j)
      continue;
    seen.emplace(std::min(i, j), std::max(i, j));
  }
  return {seen.begin(), seen.end()};
}

/// Triples (i, j, k) with i < k and j distinct from both.
inline std::vector<std::tuple<std::size_t, std::size_t, std::size_t>>
probe_triples(std::size_t n, std::size_t budget, std::uint64_t seed) {
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> out;
  std::size_t total = n < 3 ? 0 : n * (n - 1) / 2 * (n - 2);
  if (total <= budget) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i + 1; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j)
          if (j != i && j != k)
            out.emplace_back(i, j, k);
    return out;
  }
  std::mt19937_64 rng(seed);
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  while (seen.size() < budget) {
    std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
    if (i == j || j == k || i == k)
      continue;
    seen.emplace(std::min(i, k), j, std::max(i, k));
  }
  return {seen.begin(), seen.end()};
}

inline std::vector<std::size_t> intersect(const std::vector<std::size_t> &a,
                                          const std::vector<std::size_t> &b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

} // namespace detail

/// Runs the axiom checks on one space. Probe data and overlaps are computed
/// once and shared between conditions.
class Checker {
public:
  Checker(const AtlasSpace &space, ProbeConfig cfg = {})
      : space_(space), m_(space.model()), cfg_(cfg), overlaps_(space) {
    collect_points();
    collect_germs();
  }

  const std::vector<ChartPoint> &point_probes() const { return points_; }
  const std::vector<XGerm> &germ_probes() const { return germs_; }
  OverlapTable &overlaps() { return overlaps_; }

  ConditionResult check(const std::string &id) {
    if (id == "A1")
      return check_a1();
    if (id == "A2")
      return check_a2();
    if (id == "A3")
      return check_a3();
    if (id == "A4")
      return check_a4();
    if (id == "A5")
      return check_a5();
    if (id == "A6")
      return check_a6();
    if (id == "TI")
      return check_ti();
    if (id == "EC")
      return check_ec();
    if (id == "SC")
      return check_sc();
    if (id == "GG")
      return check_germ_pairs("GG", true);
    if (id == "LA")
      return check_germ_pairs("LA", false);
    if (id == "ALA")
      return check_ala();
    if (id == "CO")
      return check_co();
    if (id == "FC")
      return check_fc();
    throw Error("unknown condition '" + id + "'");
  }

  AxiomReport check_all();

  // --- individual conditions ------------------------------------------------

  ConditionResult check_a1() {
    ConditionResult r{"A1"};
    r.verdict = Verdict::Pass;
    r.inventory["gluings"] = space_.gluings().size();
    for (std::size_t i = 0; i < space_.gluings().size(); ++i) {
      const Gluing &g = space_.gluings()[i];
      if (!m_.is_valid_map(g.map)) {
        r.verdict = Verdict::Fail;
        r.witness = {{"kind", "map_outside_group"},
                     {"from", space_.chart_id(g.from)},
                     {"to", space_.chart_id(g.to)},
                     {"map", io::to_json(g.map)}};
        r.summary = "gluing map " + space_.chart_id(g.from) + " -> " +
                    space_.chart_id(g.to) + " is not in W_T";
        return r;
      }
    }
    r.summary = "atlas is closed under W_T by representation";
    return r;
  }

  ConditionResult check_a2() {
    ConditionResult r{"A2"};
    overlaps_.compute_all();
    std::size_t pairs = 0, pieces = 0;
    for (std::size_t f = 0; f < space_.chart_count(); ++f)
      for (auto &[g, ov] : overlaps_.row(f)) {
        ++pairs;
        pieces += ov.pieces.size();
      }
    r.inventory["overlapping_pairs"] = pairs;
    r.inventory["gluing_chains"] = pieces;
    if (!overlaps_.problems().empty()) {
      const auto &p = overlaps_.problems().front();
      r.verdict = Verdict::Fail;
      r.witness = {{"kind", to_string(p.kind)},
                   {"from", space_.chart_id(p.from)},
                   {"to", space_.chart_id(p.to)},
                   {"region", io::to_json(p.region)}};
      r.summary = p.detail;
      return r;
    }
    r.verdict = Verdict::Pass;
    r.summary = "every overlap is one Weyl polyhedron with a consistent map";
    return r;
  }

  ConditionResult check_a3() {
    ConditionResult r{"A3"};
    auto pairs = detail::probe_pairs(points_.size(), cfg_.budget, cfg_.seed + 3);
    r.inventory["points"] = points_.size();
    r.inventory["pairs"] = pairs.size();
    for (auto [i, j] : pairs) {
      if (common(i, j).empty()) {
        r.verdict = Verdict::Fail;
        r.witness = {{"x", pt(i)}, {"y", pt(j)}};
        r.summary = "no apartment contains " + space_.describe(points_[i]) +
                    " and " + space_.describe(points_[j]);
        return r;
      }
    }
    r.verdict = Verdict::BoundedPass;
    return r;
  }

  ConditionResult check_a4() {
    ConditionResult r{"A4"};
    auto classes = space_.parallelism_classes();
    std::vector<std::vector<std::size_t>> class_charts(classes.size());
    for (std::size_t q = 0; q < classes.size(); ++q) {
      std::set<std::size_t> cs;
      for (auto &[c, w] : classes.classes[q])
        cs.insert(c);
      class_charts[q].assign(cs.begin(), cs.end());
    }
    std::vector<XGerm> chambers;
    for (const auto &g : space_.marked_germs())
      if (g.simplex.face == m_.full_face())
        chambers.push_back(g);
    auto pairs = detail::probe_pairs(chambers.size(), cfg_.budget, cfg_.seed + 4);
    r.inventory["chambers"] = chambers.size();
    r.inventory["pairs"] = pairs.size();
    r.inventory["parallelism_classes"] = classes.size();
    for (auto [i, j] : pairs) {
      auto q1 = classes.of(chambers[i].chart, chambers[i].simplex.direction);
      auto q2 = classes.of(chambers[j].chart, chambers[j].simplex.direction);
      if (detail::intersect(class_charts[q1], class_charts[q2]).empty()) {
        r.verdict = Verdict::Fail;
        r.witness = {{"S", io::to_json(space_, chambers[i])},
                     {"T", io::to_json(space_, chambers[j])}};
        r.summary = "no apartment contains sub-Weyl chambers of both marked chambers " +
                    std::to_string(i) + " and " + std::to_string(j);
        return r;
      }
    }
    r.verdict = Verdict::BoundedPass;
    return r;
  }

  ConditionResult check_a5() {
    ConditionResult r{"A5"};
    std::vector<XGerm> centers;
    for (const auto &g : space_.marked_germs())
      if (g.simplex.face == m_.full_face())
        centers.push_back(g);
    if (centers.empty())
      centers = germs_;
    std::size_t retractions = 0, pairs_checked = 0, skipped = 0;
    auto pairs = detail::probe_pairs(points_.size(), cfg_.budget, cfg_.seed + 5);
    for (const auto &mu : centers) {
      Retractor base(space_, Retraction{mu.chart, mu});
      for (auto &[chart, _] : base.charts()) {
        Retractor ret(space_, Retraction{chart, mu});
        ++retractions;
        std::vector<std::optional<ModelPoint>> img(points_.size());
        for (std::size_t i = 0; i < points_.size(); ++i) {
          auto v = ret.evaluate(points_[i]);
          if (!v.consistent) {
            r.verdict = Verdict::Fail;
            r.witness = {{"kind", "ambiguous"},
                         {"center", io::to_json(space_, mu)},
                         {"chart", space_.chart_id(chart)},
                         {"y", pt(i)}};
            r.summary = "retraction value of " + space_.describe(points_[i]) +
                        " depends on the intermediate chart";
            return r;
          }
          img[i] = v.value;
        }
        // Only the base point may map to the base point.
        auto base_coords = ret.retract(ChartPoint{mu.chart, mu.simplex.base});
        XPoint base_x = space_.canonical_point(ChartPoint{mu.chart, mu.simplex.base});
        for (std::size_t i = 0; i < points_.size(); ++i)
          if (img[i] && base_coords && *img[i] == *base_coords &&
              canon_[i] != base_x) {
            r.verdict = Verdict::Fail;
            r.witness = {{"kind", "preimage"},
                         {"center", io::to_json(space_, mu)},
                         {"chart", space_.chart_id(chart)},
                         {"y", pt(i)}};
            r.summary = space_.describe(points_[i]) +
                        " is retracted onto the center's base point";
            return r;
          }
        for (auto [i, j] : pairs) {
          auto d = dist(i, j);
          if (!d || !img[i] || !img[j]) {
            ++skipped;
            continue;
          }
          ++pairs_checked;
          LambdaScalar di = m_.distance(*img[i], *img[j]);
          if (di > *d) {
            r.verdict = Verdict::Fail;
            r.witness = {{"kind", "lipschitz"},
                         {"center", io::to_json(space_, mu)},
                         {"chart", space_.chart_id(chart)},
                         {"y", pt(i)},
                         {"z", pt(j)},
                         {"distance", io::to_json(*d)},
                         {"image_distance", io::to_json(di)}};
            r.summary = "retraction stretches d = " + d->to_string() + " to " +
                        di.to_string();
            return r;
          }
        }
        // A point outside the domain whose distances force every extension to
        // stretch: d(r(p), r(q)) > d(p, y) + d(y, q).
        for (std::size_t y = 0; y < points_.size(); ++y) {
          if (img[y])
            continue;
          for (auto [p, q] : pairs) {
            if (!img[p] || !img[q] || p == y || q == y)
              continue;
            auto dpy = dist(p, y), dyq = dist(y, q);
            if (!dpy || !dyq)
              continue;
            LambdaScalar di = m_.distance(*img[p], *img[q]);
            if (di > *dpy + *dyq) {
              r.verdict = Verdict::Fail;
              r.witness = {{"kind", "forced_stretch"},
                           {"center", io::to_json(space_, mu)},
                           {"chart", space_.chart_id(chart)},
                           {"p", pt(p)},
                           {"q", pt(q)},
                           {"y", pt(y)},
                           {"d_py", io::to_json(*dpy)},
                           {"d_yq", io::to_json(*dyq)},
                           {"image_distance", io::to_json(di)}};
              r.summary = "any retraction extending to " +
                          space_.describe(points_[y]) + " stretches: d(r(p),r(q)) = " +
                          di.to_string() + " > " + dpy->to_string() + " + " +
                          dyq->to_string();
              return r;
            }
          }
        }
      }
    }
    r.inventory["centers"] = centers.size();
    r.inventory["retractions"] = retractions;
    r.inventory["pairs_checked"] = pairs_checked;
    r.inventory["pairs_skipped"] = skipped;
    if (skipped)
      r.notices.push_back(std::to_string(skipped) +
                          " pairs skipped: retraction or distance undefined");
    r.verdict = Verdict::BoundedPass;
    return r;
  }

  ConditionResult check_a6() {
    ConditionResult r{"A6"};
    auto &h = half_pairs();
    r.inventory["half_apartment_pairs"] = h.size();
    if (h.empty()) {
      r.verdict = Verdict::Vacuous;
      r.summary = "no two apartments meet in a half-apartment";
      return r;
    }
    std::size_t triples = 0;
    const std::size_t n = space_.chart_count();
    for (std::size_t f = 0; f < n; ++f)
      for (std::size_t g = f + 1; g < n; ++g) {
        if (!h.count({f, g}))
          continue;
        for (std::size_t k = g + 1; k < n; ++k) {
          if (!h.count({f, k}) || !h.count({g, k}))
            continue;
          ++triples;
          auto both = overlaps_.get(f, g)->region_piece().region.intersect(
              overlaps_.get(f, k)->region_piece().region);
          if (m_.is_empty(both)) {
            r.verdict = Verdict::Fail;
            r.witness = {{"charts",
                          {space_.chart_id(f), space_.chart_id(g), space_.chart_id(k)}}};
            r.summary = "apartments " + space_.chart_id(f) + ", " +
                        space_.chart_id(g) + ", " + space_.chart_id(k) +
                        " meet pairwise in half-apartments but have no common point";
            return r;
          }
        }
      }
    r.inventory["triples"] = triples;
    r.verdict = triples ? Verdict::Pass : Verdict::Vacuous;
    if (!triples)
      r.summary = "no three apartments meet pairwise in half-apartments";
    return r;
  }

  ConditionResult check_ec() {
    ConditionResult r{"EC"};
    auto &h = half_pairs();
    r.inventory["half_apartment_pairs"] = h.size();
    if (h.empty()) {
      r.verdict = Verdict::Vacuous;
      r.summary = "no two apartments meet in a half-apartment";
      return r;
    }
    for (auto &[pair, half] : h) {
      auto [f1, f2] = pair;
      if (!exchange_chart(f1, f2)) {
        r.verdict = Verdict::Fail;
        r.witness = {{"f1", space_.chart_id(f1)}, {"f2", space_.chart_id(f2)}};
        r.summary = "no apartment realizes the symmetric difference of " +
                    space_.chart_id(f1) + " and " + space_.chart_id(f2);
        return r;
      }
    }
    r.verdict = Verdict::Pass;
    return r;
  }

  ConditionResult check_sc() {
    ConditionResult r{"SC"};
    auto &h = half_pairs();
    r.inventory["half_apartment_pairs"] = h.size();
    if (h.empty()) {
      r.verdict = Verdict::Vacuous;
      r.summary = "no two apartments meet in a half-apartment";
      return r;
    }
    std::size_t chambers = 0;
    for (auto &[pair, half] : h) {
      for (int flip_roles = 0; flip_roles < 2; ++flip_roles) {
        std::size_t f1 = flip_roles ? pair.second : pair.first;
        std::size_t g = flip_roles ? pair.first : pair.second;
        for (auto &s : sundial_chambers(f1, g)) {
          ++chambers;
          if (sundial_support(f1, g, s).size() < 2) {
            r.verdict = Verdict::Fail;
            r.witness = {{"f1", space_.chart_id(f1)},
                         {"chamber", io::to_json(space_, XGerm{g, s})}};
            r.summary = "chamber of " + space_.chart_id(g) +
                        " meets " + space_.chart_id(f1) +
                        " in a panel but fewer than two apartments contain it and the wall";
            return r;
          }
        }
      }
    }
    r.inventory["chambers"] = chambers;
    r.verdict = Verdict::BoundedPass;
    return r;
  }

  ConditionResult check_ti() {
    ConditionResult r{"TI"};
    auto triples = detail::probe_triples(points_.size(), cfg_.budget, cfg_.seed + 7);
    std::size_t checked = 0;
    for (auto [i, j, k] : triples) {
      auto dxz = dist(i, k), dxy = dist(i, j), dyz = dist(j, k);
      if (!dxz || !dxy || !dyz)
        continue;
      ++checked;
      if (*dxz > *dxy + *dyz) {
        r.verdict = Verdict::Fail;
        r.witness = {{"x", pt(i)},
                     {"y", pt(j)},
                     {"z", pt(k)},
                     {"d_xy", io::to_json(*dxy)},
                     {"d_yz", io::to_json(*dyz)},
                     {"d_xz", io::to_json(*dxz)}};
        r.summary = "d(x,z) = " + dxz->to_string() + " > d(x,y) + d(y,z) = " +
                    dxy->to_string() + " + " + dyz->to_string();
        r.inventory["triples"] = checked;
        return r;
      }
    }
    r.inventory["points"] = points_.size();
    r.inventory["triples"] = checked;
    r.verdict = Verdict::BoundedPass;
    return r;
  }

  ConditionResult check_germ_pairs(const std::string &id, bool same_base) {
    ConditionResult r{id};
    auto pairs = detail::probe_pairs(germs_.size(), cfg_.budget,
                                     cfg_.seed + (same_base ? 9 : 10));
    std::size_t checked = 0;
    for (auto [i, j] : pairs) {
      if (same_base && germ_base_[i] != germ_base_[j])
        continue;
      ++checked;
      if (detail::intersect(germ_charts_[i], germ_charts_[j]).empty()) {
        r.verdict = Verdict::Fail;
        r.witness = {{"g1", io::to_json(space_, germs_[i])},
                     {"g2", io::to_json(space_, germs_[j])}};
        r.summary = "no apartment contains the chamber germs " +
                    describe(germs_[i]) + " and " + describe(germs_[j]);
        r.inventory["germ_pairs"] = checked;
        return r;
      }
    }
    r.inventory["germs"] = germs_.size();
    r.inventory["germ_pairs"] = checked;
    r.verdict = Verdict::BoundedPass;
    return r;
  }

  ConditionResult check_ala() {
    ConditionResult r{"ALA"};
    std::size_t checked = 0;
    for (std::size_t i = 0; i < points_.size(); ++i)
      for (std::size_t j = 0; j < germs_.size(); ++j) {
        if (++checked > cfg_.budget)
          break;
        if (detail::intersect(point_charts_[i], germ_charts_[j]).empty()) {
          r.verdict = Verdict::Fail;
          r.witness = {{"x", pt(i)}, {"germ", io::to_json(space_, germs_[j])}};
          r.summary = "no apartment contains " + space_.describe(points_[i]) +
                      " and the germ " + describe(germs_[j]);
          return r;
        }
      }
    r.inventory["point_germ_pairs"] = std::min(checked, cfg_.budget);
    r.verdict = Verdict::BoundedPass;
    return r;
  }

  ConditionResult check_co() {
    ConditionResult r{"CO"};
    std::size_t checked = 0;
    const std::size_t w0 = space_.roots().longest();
    for (const auto &g : germs_) {
      if (++checked > cfg_.budget)
        break;
      WeylSimplex s = g.simplex;
      WeylSimplex t = m_.chamber(s.base, space_.roots().multiply(s.direction, w0));
      auto charts = charts_with_both(g.chart, s, t);
      if (charts.size() != 1) {
        r.verdict = Verdict::Fail;
        json ids = json::array();
        for (auto c : charts)
          ids.push_back(space_.chart_id(c));
        r.witness = {{"S", io::to_json(space_, g)},
                     {"T", io::to_json(space_, XGerm{g.chart, t})},
                     {"charts", ids}};
        r.summary = "opposite chambers at " +
                    space_.describe(ChartPoint{g.chart, s.base}) + " lie in " +
                    std::to_string(charts.size()) + " apartments";
        return r;
      }
    }
    r.inventory["opposite_pairs"] = std::min(checked, cfg_.budget);
    r.verdict = Verdict::BoundedPass;
    return r;
  }

  ConditionResult check_fc() {
    ConditionResult r{"FC"};
    auto triples = detail::probe_triples(points_.size(), cfg_.budget, cfg_.seed + 11);
    std::size_t samples = 0;
    std::size_t evaluated = 0;
    for (auto [i, k, j] : triples) {
      // x = points_[i], y = points_[j], z = points_[k]
      for (auto chart : common(i, j)) {
        if (++evaluated > cfg_.budget)
          break;
        ModelPoint x = coords_[i].at(chart).front();
        ModelPoint y = coords_[j].at(chart).front();
        for (auto &s : segment_samples(x, y)) {
          ++samples;
          ChartPoint sp{chart, s};
          if (space_.common_apartments(points_[k], sp).empty()) {
            r.verdict = Verdict::Fail;
            r.witness = {{"x", pt(i)},
                         {"y", pt(j)},
                         {"z", pt(k)},
                         {"chart", space_.chart_id(chart)},
                         {"sample", io::to_json(s)}};
            r.summary = "segment point " + space_.describe(sp) +
                        " lies in no Weyl chamber based at " +
                        space_.describe(points_[k]);
            r.inventory["samples"] = samples;
            return r;
          }
        }
      }
    }
    r.inventory["triples"] = triples.size();
    r.inventory["samples"] = samples;
    r.verdict = Verdict::BoundedPass;
    return r;
  }

  /// Segment vertices and the points k/8 along [x,v] and [v,y] for each
  /// vertex v.
  std::vector<ModelPoint> segment_samples(const ModelPoint &x,
                                          const ModelPoint &y) const {
    std::set<ModelPoint> out{x, y};
    auto verts = m_.vertices(m_.segment(x, y));
    verts.push_back(x);
    for (const auto &v : verts) {
      out.insert(v);
      for (int k = 1; k < 8; ++k) {
        Rational t = make_rational(k, 8);
        out.insert((Rational(1) - t) * x + t * v);
        out.insert((Rational(1) - t) * v + t * y);
      }
    }
    return {out.begin(), out.end()};
  }

private:
  void collect_points() {
    std::vector<ChartPoint> raw = space_.marked_points();
    if (raw.empty())
      for (std::size_t c = 0; c < space_.chart_count(); ++c)
        raw.push_back({c, m_.origin()});
    std::set<XPoint> seen;
    for (auto &p : raw) {
      XPoint x = space_.canonical_point(p);
      if (!seen.insert(x).second)
        continue;
      points_.push_back(p);
      canon_.push_back(x);
      std::map<std::size_t, std::vector<ModelPoint>> cs = space_.coordinates(p);
      std::vector<std::size_t> charts;
      for (auto &[c, _] : cs)
        charts.push_back(c);
      point_charts_.push_back(std::move(charts));
      coords_.push_back(std::move(cs));
    }
    const std::size_t n = points_.size();
    dist_.assign(n, std::vector<std::optional<LambdaScalar>>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto cs = common(i, j);
        if (cs.empty())
          continue;
        dist_[i][j] = m_.distance(coords_[i].at(cs.front()).front(),
                                  coords_[j].at(cs.front()).front());
      }
  }

  void collect_germs() {
    std::set<XGerm> seen;
    auto add = [&](const XGerm &g) {
      if (g.simplex.face != m_.full_face())
        return;
      auto orbit = space_.germ_orbit(g);
      XGerm key = orbit.front().germ;
      std::set<std::size_t> charts;
      for (auto &rep : orbit) {
        key = std::min(key, rep.germ);
        charts.insert(rep.germ.chart);
      }
      if (!seen.insert(key).second)
        return;
      germs_.push_back(g);
      germ_charts_.emplace_back(charts.begin(), charts.end());
      germ_base_.push_back(space_.canonical_point(ChartPoint{g.chart, g.simplex.base}));
    };
    for (const auto &g : space_.marked_germs())
      add(g);
    for (std::size_t i = 0; i < points_.size(); ++i)
      for (auto &[chart, cs] : coords_[i])
        for (std::size_t w = 0; w < space_.roots().weyl_order(); ++w)
          add(XGerm{chart, m_.chamber(cs.front(), w)});
    // Germs on the wall of every half-apartment overlap.
    for (auto &[pair, half] : half_pairs()) {
      auto wall = m_.find_point(WeylPolyhedron{{{half.root, Relation::Eq, half.bound}}});
      for (auto &r : space_.representatives(ChartPoint{pair.first, *wall}))
        for (std::size_t w = 0; w < space_.roots().weyl_order(); ++w)
          add(XGerm{r.chart, m_.chamber(r.coords, w)});
    }
  }

  std::vector<std::size_t> common(std::size_t i, std::size_t j) const {
    return detail::intersect(point_charts_[i], point_charts_[j]);
  }

  const std::optional<LambdaScalar> &dist(std::size_t i, std::size_t j) const {
    return dist_[i][j];
  }

  json pt(std::size_t i) const { return io::to_json(space_, points_[i]); }

  std::string describe(const XGerm &g) const {
    return space_.chart_id(g.chart) + ":" + g.simplex.base.to_string() + "/w" +
           std::to_string(g.simplex.direction);
  }

  /// Unordered chart pairs whose overlap is a half-apartment, with the
  /// half-apartment in the coordinates of the smaller chart.
  const std::map<std::pair<std::size_t, std::size_t>, RootConstraint> &half_pairs() {
    if (half_ready_)
      return half_;
    half_ready_ = true;
    for (std::size_t f = 0; f < space_.chart_count(); ++f)
      for (auto &[g, ov] : overlaps_.row(f)) {
        if (g <= f || !ov.convex())
          continue;
        if (auto h = m_.as_half_apartment(ov.region_piece().region))
          half_.emplace(std::make_pair(f, g), *h);
      }
    return half_;
  }

  std::optional<RootConstraint> half_in(std::size_t f, std::size_t g) {
    const Overlap *ov = overlaps_.get(f, g);
    if (!ov || !ov->convex())
      return std::nullopt;
    return m_.as_half_apartment(ov->region_piece().region);
  }

  static RootConstraint complement(const RootConstraint &c) {
    return RootConstraint{c.root, flip(c.rel), c.bound};
  }

  bool same_half(const std::optional<RootConstraint> &a, const RootConstraint &b) const {
    return a && a->root == b.root && a->rel == b.rel && a->bound == b.bound;
  }

  /// A third chart realizing the exchange for the half-apartment pair.
  std::optional<std::size_t> exchange_chart(std::size_t f1, std::size_t f2) {
    auto h1 = half_in(f1, f2);
    auto h2 = half_in(f2, f1);
    if (!h1 || !h2)
      return std::nullopt;
    for (std::size_t f3 = 0; f3 < space_.chart_count(); ++f3) {
      if (f3 == f1 || f3 == f2)
        continue;
      if (!same_half(half_in(f1, f3), complement(*h1)) ||
          !same_half(half_in(f2, f3), complement(*h2)))
        continue;
      auto a = half_in(f3, f1), b = half_in(f3, f2);
      if (a && b && same_half(b, complement(*a)))
        return f3;
    }
    return std::nullopt;
  }

  /// Chambers of g based on the wall of the half-apartment f1 ∩ g, on the far
  /// side from f1, meeting f1 in a panel.
  std::vector<WeylSimplex> sundial_chambers(std::size_t f1, std::size_t g) {
    std::vector<WeylSimplex> out;
    auto hg = half_in(g, f1);
    if (!hg)
      return out;
    WeylPolyhedron wall{{{hg->root, Relation::Eq, hg->bound}}};
    std::vector<ModelPoint> bases;
    if (auto p = m_.find_point(wall))
      bases.push_back(*p);
    for (std::size_t i = 0; i < points_.size(); ++i) {
      auto it = coords_[i].find(g);
      if (it != coords_[i].end() && m_.contains(wall, it->second.front()))
        bases.push_back(it->second.front());
    }
    const int far = hg->rel == Relation::Ge ? -1 : 1;
    auto k = space_.roots().find_root(hg->root)->index;
    for (std::size_t w = 0; w < space_.roots().weyl_order(); ++w) {
      bool on_wall = false;
      for (std::size_t j = 0; j < m_.rank(); ++j) {
        auto sr = space_.roots().permute_root(w, j);
        if (sr.index == k && sr.sign == far)
          on_wall = true;
      }
      if (!on_wall)
        continue;
      for (auto &b : bases)
        out.push_back(m_.chamber(b, w));
    }
    return out;
  }

  /// Charts meeting f1 in a half-apartment and containing its wall and the
  /// chamber s of g.
  std::vector<std::size_t> sundial_support(std::size_t f1, std::size_t g,
                                           const WeylSimplex &s) {
    std::vector<std::size_t> out;
    auto h1 = half_in(f1, g);
    WeylPolyhedron wall{{{h1->root, Relation::Eq, h1->bound}}};
    auto chamber = m_.simplex_polyhedron(s);
    for (std::size_t fj = 0; fj < space_.chart_count(); ++fj) {
      if (fj == f1 || !half_in(f1, fj))
        continue;
      if (!m_.subset(wall, overlaps_.get(f1, fj)->region_piece().region))
        continue;
      bool contains = fj == g;
      if (!contains) {
        if (const Overlap *ov = overlaps_.get(g, fj))
          for (auto idx : ov->maximal)
            contains |= m_.subset(chamber, ov->pieces[idx].region);
      }
      if (contains)
        out.push_back(fj);
    }
    return out;
  }

  /// Charts containing both chambers (given in chart f) through one overlap.
  std::vector<std::size_t> charts_with_both(std::size_t f, const WeylSimplex &s,
                                            const WeylSimplex &t) {
    std::vector<std::size_t> out{f};
    auto ps = m_.simplex_polyhedron(s), pt_ = m_.simplex_polyhedron(t);
    for (auto &[g, ov] : overlaps_.row(f))
      for (auto &piece : ov.pieces)
        if (m_.subset(ps, piece.region) && m_.subset(pt_, piece.region)) {
          out.push_back(g);
          break;
        }
    return out;
  }

  const AtlasSpace &space_;
  const ModelSpace &m_;
  ProbeConfig cfg_;
  OverlapTable overlaps_;

  std::vector<ChartPoint> points_;
  std::vector<XPoint> canon_;
  std::vector<std::vector<std::size_t>> point_charts_;
  std::vector<std::map<std::size_t, std::vector<ModelPoint>>> coords_;
  std::vector<std::vector<std::optional<LambdaScalar>>> dist_;

  std::vector<XGerm> germs_;
  std::vector<std::vector<std::size_t>> germ_charts_;
  std::vector<XPoint> germ_base_;

  bool half_ready_ = false;
  std::map<std::pair<std::size_t, std::size_t>, RootConstraint> half_;
};

/// Consistency of the verdicts with the implications between conditions.
inline AuditResult audit(const std::vector<ConditionResult> &results) {
  std::map<std::string, Verdict> v;
  for (const auto &r : results)
    v[r.id] = r.verdict;
  auto ok = [&](const char *id) {
    auto it = v.find(id);
    return it != v.end() && holds(it->second);
  };
  auto failed = [&](const char *id) {
    auto it = v.find(id);
    return it != v.end() && it->second == Verdict::Fail;
  };
  AuditResult a;
  if (ok("A1") && ok("A2") && ok("A3") && ok("A4") && ok("A5") &&
      !(ok("A6") == ok("EC") && ok("EC") == ok("SC"))) {
    a.consistent = false;
    a.findings.push_back("INCONSISTENT: A1-A5 hold but A6, EC and SC disagree");
  }
  if (ok("GG") && ok("CO") && failed("EC")) {
    a.consistent = false;
    a.findings.push_back("INCONSISTENT: GG and CO hold but EC fails");
  }
  if (ok("A5") && failed("TI")) {
    a.consistent = false;
    a.findings.push_back("INCONSISTENT: A5 holds but TI fails");
  }
  if (ok("A1") && ok("A2") && ok("A3") && ok("GG") && ok("CO") && failed("A4")) {
    a.consistent = false;
    a.findings.push_back("INCONSISTENT: A1-A3, GG and CO hold but A4 fails");
  }
  if (failed("A5") && failed("TI"))
    a.notes.push_back("A5 and TI fail jointly");
  if (ok("A6") && ok("EC") && ok("SC"))
    a.notes.push_back("exchange conditions agree");
  return a;
}

inline AxiomReport Checker::check_all() {
  AxiomReport rep;
  for (const auto &id : condition_ids())
    rep.results.push_back(check(id));
  rep.audit = audit(rep.results);
  rep.probes = cfg_;
  rep.metric_scale = m_.metric_scale();
  rep.points = points_.size();
  rep.germs = germs_.size();
  return rep;
}

inline ConditionResult check(const AtlasSpace &space, const std::string &id,
                             ProbeConfig cfg = {}) {
  return Checker(space, cfg).check(id);
}

inline AxiomReport check_all(const AtlasSpace &space, ProbeConfig cfg = {}) {
  return Checker(space, cfg).check_all();
}

inline json to_json(const ConditionResult &r) {
  json out{{"id", r.id}, {"verdict", to_string(r.verdict)}};
  out["inventory"] = r.inventory;
  if (!r.summary.empty())
    out["summary"] = r.summary;
  if (!r.witness.is_null())
    out["witness"] = r.witness;
  if (!r.notices.empty())
    out["notices"] = r.notices;
  return out;
}

inline json to_json(const AxiomReport &rep) {
  json out;
  json cs = json::array();
  for (const auto &r : rep.results)
    cs.push_back(to_json(r));
  out["conditions"] = cs;
  out["audit"] = {{"consistent", rep.audit.consistent},
                  {"findings", rep.audit.findings},
                  {"notes", rep.audit.notes}};
  out["probes"] = {{"budget", rep.probes.budget},
                   {"seed", rep.probes.seed},
                   {"points", rep.points},
                   {"germs", rep.germs}};
  out["metric_scale"] = to_pq_string(rep.metric_scale);
  return out;
}

inline std::string to_text(const AxiomReport &rep) {
  std::string out = "condition  verdict        probes\n";
  for (const auto &r : rep.results) {
    std::string inv;
    for (auto &[k, v] : r.inventory)
      inv += (inv.empty() ? "" : " ") + k + "=" + std::to_string(v);
    std::string id = r.id, verdict = to_string(r.verdict);
    id.resize(std::max<std::size_t>(id.size(), 10), ' ');
    verdict.resize(std::max<std::size_t>(verdict.size(), 14), ' ');
    out += id + " " + verdict + " " + inv + "\n";
    if (r.verdict == Verdict::Fail)
      out += "           witness: " + r.summary + "\n";
  }
  out += rep.audit.consistent ? "audit: consistent\n" : "audit: INCONSISTENT\n";
  for (const auto &f : rep.audit.findings)
    out += "  " + f + "\n";
  for (const auto &n : rep.audit.notes)
    out += "  note: " + n + "\n";
  return out;
}

/// Re-evaluates a FAIL witness through the public operations; true when the
/// violation is reproduced.
inline bool replay(const AtlasSpace &space, const ConditionResult &r) {
  if (r.verdict != Verdict::Fail || r.witness.is_null())
    return false;
  const json &w = r.witness;
  const ModelSpace &m = space.model();
  auto point = [&](const char *key) {
    return io::chart_point_from_json(w.at(key), space, key);
  };
  auto germ = [&](const char *key) { return io::germ_from_json(w.at(key), space, key); };
  auto scalar = [&](const char *key) {
    return io::scalar_from_json(w.at(key), m.lambda_rank(), key);
  };
  auto chart = [&](const json &j) { return space.chart_index(j.get<std::string>()); };
  const std::string &id = r.id;
  if (id == "A1")
    return !m.is_valid_map(io::map_from_json(w.at("map"), m, "map"));
  if (id == "A2") {
    OverlapTable t(space);
    t.row(chart(w.at("from")));
    for (const auto &p : t.problems())
      if (to_string(p.kind) == w.at("kind").get<std::string>() &&
          space.chart_id(p.to) == w.at("to").get<std::string>())
        return true;
    return false;
  }
  if (id == "A3")
    return space.common_apartments(point("x"), point("y")).empty();
  if (id == "A4") {
    auto classes = space.parallelism_classes();
    auto s = germ("S"), t = germ("T");
    auto q1 = classes.of(s.chart, s.simplex.direction);
    auto q2 = classes.of(t.chart, t.simplex.direction);
    std::set<std::size_t> c1, c2;
    for (auto &[c, _] : classes.classes[q1])
      c1.insert(c);
    for (auto &[c, _] : classes.classes[q2])
      c2.insert(c);
    for (auto c : c1)
      if (c2.count(c))
        return false;
    return true;
  }
  if (id == "A5") {
    Retractor ret(space, Retraction{chart(w.at("chart")), germ("center")});
    std::string kind = w.at("kind").get<std::string>();
    if (kind == "ambiguous")
      return !ret.evaluate(point("y")).consistent;
    if (kind == "preimage") {
      auto c = germ("center");
      auto img = ret.retract(point("y"));
      auto b = ret.retract(ChartPoint{c.chart, c.simplex.base});
      return img && b && *img == *b &&
             space.canonical_point(point("y")) !=
                 space.canonical_point(ChartPoint{c.chart, c.simplex.base});
    }
    if (kind == "lipschitz") {
      auto y = point("y"), z = point("z");
      auto d = space.distance(y, z);
      auto ry = ret.retract(y), rz = ret.retract(z);
      return d && ry && rz && m.distance(*ry, *rz) > *d;
    }
    if (kind == "forced_stretch") {
      auto p = point("p"), q = point("q"), y = point("y");
      auto rp = ret.retract(p), rq = ret.retract(q);
      auto dpy = space.distance(p, y), dyq = space.distance(y, q);
      return !ret.retract(y) && rp && rq && dpy && dyq &&
             m.distance(*rp, *rq) > *dpy + *dyq;
    }
    return false;
  }
  if (id == "TI") {
    auto x = point("x"), y = point("y"), z = point("z");
    auto dxz = space.distance(x, z), dxy = space.distance(x, y),
         dyz = space.distance(y, z);
    return dxz && dxy && dyz && *dxz > *dxy + *dyz && *dxy == scalar("d_xy") &&
           *dyz == scalar("d_yz") && *dxz == scalar("d_xz");
  }
  if (id == "GG" || id == "LA") {
    auto a = space.charts_containing(germ("g1"));
    auto b = space.charts_containing(germ("g2"));
    return detail::intersect(a, b).empty();
  }
  if (id == "ALA") {
    auto a = space.charts_containing(point("x"));
    auto b = space.charts_containing(germ("germ"));
    return detail::intersect(a, b).empty();
  }
  if (id == "FC") {
    ChartPoint s{chart(w.at("chart")), io::point_from_json(w.at("sample"), m, "sample")};
    return m.contains(m.segment(*space.coords_in(point("x"), s.chart),
                                *space.coords_in(point("y"), s.chart)),
                      s.coords) &&
           space.common_apartments(point("z"), s).empty();
  }
  // Conditions decided over chart pairs and triples: rerun the check.
  Checker c(space);
  auto again = c.check(id);
  return again.verdict == Verdict::Fail && again.witness == w;
}

} // namespace lbl
