#pragma once

#include "lbl/model.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace lbl {

/// Identification of `region` (in from-coordinates) with its image under
/// `map` in to-coordinates.
struct Gluing {
  std::size_t from = 0;
  std::size_t to = 0;
  WeylPolyhedron region;
  AffineMap map;
  /// Added automatically as the inverse of a declared gluing.
  bool derived = false;
};

/// A point given in the coordinates of one chart.
struct ChartPoint {
  std::size_t chart = 0;
  ModelPoint coords;
  friend bool operator==(const ChartPoint &, const ChartPoint &) = default;
  friend auto operator<=>(const ChartPoint &a, const ChartPoint &b) {
    if (auto c = a.chart <=> b.chart; c != 0)
      return c;
    return a.coords <=> b.coords;
  }
};

/// Canonical representative of a point of X: the least equivalent chart point.
using XPoint = ChartPoint;

/// A Weyl simplex in one chart; as a germ only an initial piece matters.
struct XGerm {
  std::size_t chart = 0;
  WeylSimplex simplex;
  friend bool operator==(const XGerm &, const XGerm &) = default;
  friend auto operator<=>(const XGerm &a, const XGerm &b) {
    if (auto c = a.chart <=> b.chart; c != 0)
      return c;
    return a.simplex <=> b.simplex;
  }
};

/// A germ found by transport, with the map from the seed chart's coordinates.
struct GermRep {
  XGerm germ;
  AffineMap map;
};

class OrbitOverflow : public Error {
public:
  using Error::Error;
};

struct ResidueComplex {
  XPoint base;
  /// Canonical chamber germs at the base.
  std::vector<XGerm> chambers;
  /// Charts through the base, and for each the chamber indices it contains,
  /// listed by Weyl element index.
  std::vector<std::size_t> apartment_charts;
  std::vector<std::vector<std::size_t>> apartments;
  /// Weyl distance where both chambers share an apartment.
  std::vector<std::vector<std::optional<std::size_t>>> delta;
  /// Pairs i < j at Weyl distance a simple reflection.
  std::vector<std::pair<std::size_t, std::size_t>> adjacent;
  /// Pairs whose Weyl distance differs between two apartments.
  std::vector<std::pair<std::size_t, std::size_t>> conflicts;

  bool co_apartment(std::size_t i, std::size_t j) const {
    return delta[i][j].has_value();
  }
};

/// Vertices (chart, direction) of the chamber parallelism graph, grouped into
/// classes.
struct ParallelismClasses {
  std::size_t weyl_order = 0;
  std::vector<std::size_t> class_of;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> classes;

  std::size_t of(std::size_t chart, std::size_t w) const {
    return class_of[chart * weyl_order + w];
  }
  std::size_t size() const { return classes.size(); }
};

/// A space modeled on the model space, given by finitely many charts and
/// gluings. Charts are identified by index in declaration order.
class AtlasSpace {
public:
  explicit AtlasSpace(ModelSpace model) : model_(std::move(model)) {}

  const ModelSpace &model() const { return model_; }
  const RootSystem &roots() const { return model_.roots(); }

  AtlasSpace with_metric_scale(Rational s) const {
    AtlasSpace out = *this;
    out.model_ = model_.with_scale(std::move(s));
    return out;
  }

  std::size_t add_chart(const std::string &id) {
    if (id.empty())
      throw Error("chart id must be nonempty");
    if (find_chart(id))
      throw Error("duplicate chart id '" + id + "'");
    charts_.push_back(id);
    out_.emplace_back();
    return charts_.size() - 1;
  }

  std::size_t chart_count() const { return charts_.size(); }
  const std::vector<std::string> &charts() const { return charts_; }
  const std::string &chart_id(std::size_t i) const { return charts_.at(i); }

  std::optional<std::size_t> find_chart(const std::string &id) const {
    for (std::size_t i = 0; i < charts_.size(); ++i)
      if (charts_[i] == id)
        return i;
    return std::nullopt;
  }
  std::size_t chart_index(const std::string &id) const {
    if (auto i = find_chart(id))
      return *i;
    throw Error("unknown chart '" + id + "'");
  }

  /// Declares a gluing and its inverse. A gluing equal to an existing one is
  /// ignored.
  void glue(std::size_t from, std::size_t to, WeylPolyhedron region,
            AffineMap map) {
    if (from >= charts_.size() || to >= charts_.size())
      throw Error("gluing refers to an unknown chart");
    model_.check(region);
    model_.check(map.translation);
    if (map.weyl >= roots().weyl_order())
      throw Error("gluing map has Weyl index " + std::to_string(map.weyl) +
                  " but the group has order " +
                  std::to_string(roots().weyl_order()));
    if (model_.is_empty(region))
      throw Error("gluing region between '" + charts_[from] + "' and '" +
                  charts_[to] + "' is empty");
    if (has_gluing(from, to, region, map))
      return;
    WeylPolyhedron back = model_.image(region, map);
    AffineMap inv = model_.inverse(map);
    add(Gluing{from, to, std::move(region), std::move(map), false});
    if (!has_gluing(to, from, back, inv))
      add(Gluing{to, from, std::move(back), std::move(inv), true});
  }

  const std::vector<Gluing> &gluings() const { return gluings_; }
  const std::vector<std::size_t> &gluings_from(std::size_t chart) const {
    return out_.at(chart);
  }

  void add_marked_point(ChartPoint p) {
    check(p);
    marked_points_.push_back(std::move(p));
  }
  void add_marked_germ(XGerm g) {
    check(ChartPoint{g.chart, g.simplex.base});
    if (g.simplex.direction >= roots().weyl_order())
      throw Error("marked germ has an invalid Weyl index");
    marked_germs_.push_back(std::move(g));
  }
  const std::vector<ChartPoint> &marked_points() const { return marked_points_; }
  const std::vector<XGerm> &marked_germs() const { return marked_germs_; }

  std::vector<LambdaScalar> lambda_seq;
  /// Index into lambda_seq of the radius the space is admissible for.
  std::size_t lambda_level = 0;
  /// Free-form record of how the space was produced.
  std::vector<std::string> provenance;

  void check(const ChartPoint &p) const {
    if (p.chart >= charts_.size())
      throw Error("point refers to an unknown chart");
    model_.check(p.coords);
  }

  std::string describe(const ChartPoint &p) const {
    return charts_.at(p.chart) + ":" + p.coords.to_string();
  }

  // --- points ---------------------------------------------------------------

  /// All chart representatives of p under the gluing closure, in BFS order.
  std::vector<ChartPoint> representatives(const ChartPoint &p,
                                          std::size_t cap = 10000) const {
    check(p);
    std::vector<ChartPoint> seen{p};
    std::set<ChartPoint> index{p};
    for (std::size_t i = 0; i < seen.size(); ++i) {
      for (auto gi : out_[seen[i].chart]) {
        const Gluing &g = gluings_[gi];
        if (!model_.contains(g.region, seen[i].coords))
          continue;
        ChartPoint next{g.to, model_.apply(g.map, seen[i].coords)};
        if (index.insert(next).second) {
          seen.push_back(next);
          if (seen.size() > cap) {
            std::string chain;
            for (std::size_t k = 0; k < 6 && k < seen.size(); ++k)
              chain += (k ? " -> " : "") + describe(seen[k]);
            throw OrbitOverflow("point orbit exceeds " + std::to_string(cap) +
                                " representatives: " + chain + " ...");
          }
        }
      }
    }
    return seen;
  }

  XPoint canonical_point(const ChartPoint &p) const {
    auto reps = representatives(p);
    return *std::min_element(reps.begin(), reps.end());
  }

  /// Coordinates of p in each chart containing it.
  std::map<std::size_t, std::vector<ModelPoint>>
  coordinates(const ChartPoint &p) const {
    std::map<std::size_t, std::vector<ModelPoint>> out;
    for (auto &r : representatives(p))
      out[r.chart].push_back(r.coords);
    return out;
  }

  std::optional<ModelPoint> coords_in(const ChartPoint &p,
                                      std::size_t chart) const {
    for (auto &r : representatives(p))
      if (r.chart == chart)
        return r.coords;
    return std::nullopt;
  }

  std::vector<std::size_t> charts_containing(const ChartPoint &p) const {
    std::vector<std::size_t> out;
    for (auto &[c, _] : coordinates(p))
      out.push_back(c);
    return out;
  }

  std::vector<std::size_t> common_apartments(const ChartPoint &x,
                                             const ChartPoint &y) const {
    auto cx = charts_containing(x);
    auto cy = charts_containing(y);
    std::vector<std::size_t> out;
    std::set_intersection(cx.begin(), cx.end(), cy.begin(), cy.end(),
                          std::back_inserter(out));
    return out;
  }

  std::vector<std::pair<std::size_t, LambdaScalar>>
  distances_by_chart(const ChartPoint &x, const ChartPoint &y) const {
    auto cx = coordinates(x);
    auto cy = coordinates(y);
    std::vector<std::pair<std::size_t, LambdaScalar>> out;
    for (auto &[c, xs] : cx) {
      auto it = cy.find(c);
      if (it == cy.end())
        continue;
      out.emplace_back(c, model_.distance(xs.front(), it->second.front()));
    }
    return out;
  }

  /// Distance through any common chart; nullopt without one. Throws when two
  /// charts disagree.
  std::optional<LambdaScalar> distance(const ChartPoint &x,
                                       const ChartPoint &y) const {
    auto ds = distances_by_chart(x, y);
    if (ds.empty())
      return std::nullopt;
    for (auto &[c, d] : ds)
      if (d != ds.front().second)
        throw Error("distance depends on the chart: " + ds.front().second.to_string() +
                    " in '" + charts_[ds.front().first] + "', " + d.to_string() +
                    " in '" + charts_[c] + "'");
    return ds.front().second;
  }

  // --- germs ----------------------------------------------------------------

  /// Every chart simplex with the same germ as g reachable through gluings
  /// whose region contains an initial piece of it.
  std::vector<GermRep> germ_orbit(const XGerm &g) const {
    check(ChartPoint{g.chart, g.simplex.base});
    XGerm start{g.chart, model_.canonical(g.simplex)};
    std::vector<GermRep> seen{{start, model_.identity_map()}};
    std::set<XGerm> index{start};
    for (std::size_t i = 0; i < seen.size() && seen.size() <= 10000; ++i) {
      const XGerm cur = seen[i].germ;
      for (auto gi : out_[cur.chart]) {
        const Gluing &e = gluings_[gi];
        if (!model_.contains(e.region, cur.simplex.base) ||
            !model_.germ_inside(e.region, cur.simplex))
          continue;
        WeylSimplex s{model_.apply(e.map, cur.simplex.base),
                      roots().multiply(e.map.weyl, cur.simplex.direction),
                      cur.simplex.face};
        XGerm next{e.to, model_.canonical(s)};
        if (index.insert(next).second)
          seen.push_back({next, model_.compose(e.map, seen[i].map)});
      }
    }
    return seen;
  }

  XGerm canonical_germ(const XGerm &g) const {
    auto orbit = germ_orbit(g);
    XGerm best = orbit.front().germ;
    for (auto &r : orbit)
      best = std::min(best, r.germ);
    return best;
  }

  bool germ_equal(const XGerm &a, const XGerm &b) const {
    if (a.simplex.face != b.simplex.face)
      return false;
    XGerm target{b.chart, model_.canonical(b.simplex)};
    for (auto &r : germ_orbit(a))
      if (r.germ == target)
        return true;
    return false;
  }

  std::vector<std::size_t> charts_containing(const XGerm &g) const {
    std::set<std::size_t> cs;
    for (auto &r : germ_orbit(g))
      cs.insert(r.germ.chart);
    return {cs.begin(), cs.end()};
  }

  /// Charts containing the whole simplex, found by hops whose region contains
  /// it entirely.
  std::vector<std::pair<std::size_t, WeylSimplex>>
  simplex_closure(const XGerm &g) const {
    std::vector<std::pair<std::size_t, WeylSimplex>> seen{
        {g.chart, model_.canonical(g.simplex)}};
    std::set<std::pair<std::size_t, WeylSimplex>> index{seen.front()};
    for (std::size_t i = 0; i < seen.size() && seen.size() <= 10000; ++i) {
      auto [chart, s] = seen[i];
      auto poly = model_.simplex_polyhedron(s);
      for (auto gi : out_[chart]) {
        const Gluing &e = gluings_[gi];
        if (!model_.subset(poly, e.region))
          continue;
        WeylSimplex t{model_.apply(e.map, s.base),
                      roots().multiply(e.map.weyl, s.direction), s.face};
        std::pair<std::size_t, WeylSimplex> next{e.to, model_.canonical(t)};
        if (index.insert(next).second)
          seen.push_back(next);
      }
    }
    return seen;
  }

  // --- parallelism ----------------------------------------------------------

  /// Two chart directions are joined when a gluing region contains a
  /// translate of the corresponding cone.
  ParallelismClasses parallelism_classes() const {
    const std::size_t order = roots().weyl_order();
    const std::size_t n = charts_.size() * order;
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
      while (parent[a] != a)
        a = parent[a] = parent[parent[a]];
      return a;
    };
    for (const auto &g : gluings_) {
      if (g.derived)
        continue;
      for (std::size_t w = 0; w < order; ++w) {
        if (!model_.recession_contains(g.region, w, model_.full_face()))
          continue;
        std::size_t a = find(g.from * order + w);
        std::size_t b = find(g.to * order + roots().multiply(g.map.weyl, w));
        if (a != b)
          parent[std::max(a, b)] = std::min(a, b);
      }
    }
    ParallelismClasses out;
    out.weyl_order = order;
    out.class_of.assign(n, 0);
    std::map<std::size_t, std::size_t> ids;
    for (std::size_t v = 0; v < n; ++v) {
      std::size_t root = find(v);
      auto [it, fresh] = ids.emplace(root, out.classes.size());
      if (fresh)
        out.classes.emplace_back();
      out.class_of[v] = it->second;
      out.classes[it->second].emplace_back(v / order, v % order);
    }
    return out;
  }

  // --- residue --------------------------------------------------------------

  ResidueComplex residue(const ChartPoint &x) const {
    ResidueComplex res;
    res.base = canonical_point(x);
    const std::size_t order = roots().weyl_order();
    std::map<XGerm, std::size_t> ids;
    std::set<std::size_t> used_charts;
    for (auto &rep : representatives(x)) {
      if (!used_charts.insert(rep.chart).second)
        continue;
      std::vector<std::size_t> apt;
      for (std::size_t w = 0; w < order; ++w) {
        XGerm key = canonical_germ(XGerm{rep.chart, model_.chamber(rep.coords, w)});
        auto [it, fresh] = ids.emplace(key, res.chambers.size());
        if (fresh)
          res.chambers.push_back(key);
        apt.push_back(it->second);
      }
      res.apartment_charts.push_back(rep.chart);
      res.apartments.push_back(std::move(apt));
    }
    const std::size_t m = res.chambers.size();
    res.delta.assign(m, std::vector<std::optional<std::size_t>>(m));
    std::set<std::pair<std::size_t, std::size_t>> conflicts;
    for (const auto &apt : res.apartments)
      for (std::size_t w1 = 0; w1 < order; ++w1)
        for (std::size_t w2 = 0; w2 < order; ++w2) {
          std::size_t d = roots().multiply(roots().inverse(w1), w2);
          auto &slot = res.delta[apt[w1]][apt[w2]];
          if (slot && *slot != d)
            conflicts.emplace(std::min(apt[w1], apt[w2]), std::max(apt[w1], apt[w2]));
          else
            slot = d;
        }
    res.conflicts.assign(conflicts.begin(), conflicts.end());
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (res.delta[i][j] && roots().length(*res.delta[i][j]) == 1)
          res.adjacent.emplace_back(i, j);
    return res;
  }

private:
  bool has_gluing(std::size_t from, std::size_t to, const WeylPolyhedron &region,
                  const AffineMap &map) const {
    for (auto gi : out_[from]) {
      const Gluing &g = gluings_[gi];
      if (g.to == to && g.map == map && model_.equal_sets(g.region, region))
        return true;
    }
    return false;
  }

  void add(Gluing g) {
    out_[g.from].push_back(gluings_.size());
    gluings_.push_back(std::move(g));
  }

  ModelSpace model_;
  std::vector<std::string> charts_;
  std::vector<Gluing> gluings_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<ChartPoint> marked_points_;
  std::vector<XGerm> marked_germs_;
};

} // namespace lbl
