#pragma once

#include "lbl/atlas.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lbl {

/// Part of f^-1(g(A)) reached along one chain of gluings.
struct OverlapPiece {
  WeylPolyhedron region; // in from-coordinates
  AffineMap map;         // from-coordinates to to-coordinates
  std::vector<std::size_t> path;
};

struct Overlap {
  std::size_t from = 0;
  std::size_t to = 0;
  std::vector<OverlapPiece> pieces;
  /// Indices into `pieces` not contained in another piece.
  std::vector<std::size_t> maximal;

  bool convex() const { return maximal.size() == 1; }
  const OverlapPiece &region_piece() const { return pieces.at(maximal.at(0)); }
};

struct OverlapProblem {
  enum class Kind { MapsDisagree, NotInjective, NotConvex, TooManyPaths };
  Kind kind;
  std::size_t from = 0;
  std::size_t to = 0;
  WeylPolyhedron region;
  std::string detail;
};

inline const char *to_string(OverlapProblem::Kind k) {
  switch (k) {
  case OverlapProblem::Kind::MapsDisagree:
    return "maps_disagree";
  case OverlapProblem::Kind::NotInjective:
    return "not_injective";
  case OverlapProblem::Kind::NotConvex:
    return "not_convex";
  case OverlapProblem::Kind::TooManyPaths:
    return "too_many_paths";
  }
  return "unknown";
}

/// Exact overlaps between charts, computed from chains of gluings without
/// repeated charts. Rows are filled lazily per source chart.
class OverlapTable {
public:
  explicit OverlapTable(const AtlasSpace &space, std::size_t path_cap = 200000)
      : space_(space), cap_(path_cap), rows_(space.chart_count()),
        done_(space.chart_count(), false) {}

  const std::map<std::size_t, Overlap> &row(std::size_t f) {
    if (!done_.at(f))
      compute(f);
    return rows_[f];
  }

  const Overlap *get(std::size_t f, std::size_t g) {
    const auto &r = row(f);
    auto it = r.find(g);
    return it == r.end() ? nullptr : &it->second;
  }

  /// Problems found so far (complete after every row was requested).
  const std::vector<OverlapProblem> &problems() const { return problems_; }

  void compute_all() {
    for (std::size_t f = 0; f < space_.chart_count(); ++f)
      row(f);
  }

private:
  struct Frame {
    std::size_t chart;
    WeylPolyhedron region;
    AffineMap map;
    std::vector<std::size_t> path;
  };

  void compute(std::size_t f) {
    done_[f] = true;
    const ModelSpace &m = space_.model();
    std::vector<OverlapPiece> self;
    std::vector<bool> on_path(space_.chart_count(), false);
    std::size_t count = 0;
    bool overflow = false;

    // Iterative DFS keeps deep chains off the call stack.
    struct Item {
      Frame frame;
      std::size_t next = 0;
    };
    std::vector<Item> stack;
    stack.push_back({Frame{f, WeylPolyhedron{}, m.identity_map(), {}}, 0});
    on_path[f] = true;
    while (!stack.empty()) {
      Item &top = stack.back();
      const auto &outs = space_.gluings_from(top.frame.chart);
      if (top.next >= outs.size() || overflow) {
        if (stack.size() > 1)
          on_path[top.frame.chart] = false;
        stack.pop_back();
        continue;
      }
      std::size_t gi = outs[top.next++];
      const Gluing &e = space_.gluings()[gi];
      if (e.to != f && on_path[e.to])
        continue;
      WeylPolyhedron region = m.merge_bounds(
          top.frame.region.intersect(m.pullback(e.region, top.frame.map)));
      if (m.is_empty(region))
        continue;
      AffineMap map = m.compose(e.map, top.frame.map);
      std::vector<std::size_t> path = top.frame.path;
      path.push_back(gi);
      if (++count > cap_) {
        overflow = true;
        problems_.push_back({OverlapProblem::Kind::TooManyPaths, f, f, {},
                             "more than " + std::to_string(cap_) +
                                 " gluing chains from '" + space_.chart_id(f) +
                                 "'"});
        continue;
      }
      if (e.to == f) {
        self.push_back({std::move(region), std::move(map), std::move(path)});
        continue;
      }
      auto &ov = rows_[f][e.to];
      ov.from = f;
      ov.to = e.to;
      ov.pieces.push_back({region, map, path});
      on_path[e.to] = true;
      stack.push_back({Frame{e.to, std::move(region), std::move(map),
                             std::move(path)},
                       0});
    }

    for (auto &piece : self)
      if (!m.maps_agree_on(piece.region, piece.map, m.identity_map()))
        problems_.push_back({OverlapProblem::Kind::NotInjective, f, f,
                             piece.region,
                             "a chain of gluings returns to '" +
                                 space_.chart_id(f) +
                                 "' with a map that is not the identity"});

    for (auto &[g, ov] : rows_[f])
      reduce(ov);
  }

  void reduce(Overlap &ov) {
    const ModelSpace &m = space_.model();
    auto &ps = ov.pieces;
    std::vector<bool> dominated(ps.size(), false);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (dominated[i])
        continue;
      for (std::size_t j = 0; j < ps.size(); ++j) {
        if (i == j || dominated[j])
          continue;
        if (m.subset(ps[i].region, ps[j].region)) {
          dominated[i] = true;
          break;
        }
      }
    }
    for (std::size_t i = 0; i < ps.size(); ++i)
      if (!dominated[i])
        ov.maximal.push_back(i);
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (auto j : ov.maximal) {
        if (i == j)
          continue;
        WeylPolyhedron both = ps[i].region.intersect(ps[j].region);
        if (!m.maps_agree_on(both, ps[i].map, ps[j].map)) {
          problems_.push_back({OverlapProblem::Kind::MapsDisagree, ov.from, ov.to,
                               both,
                               "two gluing chains from '" +
                                   space_.chart_id(ov.from) + "' to '" +
                                   space_.chart_id(ov.to) +
                                   "' identify points differently"});
          break;
        }
      }
    if (ov.maximal.size() > 1)
      problems_.push_back({OverlapProblem::Kind::NotConvex, ov.from, ov.to,
                           ps[ov.maximal[0]].region,
                           "overlap of '" + space_.chart_id(ov.from) + "' and '" +
                               space_.chart_id(ov.to) + "' has " +
                               std::to_string(ov.maximal.size()) +
                               " maximal pieces"});
  }

  const AtlasSpace &space_;
  std::size_t cap_;
  std::vector<std::map<std::size_t, Overlap>> rows_;
  std::vector<bool> done_;
  std::vector<OverlapProblem> problems_;
};

} // namespace lbl
