#pragma once

#include "lbl/atlas.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lbl {

/// Retraction onto chart `chart` centered at the chamber germ `center`.
struct Retraction {
  std::size_t chart = 0;
  XGerm center;
};

struct RetractionValue {
  /// Image in the target chart, if some chart contains both y and the center.
  std::optional<ModelPoint> value;
  /// Every intermediate chart used, with the image computed through it.
  std::vector<std::pair<std::size_t, ModelPoint>> via;
  bool consistent = true;
};

struct LipschitzViolation {
  ChartPoint y, z;
  LambdaScalar distance, image_distance;
};

struct LipschitzReport {
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::vector<LipschitzViolation> violations;
  std::vector<std::string> notices;
  bool ok() const { return violations.empty(); }
};

/// Evaluates a retraction; precomputes the charts containing the center.
class Retractor {
public:
  Retractor(const AtlasSpace &space, Retraction r) : space_(space), r_(r) {
    if (r.center.simplex.face != space.model().full_face())
      throw Error("retraction center must be a chamber germ");
    auto orbit = space.germ_orbit(r.center);
    // Maps from target-chart coordinates to each chart containing the center.
    std::optional<AffineMap> to_target;
    for (auto &rep : orbit)
      if (rep.germ.chart == r.chart) {
        to_target = rep.map;
        break;
      }
    if (!to_target)
      throw Error("retraction center is not contained in chart '" +
                  space.chart_id(r.chart) + "'");
    const ModelSpace &m = space.model();
    AffineMap back = m.inverse(*to_target);
    for (auto &rep : orbit)
      if (!maps_.count(rep.germ.chart))
        maps_.emplace(rep.germ.chart, m.compose(rep.map, back));
  }

  const Retraction &retraction() const { return r_; }

  /// Charts containing the center, with the map from target coordinates.
  const std::map<std::size_t, AffineMap> &charts() const { return maps_; }

  RetractionValue evaluate(const ChartPoint &y) const {
    RetractionValue out;
    const ModelSpace &m = space_.model();
    for (auto &[chart, coords] : space_.coordinates(y)) {
      auto it = maps_.find(chart);
      if (it == maps_.end())
        continue;
      ModelPoint img = m.apply(m.inverse(it->second), coords.front());
      if (!out.via.empty() && img != out.via.front().second)
        out.consistent = false;
      out.via.emplace_back(chart, img);
    }
    if (!out.via.empty())
      out.value = out.via.front().second;
    return out;
  }

  /// Throws when the intermediate charts disagree.
  std::optional<ModelPoint> retract(const ChartPoint &y) const {
    auto v = evaluate(y);
    if (!v.consistent)
      throw Error("retraction of " + space_.describe(y) +
                  " depends on the intermediate chart");
    return v.value;
  }

  LipschitzReport
  verify_lipschitz(const std::vector<std::pair<ChartPoint, ChartPoint>> &pairs) const {
    LipschitzReport rep;
    for (auto &[y, z] : pairs) {
      auto d = space_.distance(y, z);
      if (!d) {
        ++rep.skipped;
        rep.notices.push_back("no common apartment for " + space_.describe(y) +
                              " and " + space_.describe(z));
        continue;
      }
      auto ry = retract(y), rz = retract(z);
      if (!ry || !rz) {
        ++rep.skipped;
        rep.notices.push_back("retraction undefined at " +
                              space_.describe(ry ? z : y));
        continue;
      }
      ++rep.checked;
      LambdaScalar di = space_.model().distance(*ry, *rz);
      if (di > *d)
        rep.violations.push_back({y, z, *d, di});
    }
    return rep;
  }

private:
  const AtlasSpace &space_;
  Retraction r_;
  std::map<std::size_t, AffineMap> maps_;
};

inline std::optional<ModelPoint> retract(const AtlasSpace &space,
                                         const Retraction &r,
                                         const ChartPoint &y) {
  return Retractor(space, r).retract(y);
}

inline LipschitzReport
verify_lipschitz(const AtlasSpace &space, const Retraction &r,
                 const std::vector<std::pair<ChartPoint, ChartPoint>> &pairs) {
  return Retractor(space, r).verify_lipschitz(pairs);
}

} // namespace lbl
