#pragma once

#include "lbl/linear.hpp"
#include "lbl/roots.hpp"
#include "lbl/scalars.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace lbl {

/// A point of the model space, stored by its simple root evaluations
/// (coordinates with respect to the fundamental coweights).
struct ModelPoint {
  std::vector<LambdaScalar> coords;

  std::size_t rank() const { return coords.size(); }
  const LambdaScalar &operator[](std::size_t i) const { return coords[i]; }

  ModelPoint &operator+=(const ModelPoint &o) {
    for (std::size_t i = 0; i < coords.size(); ++i)
      coords[i] += o.coords[i];
    return *this;
  }
  ModelPoint &operator-=(const ModelPoint &o) {
    for (std::size_t i = 0; i < coords.size(); ++i)
      coords[i] -= o.coords[i];
    return *this;
  }
  friend ModelPoint operator+(ModelPoint a, const ModelPoint &b) { return a += b; }
  friend ModelPoint operator-(ModelPoint a, const ModelPoint &b) { return a -= b; }
  friend ModelPoint operator-(ModelPoint a) {
    for (auto &c : a.coords)
      c = -c;
    return a;
  }
  friend ModelPoint operator*(const Rational &q, ModelPoint a) {
    for (auto &c : a.coords)
      c *= q;
    return a;
  }
  friend bool operator==(const ModelPoint &, const ModelPoint &) = default;
  friend auto operator<=>(const ModelPoint &a, const ModelPoint &b) {
    return a.coords <=> b.coords;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i)
      s += (i ? ", " : "") + coords[i].to_string();
    return s + ")";
  }
};

enum class Relation { Ge, Le, Eq };

inline Relation flip(Relation r) {
  return r == Relation::Ge ? Relation::Le
         : r == Relation::Le ? Relation::Ge
                             : Relation::Eq;
}

inline const char *to_string(Relation r) {
  return r == Relation::Ge ? ">=" : r == Relation::Le ? "<=" : "=";
}

/// root(x) rel bound, with root a positive root.
struct RootConstraint {
  RootVec root;
  Relation rel = Relation::Ge;
  LambdaScalar bound;
  friend bool operator==(const RootConstraint &, const RootConstraint &) = default;
};

/// A closed intersection of root half-spaces and walls.
struct WeylPolyhedron {
  std::vector<RootConstraint> constraints;

  WeylPolyhedron intersect(const WeylPolyhedron &o) const {
    WeylPolyhedron p = *this;
    p.constraints.insert(p.constraints.end(), o.constraints.begin(),
                         o.constraints.end());
    return p;
  }
  friend bool operator==(const WeylPolyhedron &, const WeylPolyhedron &) = default;
};

/// x -> w.x + t, an element of the affine Weyl group.
struct AffineMap {
  std::size_t weyl = 0;
  ModelPoint translation;
  friend bool operator==(const AffineMap &, const AffineMap &) = default;
};

/// base + w.(face of the fundamental chamber). `face` is a bitmask over simple
/// root indices: all bits set for a chamber, none for the base point alone.
struct WeylSimplex {
  ModelPoint base;
  std::size_t direction = 0;
  std::uint32_t face = 0;
  friend bool operator==(const WeylSimplex &, const WeylSimplex &) = default;
  friend auto operator<=>(const WeylSimplex &a, const WeylSimplex &b) {
    if (auto c = a.base <=> b.base; c != 0)
      return c;
    if (auto c = a.direction <=> b.direction; c != 0)
      return c;
    return a.face <=> b.face;
  }
};

enum class TranslationGroup { Full, CorootLattice };

/// The model space A(Phi, Lambda) with Lambda = Q^k.
///
/// Cheap to copy; the root system is shared. The metric is
/// scale * sum over positive roots of |alpha(y - x)|.
class ModelSpace {
public:
  ModelSpace(std::shared_ptr<const RootSystem> roots, std::size_t lambda_rank,
             Rational metric_scale = 1,
             TranslationGroup translations = TranslationGroup::Full)
      : roots_(std::move(roots)), lambda_rank_(lambda_rank),
        scale_(std::move(metric_scale)), translations_(translations) {
    if (!roots_)
      throw Error("model space needs a root system");
    if (lambda_rank_ == 0)
      throw Error("lambda rank must be positive");
    if (scale_ <= 0)
      throw Error("metric scale must be positive");
  }

  const RootSystem &roots() const { return *roots_; }
  std::shared_ptr<const RootSystem> roots_ptr() const { return roots_; }
  std::size_t rank() const { return roots_->rank(); }
  std::size_t lambda_rank() const { return lambda_rank_; }
  const Rational &metric_scale() const { return scale_; }
  TranslationGroup translations() const { return translations_; }
  std::uint32_t full_face() const {
    return rank() >= 32 ? ~0u : ((1u << rank()) - 1u);
  }

  ModelSpace with_scale(Rational s) const {
    return ModelSpace(roots_, lambda_rank_, std::move(s), translations_);
  }

  LambdaScalar zero() const { return LambdaScalar::zero(lambda_rank_); }
  LambdaScalar scalar(long n) const {
    return LambdaScalar::from_int(n, lambda_rank_);
  }
  ModelPoint origin() const {
    return ModelPoint{std::vector<LambdaScalar>(rank(), zero())};
  }
  /// Integer coordinates embedded in the leading lambda coordinate.
  ModelPoint point(const std::vector<long> &coords) const {
    if (coords.size() != rank())
      throw Error("point has wrong dimension");
    ModelPoint p;
    for (long c : coords)
      p.coords.push_back(scalar(c));
    return p;
  }
  /// Fundamental coweight i scaled by the lambda element s.
  ModelPoint coweight(std::size_t i, const LambdaScalar &s) const {
    ModelPoint p = origin();
    p.coords.at(i) = s;
    return p;
  }

  void check(const ModelPoint &x) const {
    if (x.rank() != rank())
      throw Error("point has dimension " + std::to_string(x.rank()) +
                  ", model space has rank " + std::to_string(rank()));
    for (const auto &c : x.coords)
      if (c.rank() != lambda_rank_)
        throw RankMismatch(c.rank(), lambda_rank_);
  }

  void check(const WeylPolyhedron &p) const {
    for (const auto &c : p.constraints) {
      auto r = roots_->find_root(c.root);
      if (!r || r->sign < 0)
        throw Error("polyhedron constraint is not on a positive root");
      if (c.bound.rank() != lambda_rank_)
        throw RankMismatch(c.bound.rank(), lambda_rank_);
    }
  }

  // --- evaluation and metric -------------------------------------------------

  LambdaScalar eval_root(const RootVec &a, const ModelPoint &x) const {
    LambdaScalar s = zero();
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != 0)
        s += Rational(a[i]) * x.coords[i];
    return s;
  }

  LambdaScalar distance(const ModelPoint &x, const ModelPoint &y) const {
    ModelPoint d = y - x;
    LambdaScalar s = zero();
    for (const auto &a : roots_->positive_roots())
      s += abs(eval_root(a, d));
    return scale_ * s;
  }

  LambdaScalar norm(const ModelPoint &x) const { return distance(origin(), x); }

  // --- the affine Weyl group ------------------------------------------------

  ModelPoint act(std::size_t w, const ModelPoint &x) const {
    const IntMatrix &m = roots_->point_matrix(w);
    ModelPoint out = origin();
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j)
        if (m[i][j] != 0)
          out.coords[i] += Rational(m[i][j]) * x.coords[j];
    return out;
  }

  ModelPoint apply(const AffineMap &m, const ModelPoint &x) const {
    return act(m.weyl, x) + m.translation;
  }

  AffineMap identity_map() const { return AffineMap{0, origin()}; }
  AffineMap translation(const ModelPoint &t) const { return AffineMap{0, t}; }

  /// a after b.
  AffineMap compose(const AffineMap &a, const AffineMap &b) const {
    return AffineMap{roots_->multiply(a.weyl, b.weyl),
                     act(a.weyl, b.translation) + a.translation};
  }

  AffineMap inverse(const AffineMap &m) const {
    std::size_t inv = roots_->inverse(m.weyl);
    return AffineMap{inv, -act(inv, m.translation)};
  }

  bool in_translation_group(const ModelPoint &t) const {
    if (translations_ == TranslationGroup::Full)
      return true;
    // t = sum_i coroot_i * l_i with integral l_i: solve C^T l = t.
    const std::size_t n = rank();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        a[j][i] = roots_->cartan()[i][j];
    auto l = solve_square(a, t.coords);
    if (!l)
      return false;
    for (const auto &s : *l)
      for (const auto &c : s.coords())
        if (c.get_den() != 1)
          return false;
    return true;
  }

  bool is_valid_map(const AffineMap &m) const {
    return m.weyl < roots_->weyl_order() && m.translation.rank() == rank() &&
           in_translation_group(m.translation);
  }

  /// Reflection in the hyperplane of positive root k through the origin.
  ModelPoint reflect(std::size_t k, const ModelPoint &x) const {
    LambdaScalar v = eval_root(roots_->positive_roots().at(k), x);
    ModelPoint out = x;
    const RootVec &cr = roots_->coroot_point(k);
    for (std::size_t j = 0; j < rank(); ++j)
      if (cr[j] != 0)
        out.coords[j] -= Rational(cr[j]) * v;
    return out;
  }

  ModelPoint reflect(const RootVec &root, const ModelPoint &x) const {
    auto r = roots_->find_root(root);
    if (!r)
      throw Error("not a root");
    return reflect(r->index, x);
  }

  /// Coordinates of w^-1 x: the i-th entry is alpha_i evaluated after undoing w.
  ModelPoint cone_coords(std::size_t w, const ModelPoint &x) const {
    return act(roots_->inverse(w), x);
  }

  /// alpha(w . omega_i) for the i-th fundamental coweight.
  long generator_value(const RootVec &a, std::size_t w, std::size_t i) const {
    const IntMatrix &m = roots_->point_matrix(w);
    long s = 0;
    for (std::size_t j = 0; j < rank(); ++j)
      s += a[j] * m[j][i];
    return s;
  }

  // --- polyhedra ------------------------------------------------------------

  bool contains(const WeylPolyhedron &p, const ModelPoint &x) const {
    for (const auto &c : p.constraints) {
      int s = eval_root(c.root, x).compare(c.bound);
      if ((c.rel == Relation::Ge && s < 0) || (c.rel == Relation::Le && s > 0) ||
          (c.rel == Relation::Eq && s != 0))
        return false;
    }
    return true;
  }

  std::optional<ModelPoint> find_point(const WeylPolyhedron &p) const {
    if (auto quick = quick_empty(p); quick)
      return std::nullopt;
    auto sol = linear::solve(to_linear(p), rank(), lambda_rank_);
    if (!sol)
      return std::nullopt;
    return ModelPoint{std::move(*sol)};
  }

  bool is_empty(const WeylPolyhedron &p) const { return !find_point(p); }

  bool implies(const WeylPolyhedron &p, const RootConstraint &c) const {
    return linear::implies(to_linear(p), to_linear(c), rank(), lambda_rank_);
  }

  bool subset(const WeylPolyhedron &p, const WeylPolyhedron &q) const {
    if (is_empty(p))
      return true;
    for (const auto &c : q.constraints)
      if (!implies(p, c))
        return false;
    return true;
  }

  bool equal_sets(const WeylPolyhedron &p, const WeylPolyhedron &q) const {
    return subset(p, q) && subset(q, p);
  }

  /// {x : m(x) in p}.
  WeylPolyhedron pullback(const WeylPolyhedron &p, const AffineMap &m) const {
    WeylPolyhedron out;
    std::size_t inv = roots_->inverse(m.weyl);
    for (const auto &c : p.constraints) {
      RootVec pulled = roots_->act_on_root(inv, c.root);
      LambdaScalar bound = c.bound - eval_root(c.root, m.translation);
      auto sr = roots_->find_root(pulled);
      if (!sr)
        throw Error("pulled back constraint is not a root");
      if (sr->sign > 0)
        out.constraints.push_back({pulled, c.rel, bound});
      else
        out.constraints.push_back(
            {roots_->positive_roots()[sr->index], flip(c.rel), -bound});
    }
    return out;
  }

  /// {m(x) : x in p}.
  WeylPolyhedron image(const WeylPolyhedron &p, const AffineMap &m) const {
    return pullback(p, inverse(m));
  }

  /// Irredundant form: per-root bounds merged, implicit equalities made
  /// explicit, constraints implied by the others dropped, then sorted.
  /// Empty polyhedra are returned unchanged.
  WeylPolyhedron normalize(const WeylPolyhedron &p) const {
    if (is_empty(p))
      return p;
    WeylPolyhedron cur = merge_bounds(p);
    for (auto &c : cur.constraints) {
      if (c.rel == Relation::Eq)
        continue;
      RootConstraint opposite{c.root, flip(c.rel), c.bound};
      if (implies(cur, opposite))
        c.rel = Relation::Eq;
    }
    cur = merge_bounds(cur);
    for (std::size_t i = cur.constraints.size(); i-- > 0;) {
      WeylPolyhedron rest = cur;
      rest.constraints.erase(rest.constraints.begin() + static_cast<long>(i));
      if (implies(rest, cur.constraints[i]))
        cur = std::move(rest);
    }
    std::sort(cur.constraints.begin(), cur.constraints.end(),
              [&](const RootConstraint &a, const RootConstraint &b) {
                auto ia = roots_->find_root(a.root)->index;
                auto ib = roots_->find_root(b.root)->index;
                if (ia != ib)
                  return ia < ib;
                if (a.rel != b.rel)
                  return a.rel < b.rel;
                return a.bound < b.bound;
              });
    return cur;
  }

  bool is_whole_space(const WeylPolyhedron &p) const {
    return !is_empty(p) && normalize(p).constraints.empty();
  }

  /// Number of Weyl chambers at the origin inside the recession cone of p
  /// (p assumed nonempty).
  std::size_t recession_chambers(const WeylPolyhedron &p) const {
    std::size_t n = 0;
    for (std::size_t w = 0; w < roots_->weyl_order(); ++w) {
      bool ok = true;
      for (const auto &c : p.constraints)
        if (!(ok = direction_ok(c, w, full_face())))
          break;
      n += ok;
    }
    return n;
  }

  /// The single inequality of a half-apartment, if p is one.
  std::optional<RootConstraint> as_half_apartment(const WeylPolyhedron &p) const {
    if (2 * recession_chambers(p) != roots_->weyl_order() || is_empty(p))
      return std::nullopt;
    auto n = normalize(p);
    if (n.constraints.size() == 1 && n.constraints[0].rel != Relation::Eq)
      return n.constraints[0];
    return std::nullopt;
  }

  std::optional<ModelPoint> as_single_point(const WeylPolyhedron &p) const {
    if (recession_chambers(p) != 0)
      return std::nullopt;
    auto x = find_point(p);
    if (!x)
      return std::nullopt;
    for (std::size_t i = 0; i < rank(); ++i) {
      RootVec e(rank(), 0);
      e[i] = 1;
      if (!implies(p, RootConstraint{e, Relation::Eq, x->coords[i]}))
        return std::nullopt;
    }
    return x;
  }

  /// The Weyl chamber equal to p, if p is one.
  std::optional<WeylSimplex> as_chamber(const WeylPolyhedron &p) const {
    if (recession_chambers(p) != 1 || is_empty(p))
      return std::nullopt;
    auto n = normalize(p);
    if (n.constraints.size() != rank())
      return std::nullopt;
    for (const auto &c : n.constraints)
      if (c.rel == Relation::Eq)
        return std::nullopt;
    for (std::size_t w = 0; w < roots_->weyl_order(); ++w) {
      WeylSimplex s{origin(), w, full_face()};
      auto shape = simplex_polyhedron(s);
      bool match = true;
      for (const auto &c : n.constraints) {
        bool found = false;
        for (const auto &d : shape.constraints)
          found |= (d.root == c.root && d.rel == c.rel);
        if (!found) {
          match = false;
          break;
        }
      }
      if (!match)
        continue;
      WeylPolyhedron apex;
      for (const auto &c : n.constraints)
        apex.constraints.push_back({c.root, Relation::Eq, c.bound});
      auto b = find_point(apex);
      if (!b)
        return std::nullopt;
      return WeylSimplex{*b, w, full_face()};
    }
    return std::nullopt;
  }

  /// Vertices of a bounded or pointed polyhedron (intersections of rank-many
  /// independent constraint hyperplanes lying in p).
  std::vector<ModelPoint> vertices(const WeylPolyhedron &p) const {
    std::vector<ModelPoint> out;
    const auto &cs = p.constraints;
    const std::size_t n = rank();
    if (cs.size() < n)
      return out;
    std::vector<std::size_t> pick(n);
    for (std::size_t i = 0; i < n; ++i)
      pick[i] = i;
    std::set<ModelPoint> seen;
    while (true) {
      std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
      std::vector<LambdaScalar> rhs;
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t j = 0; j < n; ++j)
          a[r][j] = cs[pick[r]].root[j];
        rhs.push_back(cs[pick[r]].bound);
      }
      if (auto sol = solve_square(a, rhs)) {
        ModelPoint x{std::move(*sol)};
        if (contains(p, x) && seen.insert(x).second)
          out.push_back(std::move(x));
      }
      std::size_t i = n;
      while (i-- > 0) {
        if (pick[i] < cs.size() - n + i) {
          ++pick[i];
          for (std::size_t j = i + 1; j < n; ++j)
            pick[j] = pick[j - 1] + 1;
          break;
        }
      }
      if (i == static_cast<std::size_t>(-1))
        break;
    }
    return out;
  }

  /// p contains a translate of the cone w.(face).
  bool recession_contains(const WeylPolyhedron &p, std::size_t w,
                          std::uint32_t face) const {
    if (is_empty(p))
      return false;
    for (const auto &c : p.constraints)
      if (!direction_ok(c, w, face))
        return false;
    return true;
  }

  // --- simplices ----------------------------------------------------------

  WeylSimplex chamber(const ModelPoint &base, std::size_t w) const {
    return WeylSimplex{base, w, full_face()};
  }

  /// Representative direction with the least BFS index among those giving the
  /// same point set.
  WeylSimplex canonical(const WeylSimplex &s) const {
    if (s.face == full_face())
      return s;
    std::vector<std::size_t> gens;
    for (std::size_t j = 0; j < rank(); ++j)
      if (!(s.face & (1u << j)))
        gens.push_back(roots_->simple_reflection(j));
    std::vector<std::size_t> coset{s.direction};
    std::set<std::size_t> seen{s.direction};
    for (std::size_t i = 0; i < coset.size(); ++i)
      for (auto g : gens) {
        auto e = roots_->multiply(coset[i], g);
        if (seen.insert(e).second)
          coset.push_back(e);
      }
    return WeylSimplex{s.base, *seen.begin(), s.face};
  }

  WeylPolyhedron simplex_polyhedron(const WeylSimplex &s) const {
    WeylPolyhedron p;
    for (std::size_t i = 0; i < rank(); ++i) {
      RootVec e(rank(), 0);
      e[i] = 1;
      auto sr = roots_->find_root(roots_->act_on_root(s.direction, e));
      const RootVec &g = roots_->positive_roots()[sr->index];
      LambdaScalar b = eval_root(g, s.base);
      Relation rel = (s.face & (1u << i))
                         ? (sr->sign > 0 ? Relation::Ge : Relation::Le)
                         : Relation::Eq;
      p.constraints.push_back({g, rel, b});
    }
    return p;
  }

  bool simplex_contains(const WeylSimplex &s, const ModelPoint &x) const {
    return contains(simplex_polyhedron(s), x);
  }

  /// Some initial piece of s at its base lies in p.
  bool germ_inside(const WeylPolyhedron &p, const WeylSimplex &s) const {
    if (!contains(p, s.base))
      throw Error("germ_inside: base point lies outside the polyhedron");
    for (const auto &c : p.constraints) {
      if (eval_root(c.root, s.base) != c.bound)
        continue;
      if (!direction_ok(c, s.direction, s.face))
        return false;
    }
    return true;
  }

  /// Base of a common sub-chamber of two chambers with the same direction.
  ModelPoint parallel_same_direction(const WeylSimplex &a,
                                     const WeylSimplex &b) const {
    if (a.direction != b.direction)
      throw Error("parallel_same_direction: directions differ");
    ModelPoint ca = cone_coords(a.direction, a.base);
    ModelPoint cb = cone_coords(b.direction, b.base);
    for (std::size_t i = 0; i < rank(); ++i)
      ca.coords[i] = max(ca.coords[i], cb.coords[i]);
    return act(a.direction, ca);
  }

  /// {z : d(x,z) + d(z,y) = d(x,y)}.
  WeylPolyhedron segment(const ModelPoint &x, const ModelPoint &y) const {
    WeylPolyhedron p;
    for (const auto &a : roots_->positive_roots()) {
      LambdaScalar vx = eval_root(a, x), vy = eval_root(a, y);
      if (vx == vy) {
        p.constraints.push_back({a, Relation::Eq, vx});
      } else {
        p.constraints.push_back({a, Relation::Ge, min(vx, vy)});
        p.constraints.push_back({a, Relation::Le, max(vx, vy)});
      }
    }
    return p;
  }

  /// Unique solution of a x = rhs for a square rational matrix.
  std::optional<std::vector<LambdaScalar>>
  solve_square(std::vector<std::vector<Rational>> a,
               std::vector<LambdaScalar> rhs) const {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      while (piv < n && a[piv][col] == 0)
        ++piv;
      if (piv == n)
        return std::nullopt;
      std::swap(a[piv], a[col]);
      std::swap(rhs[piv], rhs[col]);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col || a[r][col] == 0)
          continue;
        Rational f = a[r][col] / a[col][col];
        for (std::size_t c = col; c < n; ++c)
          a[r][c] -= f * a[col][c];
        rhs[r] -= f * rhs[col];
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      rhs[i] /= a[i][i];
    return rhs;
  }

private:
  bool direction_ok(const RootConstraint &c, std::size_t w,
                    std::uint32_t face) const {
    for (std::size_t i = 0; i < rank(); ++i) {
      if (!(face & (1u << i)))
        continue;
      long v = generator_value(c.root, w, i);
      if ((c.rel == Relation::Ge && v < 0) || (c.rel == Relation::Le && v > 0) ||
          (c.rel == Relation::Eq && v != 0))
        return false;
    }
    return true;
  }

public:
  /// Per-root bound merging; cheap and catches most empty intersections.
  WeylPolyhedron merge_bounds(const WeylPolyhedron &p) const {
    struct Bounds {
      std::optional<LambdaScalar> lo, hi, eq;
    };
    std::vector<Bounds> by_root(roots_->positive_roots().size());
    std::vector<std::size_t> order;
    for (const auto &c : p.constraints) {
      auto k = roots_->find_root(c.root)->index;
      if (std::find(order.begin(), order.end(), k) == order.end())
        order.push_back(k);
      Bounds &b = by_root[k];
      if (c.rel == Relation::Ge || c.rel == Relation::Eq)
        b.lo = b.lo ? max(*b.lo, c.bound) : c.bound;
      if (c.rel == Relation::Le || c.rel == Relation::Eq)
        b.hi = b.hi ? min(*b.hi, c.bound) : c.bound;
    }
    WeylPolyhedron out;
    for (auto k : order) {
      const RootVec &r = roots_->positive_roots()[k];
      const Bounds &b = by_root[k];
      if (b.lo && b.hi && *b.lo == *b.hi) {
        out.constraints.push_back({r, Relation::Eq, *b.lo});
        continue;
      }
      if (b.lo)
        out.constraints.push_back({r, Relation::Ge, *b.lo});
      if (b.hi)
        out.constraints.push_back({r, Relation::Le, *b.hi});
    }
    return out;
  }

  bool quick_empty(const WeylPolyhedron &p) const {
    // Two bounds on the same root that cross.
    for (std::size_t i = 0; i < p.constraints.size(); ++i)
      for (std::size_t j = i + 1; j < p.constraints.size(); ++j) {
        const auto &a = p.constraints[i];
        const auto &b = p.constraints[j];
        if (a.root != b.root)
          continue;
        auto lo = [](const RootConstraint &c) {
          return c.rel != Relation::Le;
        };
        auto hi = [](const RootConstraint &c) {
          return c.rel != Relation::Ge;
        };
        if (lo(a) && hi(b) && a.bound > b.bound)
          return true;
        if (lo(b) && hi(a) && b.bound > a.bound)
          return true;
      }
    return false;
  }

  linear::Constraint to_linear(const RootConstraint &c) const {
    std::vector<Rational> a(c.root.begin(), c.root.end());
    if (c.rel == Relation::Le) {
      for (auto &x : a)
        x = -x;
      return {std::move(a), linear::Rel::Ge, -c.bound};
    }
    return {std::move(a),
            c.rel == Relation::Eq ? linear::Rel::Eq : linear::Rel::Ge, c.bound};
  }

  std::vector<linear::Constraint> linear_system(const WeylPolyhedron &p) const {
    return to_linear(p);
  }

  /// m1 and m2 agree at every point of p.
  bool maps_agree_on(const WeylPolyhedron &p, const AffineMap &m1,
                     const AffineMap &m2) const {
    if (is_empty(p))
      return true;
    if (m1.weyl == m2.weyl)
      return m1.translation == m2.translation;
    const IntMatrix &a = roots_->point_matrix(m1.weyl);
    const IntMatrix &b = roots_->point_matrix(m2.weyl);
    auto sys = to_linear(p);
    for (std::size_t j = 0; j < rank(); ++j) {
      std::vector<Rational> row(rank());
      for (std::size_t k = 0; k < rank(); ++k)
        row[k] = a[j][k] - b[j][k];
      LambdaScalar rhs = m2.translation.coords[j] - m1.translation.coords[j];
      if (!linear::implies(sys, {row, linear::Rel::Eq, rhs}, rank(), lambda_rank_))
        return false;
    }
    return true;
  }

private:
  std::vector<linear::Constraint> to_linear(const WeylPolyhedron &p) const {
    std::vector<linear::Constraint> out;
    out.reserve(p.constraints.size());
    for (const auto &c : p.constraints)
      out.push_back(to_linear(c));
    return out;
  }

  std::shared_ptr<const RootSystem> roots_;
  std::size_t lambda_rank_;
  Rational scale_;
  TranslationGroup translations_;
};

/// The model space of a named type.
inline ModelSpace make_model(std::string_view type, std::size_t lambda_rank = 1) {
  return ModelSpace(std::make_shared<RootSystem>(RootSystem::from_type(type)),
                    lambda_rank);
}

} // namespace lbl
