#pragma once

// Exact feasibility of linear systems with rational coefficients and
// Lambda-valued right-hand sides, by Fourier-Motzkin elimination. Lambda is an
// ordered divisible group, so elimination and back-substitution stay exact.

#include "lbl/scalars.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace lbl::linear {

enum class Rel { Ge, Gt, Eq };

/// sum_j a_j x_j  (>=, >, =)  b
struct Constraint {
  std::vector<Rational> a;
  Rel rel = Rel::Ge;
  LambdaScalar b;
};

namespace detail {

struct Row {
  std::vector<Rational> a;
  bool strict = false;
  LambdaScalar b;
};

// Scale so the first nonzero coefficient has absolute value one.
inline void normalize(Row &r) {
  for (const auto &c : r.a) {
    if (c == 0)
      continue;
    Rational f = abs(c);
    if (f != 1) {
      for (auto &x : r.a)
        x /= f;
      r.b /= f;
    }
    return;
  }
}

inline bool all_zero(const std::vector<Rational> &a) {
  for (const auto &c : a)
    if (c != 0)
      return false;
  return true;
}

// Keep the tightest bound per coefficient vector.
inline std::vector<Row> dedupe(std::vector<Row> rows) {
  std::map<std::vector<Rational>, Row> best;
  std::vector<std::vector<Rational>> order;
  for (auto &r : rows) {
    auto it = best.find(r.a);
    if (it == best.end()) {
      order.push_back(r.a);
      best.emplace(r.a, std::move(r));
      continue;
    }
    Row &cur = it->second;
    int c = r.b.compare(cur.b);
    if (c > 0 || (c == 0 && r.strict))
      cur = std::move(r);
  }
  std::vector<Row> out;
  out.reserve(order.size());
  for (const auto &key : order)
    out.push_back(std::move(best.at(key)));
  return out;
}

inline bool constant_ok(const Row &r) {
  int s = r.b.sign();
  return r.strict ? s < 0 : s <= 0;
}

} // namespace detail

/// A point satisfying every constraint, or nullopt when the system is
/// infeasible. `n` is the number of variables and `rank` the lambda rank.
inline std::optional<std::vector<LambdaScalar>>
solve(const std::vector<Constraint> &system, std::size_t n, std::size_t rank) {
  using detail::Row;
  std::vector<Row> rows;
  for (const auto &c : system) {
    if (c.a.size() != n)
      throw Error("constraint arity mismatch");
    if (c.b.rank() != rank)
      throw RankMismatch(c.b.rank(), rank);
    Row r{c.a, c.rel == Rel::Gt, c.b};
    if (c.rel == Rel::Eq) {
      Row neg{c.a, false, -c.b};
      for (auto &x : neg.a)
        x = -x;
      rows.push_back(std::move(neg));
    }
    rows.push_back(std::move(r));
  }

  // levels[j] holds the system over variables 0..j-1.
  std::vector<std::vector<Row>> levels(n + 1);
  for (auto &r : rows)
    detail::normalize(r);
  levels[n] = detail::dedupe(std::move(rows));
  for (std::size_t j = n; j-- > 0;) {
    std::vector<Row> pos, neg, next;
    for (const auto &r : levels[j + 1]) {
      int s = sgn(r.a[j]);
      if (s > 0)
        pos.push_back(r);
      else if (s < 0)
        neg.push_back(r);
      else
        next.push_back(r);
    }
    for (const auto &p : pos) {
      for (const auto &q : neg) {
        Rational fp = -q.a[j], fq = p.a[j];
        Row comb{std::vector<Rational>(n), p.strict || q.strict,
                 fp * p.b + fq * q.b};
        for (std::size_t i = 0; i < n; ++i)
          comb.a[i] = fp * p.a[i] + fq * q.a[i];
        comb.a[j] = 0;
        detail::normalize(comb);
        next.push_back(std::move(comb));
      }
    }
    levels[j] = detail::dedupe(std::move(next));
    for (const auto &r : levels[j])
      if (detail::all_zero(r.a) && !detail::constant_ok(r))
        return std::nullopt;
  }

  std::vector<LambdaScalar> x(n, LambdaScalar::zero(rank));
  for (std::size_t j = 0; j < n; ++j) {
    std::optional<LambdaScalar> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const auto &r : levels[j + 1]) {
      if (r.a[j] == 0)
        continue;
      LambdaScalar rhs = r.b;
      for (std::size_t i = 0; i < j; ++i)
        if (r.a[i] != 0)
          rhs -= r.a[i] * x[i];
      LambdaScalar bound = rhs / r.a[j];
      if (r.a[j] > 0) {
        int c = lo ? bound.compare(*lo) : 1;
        if (c > 0 || (c == 0 && r.strict)) {
          lo = bound;
          lo_strict = r.strict;
        }
      } else {
        int c = hi ? bound.compare(*hi) : -1;
        if (c < 0 || (c == 0 && r.strict)) {
          hi = bound;
          hi_strict = r.strict;
        }
      }
    }
    const LambdaScalar one = LambdaScalar::unit(rank);
    if (lo && hi) {
      if (!lo_strict)
        x[j] = *lo;
      else if (!hi_strict)
        x[j] = *hi;
      else
        x[j] = (*lo + *hi) / Rational(2);
    } else if (lo) {
      x[j] = lo_strict ? *lo + one : *lo;
    } else if (hi) {
      x[j] = hi_strict ? *hi - one : *hi;
    }
  }
  return x;
}

inline bool feasible(const std::vector<Constraint> &system, std::size_t n,
                     std::size_t rank) {
  return solve(system, n, rank).has_value();
}

/// Every point of `system` satisfies `c`.
inline bool implies(const std::vector<Constraint> &system, const Constraint &c,
                    std::size_t n, std::size_t rank) {
  auto with = [&](std::vector<Rational> a, LambdaScalar b) {
    auto s = system;
    s.push_back(Constraint{std::move(a), Rel::Gt, std::move(b)});
    return feasible(s, n, rank);
  };
  std::vector<Rational> neg(c.a);
  for (auto &x : neg)
    x = -x;
  // A point violating a.x >= b satisfies -a.x > -b.
  if (with(neg, -c.b))
    return false;
  if (c.rel == Rel::Gt) {
    auto s = system;
    s.push_back(Constraint{c.a, Rel::Eq, c.b});
    return !feasible(s, n, rank);
  }
  if (c.rel == Rel::Eq)
    return !with(c.a, c.b);
  return true;
}

} // namespace lbl::linear
