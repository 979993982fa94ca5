#pragma once

#include "lbl/scalars.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lbl {

using IntMatrix = std::vector<std::vector<long>>;
/// Integer coefficients of a root over the simple roots (or of a coroot over
/// the simple coroots).
using RootVec = std::vector<long>;

/// Rejected Cartan matrix; `submatrix` is the smallest leading principal block
/// that already fails.
class InvalidCartan : public Error {
public:
  InvalidCartan(const std::string &why, IntMatrix sub)
      : Error("invalid Cartan matrix: " + why + " (offending block " +
              describe(sub) + ")"),
        submatrix(std::move(sub)) {}

  IntMatrix submatrix;

  static std::string describe(const IntMatrix &m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < m[i].size(); ++j)
        s += (j ? "," : "") + std::to_string(m[i][j]);
      s += "]";
    }
    return s + "]";
  }
};

/// A root expressed as a positive root index plus a sign.
struct SignedRoot {
  std::size_t index;
  int sign;
  friend bool operator==(const SignedRoot &, const SignedRoot &) = default;
};

namespace detail {

inline IntMatrix leading_block(const IntMatrix &m, std::size_t k) {
  IntMatrix out(k, std::vector<long>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      out[i][j] = m[i][j];
  return out;
}

inline Rational determinant(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0)
      ++pivot;
    if (pivot == n)
      return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0)
        continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c)
        a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

inline IntMatrix multiply(const IntMatrix &a, const IntMatrix &b) {
  const std::size_t n = a.size();
  IntMatrix out(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0)
        continue;
      for (std::size_t j = 0; j < n; ++j)
        out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

inline RootVec apply(const IntMatrix &m, const RootVec &v) {
  RootVec out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      out[i] += m[i][j] * v[j];
  return out;
}

inline IntMatrix identity(std::size_t n) {
  IntMatrix m(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    m[i][i] = 1;
  return m;
}

inline int root_sign(const RootVec &v) {
  bool pos = false, neg = false;
  for (long c : v) {
    pos |= c > 0;
    neg |= c < 0;
  }
  if (pos && neg)
    return 0;
  return pos ? 1 : (neg ? -1 : 0);
}

} // namespace detail

/// Crystallographic root system of finite type with its Weyl group.
///
/// Conventions: `cartan()[i][j]` is the pairing of the i-th simple coroot with
/// the j-th simple root. Points of the model space are stored by their simple
/// root evaluations, so simple reflection i acts on coordinates by
/// x_j -> x_j - x_i * C[i][j]. Weyl elements are enumerated breadth-first from
/// the identity, multiplying on the right by simple reflections in index order;
/// index 0 is the identity and the BFS depth is the word length.
class RootSystem {
public:
  static RootSystem build(const IntMatrix &cartan, std::string name = {}) {
    RootSystem rs;
    rs.cartan_ = cartan;
    rs.name_ = name.empty() ? "cartan" : std::move(name);
    rs.validate();
    rs.enumerate_roots();
    rs.enumerate_weyl_group();
    return rs;
  }

  /// "A1".."A8", "B2".."B8", "C3".."C8", "D4".."D8", "G2".
  static RootSystem from_type(std::string_view type) {
    return build(cartan_for_type(type), std::string(type));
  }

  static IntMatrix cartan_for_type(std::string_view type) {
    if (type.size() < 2)
      throw Error("unknown root system type '" + std::string(type) + "'");
    char family = type[0];
    long n = 0;
    for (std::size_t i = 1; i < type.size(); ++i) {
      if (type[i] < '0' || type[i] > '9')
        throw Error("unknown root system type '" + std::string(type) + "'");
      n = n * 10 + (type[i] - '0');
    }
    auto chain = [](long r) {
      IntMatrix c(r, std::vector<long>(r, 0));
      for (long i = 0; i < r; ++i) {
        c[i][i] = 2;
        if (i + 1 < r)
          c[i][i + 1] = c[i + 1][i] = -1;
      }
      return c;
    };
    switch (family) {
    case 'A':
      if (n >= 1 && n <= 8)
        return chain(n);
      break;
    case 'B':
      if (n == 2)
        return {{2, -2}, {-1, 2}};
      if (n >= 3 && n <= 8) {
        auto c = chain(n);
        c[n - 1][n - 2] = -2;
        return c;
      }
      break;
    case 'C':
      if (n >= 3 && n <= 8) {
        auto c = chain(n);
        c[n - 2][n - 1] = -2;
        return c;
      }
      break;
    case 'D':
      if (n >= 4 && n <= 8) {
        auto c = chain(n);
        c[n - 2][n - 1] = c[n - 1][n - 2] = 0;
        c[n - 3][n - 1] = c[n - 1][n - 3] = -1;
        return c;
      }
      break;
    case 'G':
      if (n == 2)
        return {{2, -1}, {-3, 2}};
      break;
    default:
      break;
    }
    throw Error("unsupported root system type '" + std::string(type) + "'");
  }

  const std::string &name() const { return name_; }
  std::size_t rank() const { return cartan_.size(); }
  const IntMatrix &cartan() const { return cartan_; }

  const std::vector<RootVec> &positive_roots() const { return roots_; }
  /// Coroot of each positive root over the simple coroots.
  const std::vector<RootVec> &positive_coroots() const { return coroots_; }
  /// Coordinates of the coroot of positive root k in the point convention
  /// (simple root evaluations).
  const RootVec &coroot_point(std::size_t k) const { return coroot_points_[k]; }

  std::optional<SignedRoot> find_root(const RootVec &c) const {
    auto it = root_index_.find(c);
    if (it != root_index_.end())
      return SignedRoot{it->second, 1};
    RootVec neg(c);
    for (auto &x : neg)
      x = -x;
    it = root_index_.find(neg);
    if (it != root_index_.end())
      return SignedRoot{it->second, -1};
    return std::nullopt;
  }

  std::size_t weyl_order() const { return point_mats_.size(); }
  std::size_t identity() const { return 0; }
  std::size_t longest() const { return longest_; }
  /// Length of the longest element, i.e. the number of positive roots.
  int diameter() const { return lengths_[longest_]; }
  int length(std::size_t w) const { return lengths_.at(w); }
  std::size_t simple_reflection(std::size_t i) const { return simple_.at(i); }
  /// Weyl element of the reflection in positive root k.
  std::size_t reflection(std::size_t k) const { return reflections_.at(k); }

  /// Matrix of w acting on point coordinates.
  const IntMatrix &point_matrix(std::size_t w) const { return point_mats_.at(w); }
  /// Matrix of w acting on root coefficient vectors: (w.a)(x) = a(w^-1 x).
  const IntMatrix &root_matrix(std::size_t w) const { return root_mats_.at(w); }

  std::size_t multiply(std::size_t a, std::size_t b) const {
    if (!table_.empty())
      return table_[a * weyl_order() + b];
    return index_of(detail::multiply(point_mats_.at(a), point_mats_.at(b)));
  }
  std::size_t inverse(std::size_t w) const { return inverses_.at(w); }

  std::optional<std::size_t> find_element(const IntMatrix &point_matrix) const {
    auto it = element_index_.find(point_matrix);
    if (it == element_index_.end())
      return std::nullopt;
    return it->second;
  }

  /// w applied to a root given by coefficients.
  RootVec act_on_root(std::size_t w, const RootVec &c) const {
    return detail::apply(root_mats_.at(w), c);
  }

  /// w applied to positive root k, as a signed positive root.
  SignedRoot permute_root(std::size_t w, std::size_t k) const {
    return root_perm_[w][k];
  }

  /// Pairing a(coroot of positive root k) = sum_j c_j * coroot_point(k)_j.
  long pair(const RootVec &a, std::size_t k) const {
    long s = 0;
    for (std::size_t j = 0; j < a.size(); ++j)
      s += a[j] * coroot_points_[k][j];
    return s;
  }

private:
  RootSystem() = default;

  std::size_t index_of(const IntMatrix &m) const {
    auto it = element_index_.find(m);
    if (it == element_index_.end())
      throw Error("matrix is not an element of the Weyl group");
    return it->second;
  }

  void validate() {
    const std::size_t n = cartan_.size();
    if (n == 0)
      throw InvalidCartan("rank must be positive", {});
    if (n > 16)
      throw InvalidCartan("rank above 16 is not supported", {});
    for (std::size_t i = 0; i < n; ++i) {
      if (cartan_[i].size() != n)
        throw InvalidCartan("matrix is not square", cartan_);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (cartan_[i][i] != 2)
        throw InvalidCartan("diagonal entry must be 2",
                            detail::leading_block(cartan_, i + 1));
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j)
          continue;
        if (cartan_[i][j] > 0)
          throw InvalidCartan("off-diagonal entries must be non-positive",
                              detail::leading_block(cartan_, std::max(i, j) + 1));
        if ((cartan_[i][j] == 0) != (cartan_[j][i] == 0))
          throw InvalidCartan("zero pattern must be symmetric",
                              detail::leading_block(cartan_, std::max(i, j) + 1));
      }
    }
    // Symmetrize: d_i C_ij = d_j C_ji with d_i > 0.
    std::vector<Rational> d(n, 0);
    for (std::size_t start = 0; start < n; ++start) {
      if (d[start] != 0)
        continue;
      d[start] = 1;
      std::deque<std::size_t> queue{start};
      while (!queue.empty()) {
        std::size_t i = queue.front();
        queue.pop_front();
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j || cartan_[i][j] == 0)
            continue;
          Rational want = d[i] * Rational(cartan_[i][j]) / Rational(cartan_[j][i]);
          if (d[j] == 0) {
            d[j] = want;
            queue.push_back(j);
          } else if (d[j] != want) {
            throw InvalidCartan("matrix is not symmetrizable",
                                detail::leading_block(cartan_, std::max(i, j) + 1));
          }
        }
      }
    }
    // Finite type iff the symmetrized matrix is positive definite.
    for (std::size_t k = 1; k <= n; ++k) {
      std::vector<std::vector<Rational>> b(k, std::vector<Rational>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          b[i][j] = d[i] * Rational(cartan_[i][j]);
      if (detail::determinant(b) <= 0)
        throw InvalidCartan("not of finite type",
                            detail::leading_block(cartan_, k));
    }
  }

  void enumerate_roots() {
    const std::size_t n = rank();
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < n; ++i) {
      RootVec r(n, 0), cr(n, 0);
      r[i] = 1;
      cr[i] = 1;
      root_index_[r] = roots_.size();
      roots_.push_back(r);
      coroots_.push_back(cr);
      queue.push_back(i);
    }
    while (!queue.empty()) {
      std::size_t k = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < n; ++i) {
        RootVec r = roots_[k];
        RootVec cr = coroots_[k];
        long pr = 0, pc = 0;
        for (std::size_t j = 0; j < n; ++j) {
          pr += r[j] * cartan_[i][j];
          pc += cr[j] * cartan_[j][i];
        }
        r[i] -= pr;
        cr[i] -= pc;
        if (detail::root_sign(r) <= 0 || root_index_.count(r))
          continue;
        if (roots_.size() > 4096)
          throw InvalidCartan("root enumeration does not terminate", cartan_);
        root_index_[r] = roots_.size();
        roots_.push_back(r);
        coroots_.push_back(cr);
        queue.push_back(roots_.size() - 1);
      }
    }
    for (const auto &cr : coroots_) {
      RootVec p(n, 0);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
          p[j] += cr[i] * cartan_[i][j];
      coroot_points_.push_back(p);
    }
  }

  void enumerate_weyl_group() {
    const std::size_t n = rank();
    std::vector<IntMatrix> gen_point, gen_root;
    for (std::size_t i = 0; i < n; ++i) {
      IntMatrix p = detail::identity(n), r = detail::identity(n);
      for (std::size_t j = 0; j < n; ++j) {
        p[j][i] -= cartan_[i][j];
        r[i][j] -= cartan_[i][j];
      }
      gen_point.push_back(p);
      gen_root.push_back(r);
    }
    point_mats_.push_back(detail::identity(n));
    root_mats_.push_back(detail::identity(n));
    lengths_.push_back(0);
    element_index_[point_mats_[0]] = 0;
    for (std::size_t cur = 0; cur < point_mats_.size(); ++cur) {
      for (std::size_t i = 0; i < n; ++i) {
        IntMatrix p = detail::multiply(point_mats_[cur], gen_point[i]);
        if (element_index_.count(p))
          continue;
        if (point_mats_.size() >= 100000)
          throw InvalidCartan("Weyl group too large", cartan_);
        element_index_[p] = point_mats_.size();
        point_mats_.push_back(std::move(p));
        root_mats_.push_back(detail::multiply(root_mats_[cur], gen_root[i]));
        lengths_.push_back(lengths_[cur] + 1);
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      simple_.push_back(index_of(gen_point[i]));
    longest_ = static_cast<std::size_t>(
        std::max_element(lengths_.begin(), lengths_.end()) - lengths_.begin());

    const std::size_t order = point_mats_.size();
    if (order <= 1500) {
      table_.resize(order * order);
      for (std::size_t a = 0; a < order; ++a)
        for (std::size_t b = 0; b < order; ++b)
          table_[a * order + b] =
              index_of(detail::multiply(point_mats_[a], point_mats_[b]));
    }
    inverses_.resize(order);
    for (std::size_t a = 0; a < order; ++a) {
      for (std::size_t b = 0; b < order; ++b) {
        if (multiply(a, b) == 0) {
          inverses_[a] = b;
          break;
        }
      }
    }
    root_perm_.resize(order);
    for (std::size_t w = 0; w < order; ++w) {
      for (const auto &r : roots_) {
        auto img = find_root(detail::apply(root_mats_[w], r));
        if (!img)
          throw Error("Weyl element does not permute the roots");
        root_perm_[w].push_back(*img);
      }
    }
    for (std::size_t k = 0; k < roots_.size(); ++k) {
      IntMatrix m = detail::identity(n);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
          m[j][i] -= coroot_points_[k][j] * roots_[k][i];
      reflections_.push_back(index_of(m));
    }
  }

  std::string name_;
  IntMatrix cartan_;
  std::vector<RootVec> roots_, coroots_, coroot_points_;
  std::map<RootVec, std::size_t> root_index_;
  std::vector<IntMatrix> point_mats_, root_mats_;
  std::map<IntMatrix, std::size_t> element_index_;
  std::vector<int> lengths_;
  std::vector<std::size_t> simple_, inverses_, reflections_, table_;
  std::vector<std::vector<SignedRoot>> root_perm_;
  std::size_t longest_ = 0;
};

inline RootSystem build_root_system(const IntMatrix &cartan) {
  return RootSystem::build(cartan);
}

inline int length(const RootSystem &rs, std::size_t w) { return rs.length(w); }

} // namespace lbl
