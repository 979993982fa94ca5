#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lbl {

//! Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class RankMismatch : public Error {
public:
  RankMismatch(std::size_t lhs, std::size_t rhs)
      : Error("lambda rank mismatch: " + std::to_string(lhs) + " vs " +
              std::to_string(rhs)) {}
};

class ParseError : public Error {
public:
  using Error::Error;
};

/// Elements of the scalar field F (exact rationals).
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p/q" or "p". The denominator must be nonzero.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty())
    throw ParseError("empty rational");
  auto slash = s.find('/');
  auto valid_int = [](const std::string &part) {
    if (part.empty())
      return false;
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size())
      return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9')
        return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den))
    throw ParseError("malformed rational '" + s + "'");
  if (num[0] == '+')
    num.erase(0, 1);
  if (den[0] == '+')
    den.erase(0, 1);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0)
    throw ParseError("zero denominator in '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

/// Always "p/q", denominator included ("3/1").
inline std::string to_pq_string(const Rational &q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Shortest human form: "3", "-1/2".
inline std::string to_short_string(const Rational &q) {
  if (q.get_den() == 1)
    return q.get_num().get_str();
  return to_pq_string(q);
}

/// An element of Lambda = Q^k with the lexicographic order.
///
/// The rank k is carried by the value; mixing ranks in arithmetic or
/// comparison throws RankMismatch.
class LambdaScalar {
public:
  LambdaScalar() = default;
  explicit LambdaScalar(std::size_t rank) : coords_(rank) {}
  explicit LambdaScalar(std::vector<Rational> coords)
      : coords_(std::move(coords)) {}

  static LambdaScalar zero(std::size_t rank) { return LambdaScalar(rank); }

  /// The integer n embedded in the leading coordinate.
  static LambdaScalar from_int(long n, std::size_t rank) {
    LambdaScalar s(rank);
    if (rank > 0)
      s.coords_[0] = n;
    return s;
  }

  /// Positive unit (1,0,...,0).
  static LambdaScalar unit(std::size_t rank) { return from_int(1, rank); }

  std::size_t rank() const { return coords_.size(); }
  const std::vector<Rational> &coords() const { return coords_; }
  const Rational &operator[](std::size_t i) const { return coords_[i]; }

  bool is_zero() const {
    for (const auto &c : coords_)
      if (c != 0)
        return false;
    return true;
  }

  /// -1, 0 or +1 according to the lexicographic order.
  int sign() const {
    for (const auto &c : coords_) {
      int s = sgn(c);
      if (s != 0)
        return s;
    }
    return 0;
  }

  LambdaScalar &operator+=(const LambdaScalar &o) {
    check_rank(o);
    for (std::size_t i = 0; i < coords_.size(); ++i)
      coords_[i] += o.coords_[i];
    return *this;
  }
  LambdaScalar &operator-=(const LambdaScalar &o) {
    check_rank(o);
    for (std::size_t i = 0; i < coords_.size(); ++i)
      coords_[i] -= o.coords_[i];
    return *this;
  }
  LambdaScalar &operator*=(const Rational &q) {
    for (auto &c : coords_)
      c *= q;
    return *this;
  }
  /// Divisibility of Lambda: the unique b with q*b = a.
  LambdaScalar &operator/=(const Rational &q) {
    if (q == 0)
      throw Error("division of a lambda scalar by zero");
    for (auto &c : coords_)
      c /= q;
    return *this;
  }

  friend LambdaScalar operator+(LambdaScalar a, const LambdaScalar &b) {
    return a += b;
  }
  friend LambdaScalar operator-(LambdaScalar a, const LambdaScalar &b) {
    return a -= b;
  }
  friend LambdaScalar operator-(LambdaScalar a) {
    for (auto &c : a.coords_)
      c = -c;
    return a;
  }
  friend LambdaScalar operator*(const Rational &q, LambdaScalar a) {
    return a *= q;
  }
  friend LambdaScalar operator/(LambdaScalar a, const Rational &q) {
    return a /= q;
  }

  friend bool operator==(const LambdaScalar &a, const LambdaScalar &b) {
    return a.compare(b) == 0;
  }
  friend std::strong_ordering operator<=>(const LambdaScalar &a,
                                          const LambdaScalar &b) {
    int c = a.compare(b);
    return c < 0   ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
  }

  /// Lexicographic three-way comparison, -1/0/+1.
  int compare(const LambdaScalar &o) const {
    check_rank(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      int c = cmp(coords_[i], o.coords_[i]);
      if (c != 0)
        return c < 0 ? -1 : 1;
    }
    return 0;
  }

  /// Short text: "3" for rank 1, "(1, -1/2)" otherwise.
  std::string to_string() const {
    if (coords_.size() == 1)
      return to_short_string(coords_[0]);
    std::string out = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i)
        out += ", ";
      out += to_short_string(coords_[i]);
    }
    return out + ")";
  }

private:
  void check_rank(const LambdaScalar &o) const {
    if (o.coords_.size() != coords_.size())
      throw RankMismatch(coords_.size(), o.coords_.size());
  }

  std::vector<Rational> coords_;
};

inline std::strong_ordering compare(const LambdaScalar &a,
                                    const LambdaScalar &b) {
  return a <=> b;
}

inline LambdaScalar abs(const LambdaScalar &a) {
  return a.sign() < 0 ? -a : a;
}

inline LambdaScalar scale(const Rational &q, const LambdaScalar &a) {
  return q * a;
}

inline const LambdaScalar &min(const LambdaScalar &a, const LambdaScalar &b) {
  return b < a ? b : a;
}
inline const LambdaScalar &max(const LambdaScalar &a, const LambdaScalar &b) {
  return a < b ? b : a;
}

inline std::ostream &operator<<(std::ostream &os, const LambdaScalar &a) {
  return os << a.to_string();
}

/// Text form used on the command line: components separated by ';'.
inline LambdaScalar parse_scalar(std::string_view text, std::size_t rank) {
  std::vector<Rational> coords;
  std::size_t start = 0;
  while (true) {
    auto end = text.find(';', start);
    coords.push_back(parse_rational(text.substr(start, end - start)));
    if (end == std::string_view::npos)
      break;
    start = end + 1;
  }
  if (coords.size() == 1 && rank > 1) {
    // An integer or rational given alone embeds in the leading coordinate.
    std::vector<Rational> full(rank);
    full[0] = coords[0];
    return LambdaScalar(std::move(full));
  }
  if (coords.size() != rank)
    throw ParseError("scalar '" + std::string(text) + "' has " +
                     std::to_string(coords.size()) +
                     " components, lambda rank is " + std::to_string(rank));
  return LambdaScalar(std::move(coords));
}

} // namespace lbl
