#pragma once

#include "lbl/lbl.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace lbl::testing {

inline std::string fixture_path(const std::string &name) {
  return std::string(LBL_FIXTURES) + "/" + name;
}

inline std::string read_file(const std::string &path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline AtlasSpace load_fixture(const std::string &name) {
  return io::parse_atlas(read_file(fixture_path(name)));
}

inline LambdaScalar lam(long n, std::size_t rank = 1) {
  return LambdaScalar::from_int(n, rank);
}

/// Random exact point with small rational coordinates.
inline ModelPoint random_point(const ModelSpace &m, std::mt19937_64 &rng) {
  std::uniform_int_distribution<long> num(-12, 12), den(1, 4);
  ModelPoint p;
  for (std::size_t i = 0; i < m.rank(); ++i) {
    std::vector<Rational> c;
    for (std::size_t k = 0; k < m.lambda_rank(); ++k)
      c.push_back(make_rational(num(rng), den(rng)));
    p.coords.emplace_back(std::move(c));
  }
  return p;
}

} // namespace lbl::testing
