#pragma once

#include "mvprob/mvprob.hpp"

#include <gtest/gtest.h>

#include <string>
#include <vector>

namespace mvt {

using namespace mvp;

inline Rational R(long n, long d = 1) { return make_rational(n, d); }

inline std::vector<Rational> Rs(std::initializer_list<std::pair<long, long>> xs) {
  std::vector<Rational> out;
  for (auto [n, d] : xs) out.push_back(R(n, d));
  return out;
}

/// Random measure on `atoms`, each weight zero with probability `zero_chance`
/// (at least one weight stays positive).
inline DiscreteMeasure random_measure(const std::vector<std::string>& atoms, Rng& rng, double zero_chance = 0.0) {
  std::uniform_int_distribution<long> w(1, 9);
  std::bernoulli_distribution zero(zero_chance);
  std::vector<long> raw;
  long total = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    long v = zero(rng) ? 0 : w(rng);
    raw.push_back(v);
    total += v;
  }
  if (total == 0) {
    raw[0] = 1;
    total = 1;
  }
  std::vector<Rational> weights;
  for (long v : raw) weights.push_back(R(v, total));
  return DiscreteMeasure(atoms, weights);
}

inline std::vector<std::string> atom_names(std::size_t n, const std::string& prefix = "x") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace mvt
