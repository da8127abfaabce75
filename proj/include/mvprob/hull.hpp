#pragma once

// Divisible hull of a semisimple carrier.
//
// The base is embedded into functions over its maximal ideals; the hull is
// the set of ambient functions expressible as (a_1 + ... + a_n)/n with every
// a_i in the embedded base. Membership is decided constructively: a function
// with values p_x/q is the average of the q level sets {x : q f(x) >= j}, so it
// is a member exactly when those indicator layers lie in the base.

#include "mvprob/spectra.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace mvp {

/// f = (1/n) * sum multiplicity_i * iota(term_i), terms in the base.
struct Decomposition {
  Integer n{1};
  std::vector<std::pair<Element, Integer>> terms;
};

class DivisibleHull {
 public:
  explicit DivisibleHull(const Algebra& base) : base_(base), embedding_(embed_or_throw(base)) {
    ambient_ = Algebra::functions(embedding_.map.target.atoms(), std::nullopt, Signature{true, true});
  }

  const Algebra& base() const { return base_; }
  /// FunctionAlgebra over StandardUnit on Max(base); the hull lives inside it.
  const Algebra& ambient() const { return ambient_; }

  /// iota_d : base -> hull.
  Element embed(const Element& a) const {
    return ambient_.function(embedding_.map(a).values());
  }

  std::optional<Decomposition> decompose(const Element& f) const {
    if (!(f.algebra() == ambient_)) throw input_error("hull element must live in " + ambient_.describe());
    const auto& vals = f.values();
    Integer q(1);
    for (const auto& v : vals) q = lcm(q, v.get_den());
    // Level of each atom on the 1/q grid, and the distinct positive levels.
    std::vector<Integer> level;
    std::map<Integer, bool> thresholds;
    for (const auto& v : vals) {
      Rational scaled = v * Rational(q);
      level.push_back(scaled.get_num());
      if (level.back() > 0) thresholds[level.back()] = true;
    }
    const Algebra& grid = embedding_.map.target;
    Decomposition out;
    out.n = q;
    Integer prev(0);
    for (const auto& [t, unused] : thresholds) {
      std::vector<Rational> layer;
      for (const auto& l : level) layer.emplace_back(l >= t ? 1 : 0);
      auto term = lift(grid.function(std::move(layer)));
      if (!term) return std::nullopt;
      out.terms.emplace_back(*term, t - prev);
      prev = t;
    }
    if (prev < q) out.terms.emplace_back(base_.zero(), q - prev);
    return out;
  }

  bool contains(const Element& f) const { return decompose(f).has_value(); }

  Element compose(const Decomposition& d) const {
    if (d.n <= 0) throw input_error("decomposition needs n >= 1");
    std::vector<Rational> sum(ambient_.atoms().size(), Rational(0));
    Integer count(0);
    for (const auto& [term, mult] : d.terms) {
      if (mult < 0) throw input_error("negative multiplicity");
      count += mult;
      const auto v = embed(term).values();
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += v[i] * Rational(mult);
    }
    if (count != d.n) throw input_error("decomposition must have exactly n terms");
    for (auto& s : sum) {
      s /= Rational(d.n);
      s.canonicalize();
    }
    return ambient_.function(std::move(sum));
  }

  const SemisimpleEmbedding& embedding() const { return embedding_; }

 private:
  static SemisimpleEmbedding embed_or_throw(const Algebra& base) {
    if (!is_semisimple(base)) throw input_error("divisible hull needs a semisimple algebra, got " + base.describe());
    return semisimple_embedding(base);
  }

  std::optional<Element> lift(const Element& layer) const {
    try {
      return embedding_.map.lift(layer);
    } catch (const input_error&) {
      return std::nullopt;
    }
  }

  Algebra base_;
  SemisimpleEmbedding embedding_;
  Algebra ambient_;
};

}  // namespace mvp
