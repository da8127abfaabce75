#pragma once

// Ideals, maximal ideals, the radical, quotients and the semisimple embedding.
//
// Finite carriers are handled by enumeration: every ideal of a finite
// MV-algebra is generated by a single element, and each quotient A/M by a
// maximal ideal is a finite chain, identified with a subchain of [0,1] by the
// rank of a class in the quotient order. Chang and the divisible carriers are
// handled structurally.

#include "mvprob/algebra.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace mvp {

/// Largest carrier the enumeration routines accept.
inline constexpr std::size_t kMaxEnumeratedCarrier = 64;

class Ideal {
 public:
  enum class Kind { Explicit, Zero, ChangRadical, Whole };

  /// Verifies the ideal laws exhaustively; throws input_error when they fail.
  static Ideal from_members(const Algebra& alg, const std::vector<Element>& members) {
    auto sz = alg.size();
    if (!sz) throw input_error("explicit ideals need a finite carrier");
    std::vector<bool> mask(*sz, false);
    for (const auto& m : members) mask[alg.index_of(m)] = true;
    Ideal out(alg, Kind::Explicit, std::move(mask));
    if (auto why = out.violation()) throw input_error("not an ideal: " + *why);
    return out;
  }

  /// {x : x <= n(+)a for some n}.
  static Ideal generated_by(const Element& a) {
    const Algebra& alg = a.algebra();
    if (!alg.is_finite()) throw input_error("generated_by needs a finite carrier");
    Element top = a;
    for (;;) {
      Element next = oplus(top, a);
      if (next == top) break;
      top = next;
    }
    std::vector<bool> mask(*alg.size(), false);
    for (const auto& x : alg.elements())
      if (leq(x, top)) mask[alg.index_of(x)] = true;
    return Ideal(alg, Kind::Explicit, std::move(mask));
  }

  static Ideal zero(const Algebra& alg) {
    if (alg.is_finite()) return from_members(alg, {alg.zero()});
    return Ideal(alg, Kind::Zero, {});
  }
  static Ideal whole(const Algebra& alg) {
    if (alg.is_finite()) return Ideal(alg, Kind::Explicit, std::vector<bool>(*alg.size(), true));
    return Ideal(alg, Kind::Whole, {});
  }
  static Ideal chang_radical(const Algebra& alg) {
    if (!alg.is_chang()) throw input_error("chang_radical needs the Chang algebra");
    return Ideal(alg, Kind::ChangRadical, {});
  }

  const Algebra& algebra() const { return alg_; }
  Kind kind() const { return kind_; }

  bool contains(const Element& e) const {
    if (!(e.algebra() == alg_)) throw input_error("carrier mismatch");
    switch (kind_) {
      case Kind::Explicit: return mask_[alg_.index_of(e)];
      case Kind::Zero: return e == alg_.zero();
      case Kind::ChangRadical: return !e.chang().upper;
      case Kind::Whole: return true;
    }
    return false;
  }

  bool is_zero() const {
    if (kind_ == Kind::Zero) return true;
    if (kind_ != Kind::Explicit) return false;
    return std::count(mask_.begin(), mask_.end(), true) == 1;
  }
  bool is_whole() const {
    if (kind_ == Kind::Whole) return true;
    if (kind_ != Kind::Explicit) return false;
    return std::count(mask_.begin(), mask_.end(), true) == static_cast<long>(mask_.size());
  }

  std::vector<Element> members() const {
    if (kind_ != Kind::Explicit) throw input_error("structural ideal has no finite member list");
    std::vector<Element> out;
    auto all = alg_.elements();
    for (std::size_t i = 0; i < all.size(); ++i)
      if (mask_[i]) out.push_back(all[i]);
    return out;
  }

  /// Subset test; structural ideals compare by the known Chang chain {0} < Rad < C.
  bool subset_of(const Ideal& other) const {
    if (kind_ == Kind::Explicit && other.kind_ == Kind::Explicit) {
      for (std::size_t i = 0; i < mask_.size(); ++i)
        if (mask_[i] && !other.mask_[i]) return false;
      return true;
    }
    auto rank = [](Kind k) { return k == Kind::Zero ? 0 : k == Kind::ChangRadical ? 1 : 2; };
    return rank(kind_) <= rank(other.kind_);
  }

  friend bool operator==(const Ideal& a, const Ideal& b) {
    if (!(a.alg_ == b.alg_)) return false;
    if (a.kind_ == Kind::Explicit && b.kind_ == Kind::Explicit) return a.mask_ == b.mask_;
    if (a.kind_ == Kind::Explicit || b.kind_ == Kind::Explicit) {
      return (a.is_zero() && b.is_zero()) || (a.is_whole() && b.is_whole());
    }
    return a.kind_ == b.kind_;
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::Zero: return "{0}";
      case Kind::Whole: return "whole";
      case Kind::ChangRadical: return "{lower(k) : k >= 0}";
      case Kind::Explicit: break;
    }
    std::string out = "{";
    bool first = true;
    for (const auto& m : members()) {
      out += (first ? "" : ", ") + m.str();
      first = false;
    }
    return out + "}";
  }

  /// Reason the ideal laws fail, if they do.
  std::optional<std::string> violation() const {
    if (kind_ != Kind::Explicit) return std::nullopt;
    auto all = alg_.elements();
    if (!contains(alg_.zero())) return "does not contain 0";
    for (const auto& x : all) {
      if (!contains(x)) continue;
      for (const auto& y : all) {
        if (leq(y, x) && !contains(y)) return "not downward closed at " + x.str() + " >= " + y.str();
        if (contains(y) && !contains(oplus(x, y)))
          return "not closed under (+) at " + x.str() + ", " + y.str();
      }
    }
    return std::nullopt;
  }

 private:
  Ideal(Algebra alg, Kind kind, std::vector<bool> mask)
      : alg_(std::move(alg)), kind_(kind), mask_(std::move(mask)) {}

  Algebra alg_;
  Kind kind_;
  std::vector<bool> mask_;
};

namespace detail {

inline void require_enumerable(const Algebra& alg) {
  auto sz = alg.size();
  if (!sz) throw input_error("unsupported carrier for enumeration: " + alg.describe());
  if (*sz > kMaxEnumeratedCarrier) {
    throw input_error("carrier of " + std::to_string(*sz) + " elements exceeds the enumeration cap of " +
                      std::to_string(kMaxEnumeratedCarrier));
  }
}

}  // namespace detail

inline std::vector<Ideal> ideals(const Algebra& alg) {
  if (alg.is_chang()) {
    return {Ideal::zero(alg), Ideal::chang_radical(alg), Ideal::whole(alg)};
  }
  detail::require_enumerable(alg);
  std::vector<Ideal> out;
  for (const auto& a : alg.elements()) {
    Ideal cand = Ideal::generated_by(a);
    if (std::none_of(out.begin(), out.end(), [&](const Ideal& i) { return i == cand; }))
      out.push_back(std::move(cand));
  }
  return out;
}

inline std::vector<Ideal> maximal_ideals(const Algebra& alg) {
  if (alg.is_chang()) return {Ideal::chang_radical(alg)};
  auto all = ideals(alg);
  std::vector<Ideal> out;
  for (const auto& i : all) {
    if (i.is_whole()) continue;
    bool dominated = std::any_of(all.begin(), all.end(), [&](const Ideal& j) {
      return !j.is_whole() && !(j == i) && i.subset_of(j);
    });
    if (!dominated) out.push_back(i);
  }
  return out;
}

inline Ideal radical(const Algebra& alg) {
  if (alg.is_chang()) return Ideal::chang_radical(alg);
  if (alg.is_standard() || (alg.is_functions() && !alg.is_finite())) return Ideal::zero(alg);
  auto maxes = maximal_ideals(alg);
  if (maxes.empty()) return Ideal::whole(alg);  // trivial algebra
  std::vector<Element> members;
  for (const auto& x : alg.elements())
    if (std::all_of(maxes.begin(), maxes.end(), [&](const Ideal& m) { return m.contains(x); }))
      members.push_back(x);
  return Ideal::from_members(alg, members);
}

inline bool is_semisimple(const Algebra& alg) { return radical(alg).is_zero(); }

/// A homomorphism between carriers together with a section choosing preimages.
struct Homomorphism {
  Algebra source;
  Algebra target;
  std::function<Element(const Element&)> map;
  /// Some preimage of an element of the image.
  std::function<Element(const Element&)> lift;

  Element operator()(const Element& a) const {
    if (!(a.algebra() == source)) throw input_error("carrier mismatch: map expects " + source.describe());
    return map(a);
  }
};

/// Identity on `alg`.
inline Homomorphism identity_map(const Algebra& alg) {
  auto id = [](const Element& a) { return a; };
  return {alg, alg, id, id};
}

/// The chain A/M, as values rank([a]) / (#classes - 1).
struct ChainFactor {
  std::string name;
  int denominator = 1;
  std::vector<Rational> value;  // indexed by element index
};

namespace detail {

inline std::string name_maximal_ideal(const Algebra& alg, const Ideal& m, std::size_t ordinal) {
  if (alg.is_functions()) {
    const auto& at = alg.atoms();
    for (std::size_t x = 0; x < at.size(); ++x) {
      bool vanishing = true;  // m == {f : f(x) = 0}
      for (const auto& f : alg.elements())
        if (m.contains(f) != (f.values()[x] == 0)) {
          vanishing = false;
          break;
        }
      if (vanishing) return at[x];
    }
  }
  return "M" + std::to_string(ordinal);
}

inline ChainFactor chain_factor(const Algebra& alg, const Ideal& m, const std::string& name) {
  auto all = alg.elements();
  std::vector<int> cls(all.size(), -1);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t r = 0; r < reps.size(); ++r)
      if (m.contains(dist(all[i], all[reps[r]]))) {
        cls[i] = static_cast<int>(r);
        break;
      }
    if (cls[i] < 0) {
      cls[i] = static_cast<int>(reps.size());
      reps.push_back(i);
    }
  }
  // [a] <= [b] iff a (.) b* in M; A/M is a chain so rank is a strict-below count.
  std::vector<int> rank(reps.size(), 0);
  for (std::size_t r = 0; r < reps.size(); ++r)
    for (std::size_t q = 0; q < reps.size(); ++q)
      if (q != r && m.contains(odot(all[reps[q]], neg(all[reps[r]])))) ++rank[r];
  ChainFactor out;
  out.name = name;
  out.denominator = std::max<int>(1, static_cast<int>(reps.size()) - 1);
  out.value.resize(all.size());
  for (std::size_t i = 0; i < all.size(); ++i)
    out.value[i] = make_rational(rank[cls[i]], out.denominator);
  return out;
}

/// Product of the chain factors for `maxes`, as a map into a FunctionAlgebra.
inline Homomorphism product_of_factors(const Algebra& alg, const std::vector<Ideal>& maxes,
                                       const std::vector<std::size_t>& ordinals) {
  std::vector<ChainFactor> factors;
  std::vector<std::string> names;
  int denom = 1;
  for (std::size_t i = 0; i < maxes.size(); ++i) {
    factors.push_back(chain_factor(alg, maxes[i], name_maximal_ideal(alg, maxes[i], ordinals[i])));
    names.push_back(factors.back().name);
    denom = std::lcm(denom, factors.back().denominator);
  }
  Signature sig{alg.has_product() && denom == 1, false};
  Algebra target = Algebra::functions(names, denom, sig);
  auto map = [alg, target, factors](const Element& a) {
    std::size_t idx = alg.index_of(a);
    std::vector<Rational> vals;
    for (const auto& f : factors) vals.push_back(f.value[idx]);
    return target.function(std::move(vals));
  };
  std::map<std::vector<Rational>, Element> preimage;
  for (const auto& a : alg.elements()) preimage.emplace(map(a).values(), a);
  auto lift = [preimage](const Element& b) {
    auto it = preimage.find(b.values());
    if (it == preimage.end()) throw input_error("element " + b.str() + " is not in the image");
    return it->second;
  };
  return {alg, target, map, lift};
}

}  // namespace detail

/// The canonical epimorphism A -> A/I, with a the class map a ~ b iff d(a,b) in I.
inline Homomorphism quotient(const Algebra& alg, const Ideal& ideal) {
  if (!(ideal.algebra() == alg)) throw input_error("ideal belongs to another algebra");
  if (auto why = ideal.violation()) throw input_error("not an ideal: " + *why);
  if (ideal.is_zero()) return identity_map(alg);
  if (ideal.is_whole()) {
    Algebra trivial = Algebra::functions({}, 1);
    return {alg, trivial, [trivial](const Element&) { return trivial.zero(); },
            [alg](const Element&) { return alg.zero(); }};
  }
  if (alg.is_chang()) {
    Algebra two = Algebra::chain(1);
    return {alg, two,
            [two](const Element& a) { return a.chang().upper ? two.one() : two.zero(); },
            [alg](const Element& b) { return b == b.algebra().one() ? alg.one() : alg.zero(); }};
  }
  detail::require_enumerable(alg);
  // Finite A is the product of its chains A/M, and A/I the product over M containing I.
  std::vector<Ideal> over;
  std::vector<std::size_t> ordinals;
  auto maxes = maximal_ideals(alg);
  for (std::size_t i = 0; i < maxes.size(); ++i)
    if (ideal.subset_of(maxes[i])) {
      over.push_back(maxes[i]);
      ordinals.push_back(i);
    }
  Homomorphism h = detail::product_of_factors(alg, over, ordinals);
  if (h.target.atoms().size() != 1) return h;
  // A single factor is itself a chain.
  Algebra chain = Algebra::chain(*h.target.function_carrier().chain, alg.has_product() &&
                                                                        *h.target.function_carrier().chain == 1);
  auto fa = h.target;
  auto map = h.map;
  auto lift = h.lift;
  return {alg, chain, [map, chain](const Element& a) { return chain.value(map(a).values()[0]); },
          [lift, fa](const Element& b) { return lift(fa.function({b.scalar()})); }};
}

struct SemisimpleEmbedding {
  Homomorphism map;  // A -> FunctionAlgebra over Max(A)
  bool injective = false;
};

/// a |-> (a/M)_M with each A/M identified with a subchain of [0,1].
inline SemisimpleEmbedding semisimple_embedding(const Algebra& alg) {
  if (alg.is_chang()) {
    Algebra target = Algebra::functions({"M0"}, 1);
    Homomorphism h{alg, target,
                   [target](const Element& a) { return target.constant(a.chang().upper ? 1 : 0); },
                   [alg](const Element& b) { return b.values()[0] == 1 ? alg.one() : alg.zero(); }};
    return {h, false};
  }
  if (alg.is_standard()) {
    Algebra target = Algebra::functions({"M0"}, std::nullopt, alg.signature());
    Homomorphism h{alg, target, [target](const Element& a) { return target.constant(a.scalar()); },
                   [alg](const Element& b) { return alg.value(b.values()[0]); }};
    return {h, true};
  }
  if (alg.is_functions() && !alg.is_finite()) return {identity_map(alg), true};
  detail::require_enumerable(alg);
  auto maxes = maximal_ideals(alg);
  std::vector<std::size_t> ordinals(maxes.size());
  std::iota(ordinals.begin(), ordinals.end(), 0);
  Homomorphism h = detail::product_of_factors(alg, maxes, ordinals);
  std::map<std::vector<Rational>, int> seen;
  bool injective = true;
  for (const auto& a : alg.elements())
    if (++seen[h.map(a).values()] > 1) injective = false;
  return {h, injective};
}

}  // namespace mvp
