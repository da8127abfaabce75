#pragma once

// States, faithfulness, the state pseudo-metric, divisible extension and the
// null-ideal quotient.

#include "mvprob/hull.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace mvp {

/// Normalized weights over named atoms.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  DiscreteMeasure(std::vector<std::string> atoms, std::vector<Rational> weights)
      : atoms_(std::move(atoms)), weights_(std::move(weights)) {
    if (atoms_.size() != weights_.size()) throw input_error("measure needs one weight per atom");
    Rational total(0);
    for (auto& w : weights_) {
      w.canonicalize();
      if (!in_unit_interval(w)) throw input_error("measure weight " + w.get_str() + " outside [0,1]");
      total += w;
    }
    if (total != 1) throw input_error("measure weights sum to " + total.get_str() + ", not 1");
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      for (std::size_t j = i + 1; j < atoms_.size(); ++j)
        if (atoms_[i] == atoms_[j]) throw input_error("duplicate atom '" + atoms_[i] + "'");
  }

  static DiscreteMeasure uniform(std::vector<std::string> atoms) {
    std::vector<Rational> w(atoms.size(), make_rational(1, static_cast<long>(atoms.size())));
    return DiscreteMeasure(std::move(atoms), std::move(w));
  }

  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::vector<Rational>& weights() const { return weights_; }
  std::size_t size() const { return atoms_.size(); }

  bool strictly_positive() const {
    return std::all_of(weights_.begin(), weights_.end(), [](const Rational& w) { return w > 0; });
  }

  /// Sum of f(x) mu(x) over atoms.
  Rational integrate(const std::vector<Rational>& f) const {
    if (f.size() != weights_.size()) throw input_error("integrand has wrong number of atoms");
    Rational out(0);
    for (std::size_t i = 0; i < f.size(); ++i) out += f[i] * weights_[i];
    return out;
  }

  friend bool operator==(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    return a.atoms_ == b.atoms_ && a.weights_ == b.weights_;
  }

 private:
  std::vector<std::string> atoms_;
  std::vector<Rational> weights_;
};

class State;

namespace detail {
struct MeasureRule {
  DiscreteMeasure mu;
};
struct IdentityRule {};
struct ChangFirstRule {};
struct TableRule {
  std::vector<Rational> values;  // indexed by Algebra::index_of
};
struct ExtensionRule {
  std::shared_ptr<const DivisibleHull> hull;
  std::shared_ptr<const State> base;
};
}  // namespace detail

/// A normalized linear functional s : A -> [0,1].
class State {
 public:
  using Rule = std::variant<detail::MeasureRule, detail::IdentityRule, detail::ChangFirstRule,
                            detail::TableRule, detail::ExtensionRule>;

  /// s(f) = sum f(x) mu(x) on a FunctionAlgebra with the measure's atoms.
  static State measure(const Algebra& alg, DiscreteMeasure mu) {
    if (!alg.is_functions()) throw input_error("measure states live on function algebras");
    if (alg.atoms() != mu.atoms()) throw input_error("measure atoms do not match the algebra's atoms");
    return State(alg, detail::MeasureRule{std::move(mu)});
  }

  static State identity(const Algebra& alg) {
    if (!alg.is_standard()) throw input_error("identity state lives on StandardUnit");
    return State(alg, detail::IdentityRule{});
  }

  static State chang_first_coordinate(const Algebra& alg) {
    if (!alg.is_chang()) throw input_error("first-coordinate state lives on Chang");
    return State(alg, detail::ChangFirstRule{});
  }

  /// Explicit values indexed like alg.elements(); rejected unless linear with s(1) = 1.
  static State table(const Algebra& alg, std::vector<Rational> values) {
    auto sz = alg.size();
    if (!sz) throw input_error("table states need a finite carrier");
    if (values.size() != *sz) throw input_error("state table needs one value per element");
    for (auto& v : values) {
      v.canonicalize();
      if (!in_unit_interval(v)) throw input_error("state value " + v.get_str() + " outside [0,1]");
    }
    State s(alg, detail::TableRule{std::move(values)});
    if (auto why = s.linearity_violation()) throw input_error("invalid state table: " + *why);
    return s;
  }

  /// The unique state of FiniteChain(n), k/n |-> k/n.
  static State chain_identity(const Algebra& alg) {
    if (!alg.is_chain()) throw input_error("chain_identity needs a FiniteChain");
    std::vector<Rational> v;
    for (const auto& e : alg.elements()) v.push_back(e.scalar());
    return table(alg, std::move(v));
  }

  static State extension(std::shared_ptr<const DivisibleHull> hull, std::shared_ptr<const State> base) {
    Algebra amb = hull->ambient();
    return State(amb, detail::ExtensionRule{std::move(hull), std::move(base)});
  }

  const Algebra& algebra() const { return alg_; }
  const Rule& rule() const { return rule_; }

  bool is_measure() const { return std::holds_alternative<detail::MeasureRule>(rule_); }
  bool is_table() const { return std::holds_alternative<detail::TableRule>(rule_); }
  const DiscreteMeasure& measure_of() const { return std::get<detail::MeasureRule>(rule_).mu; }
  const std::vector<Rational>& table_values() const { return std::get<detail::TableRule>(rule_).values; }

  std::string rule_name() const {
    switch (rule_.index()) {
      case 0: return "measure";
      case 1: return "identity";
      case 2: return "chang-first-coordinate";
      case 3: return "table";
      default: return "divisible-extension";
    }
  }

  Rational operator()(const Element& a) const {
    if (!(a.algebra() == alg_)) {
      throw input_error("carrier mismatch: state on " + alg_.describe() + ", element in " +
                        a.algebra().describe());
    }
    return std::visit(
        [&](const auto& r) -> Rational {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, detail::MeasureRule>) {
            return r.mu.integrate(a.values());
          } else if constexpr (std::is_same_v<T, detail::IdentityRule>) {
            return a.scalar();
          } else if constexpr (std::is_same_v<T, detail::ChangFirstRule>) {
            return Rational(a.chang().upper ? 1 : 0);
          } else if constexpr (std::is_same_v<T, detail::TableRule>) {
            return r.values[alg_.index_of(a)];
          } else {
            auto d = r.hull->decompose(a);
            if (!d) throw input_error(a.str() + " is not in the divisible hull");
            Rational sum(0);
            for (const auto& [term, mult] : d->terms) sum += (*r.base)(term) * Rational(mult);
            Rational out = sum / Rational(d->n);
            out.canonicalize();
            return out;
          }
        },
        rule_);
  }

  /// Exhaustive check of s(1) = 1 and s(a+b) = s(a) + s(b) on a finite carrier.
  std::optional<std::string> linearity_violation() const {
    if ((*this)(alg_.one()) != 1) return std::string("s(1) != 1");
    auto all = alg_.elements();
    for (const auto& a : all)
      for (const auto& b : all) {
        auto sum = partial_add(a, b);
        if (sum && (*this)(*sum) != (*this)(a) + (*this)(b))
          return "s(" + a.str() + " + " + b.str() + ") != s(a) + s(b)";
      }
    return std::nullopt;
  }

 private:
  State(Algebra alg, Rule rule) : alg_(std::move(alg)), rule_(std::move(rule)) {}

  Algebra alg_;
  Rule rule_;
};

inline Rational eval_state(const State& s, const Element& a) { return s(a); }

struct FaithfulReport {
  bool faithful = true;
  std::optional<Element> witness;  // nonzero element with state 0
};

inline FaithfulReport is_faithful(const State& s) {
  const Algebra& alg = s.algebra();
  if (alg.is_chang()) return {false, alg.lower(1)};
  if (alg.is_standard()) return {true, std::nullopt};
  if (alg.is_functions() && !s.is_table()) {
    // Measure or extension rule: faithful iff every atom indicator has positive state.
    for (std::size_t x = 0; x < alg.atoms().size(); ++x) {
      Element ind = alg.indicator(x);
      if (s(ind) == 0) return {false, ind};
    }
    return {true, std::nullopt};
  }
  if (!alg.is_finite()) throw input_error("faithfulness check needs a finite carrier or a measure rule");
  for (const auto& a : alg.elements())
    if (!(a == alg.zero()) && s(a) == 0) return {false, a};
  return {true, std::nullopt};
}

/// rho_s(a,b) = s(d(a,b)).
inline Rational rho(const State& s, const Element& a, const Element& b) { return s(dist(a, b)); }

/// Stable tail value of a sequence that is eventually rho_s-constant, with a
/// tail of at least min(min_tail, length) entries; empty when there is none.
inline std::optional<Element> sequence_limit(const State& s, const std::vector<Element>& seq,
                                             std::size_t min_tail = 2) {
  if (seq.empty()) return std::nullopt;
  const Element& last = seq.back();
  std::size_t tail = 0;
  for (std::size_t i = seq.size(); i-- > 0;) {
    if (rho(s, seq[i], last) != 0) break;
    ++tail;
  }
  if (tail < std::min(min_tail, seq.size())) return std::nullopt;
  return last;
}

/// For an ascending chain a_1 <= ... <= a_m: s(a_m) equals s of its join.
inline bool sigma_continuous_on(const State& s, const std::vector<Element>& chain) {
  if (chain.empty()) return true;
  Element sup = chain.front();
  for (std::size_t i = 1; i < chain.size(); ++i) {
    if (!leq(chain[i - 1], chain[i])) throw input_error("sequence is not ascending");
    sup = join(sup, chain[i]);
  }
  return s(chain.back()) == s(sup);
}

/// s^d on the divisible hull, s^d(a_1/n + ... + a_n/n) = (s(a_1) + ... + s(a_n))/n.
inline State extend_state_divisible(const State& s) {
  auto hull = std::make_shared<const DivisibleHull>(s.algebra());
  return State::extension(std::move(hull), std::make_shared<const State>(s));
}

struct StateQuotient {
  Homomorphism map;
  State state;
  /// True when the quotient is already rho-complete (finite carriers, Chang).
  bool complete = false;
};

/// Collapses the null ideal {a : s(a) = 0}; the induced state is faithful and
/// s = state o map.
inline StateQuotient state_quotient(const State& s) {
  const Algebra& alg = s.algebra();
  if (alg.is_chang()) {
    Homomorphism h = quotient(alg, Ideal::chang_radical(alg));
    return {h, State::chain_identity(h.target), true};
  }
  if (alg.is_standard()) return {identity_map(alg), s, false};
  if (alg.is_functions()) {
    std::vector<std::size_t> keep;
    for (std::size_t x = 0; x < alg.atoms().size(); ++x)
      if (s(alg.indicator(x)) > 0) keep.push_back(x);
    bool complete = alg.is_finite();
    if (keep.size() == alg.atoms().size()) return {identity_map(alg), s, complete};
    std::vector<std::string> names;
    std::vector<Rational> weights;
    for (auto x : keep) {
      names.push_back(alg.atoms()[x]);
      weights.push_back(s(alg.indicator(x)));
    }
    Algebra target = Algebra::functions(names, alg.function_carrier().chain, alg.signature());
    auto map = [target, keep](const Element& f) {
      std::vector<Rational> v;
      for (auto x : keep) v.push_back(f.values()[x]);
      return target.function(std::move(v));
    };
    auto lift = [alg, keep](const Element& g) {
      std::vector<Rational> v(alg.atoms().size(), Rational(0));
      for (std::size_t i = 0; i < keep.size(); ++i) v[keep[i]] = g.values()[i];
      return alg.function(std::move(v));
    };
    return {{alg, target, map, lift}, State::measure(target, DiscreteMeasure(names, weights)), complete};
  }
  // FiniteChain: every state is the faithful identity; still route through the null ideal.
  std::vector<Element> null;
  for (const auto& a : alg.elements())
    if (s(a) == 0) null.push_back(a);
  Ideal ideal = Ideal::from_members(alg, null);
  Homomorphism h = quotient(alg, ideal);
  std::vector<Rational> vals;
  for (const auto& b : h.target.elements()) vals.push_back(s(h.lift(b)));
  return {h, State::table(h.target, std::move(vals)), true};
}

}  // namespace mvp
