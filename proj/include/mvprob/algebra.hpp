#pragma once

// Carriers, elements and the MV / PMV / Riesz operations on them.
//
// Every carrier is realised inside an exact model:
//   StandardUnit       rationals in [0,1], a (+) b = min(a+b, 1), a* = 1-a
//   FiniteChain(n)     {0, 1/n, ..., 1} with the same operations
//   FunctionAlgebra    atom-indexed vectors over one of the two above, pointwise
//   Chang              Gamma(Z x_lex Z, (1,0)); lower(k) = k*eps, upper(k) = 1 - k*eps
//
// Values are immutable; all operations are pure.

#include "mvprob/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mvp {

struct StandardUnit {
  bool operator==(const StandardUnit&) const = default;
};

struct FiniteChain {
  int n = 1;
  bool operator==(const FiniteChain&) const = default;
};

struct FunctionCarrier {
  std::vector<std::string> atoms;
  /// Denominator of the value chain; empty means values range over StandardUnit.
  std::optional<int> chain;
  bool operator==(const FunctionCarrier&) const = default;
};

struct Chang {
  bool operator==(const Chang&) const = default;
};

using Carrier = std::variant<StandardUnit, FiniteChain, FunctionCarrier, Chang>;

struct Signature {
  bool internal_product = false;
  bool scalar_action = false;
  bool operator==(const Signature&) const = default;
};

/// Chang element in Z x_lex Z coordinates is (upper ? 1 : 0, upper ? -k : k).
struct ChangValue {
  bool upper = false;
  std::int64_t k = 0;
  bool operator==(const ChangValue&) const = default;
};

class Element;

/// Immutable handle to a carrier plus signature flags. Cheap to copy.
class Algebra {
 public:
  Algebra() : Algebra(StandardUnit{}, {}) {}

  static Algebra standard(Signature sig = {}) { return Algebra(StandardUnit{}, sig); }
  static Algebra chain(int n, bool product = false) {
    if (n < 1) throw input_error("FiniteChain requires n >= 1");
    return Algebra(FiniteChain{n}, Signature{product, false});
  }
  /// `chain` empty selects StandardUnit values.
  static Algebra functions(std::vector<std::string> atoms, std::optional<int> chain,
                           Signature sig = {}) {
    if (chain && *chain < 1) throw input_error("value chain requires n >= 1");
    for (std::size_t i = 0; i < atoms.size(); ++i)
      for (std::size_t j = i + 1; j < atoms.size(); ++j)
        if (atoms[i] == atoms[j]) throw input_error("duplicate atom '" + atoms[i] + "'");
    return Algebra(FunctionCarrier{std::move(atoms), chain}, sig);
  }
  static Algebra chang() { return Algebra(Chang{}, {}); }

  const Carrier& carrier() const { return impl_->carrier; }
  const Signature& signature() const { return impl_->sig; }
  bool has_product() const { return impl_->sig.internal_product; }
  bool has_scalars() const { return impl_->sig.scalar_action; }

  bool is_standard() const { return std::holds_alternative<StandardUnit>(carrier()); }
  bool is_chain() const { return std::holds_alternative<FiniteChain>(carrier()); }
  bool is_functions() const { return std::holds_alternative<FunctionCarrier>(carrier()); }
  bool is_chang() const { return std::holds_alternative<Chang>(carrier()); }

  int chain_n() const { return std::get<FiniteChain>(carrier()).n; }
  const FunctionCarrier& function_carrier() const { return std::get<FunctionCarrier>(carrier()); }
  const std::vector<std::string>& atoms() const { return function_carrier().atoms; }

  /// Denominator every value must be a multiple of, or empty for unrestricted rationals.
  std::optional<int> value_grid() const {
    if (is_chain()) return chain_n();
    if (is_functions()) return function_carrier().chain;
    return std::nullopt;
  }

  bool is_finite() const {
    if (is_chain()) return true;
    if (is_functions()) return function_carrier().chain.has_value() || atoms().empty();
    return false;
  }

  /// Number of elements, empty for infinite carriers (or sizes beyond 2^63).
  std::optional<std::size_t> size() const {
    if (is_chain()) return static_cast<std::size_t>(chain_n()) + 1;
    if (!is_finite()) return std::nullopt;
    const auto& fc = function_carrier();
    std::size_t base = fc.chain ? static_cast<std::size_t>(*fc.chain) + 1 : 1;
    std::size_t out = 1;
    for (std::size_t i = 0; i < fc.atoms.size(); ++i) {
      if (out > (std::size_t{1} << 62) / base) return std::nullopt;
      out *= base;
    }
    return out;
  }

  std::string describe() const {
    std::ostringstream os;
    std::visit(
        [&](const auto& c) {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, StandardUnit>) {
            os << "StandardUnit";
          } else if constexpr (std::is_same_v<T, FiniteChain>) {
            os << "FiniteChain(" << c.n << ")";
          } else if constexpr (std::is_same_v<T, FunctionCarrier>) {
            os << "FunctionAlgebra[";
            for (std::size_t i = 0; i < c.atoms.size(); ++i) os << (i ? "," : "") << c.atoms[i];
            os << "; " << (c.chain ? "FiniteChain(" + std::to_string(*c.chain) + ")" : "StandardUnit")
               << "]";
          } else {
            os << "Chang";
          }
        },
        carrier());
    return os.str();
  }

  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.impl_ == b.impl_ || (a.carrier() == b.carrier() && a.signature() == b.signature());
  }

  Element zero() const;
  Element one() const;
  Element value(const Rational& v) const;
  Element level(int k) const;
  Element function(std::vector<Rational> values) const;
  Element constant(const Rational& v) const;
  Element indicator(std::size_t atom) const;
  Element lower(std::int64_t k) const;
  Element upper(std::int64_t k) const;

  /// All elements in canonical index order (finite carriers only).
  std::vector<Element> elements() const;
  std::size_t index_of(const Element& e) const;
  Element random(Rng& rng, long max_den = 32) const;

  std::size_t atom_index(const std::string& name) const {
    const auto& at = atoms();
    auto it = std::find(at.begin(), at.end(), name);
    if (it == at.end()) throw input_error("unknown atom '" + name + "'");
    return static_cast<std::size_t>(it - at.begin());
  }

 private:
  Algebra(Carrier c, Signature sig) {
    bool divisible = std::holds_alternative<StandardUnit>(c) ||
                     (std::holds_alternative<FunctionCarrier>(c) &&
                      !std::get<FunctionCarrier>(c).chain.has_value());
    bool boolean_values =
        (std::holds_alternative<FiniteChain>(c) && std::get<FiniteChain>(c).n == 1) ||
        (std::holds_alternative<FunctionCarrier>(c) && std::get<FunctionCarrier>(c).chain == 1);
    if (sig.scalar_action && !divisible) {
      throw input_error("scalar action requires a divisible carrier");
    }
    if (sig.internal_product && !(divisible || boolean_values)) {
      throw input_error("internal product is not closed on this carrier");
    }
    impl_ = std::make_shared<const Impl>(Impl{std::move(c), sig});
  }

  struct Impl {
    Carrier carrier;
    Signature sig;
  };
  std::shared_ptr<const Impl> impl_;
};

using Payload = std::variant<Rational, std::vector<Rational>, ChangValue>;

/// A carrier-tagged value. Construct through Algebra's factory methods.
class Element {
 public:
  Element(Algebra alg, Payload p) : alg_(std::move(alg)), payload_(std::move(p)) { validate(); }

  const Algebra& algebra() const { return alg_; }
  const Payload& payload() const { return payload_; }

  /// Value on StandardUnit / FiniteChain.
  const Rational& scalar() const { return std::get<Rational>(payload_); }
  /// Atom values on a FunctionAlgebra.
  const std::vector<Rational>& values() const { return std::get<std::vector<Rational>>(payload_); }
  const ChangValue& chang() const { return std::get<ChangValue>(payload_); }

  /// Chain level k with value k/n.
  int level() const {
    Rational r = scalar() * alg_.chain_n();
    return static_cast<int>(r.get_num().get_si());
  }

  friend bool operator==(const Element& a, const Element& b) {
    return a.payload_ == b.payload_ && a.alg_ == b.alg_;
  }

  std::string str() const {
    return std::visit(
        [](const auto& p) -> std::string {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, Rational>) {
            return p.get_str();
          } else if constexpr (std::is_same_v<T, std::vector<Rational>>) {
            std::string out = "(";
            for (std::size_t i = 0; i < p.size(); ++i) out += (i ? ", " : "") + p[i].get_str();
            return out + ")";
          } else {
            return std::string(p.upper ? "upper(" : "lower(") + std::to_string(p.k) + ")";
          }
        },
        payload_);
  }

 private:
  void validate() const {
    auto check_value = [&](const Rational& v) {
      if (!in_unit_interval(v)) throw input_error("value " + v.get_str() + " outside [0,1]");
      if (auto grid = alg_.value_grid()) {
        Rational scaled = v * *grid;
        if (scaled.get_den() != 1) {
          throw input_error("value " + v.get_str() + " not on the chain grid 1/" +
                            std::to_string(*grid));
        }
      }
    };
    if (alg_.is_standard() || alg_.is_chain()) {
      if (!std::holds_alternative<Rational>(payload_)) throw input_error("payload shape mismatch");
      check_value(scalar());
    } else if (alg_.is_functions()) {
      if (!std::holds_alternative<std::vector<Rational>>(payload_))
        throw input_error("payload shape mismatch");
      if (values().size() != alg_.atoms().size())
        throw input_error("function needs exactly one value per atom");
      for (const auto& v : values()) check_value(v);
    } else {
      if (!std::holds_alternative<ChangValue>(payload_)) throw input_error("payload shape mismatch");
      if (chang().k < 0) throw input_error("Chang index must be >= 0");
    }
  }

  Algebra alg_;
  Payload payload_;
};

// ---------------------------------------------------------------------------
// Element factories

inline Element Algebra::zero() const { return constant(0); }
inline Element Algebra::one() const { return constant(1); }

inline Element Algebra::constant(const Rational& v) const {
  if (is_chang()) {
    if (v == 0) return lower(0);
    if (v == 1) return upper(0);
    throw input_error("Chang has no constant " + v.get_str());
  }
  if (is_functions()) return Element(*this, std::vector<Rational>(atoms().size(), v));
  return Element(*this, v);
}

inline Element Algebra::value(const Rational& v) const {
  if (!(is_standard() || is_chain())) throw input_error("value() needs a scalar carrier");
  return Element(*this, v);
}

inline Element Algebra::level(int k) const {
  if (!is_chain()) throw input_error("level() needs a FiniteChain");
  if (k < 0 || k > chain_n()) throw input_error("chain level out of range");
  return Element(*this, make_rational(k, chain_n()));
}

inline Element Algebra::function(std::vector<Rational> vals) const {
  if (!is_functions()) throw input_error("function() needs a FunctionAlgebra");
  for (auto& v : vals) v.canonicalize();
  return Element(*this, std::move(vals));
}

inline Element Algebra::indicator(std::size_t atom) const {
  std::vector<Rational> v(atoms().size(), Rational(0));
  v.at(atom) = 1;
  return function(std::move(v));
}

inline Element Algebra::lower(std::int64_t k) const {
  if (!is_chang()) throw input_error("lower() needs the Chang algebra");
  return Element(*this, ChangValue{false, k});
}

inline Element Algebra::upper(std::int64_t k) const {
  if (!is_chang()) throw input_error("upper() needs the Chang algebra");
  return Element(*this, ChangValue{true, k});
}

inline std::vector<Element> Algebra::elements() const {
  auto sz = size();
  if (!sz) throw input_error("cannot enumerate infinite carrier " + describe());
  std::vector<Element> out;
  out.reserve(*sz);
  if (is_chain()) {
    for (int k = 0; k <= chain_n(); ++k) out.push_back(level(k));
    return out;
  }
  const auto& fc = function_carrier();
  int n = fc.chain.value_or(1);
  std::size_t m = fc.atoms.size();
  std::vector<int> digits(m, 0);
  for (std::size_t idx = 0; idx < *sz; ++idx) {
    std::vector<Rational> vals(m);
    for (std::size_t i = 0; i < m; ++i) vals[i] = make_rational(digits[i], n);
    out.push_back(Element(*this, std::move(vals)));
    // Mixed radix, atom 0 most significant.
    for (std::size_t i = m; i-- > 0;) {
      if (++digits[i] <= n) break;
      digits[i] = 0;
    }
  }
  return out;
}

inline std::size_t Algebra::index_of(const Element& e) const {
  if (!(e.algebra() == *this)) throw input_error("carrier mismatch");
  if (!is_finite()) throw input_error("index_of on infinite carrier");
  if (is_chain()) return static_cast<std::size_t>(e.level());
  int n = function_carrier().chain.value_or(1);
  std::size_t idx = 0;
  for (const auto& v : e.values()) {
    Rational scaled = v * n;
    idx = idx * static_cast<std::size_t>(n + 1) + scaled.get_num().get_ui();
  }
  return idx;
}

inline Element Algebra::random(Rng& rng, long max_den) const {
  if (is_chang()) {
    std::uniform_int_distribution<int> side(0, 1);
    std::uniform_int_distribution<std::int64_t> k(0, 16);
    bool up = side(rng) == 1;
    return Element(*this, ChangValue{up, k(rng)});
  }
  auto draw = [&]() -> Rational {
    if (auto grid = value_grid()) {
      std::uniform_int_distribution<int> lv(0, *grid);
      return make_rational(lv(rng), *grid);
    }
    return random_unit_rational(rng, max_den);
  };
  if (is_functions()) {
    std::vector<Rational> vals;
    for (std::size_t i = 0; i < atoms().size(); ++i) vals.push_back(draw());
    return Element(*this, std::move(vals));
  }
  return Element(*this, draw());
}

// ---------------------------------------------------------------------------
// Operations

namespace detail {

inline void require_same(const Element& a, const Element& b) {
  if (!(a.algebra() == b.algebra())) {
    throw input_error("carrier mismatch: " + a.algebra().describe() + " vs " +
                      b.algebra().describe());
  }
}

inline std::pair<std::int64_t, std::int64_t> chang_pair(const ChangValue& c) {
  return c.upper ? std::pair<std::int64_t, std::int64_t>{1, -c.k}
                 : std::pair<std::int64_t, std::int64_t>{0, c.k};
}

inline ChangValue chang_from_pair(std::pair<std::int64_t, std::int64_t> p) {
  // Truncate to [0, u] with u = (1,0) in the lexicographic order.
  if (p > std::pair<std::int64_t, std::int64_t>{1, 0}) return ChangValue{true, 0};
  if (p < std::pair<std::int64_t, std::int64_t>{0, 0}) return ChangValue{false, 0};
  if (p.first == 0) return ChangValue{false, p.second};
  if (p.first == 1) return ChangValue{true, -p.second};
  return ChangValue{true, 0};
}

template <class RatOp, class ChangOp>
Element lift2(const Element& a, const Element& b, RatOp rop, ChangOp cop) {
  require_same(a, b);
  const Algebra& alg = a.algebra();
  if (alg.is_chang()) return Element(alg, cop(a.chang(), b.chang()));
  if (alg.is_functions()) {
    const auto& x = a.values();
    const auto& y = b.values();
    std::vector<Rational> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = rop(x[i], y[i]);
    return Element(alg, std::move(out));
  }
  return Element(alg, rop(a.scalar(), b.scalar()));
}

}  // namespace detail

inline Element oplus(const Element& a, const Element& b) {
  return detail::lift2(
      a, b, [](const Rational& x, const Rational& y) { return rmin(x + y, 1); },
      [](const ChangValue& x, const ChangValue& y) {
        auto p = detail::chang_pair(x);
        auto q = detail::chang_pair(y);
        return detail::chang_from_pair({p.first + q.first, p.second + q.second});
      });
}

inline Element neg(const Element& a) {
  const Algebra& alg = a.algebra();
  if (alg.is_chang()) return Element(alg, ChangValue{!a.chang().upper, a.chang().k});
  if (alg.is_functions()) {
    std::vector<Rational> out;
    out.reserve(a.values().size());
    for (const auto& v : a.values()) out.emplace_back(1 - v);
    return Element(alg, std::move(out));
  }
  return Element(alg, Rational(1 - a.scalar()));
}

/// a (.) b = (a* (+) b*)*
inline Element odot(const Element& a, const Element& b) { return neg(oplus(neg(a), neg(b))); }

/// a v b = (a* (+) b)* (+) b
inline Element join(const Element& a, const Element& b) { return oplus(neg(oplus(neg(a), b)), b); }

/// a ^ b = (a* v b*)*
inline Element meet(const Element& a, const Element& b) { return neg(join(neg(a), neg(b))); }

/// a <= b iff a* (+) b = 1.
inline bool leq(const Element& a, const Element& b) {
  return oplus(neg(a), b) == a.algebra().one();
}

/// d(a,b) = (a (.) b*) (+) (b (.) a*)
inline Element dist(const Element& a, const Element& b) {
  return oplus(odot(a, neg(b)), odot(b, neg(a)));
}

/// a + b, defined iff a <= b*.
inline std::optional<Element> partial_add(const Element& a, const Element& b) {
  detail::require_same(a, b);
  if (!leq(a, neg(b))) return std::nullopt;
  return oplus(a, b);
}

/// n-fold partial sum; undefined as soon as one step is.
inline std::optional<Element> nat_mul(unsigned n, const Element& a) {
  if (n < 1) throw input_error("nat_mul requires n >= 1");
  Element acc = a;
  for (unsigned i = 1; i < n; ++i) {
    auto next = partial_add(acc, a);
    if (!next) return std::nullopt;
    acc = *next;
  }
  return acc;
}

inline Element nat_oplus(unsigned n, const Element& a) {
  if (n < 1) throw input_error("nat_oplus requires n >= 1");
  Element acc = a;
  for (unsigned i = 1; i < n; ++i) acc = oplus(acc, a);
  return acc;
}

inline Element scalar_mul(const Rational& alpha, const Element& a) {
  const Algebra& alg = a.algebra();
  if (!alg.has_scalars()) throw input_error("scalar action not in signature of " + alg.describe());
  if (!in_unit_interval(alpha)) throw input_error("scalar outside [0,1]");
  if (alg.is_functions()) {
    std::vector<Rational> out;
    for (const auto& v : a.values()) out.emplace_back(alpha * v);
    return Element(alg, std::move(out));
  }
  return Element(alg, Rational(alpha * a.scalar()));
}

inline Element prod(const Element& a, const Element& b) {
  detail::require_same(a, b);
  if (!a.algebra().has_product()) {
    throw input_error("internal product not in signature of " + a.algebra().describe());
  }
  return detail::lift2(
      a, b, [](const Rational& x, const Rational& y) { return Rational(x * y); },
      [](const ChangValue& x, const ChangValue&) { return x; });
}

/// a^p for integer p >= 1 by iterated product.
inline Element power(const Element& a, unsigned p) {
  if (p < 1) throw input_error("power requires p >= 1");
  Element acc = a;
  for (unsigned i = 1; i < p; ++i) acc = prod(acc, a);
  return acc;
}

}  // namespace mvp
