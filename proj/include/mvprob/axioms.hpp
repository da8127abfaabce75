#pragma once

// Axiom verification for MV, PMV, Riesz MV and fMV structures.
//
// The checker is generic over a "structure": anything exposing oplus / neg /
// zero (and optionally prod / scalar) on some value type. Real carriers are
// wrapped by AlgebraStructure; TableStructure holds arbitrary finite operation
// tables so that corrupted candidates can be fed through the same machinery.

#include "mvprob/algebra.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mvp {

enum class AxiomLevel { MV, PMV, RMV, fMV };

inline std::string to_string(AxiomLevel l) {
  switch (l) {
    case AxiomLevel::MV: return "MV";
    case AxiomLevel::PMV: return "PMV";
    case AxiomLevel::RMV: return "RMV";
    case AxiomLevel::fMV: return "fMV";
  }
  return "?";
}

inline AxiomLevel parse_axiom_level(const std::string& s) {
  if (s == "MV") return AxiomLevel::MV;
  if (s == "PMV") return AxiomLevel::PMV;
  if (s == "RMV") return AxiomLevel::RMV;
  if (s == "fMV") return AxiomLevel::fMV;
  throw input_error("unknown axiom level '" + s + "'");
}

struct CheckMode {
  enum class Kind { Exhaustive, Sample, Bounded };
  Kind kind = Kind::Exhaustive;
  std::size_t count = 10000;
  std::uint64_t seed = 0;
  /// Bounded: every Chang element lower(k), upper(k) with k <= bound.
  std::int64_t bound = 0;

  static CheckMode exhaustive() { return {}; }
  static CheckMode sample(std::size_t count, std::uint64_t seed) {
    return {Kind::Sample, count, seed, 0};
  }
  static CheckMode bounded(std::int64_t bound) { return {Kind::Bounded, 0, 0, bound}; }
};

struct AxiomReport {
  bool pass = true;
  std::string axiom;                 // violated axiom, empty on pass
  std::vector<std::string> witness;  // "a=..." entries of the counterexample
  std::size_t checks = 0;
};

/// Adapts an Algebra to the checker.
class AlgebraStructure {
 public:
  using value_type = Element;

  explicit AlgebraStructure(Algebra alg) : alg_(std::move(alg)) {}

  std::string name() const { return alg_.describe(); }
  bool is_finite() const { return alg_.is_finite(); }
  bool has_product() const { return alg_.has_product(); }
  bool has_scalars() const { return alg_.has_scalars(); }
  bool supports_bounded() const { return alg_.is_chang(); }

  std::vector<Element> elements() const { return alg_.elements(); }
  std::vector<Element> bounded_elements(std::int64_t bound) const {
    std::vector<Element> out;
    for (std::int64_t k = 0; k <= bound; ++k) out.push_back(alg_.lower(k));
    for (std::int64_t k = 0; k <= bound; ++k) out.push_back(alg_.upper(k));
    return out;
  }
  Element sample(Rng& rng) const { return alg_.random(rng); }

  Element zero() const { return alg_.zero(); }
  Element oplus(const Element& a, const Element& b) const { return mvp::oplus(a, b); }
  Element neg(const Element& a) const { return mvp::neg(a); }
  Element prod(const Element& a, const Element& b) const { return mvp::prod(a, b); }
  Element scalar(const Rational& alpha, const Element& a) const { return scalar_mul(alpha, a); }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  std::string show(const Element& a) const { return a.str(); }

 private:
  Algebra alg_;
};

/// Finite candidate structure given by explicit operation tables over {0..size-1};
/// element 0 is the zero.
class TableStructure {
 public:
  using value_type = int;

  TableStructure(std::string name, std::vector<std::vector<int>> oplus_table,
                 std::vector<int> neg_table, std::vector<std::vector<int>> prod_table = {})
      : name_(std::move(name)),
        oplus_(std::move(oplus_table)),
        neg_(std::move(neg_table)),
        prod_(std::move(prod_table)) {
    auto n = neg_.size();
    if (n == 0) throw input_error("table structure needs at least one element");
    auto check_square = [&](const std::vector<std::vector<int>>& t, const char* what) {
      if (t.size() != n) throw input_error(std::string(what) + " table has wrong row count");
      for (const auto& row : t) {
        if (row.size() != n) throw input_error(std::string(what) + " table is not square");
        for (int v : row)
          if (v < 0 || static_cast<std::size_t>(v) >= n)
            throw input_error(std::string(what) + " table entry out of range");
      }
    };
    check_square(oplus_, "oplus");
    if (!prod_.empty()) check_square(prod_, "prod");
    for (int v : neg_)
      if (v < 0 || static_cast<std::size_t>(v) >= n) throw input_error("neg entry out of range");
  }

  /// The chain {0, 1/n, ..., 1} as tables (level indices).
  static TableStructure chain(int n) {
    std::vector<std::vector<int>> op(n + 1, std::vector<int>(n + 1));
    std::vector<int> ng(n + 1);
    for (int i = 0; i <= n; ++i) {
      ng[i] = n - i;
      for (int j = 0; j <= n; ++j) op[i][j] = std::min(i + j, n);
    }
    return TableStructure("chain(" + std::to_string(n) + ")", op, ng);
  }

  const std::string& name() const { return name_; }
  std::size_t size() const { return neg_.size(); }
  const std::vector<std::vector<int>>& oplus_table() const { return oplus_; }
  const std::vector<int>& neg_table() const { return neg_; }
  const std::vector<std::vector<int>>& prod_table() const { return prod_; }

  bool is_finite() const { return true; }
  bool has_product() const { return !prod_.empty(); }
  bool has_scalars() const { return false; }
  bool supports_bounded() const { return false; }

  std::vector<int> elements() const {
    std::vector<int> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = static_cast<int>(i);
    return out;
  }
  std::vector<int> bounded_elements(std::int64_t) const { return elements(); }
  int sample(Rng& rng) const {
    std::uniform_int_distribution<int> d(0, static_cast<int>(size()) - 1);
    return d(rng);
  }

  int zero() const { return 0; }
  int oplus(int a, int b) const { return oplus_[a][b]; }
  int neg(int a) const { return neg_[a]; }
  int prod(int a, int b) const { return prod_[a][b]; }
  int scalar(const Rational&, int) const { throw input_error("table structures have no scalars"); }
  bool equal(int a, int b) const { return a == b; }
  std::string show(int a) const { return "#" + std::to_string(a); }

 private:
  std::string name_;
  std::vector<std::vector<int>> oplus_;
  std::vector<int> neg_;
  std::vector<std::vector<int>> prod_;
};

namespace detail {

template <class S>
class AxiomChecker {
 public:
  using T = typename S::value_type;

  AxiomChecker(const S& s, AxiomLevel level) : s_(s), level_(level) {}

  T one() const { return s_.neg(s_.zero()); }
  T odot(const T& a, const T& b) const { return s_.neg(s_.oplus(s_.neg(a), s_.neg(b))); }
  T join(const T& a, const T& b) const { return s_.oplus(s_.neg(s_.oplus(s_.neg(a), b)), b); }
  T meet(const T& a, const T& b) const { return s_.neg(join(s_.neg(a), s_.neg(b))); }

  bool products() const { return level_ == AxiomLevel::PMV || level_ == AxiomLevel::fMV; }
  bool scalars() const { return level_ == AxiomLevel::RMV || level_ == AxiomLevel::fMV; }

  // Each returns false and fills the report on violation.
  bool unary(const T& a, AxiomReport& r) const {
    if (!expect(s_.neg(s_.neg(a)), a, "MV:involution", {{"a", a}}, r)) return false;
    if (!expect(s_.oplus(a, s_.zero()), a, "MV:zero-neutral", {{"a", a}}, r)) return false;
    if (!expect(s_.oplus(a, one()), one(), "MV:absorbing-one", {{"a", a}}, r)) return false;
    return true;
  }

  bool binary(const T& a, const T& b, AxiomReport& r) const {
    Named w{{"a", a}, {"b", b}};
    if (!expect(s_.oplus(a, b), s_.oplus(b, a), "MV:commutativity", w, r)) return false;
    T lhs = s_.oplus(s_.neg(s_.oplus(s_.neg(a), b)), b);
    T rhs = s_.oplus(s_.neg(s_.oplus(s_.neg(b), a)), a);
    if (!expect(lhs, rhs, "MV:lukasiewicz", w, r)) return false;
    return true;
  }

  bool ternary(const T& a, const T& b, const T& c, AxiomReport& r) const {
    Named w{{"a", a}, {"b", b}, {"c", c}};
    if (!expect(s_.oplus(a, s_.oplus(b, c)), s_.oplus(s_.oplus(a, b), c), "MV:associativity", w,
                r))
      return false;
    if (!products()) return true;
    T ab = meet(a, b);
    T left = odot(a, s_.neg(ab));
    if (!expect(s_.prod(c, left), odot(s_.prod(c, a), s_.neg(s_.prod(c, ab))), "PMV1", w, r))
      return false;
    if (!expect(s_.prod(left, c), odot(s_.prod(a, c), s_.neg(s_.prod(ab, c))), "PMV2", w, r))
      return false;
    if (!expect(s_.prod(a, s_.prod(b, c)), s_.prod(s_.prod(a, b), c), "PMV3", w, r)) return false;
    if (s_.equal(meet(a, b), s_.zero())) {
      if (!expect(meet(s_.prod(a, c), b), s_.zero(), "PMV:f-property", w, r)) return false;
      if (!expect(meet(s_.prod(c, a), b), s_.zero(), "PMV:f-property", w, r)) return false;
    }
    return true;
  }

  bool scalar_laws(const Rational& alpha, const Rational& beta, const T& a, const T& b,
                   AxiomReport& r) const {
    if (!scalars()) return true;
    NamedQ w{{"alpha", alpha}, {"beta", beta}};
    Named e{{"a", a}, {"b", b}};
    auto sc = [&](const Rational& x, const T& y) { return s_.scalar(x, y); };
    if (!expect_q(sc(alpha, odot(a, s_.neg(b))), odot(sc(alpha, a), s_.neg(sc(alpha, b))), "RMV1",
                  e, w, r))
      return false;
    if (!expect_q(sc(rmax(0, alpha - beta), a), odot(sc(alpha, a), s_.neg(sc(beta, a))), "RMV2",
                  e, w, r))
      return false;
    if (!expect_q(sc(alpha, sc(beta, a)), sc(alpha * beta, a), "RMV3", e, w, r)) return false;
    if (!expect_q(sc(1, a), a, "RMV4", e, w, r)) return false;
    if (level_ == AxiomLevel::fMV) {
      T ab = s_.prod(a, b);
      if (!expect_q(sc(alpha, ab), s_.prod(sc(alpha, a), b), "fMV:compatibility", e, w, r))
        return false;
      if (!expect_q(sc(alpha, ab), s_.prod(a, sc(alpha, b)), "fMV:compatibility", e, w, r))
        return false;
    }
    return true;
  }

 private:
  using Named = std::vector<std::pair<std::string, T>>;
  using NamedQ = std::vector<std::pair<std::string, Rational>>;

  bool expect(const T& lhs, const T& rhs, const char* axiom, const Named& w, AxiomReport& r) const {
    ++r.checks;
    if (s_.equal(lhs, rhs)) return true;
    r.pass = false;
    r.axiom = axiom;
    for (const auto& [k, v] : w) r.witness.push_back(k + "=" + s_.show(v));
    r.witness.push_back("lhs=" + s_.show(lhs));
    r.witness.push_back("rhs=" + s_.show(rhs));
    return false;
  }

  bool expect_q(const T& lhs, const T& rhs, const char* axiom, const Named& w, const NamedQ& q,
                AxiomReport& r) const {
    if (expect(lhs, rhs, axiom, w, r)) return true;
    for (const auto& [k, v] : q) r.witness.push_back(k + "=" + v.get_str());
    return false;
  }

  const S& s_;
  AxiomLevel level_;
};

}  // namespace detail

/// Checks the identities of `level` on `s`. Exhaustive mode enumerates all
/// triples of a finite structure; sample mode draws `count` random
/// (a, b, c, alpha, beta) tuples from a seeded generator.
template <class S>
AxiomReport check_axioms(const S& s, AxiomLevel level, const CheckMode& mode) {
  bool needs_product = level == AxiomLevel::PMV || level == AxiomLevel::fMV;
  bool needs_scalars = level == AxiomLevel::RMV || level == AxiomLevel::fMV;
  if (needs_product && !s.has_product())
    throw input_error("level " + to_string(level) + " needs an internal product on " + s.name());
  if (needs_scalars && !s.has_scalars())
    throw input_error("level " + to_string(level) + " needs a scalar action on " + s.name());

  detail::AxiomChecker<S> chk(s, level);
  AxiomReport report;

  if (mode.kind == CheckMode::Kind::Sample) {
    if (mode.count == 0) throw input_error("sample mode needs a positive count");
    Rng rng(mode.seed);
    for (std::size_t i = 0; i < mode.count; ++i) {
      auto a = s.sample(rng);
      auto b = s.sample(rng);
      auto c = s.sample(rng);
      Rational alpha = random_unit_rational(rng);
      Rational beta = random_unit_rational(rng);
      if (!chk.unary(a, report) || !chk.binary(a, b, report) || !chk.ternary(a, b, c, report) ||
          !chk.scalar_laws(alpha, beta, a, b, report))
        return report;
    }
    return report;
  }

  std::vector<typename S::value_type> elems;
  if (mode.kind == CheckMode::Kind::Exhaustive) {
    if (!s.is_finite()) throw input_error("exhaustive mode needs a finite carrier: " + s.name());
    elems = s.elements();
  } else {
    if (!s.supports_bounded()) throw input_error("bounded mode is only defined for Chang");
    if (mode.bound < 0) throw input_error("bounded mode needs bound >= 0");
    elems = s.bounded_elements(mode.bound);
  }
  for (const auto& a : elems) {
    if (!chk.unary(a, report)) return report;
    for (const auto& b : elems) {
      if (!chk.binary(a, b, report)) return report;
      for (const auto& c : elems)
        if (!chk.ternary(a, b, c, report)) return report;
    }
  }
  return report;
}

inline AxiomReport check_axioms(const Algebra& alg, AxiomLevel level, const CheckMode& mode) {
  return check_axioms(AlgebraStructure(alg), level, mode);
}

}  // namespace mvp
