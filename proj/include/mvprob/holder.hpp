#pragma once

// Hoelder's inequality s(a.b) <= s(a^p)^{1/p} s(b^q)^{1/q}.
//
// p = q = 2 is decided exactly by squaring. Other exponents need fractional
// powers, which are enclosed with MPFR under directed rounding; the verdict is
// three-valued so that rounding can never produce a wrong pass or fail.

#include "mvprob/representation.hpp"

#include <mpfr.h>

#include <string>
#include <utility>

namespace mvp {

/// RAII wrapper over an mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  /// The exact dyadic value.
  Rational exact() const {
    Rational q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return q;
  }

 private:
  mpfr_t v_;
};

/// Closed interval [lo, hi] of reals.
struct Interval {
  BigFloat lo, hi;

  static Interval of(const Rational& q, mpfr_prec_t prec) {
    Interval out{BigFloat(prec), BigFloat(prec)};
    mpfr_set_q(out.lo.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(out.hi.get(), q.get_mpq_t(), MPFR_RNDU);
    return out;
  }
  static Interval zero(mpfr_prec_t prec) { return of(Rational(0), prec); }

  mpfr_prec_t precision() const { return mpfr_get_prec(lo.get()); }

  /// this^e for this within [0,1] and e > 0; x^e falls as e grows there.
  Interval pow(const Interval& e) const {
    Interval out{BigFloat(precision()), BigFloat(precision())};
    mpfr_pow(out.lo.get(), lo.get(), e.hi.get(), MPFR_RNDD);
    mpfr_pow(out.hi.get(), hi.get(), e.lo.get(), MPFR_RNDU);
    return out;
  }

  Interval operator*(const Interval& o) const {  // both nonnegative
    Interval out{BigFloat(precision()), BigFloat(precision())};
    mpfr_mul(out.lo.get(), lo.get(), o.lo.get(), MPFR_RNDD);
    mpfr_mul(out.hi.get(), hi.get(), o.hi.get(), MPFR_RNDU);
    return out;
  }

  Interval& operator+=(const Interval& o) {
    mpfr_add(lo.get(), lo.get(), o.lo.get(), MPFR_RNDD);
    mpfr_add(hi.get(), hi.get(), o.hi.get(), MPFR_RNDU);
    return *this;
  }

  BigFloat width() const {
    BigFloat w(precision());
    mpfr_sub(w.get(), hi.get(), lo.get(), MPFR_RNDU);
    return w;
  }
};

enum class Verdict { Pass, Fail, Inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct HolderReport {
  Verdict verdict = Verdict::Inconclusive;
  bool exact = false;     // decided in rationals (p = q = 2)
  bool equality = false;  // exact case with s(a.b)^2 == s(a^2) s(b^2)
  Rational lhs;           // s(a.b)
  Rational lhs_squared, rhs_squared;  // exact case
  Rational rhs_lower, rhs_upper;      // enclosure case, exact dyadic bounds
};

namespace detail {

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Enclosure of s(a^e): exact for integer e, otherwise sum_x mu(x) F(a)(x)^e
/// through the measure representation (F is a product morphism).
inline Interval state_of_power(const State& s, const MeasureRepresentation& rep, const Element& a,
                               const Rational& e, mpfr_prec_t prec) {
  if (is_integer(e)) return Interval::of(s(power(a, static_cast<unsigned>(e.get_num().get_ui()))), prec);
  Interval expo = Interval::of(e, prec);
  Interval sum = Interval::zero(prec);
  const auto fa = rep(a).values();
  for (std::size_t x = 0; x < fa.size(); ++x)
    sum += Interval::of(rep.mu.weights()[x], prec) * Interval::of(fa[x], prec).pow(expo);
  return sum;
}

}  // namespace detail

inline HolderReport holder_check(const State& s, const Element& a, const Element& b, const Rational& p,
                                 const Rational& q, mpfr_prec_t precision = 128) {
  if (p < 1 || q < 1) throw input_error("Hoelder exponents must be >= 1");
  if (Rational(1 / p + 1 / q) != 1) throw input_error("Hoelder exponents must satisfy 1/p + 1/q = 1");
  const Algebra& alg = s.algebra();
  if (!alg.has_product()) throw input_error("Hoelder needs an internal product on " + alg.describe());
  if (!(a.algebra() == alg) || !(b.algebra() == alg)) throw input_error("carrier mismatch");

  HolderReport rep;
  rep.lhs = s(prod(a, b));
  if (p == 2 && q == 2) {
    rep.exact = true;
    rep.lhs_squared = rep.lhs * rep.lhs;
    rep.rhs_squared = s(prod(a, a)) * s(prod(b, b));
    rep.equality = rep.lhs_squared == rep.rhs_squared;
    rep.verdict = rep.lhs_squared <= rep.rhs_squared ? Verdict::Pass : Verdict::Fail;
    return rep;
  }

  MeasureRepresentation repr = embed_L1(s);
  Interval sa = detail::state_of_power(s, repr, a, p, precision);
  Interval sb = detail::state_of_power(s, repr, b, q, precision);
  Interval rhs = sa.pow(Interval::of(Rational(1 / p), precision)) * sb.pow(Interval::of(Rational(1 / q), precision));
  rep.rhs_lower = rhs.lo.exact();
  rep.rhs_upper = rhs.hi.exact();
  if (mpfr_cmp_q(rhs.lo.get(), rep.lhs.get_mpq_t()) >= 0) {
    rep.verdict = Verdict::Pass;
  } else if (mpfr_cmp_q(rhs.hi.get(), rep.lhs.get_mpq_t()) < 0) {
    rep.verdict = Verdict::Fail;
  } else {
    rep.verdict = Verdict::Inconclusive;
  }
  return rep;
}

}  // namespace mvp
