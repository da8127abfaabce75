#pragma once

// Measure representations: the finite Kroupa-Panti correspondence and the
// embedding pipeline A -> A/Rad(A) -> divisible hull -> state quotient, which
// yields F_A : A -> L1(mu)_u with s(a) = sum_x F_A(a)(x) mu(x).

#include "mvprob/axioms.hpp"
#include "mvprob/states.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace mvp {

/// The measure mu with s(f) = sum f(x) mu(x), read off atom indicators.
inline DiscreteMeasure kroupa_panti(const State& s) {
  const Algebra& alg = s.algebra();
  if (!alg.is_functions()) throw input_error("kroupa_panti needs a state on a function algebra");
  std::vector<Rational> w;
  for (std::size_t x = 0; x < alg.atoms().size(); ++x) w.push_back(s(alg.indicator(x)));
  return DiscreteMeasure(alg.atoms(), std::move(w));
}

/// (1-t) s1 + t s2 as a table state on a finite carrier.
inline State mix_states(const State& s1, const State& s2, const Rational& t) {
  if (!(s1.algebra() == s2.algebra())) throw input_error("states live on different algebras");
  if (!in_unit_interval(t)) throw input_error("mixing weight outside [0,1]");
  std::vector<Rational> v;
  for (const auto& a : s1.algebra().elements()) v.emplace_back((1 - t) * s1(a) + t * s2(a));
  return State::table(s1.algebra(), std::move(v));
}

struct InjectivityReport {
  bool injective = true;
  std::optional<std::pair<Element, Element>> witness;  // distinct, same image
};

struct IdentityReport {
  bool pass = true;
  std::size_t checks = 0;
  std::vector<std::string> witness;
};

/// F : source -> L1(mu)_u with the represented state.
struct MeasureRepresentation {
  Algebra source;
  State state;
  DiscreteMeasure mu;
  Algebra target;  // FunctionAlgebra over StandardUnit on mu's atoms
  std::function<Element(const Element&)> F;

  // Pipeline stages, kept for reporting.
  std::string radical;
  Algebra semisimple_quotient;
  Algebra hull_ambient;
  std::vector<std::string> dropped_atoms;

  Element operator()(const Element& a) const {
    if (!(a.algebra() == source)) throw input_error("carrier mismatch: representation of " + source.describe());
    return F(a);
  }

  Rational integral(const Element& a) const { return mu.integrate((*this)(a).values()); }

  /// Elements the sweeps run over: all of a finite source, a window of Chang,
  /// or `samples` seeded draws otherwise.
  std::vector<Element> sweep_elements(std::size_t samples = 1000, std::uint64_t seed = 0) const {
    if (source.is_finite()) return source.elements();
    std::vector<Element> out;
    if (source.is_chang()) {
      for (std::int64_t k = 0; k <= 16; ++k) {
        out.push_back(source.lower(k));
        out.push_back(source.upper(k));
      }
      return out;
    }
    Rng rng(seed);
    out.push_back(source.zero());
    out.push_back(source.one());
    if (source.is_functions())
      for (std::size_t x = 0; x < source.atoms().size(); ++x) out.push_back(source.indicator(x));
    for (std::size_t i = 0; i < samples; ++i) out.push_back(source.random(rng));
    return out;
  }

  /// sum F(a)(x) mu(x) == s(a) on every swept element, exactly.
  IdentityReport verify_integral_identity(std::size_t samples = 1000, std::uint64_t seed = 0) const {
    IdentityReport r;
    for (const auto& a : sweep_elements(samples, seed)) {
      ++r.checks;
      Rational lhs = integral(a);
      Rational rhs = state(a);
      if (lhs != rhs) {
        r.pass = false;
        r.witness = {"a=" + a.str(), "integral=" + lhs.get_str(), "state=" + rhs.get_str()};
        return r;
      }
    }
    return r;
  }

  InjectivityReport injectivity() const {
    if (source.is_chang()) {
      // The radical collapses: lower(1) and 0 share the image.
      if ((*this)(source.lower(1)) == (*this)(source.lower(0)))
        return {false, std::make_pair(source.lower(0), source.lower(1))};
      return {true, std::nullopt};
    }
    if (source.is_finite()) {
      std::map<std::vector<Rational>, Element> seen;
      for (const auto& a : source.elements()) {
        auto [it, fresh] = seen.emplace((*this)(a).values(), a);
        if (!fresh) return {false, std::make_pair(it->second, a)};
      }
      return {true, std::nullopt};
    }
    // Divisible sources embed identically; only dropped null atoms lose information.
    if (source.is_functions()) {
      for (std::size_t x = 0; x < source.atoms().size(); ++x) {
        Element ind = source.indicator(x);
        if ((*this)(ind) == (*this)(source.zero())) return {false, std::make_pair(source.zero(), ind)};
      }
    }
    return {true, std::nullopt};
  }
};

/// Runs the pipeline for (A, s): radical quotient, divisible hull with the
/// extended state, Kroupa-Panti weights, then removal of null atoms.
inline MeasureRepresentation embed_L1(const State& s) {
  const Algebra& alg = s.algebra();
  if (!(alg.is_finite() || alg.is_chang() || alg.is_standard() || alg.is_functions())) {
    throw input_error("unsupported carrier for embed_L1: " + alg.describe());
  }
  Ideal rad = radical(alg);
  Homomorphism pi = quotient(alg, rad);

  // The factored state t on A/Rad(A) with t(pi(a)) = s(a).
  std::shared_ptr<const State> t;
  if (pi.target == alg) {
    t = std::make_shared<const State>(s);
  } else {
    std::vector<Rational> vals;
    for (const auto& b : pi.target.elements()) vals.push_back(s(pi.lift(b)));
    t = std::make_shared<const State>(State::table(pi.target, std::move(vals)));
  }

  auto hull = std::make_shared<const DivisibleHull>(pi.target);
  State sd = State::extension(hull, t);
  DiscreteMeasure full = kroupa_panti(sd);

  std::vector<std::size_t> keep;
  std::vector<std::string> names;
  std::vector<Rational> weights;
  std::vector<std::string> dropped;
  for (std::size_t x = 0; x < full.size(); ++x) {
    if (full.weights()[x] > 0) {
      keep.push_back(x);
      names.push_back(full.atoms()[x]);
      weights.push_back(full.weights()[x]);
    } else {
      dropped.push_back(full.atoms()[x]);
    }
  }
  Algebra target = Algebra::functions(names, std::nullopt, Signature{true, true});
  auto F = [pi, hull, target, keep](const Element& a) {
    const auto v = hull->embed(pi(a)).values();
    std::vector<Rational> out;
    for (auto x : keep) out.push_back(v[x]);
    return target.function(std::move(out));
  };
  return MeasureRepresentation{alg,
                               s,
                               DiscreteMeasure(names, weights),
                               target,
                               F,
                               rad.describe(),
                               pi.target,
                               hull->ambient(),
                               dropped};
}

struct MorphismReport {
  bool pass = true;
  std::size_t checks = 0;
  std::vector<std::string> witness;
};

/// Checks F(a.b) = F(a).F(b) (PMV) and additionally F(alpha a) = alpha F(a) (fMV).
inline MorphismReport verify_morphism_extras(const MeasureRepresentation& rep, AxiomLevel level,
                                             std::size_t samples = 1000, std::uint64_t seed = 0) {
  if (level != AxiomLevel::PMV && level != AxiomLevel::fMV)
    throw input_error("verify_morphism_extras checks PMV or fMV");
  if (!rep.source.has_product()) throw input_error("source has no internal product");
  if (level == AxiomLevel::fMV && !rep.source.has_scalars()) throw input_error("source has no scalar action");
  MorphismReport r;
  auto elems = rep.sweep_elements(samples, seed);
  auto fail = [&](std::vector<std::string> w) {
    r.pass = false;
    r.witness = std::move(w);
    return r;
  };
  if (rep.source.is_finite()) {
    for (const auto& a : elems)
      for (const auto& b : elems) {
        ++r.checks;
        if (!(rep(prod(a, b)) == prod(rep(a), rep(b)))) return fail({"a=" + a.str(), "b=" + b.str()});
      }
  } else {
    for (std::size_t i = 0; i + 1 < elems.size(); ++i) {
      ++r.checks;
      const auto& a = elems[i];
      const auto& b = elems[i + 1];
      if (!(rep(prod(a, b)) == prod(rep(a), rep(b)))) return fail({"a=" + a.str(), "b=" + b.str()});
    }
  }
  if (level == AxiomLevel::fMV) {
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (const auto& a : elems) {
      Rational alpha = random_unit_rational(rng);
      ++r.checks;
      if (!(rep(scalar_mul(alpha, a)) == scalar_mul(alpha, rep(a))))
        return fail({"a=" + a.str(), "alpha=" + alpha.get_str()});
    }
  }
  return r;
}

}  // namespace mvp
