#pragma once

// Product spaces, the tensor map beta, bounded bilinear maps, their divisible
// extensions and the factorization omega o beta = gamma.

#include "mvprob/representation.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mvp {

/// Finite product of two discrete probability spaces, with T = L1(lambda)_u.
class ProductSpace {
 public:
  ProductSpace(DiscreteMeasure left, DiscreteMeasure right) : left_(std::move(left)), right_(std::move(right)) {
    std::vector<std::string> names;
    std::vector<Rational> w;
    for (std::size_t i = 0; i < left_.size(); ++i)
      for (std::size_t j = 0; j < right_.size(); ++j) {
        names.push_back("(" + left_.atoms()[i] + "," + right_.atoms()[j] + ")");
        w.push_back(left_.weights()[i] * right_.weights()[j]);
      }
    lambda_ = DiscreteMeasure(names, w);
    T_ = Algebra::functions(names, std::nullopt, Signature{true, true});
  }

  const DiscreteMeasure& left() const { return left_; }
  const DiscreteMeasure& right() const { return right_; }
  const DiscreteMeasure& lambda() const { return lambda_; }
  const Algebra& T() const { return T_; }
  State s_T() const { return State::measure(T_, lambda_); }

  std::size_t pair_index(std::size_t i, std::size_t j) const { return i * right_.size() + j; }

  /// (f (x) g)(x,y) = f(x) g(y).
  Element tensor(const Element& f, const Element& g) const {
    check_side(f, left_, "left");
    check_side(g, right_, "right");
    std::vector<Rational> v;
    for (const auto& x : f.values())
      for (const auto& y : g.values()) v.emplace_back(x * y);
    return T_.function(std::move(v));
  }

  /// Sum of lambda over the right (or left) coordinate.
  DiscreteMeasure left_marginal() const {
    std::vector<Rational> w(left_.size(), Rational(0));
    for (std::size_t i = 0; i < left_.size(); ++i)
      for (std::size_t j = 0; j < right_.size(); ++j) w[i] += lambda_.weights()[pair_index(i, j)];
    return DiscreteMeasure(left_.atoms(), w);
  }
  DiscreteMeasure right_marginal() const {
    std::vector<Rational> w(right_.size(), Rational(0));
    for (std::size_t i = 0; i < left_.size(); ++i)
      for (std::size_t j = 0; j < right_.size(); ++j) w[j] += lambda_.weights()[pair_index(i, j)];
    return DiscreteMeasure(right_.atoms(), w);
  }

 private:
  static void check_side(const Element& f, const DiscreteMeasure& mu, const char* side) {
    const Algebra& a = f.algebra();
    if (!a.is_functions() || a.atoms() != mu.atoms() || a.function_carrier().chain) {
      throw input_error(std::string("tensor: ") + side + " factor must be a function over the " + side +
                        " atoms with StandardUnit values");
    }
  }

  DiscreteMeasure left_, right_, lambda_;
  Algebra T_;
};

inline ProductSpace product_space(const DiscreteMeasure& mu_a, const DiscreteMeasure& mu_b) {
  return ProductSpace(mu_a, mu_b);
}

/// (A, s_A), (B, s_B) with their measure representations and the product space.
class IndependenceSetup {
 public:
  IndependenceSetup(const State& s_a, const State& s_b)
      : rep_a_(embed_L1(s_a)), rep_b_(embed_L1(s_b)), space_(rep_a_.mu, rep_b_.mu) {}

  const MeasureRepresentation& left() const { return rep_a_; }
  const MeasureRepresentation& right() const { return rep_b_; }
  const ProductSpace& space() const { return space_; }

  /// beta(a,b) = F_A(a) (x) F_B(b).
  Element beta(const Element& a, const Element& b) const { return space_.tensor(rep_a_(a), rep_b_(b)); }

 private:
  MeasureRepresentation rep_a_, rep_b_;
  ProductSpace space_;
};

/// K_(+) x = min(K x, 1).
inline Rational k_oplus(unsigned K, const Rational& x) { return rmin(Rational(K) * x, 1); }

struct BilinearMap {
  std::string name;
  State left_state;
  State right_state;
  State codomain_state;
  std::function<Element(const Element&, const Element&)> fn;
  std::optional<unsigned> bound;

  const Algebra& left() const { return left_state.algebra(); }
  const Algebra& right() const { return right_state.algebra(); }
  const Algebra& codomain() const { return codomain_state.algebra(); }

  Element operator()(const Element& a, const Element& b) const {
    if (!(a.algebra() == left()) || !(b.algebra() == right())) throw input_error("carrier mismatch in " + name);
    Element out = fn(a, b);
    if (!(out.algebra() == codomain())) throw input_error(name + " left its codomain");
    return out;
  }
};

inline BilinearMap beta_map(const IndependenceSetup& setup) {
  auto sp = std::make_shared<const IndependenceSetup>(setup);
  return {"beta", setup.left().state, setup.right().state, setup.space().s_T(),
          [sp](const Element& a, const Element& b) { return sp->beta(a, b); }, 1u};
}

/// gamma(a,b) = s_A(a) s_B(b) in StandardUnit with the identity state.
inline BilinearMap state_product_map(const State& s_a, const State& s_b) {
  Algebra unit = Algebra::standard();
  return {"state-product", s_a, s_b, State::identity(unit),
          [s_a, s_b, unit](const Element& a, const Element& b) { return unit.value(s_a(a) * s_b(b)); }, 1u};
}

/// Explicit values on finite domains, indexed [index_of(a) * |B| + index_of(b)].
inline BilinearMap table_map(std::string name, const State& s_a, const State& s_b, const State& s_c,
                             std::vector<Element> table, std::optional<unsigned> bound) {
  auto na = s_a.algebra().size();
  auto nb = s_b.algebra().size();
  if (!na || !nb) throw input_error("table bilinear maps need finite domains");
  if (table.size() != *na * *nb) throw input_error("bilinear table needs |A|*|B| entries");
  for (const auto& e : table)
    if (!(e.algebra() == s_c.algebra())) throw input_error("bilinear table entry outside the codomain");
  Algebra A = s_a.algebra();
  Algebra B = s_b.algebra();
  std::size_t width = *nb;
  return {std::move(name), s_a, s_b, s_c,
          [A, B, width, table = std::move(table)](const Element& a, const Element& b) {
            return table[A.index_of(a) * width + B.index_of(b)];
          },
          bound};
}

struct BilinearReport {
  bool pass = true;
  std::string property;  // violated property, empty on pass
  std::vector<std::string> witness;
  std::size_t checks = 0;
};

struct BilinearOptions {
  std::optional<unsigned> bound;  // defaults to the map's own bound
  bool bimorphism = false;
};

/// Left/right additivity on every defined partial sum, the K-bound on every
/// pair and optionally lattice preservation in each argument.
inline BilinearReport check_bilinear(const BilinearMap& g, const BilinearOptions& opt = {}) {
  if (!g.left().is_finite() || !g.right().is_finite()) throw input_error("check_bilinear needs finite domains");
  BilinearReport r;
  auto fail = [&](std::string prop, std::vector<std::string> w) {
    r.pass = false;
    r.property = std::move(prop);
    r.witness = std::move(w);
    return r;
  };
  auto As = g.left().elements();
  auto Bs = g.right().elements();
  std::vector<std::vector<Element>> val;
  for (const auto& a : As) {
    val.emplace_back();
    for (const auto& b : Bs) val.back().push_back(g(a, b));
  }
  for (std::size_t j = 0; j < Bs.size(); ++j)
    for (std::size_t i = 0; i < As.size(); ++i)
      for (std::size_t k = 0; k < As.size(); ++k) {
        auto sum = partial_add(As[i], As[k]);
        if (!sum) continue;
        ++r.checks;
        auto rhs = partial_add(val[i][j], val[k][j]);
        if (!rhs || !(g(*sum, Bs[j]) == *rhs))
          return fail("left-additivity", {"a=" + As[i].str(), "a'=" + As[k].str(), "b=" + Bs[j].str()});
      }
  for (std::size_t i = 0; i < As.size(); ++i)
    for (std::size_t j = 0; j < Bs.size(); ++j)
      for (std::size_t k = 0; k < Bs.size(); ++k) {
        auto sum = partial_add(Bs[j], Bs[k]);
        if (!sum) continue;
        ++r.checks;
        auto rhs = partial_add(val[i][j], val[i][k]);
        if (!rhs || !(g(As[i], *sum) == *rhs))
          return fail("right-additivity", {"a=" + As[i].str(), "b=" + Bs[j].str(), "b'=" + Bs[k].str()});
      }
  if (auto K = opt.bound ? opt.bound : g.bound) {
    for (std::size_t i = 0; i < As.size(); ++i)
      for (std::size_t j = 0; j < Bs.size(); ++j) {
        ++r.checks;
        Rational lhs = g.codomain_state(val[i][j]);
        Rational rhs = k_oplus(*K, g.left_state(As[i]) * g.right_state(Bs[j]));
        if (lhs > rhs)
          return fail("bound K=" + std::to_string(*K),
                      {"a=" + As[i].str(), "b=" + Bs[j].str(), "s_C=" + lhs.get_str(), "bound=" + rhs.get_str()});
      }
  }
  if (opt.bimorphism) {
    for (std::size_t j = 0; j < Bs.size(); ++j)
      for (std::size_t i = 0; i < As.size(); ++i)
        for (std::size_t k = 0; k < As.size(); ++k) {
          r.checks += 2;
          if (!(g(join(As[i], As[k]), Bs[j]) == join(val[i][j], val[k][j])) ||
              !(g(meet(As[i], As[k]), Bs[j]) == meet(val[i][j], val[k][j])))
            return fail("left-lattice", {"a=" + As[i].str(), "a'=" + As[k].str(), "b=" + Bs[j].str()});
        }
    for (std::size_t i = 0; i < As.size(); ++i)
      for (std::size_t j = 0; j < Bs.size(); ++j)
        for (std::size_t k = 0; k < Bs.size(); ++k) {
          r.checks += 2;
          if (!(g(As[i], join(Bs[j], Bs[k])) == join(val[i][j], val[i][k])) ||
              !(g(As[i], meet(Bs[j], Bs[k])) == meet(val[i][j], val[i][k])))
            return fail("right-lattice", {"a=" + As[i].str(), "b=" + Bs[j].str(), "b'=" + Bs[k].str()});
        }
  }
  return r;
}

/// A map between carriers, linear on defined partial sums.
struct LinearMap {
  Algebra source;
  Algebra target;
  std::function<Element(const Element&)> fn;
};

/// sigma^d(a_1/n + ... + a_n/n) = (sigma(a_1) + ... + sigma(a_n))/n.
class LinearExtension {
 public:
  explicit LinearExtension(LinearMap sigma)
      : sigma_(std::move(sigma)), hull_a_(sigma_.source), hull_b_(sigma_.target) {
    if (!sigma_.source.is_finite()) throw input_error("extend_linear_divisible needs a finite source");
    auto all = sigma_.source.elements();
    for (const auto& a : all)
      for (const auto& b : all) {
        auto s = partial_add(a, b);
        if (!s) continue;
        auto rhs = partial_add(sigma_.fn(a), sigma_.fn(b));
        if (!rhs || !(sigma_.fn(*s) == *rhs))
          throw input_error("map is not linear at " + a.str() + " + " + b.str());
      }
  }

  const DivisibleHull& source_hull() const { return hull_a_; }
  const DivisibleHull& target_hull() const { return hull_b_; }

  Element operator()(const Element& f) const {
    auto d = hull_a_.decompose(f);
    if (!d) throw input_error(f.str() + " is not in the divisible hull");
    return apply(*d);
  }

  /// Evaluates through a caller-chosen decomposition.
  Element apply(const Decomposition& d) const {
    std::vector<Rational> sum(hull_b_.ambient().atoms().size(), Rational(0));
    for (const auto& [term, mult] : d.terms) {
      const auto v = hull_b_.embed(sigma_.fn(term)).values();
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += v[i] * Rational(mult);
    }
    for (auto& s : sum) s /= Rational(d.n);
    return hull_b_.ambient().function(std::move(sum));
  }

 private:
  LinearMap sigma_;
  DivisibleHull hull_a_, hull_b_;
};

inline LinearExtension extend_linear_divisible(LinearMap sigma) { return LinearExtension(std::move(sigma)); }

/// gamma^d(a,b) = (1/nm) sum_ij gamma(a_i, b_j) on the divisible hulls.
class BilinearExtension {
 public:
  explicit BilinearExtension(BilinearMap gamma)
      : gamma_(std::move(gamma)),
        hull_a_(std::make_shared<const DivisibleHull>(gamma_.left())),
        hull_b_(std::make_shared<const DivisibleHull>(gamma_.right())),
        hull_c_(std::make_shared<const DivisibleHull>(gamma_.codomain())) {
    if (!gamma_.bound) throw input_error("extend_bilinear_divisible needs a bounded map");
    auto rep = check_bilinear(gamma_);
    if (!rep.pass) throw input_error(gamma_.name + " is not bounded bilinear: " + rep.property);
  }

  const BilinearMap& base() const { return gamma_; }
  const DivisibleHull& left_hull() const { return *hull_a_; }
  const DivisibleHull& right_hull() const { return *hull_b_; }
  const DivisibleHull& codomain_hull() const { return *hull_c_; }

  Element operator()(const Element& f, const Element& g) const {
    auto da = hull_a_->decompose(f);
    auto db = hull_b_->decompose(g);
    if (!da || !db) throw input_error("argument outside the divisible hull");
    return apply(*da, *db);
  }

  Element apply(const Decomposition& da, const Decomposition& db) const {
    std::vector<Rational> sum(hull_c_->ambient().atoms().size(), Rational(0));
    for (const auto& [a, ma] : da.terms)
      for (const auto& [b, mb] : db.terms) {
        const auto v = hull_c_->embed(gamma_(a, b)).values();
        Rational w = Rational(ma) * Rational(mb);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += v[i] * w;
      }
    Rational nm = Rational(da.n) * Rational(db.n);
    for (auto& s : sum) s /= nm;
    return hull_c_->ambient().function(std::move(sum));
  }

  /// gamma^d as a bounded map between the hull ambients with the extended states.
  BilinearMap as_map() const {
    auto self = std::make_shared<const BilinearExtension>(*this);
    State sa = State::extension(hull_a_, std::make_shared<const State>(gamma_.left_state));
    State sb = State::extension(hull_b_, std::make_shared<const State>(gamma_.right_state));
    State sc = State::extension(hull_c_, std::make_shared<const State>(gamma_.codomain_state));
    return {gamma_.name + "^d", sa, sb, sc, [self](const Element& f, const Element& g) { return (*self)(f, g); },
            gamma_.bound};
  }

 private:
  BilinearMap gamma_;
  std::shared_ptr<const DivisibleHull> hull_a_, hull_b_, hull_c_;
};

inline BilinearExtension extend_bilinear_divisible(const BilinearMap& gamma) { return BilinearExtension(gamma); }

/// Random element of a hull ambient (a FunctionAlgebra over StandardUnit).
inline Element random_hull_element(const DivisibleHull& h, Rng& rng, long max_den = 12) {
  return h.ambient().random(rng, max_den);
}

struct InequalityReport {
  bool pass = true;
  std::size_t checks = 0;
  std::vector<std::string> witness;
};

/// s^d_C(gamma^d(a,b)) <= K_(+)(s^d_A(a) s^d_B(b)) on sampled hull pairs.
inline InequalityReport check_extension_bound(const BilinearExtension& ext, std::size_t samples, std::uint64_t seed) {
  BilinearMap m = ext.as_map();
  unsigned K = *m.bound;
  Rng rng(seed);
  InequalityReport r;
  for (std::size_t i = 0; i < samples; ++i) {
    Element f = random_hull_element(ext.left_hull(), rng);
    Element g = random_hull_element(ext.right_hull(), rng);
    ++r.checks;
    Rational lhs = m.codomain_state(m(f, g));
    Rational rhs = k_oplus(K, m.left_state(f) * m.right_state(g));
    if (lhs > rhs) {
      r.pass = false;
      r.witness = {"a=" + f.str(), "b=" + g.str(), "lhs=" + lhs.get_str(), "rhs=" + rhs.get_str()};
      return r;
    }
  }
  return r;
}

/// rho_C(gamma(a,b), gamma^d(a',b')) <= K_(+)(rho_A(a,a') (+) rho_B(b,b')) for
/// a, b drawn from the base algebras and a', b' from their hulls.
inline InequalityReport lipschitz_check(const BilinearMap& gamma, std::size_t samples, std::uint64_t seed) {
  BilinearExtension ext(gamma);
  BilinearMap m = ext.as_map();
  unsigned K = *gamma.bound;
  Rng rng(seed);
  InequalityReport r;
  for (std::size_t i = 0; i < samples; ++i) {
    Element a = gamma.left().random(rng);
    Element b = gamma.right().random(rng);
    Element a2 = random_hull_element(ext.left_hull(), rng);
    Element b2 = random_hull_element(ext.right_hull(), rng);
    // Occasionally reuse the base point so the zero-distance case is exercised.
    if (i % 10 == 0) a2 = ext.left_hull().embed(a);
    if (i % 10 == 0) b2 = ext.right_hull().embed(b);
    ++r.checks;
    Element lhs_val = ext.codomain_hull().embed(gamma(a, b));
    Rational lhs = rho(m.codomain_state, lhs_val, ext(a2, b2));
    Rational ra = rho(m.left_state, ext.left_hull().embed(a), a2);
    Rational rb = rho(m.right_state, ext.right_hull().embed(b), b2);
    Rational rhs = k_oplus(K, rmin(ra + rb, 1));
    if (lhs > rhs) {
      r.pass = false;
      r.witness = {"a=" + a.str(), "a'=" + a2.str(), "b=" + b.str(), "b'=" + b2.str(), "lhs=" + lhs.get_str(),
                   "rhs=" + rhs.get_str()};
      return r;
    }
  }
  return r;
}

/// omega : T -> L1(mu_C)_u with omega(beta(a,b)) = F_C(gamma(a,b)).
class Factorization {
 public:
  Factorization(const BilinearMap& gamma, const IndependenceSetup& setup)
      : gamma_(gamma), setup_(setup), rep_c_(embed_L1(gamma.codomain_state)), ext_(gamma) {
    if (!(gamma.left() == setup.left().source) || !(gamma.right() == setup.right().source))
      throw input_error("bilinear map and product space disagree on the domains");
    for (const State* s : {&gamma.left_state, &gamma.right_state, &gamma.codomain_state})
      if (!is_faithful(*s).faithful) throw input_error("factorize needs faithful states");
    const auto& amb_a = ext_.left_hull().ambient();
    const auto& amb_b = ext_.right_hull().ambient();
    if (amb_a.atoms() != setup.left().mu.atoms() || amb_b.atoms() != setup.right().mu.atoms())
      throw input_error("representation atoms do not match the divisible hulls");
    // omega(1_(x,y)) = gamma^d(1_x, 1_y), read in C's representation.
    for (std::size_t x = 0; x < amb_a.atoms().size(); ++x)
      for (std::size_t y = 0; y < amb_b.atoms().size(); ++y)
        columns_.push_back(to_rep_c(ext_(amb_a.indicator(x), amb_b.indicator(y))));
  }

  const MeasureRepresentation& codomain_representation() const { return rep_c_; }
  const std::vector<Element>& columns() const { return columns_; }

  Element operator()(const Element& h) const {
    const Algebra& T = setup_.space().T();
    if (!(h.algebra() == T)) throw input_error("omega is defined on the product algebra T");
    std::vector<Rational> out(rep_c_.target.atoms().size(), Rational(0));
    for (std::size_t p = 0; p < columns_.size(); ++p)
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += h.values()[p] * columns_[p].values()[i];
    return rep_c_.target.function(std::move(out));
  }

  /// omega(beta(a,b)) == F_C(gamma(a,b)) over all pairs.
  InequalityReport verify_factorization() const {
    InequalityReport r;
    for (const auto& a : gamma_.left().elements())
      for (const auto& b : gamma_.right().elements()) {
        ++r.checks;
        if (!((*this)(setup_.beta(a, b)) == rep_c_(gamma_(a, b)))) {
          r.pass = false;
          r.witness = {"a=" + a.str(), "b=" + b.str()};
          return r;
        }
      }
    return r;
  }

  /// s_C(omega(h)) <= K_(+) s_T(h) on atom indicators, beta images and samples.
  InequalityReport verify_bounded(std::size_t samples, std::uint64_t seed) const {
    const Algebra& T = setup_.space().T();
    State sT = setup_.space().s_T();
    unsigned K = *gamma_.bound;
    std::vector<Element> hs;
    for (std::size_t p = 0; p < T.atoms().size(); ++p) hs.push_back(T.indicator(p));
    Rng rng(seed);
    for (std::size_t i = 0; i < samples; ++i) hs.push_back(T.random(rng, 12));
    InequalityReport r;
    for (const auto& h : hs) {
      ++r.checks;
      Rational lhs = rep_c_.mu.integrate((*this)(h).values());
      Rational rhs = k_oplus(K, sT(h));
      if (lhs > rhs) {
        r.pass = false;
        r.witness = {"h=" + h.str(), "lhs=" + lhs.get_str(), "rhs=" + rhs.get_str()};
        return r;
      }
    }
    return r;
  }

  struct UniquenessCertificate {
    bool pass = false;
    std::size_t rank = 0;
    std::size_t dimension = 0;
    /// Columns of the map solved from beta images alone.
    std::vector<std::vector<Rational>> solved_columns;
  };

  /// The beta images of generator pairs span the rational space of functions
  /// on X_A x X_B; the linear map pinned down by omega(beta(a,b)) = F_C(gamma(a,b))
  /// on a spanning subset is solved independently and must equal omega.
  UniquenessCertificate uniqueness() const {
    const std::size_t dim = setup_.space().T().atoms().size();
    const std::size_t out_dim = rep_c_.target.atoms().size();
    // Rows: [beta(a,b) | F_C(gamma(a,b))], reduced to echelon form.
    std::vector<std::vector<Rational>> rows;
    for (const auto& a : gamma_.left().elements())
      for (const auto& b : gamma_.right().elements()) {
        std::vector<Rational> row = setup_.beta(a, b).values();
        const auto rhs = rep_c_(gamma_(a, b)).values();
        row.insert(row.end(), rhs.begin(), rhs.end());
        rows.push_back(std::move(row));
      }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < dim && rank < rows.size(); ++col) {
      std::size_t piv = rank;
      while (piv < rows.size() && rows[piv][col] == 0) ++piv;
      if (piv == rows.size()) continue;
      std::swap(rows[piv], rows[rank]);
      Rational inv = 1 / rows[rank][col];
      for (auto& v : rows[rank]) v *= inv;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == rank || rows[i][col] == 0) continue;
        Rational f = rows[i][col];
        for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] -= f * rows[rank][j];
      }
      ++rank;
    }
    UniquenessCertificate cert;
    cert.rank = rank;
    cert.dimension = dim;
    if (rank != dim) return cert;
    // Reduced rows are now [e_p | omega(1_p)]; remaining rows must be consistent (all zero).
    for (std::size_t i = rank; i < rows.size(); ++i)
      for (const auto& v : rows[i])
        if (v != 0) return cert;
    bool agree = true;
    for (std::size_t p = 0; p < dim; ++p) {
      std::vector<Rational> col(rows[p].begin() + static_cast<long>(dim), rows[p].end());
      if (col != columns_[p].values()) agree = false;
      cert.solved_columns.push_back(std::move(col));
    }
    (void)out_dim;
    cert.pass = agree;
    return cert;
  }

 private:
  Element to_rep_c(const Element& hull_value) const {
    // Faithful s_C: the hull ambient and C's representation share atoms.
    return rep_c_.target.function(hull_value.values());
  }

  BilinearMap gamma_;
  IndependenceSetup setup_;
  MeasureRepresentation rep_c_;
  BilinearExtension ext_;
  std::vector<Element> columns_;
};

inline Factorization factorize(const BilinearMap& gamma, const IndependenceSetup& setup) {
  return Factorization(gamma, setup);
}

/// gamma on the limits of two rho-stabilizing sequences; throws on no-limit.
inline Element extend_bilinear_stabilizing(const BilinearMap& gamma, const std::vector<Element>& left,
                                           const std::vector<Element>& right) {
  auto la = sequence_limit(gamma.left_state, left);
  auto lb = sequence_limit(gamma.right_state, right);
  if (!la || !lb) throw input_error("no-limit: sequence does not stabilize");
  Element value = gamma(*la, *lb);
  if (left.size() == right.size()) {
    std::vector<Element> images;
    for (std::size_t i = 0; i < left.size(); ++i) images.push_back(gamma(left[i], right[i]));
    auto lim = sequence_limit(gamma.codomain_state, images);
    if (!lim || rho(gamma.codomain_state, *lim, value) != 0)
      throw input_error("no-limit: images of the sequences do not stabilize at gamma of the limits");
  }
  return value;
}

}  // namespace mvp
