#include "support.hpp"

using namespace mvt;

namespace {

State measure_state(const Algebra& A, std::vector<Rational> w) {
  return State::measure(A, DiscreteMeasure(A.atoms(), std::move(w)));
}

// gamma(a,b) = a(first atom) * b on A x FiniteChain(1), needing K = 2 under uniform mu_A.
BilinearMap point_evaluation(const State& sA, const State& sD, const State& sU, unsigned K) {
  std::vector<Element> table;
  const Algebra& U = sU.algebra();
  for (const auto& a : sA.algebra().elements())
    for (const auto& b : sD.algebra().elements()) table.push_back(U.value(a.values()[0] * b.scalar()));
  return table_map("point-evaluation", sA, sD, sU, table, K);
}

}  // namespace

TEST(ProductSpace, ProductWeights) {
  ProductSpace P(DiscreteMeasure({"x", "y"}, Rs({{1, 2}, {1, 2}})), DiscreteMeasure({"u", "v"}, Rs({{1, 3}, {2, 3}})));
  EXPECT_EQ(P.lambda().weights(), Rs({{1, 6}, {1, 3}, {1, 6}, {1, 3}}));
  EXPECT_EQ(P.left_marginal(), P.left());
  EXPECT_EQ(P.right_marginal(), P.right());
  ProductSpace Q(DiscreteMeasure::uniform({"a", "b"}), DiscreteMeasure::uniform({"c", "d"}));
  EXPECT_EQ(Q.lambda().weights(), std::vector<Rational>(4, R(1, 4)));
  ProductSpace D(DiscreteMeasure({"x", "y"}, Rs({{1, 4}, {3, 4}})), DiscreteMeasure({"p"}, Rs({{1, 1}})));
  EXPECT_EQ(D.lambda().weights(), Rs({{1, 4}, {3, 4}}));
}

TEST(ProductSpace, Tensor) {
  ProductSpace P(DiscreteMeasure::uniform({"x", "y"}), DiscreteMeasure::uniform({"u", "v"}));
  Algebra L = Algebra::functions({"x", "y"}, std::nullopt);
  Algebra Rt = Algebra::functions({"u", "v"}, std::nullopt);
  Element t = P.tensor(L.function(Rs({{1, 1}, {0, 1}})), Rt.function(Rs({{1, 2}, {1, 2}})));
  EXPECT_EQ(t.values(), Rs({{1, 2}, {1, 2}, {0, 1}, {0, 1}}));
  EXPECT_EQ(P.tensor(L.one(), Rt.one()), P.T().one());
  EXPECT_EQ(P.s_T()(t), R(1, 4));
  EXPECT_THROW(P.tensor(Rt.one(), L.one()), input_error);
}

TEST(Independence, StateOfBetaIsProductOfStates) {
  Algebra A = Algebra::functions({"x", "y"}, 1);
  Algebra B = Algebra::functions({"u", "v"}, 1);
  State sA = measure_state(A, Rs({{1, 2}, {1, 2}}));
  State sB = measure_state(B, Rs({{1, 3}, {2, 3}}));
  IndependenceSetup setup(sA, sB);
  State sT = setup.space().s_T();
  Element a = A.indicator(0);
  Element b = B.indicator(0);
  EXPECT_EQ(sA(a), R(1, 2));
  EXPECT_EQ(sB(b), R(1, 3));
  EXPECT_EQ(sT(setup.beta(a, b)), R(1, 6));
  std::size_t pairs = 0;
  for (const auto& x : A.elements()) {
    EXPECT_EQ(sT(setup.beta(x, B.one())), sA(x));
    for (const auto& y : B.elements()) {
      ASSERT_EQ(sT(setup.beta(x, y)), sA(x) * sB(y));
      ++pairs;
    }
  }
  EXPECT_EQ(pairs, 16u);
}

TEST(Independence, ExhaustiveOverSixteenBySixteen) {
  Rng rng(12);
  Algebra A = Algebra::functions({"x", "y"}, 3);
  Algebra B = Algebra::functions({"u", "v", "w", "z"}, 1);
  for (int t = 0; t < 5; ++t) {
    State sA = State::measure(A, random_measure(A.atoms(), rng, 0.3));
    State sB = State::measure(B, random_measure(B.atoms(), rng, 0.3));
    IndependenceSetup setup(sA, sB);
    State sT = setup.space().s_T();
    for (const auto& a : A.elements())
      for (const auto& b : B.elements()) ASSERT_EQ(sT(setup.beta(a, b)), sA(a) * sB(b));
  }
}

TEST(Bilinear, BetaAndStateProductAreBounded) {
  Algebra A = Algebra::functions({"x", "y"}, 1);
  Algebra B = Algebra::functions({"u", "v"}, 2);
  State sA = measure_state(A, Rs({{1, 4}, {3, 4}}));
  State sB = measure_state(B, Rs({{1, 2}, {1, 2}}));
  BilinearMap beta = beta_map(IndependenceSetup(sA, sB));
  auto rb = check_bilinear(beta, {1u, true});
  EXPECT_TRUE(rb.pass) << rb.property;
  auto rp = check_bilinear(state_product_map(sA, sB), {1u, false});
  EXPECT_TRUE(rp.pass) << rp.property;
}

TEST(Bilinear, ViolationsCarryWitnesses) {
  Algebra A = Algebra::functions({"x", "y"}, 1);
  Algebra D = Algebra::chain(1);
  Algebra U = Algebra::standard();
  State sA = State::measure(A, DiscreteMeasure::uniform(A.atoms()));
  State sD = State::chain_identity(D);
  State sU = State::identity(U);
  std::vector<Element> table;
  for (const auto& a : A.elements())
    for (const auto& b : D.elements()) table.push_back(U.value(rmax(a.values()[0], a.values()[1]) * b.scalar()));
  auto r = check_bilinear(table_map("max", sA, sD, sU, table, 2u));
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.property, "left-additivity");
  EXPECT_EQ(r.witness.size(), 3u);
  auto under = check_bilinear(point_evaluation(sA, sD, sU, 1));
  EXPECT_FALSE(under.pass);
  EXPECT_EQ(under.property.rfind("bound", 0), 0u);
  EXPECT_TRUE(check_bilinear(point_evaluation(sA, sD, sU, 2)).pass);
  EXPECT_THROW(lipschitz_check(point_evaluation(sA, sD, sU, 1), 10, 1), input_error);
}

TEST(Extension, LinearExtensionOnChains) {
  Algebra L2 = Algebra::chain(2);
  Algebra U = Algebra::standard();
  LinearExtension ext(LinearMap{L2, U, [U](const Element& a) { return U.value(a.scalar()); }});
  const Algebra& H = ext.source_hull().ambient();
  EXPECT_EQ(ext(H.function({R(1, 3)})).values(), Rs({{1, 3}}));
  EXPECT_EQ(ext(H.zero()).values(), Rs({{0, 1}}));
  // 1/2 as (1 + 0)/2 and as (1/2 + 1/2)/2.
  Decomposition d1{2, {{L2.one(), 1}, {L2.zero(), 1}}};
  Decomposition d2{2, {{L2.level(1), 2}}};
  EXPECT_EQ(ext.apply(d1), ext.apply(d2));
  EXPECT_EQ(ext.apply(d1).values(), Rs({{1, 2}}));
}

TEST(Extension, BilinearExtension) {
  Algebra B1 = Algebra::chain(1, true);
  State s = State::chain_identity(B1);
  std::vector<Element> table;
  for (const auto& a : B1.elements())
    for (const auto& b : B1.elements()) table.push_back(prod(a, b));
  BilinearMap g = table_map("product", s, s, s, table, 1u);
  BilinearExtension ext(g);
  const Algebra& H = ext.left_hull().ambient();
  EXPECT_EQ(ext(H.function({R(1, 2)}), H.function({R(1, 2)})).values(), Rs({{1, 4}}));
  for (const auto& a : B1.elements())
    for (const auto& b : B1.elements())
      EXPECT_EQ(ext(ext.left_hull().embed(a), ext.right_hull().embed(b)), ext.codomain_hull().embed(g(a, b)));
  EXPECT_TRUE(check_extension_bound(ext, 1000, 17).pass);
}

TEST(Extension, LipschitzInequality) {
  Algebra A = Algebra::functions({"x", "y"}, 1);
  Algebra B = Algebra::functions({"u", "v"}, 1);
  State sA = measure_state(A, Rs({{1, 3}, {2, 3}}));
  State sB = measure_state(B, Rs({{1, 2}, {1, 2}}));
  auto beta = beta_map(IndependenceSetup(sA, sB));
  auto r = lipschitz_check(beta, 1000, 2718);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.checks, 1000u);
  BilinearExtension ext(beta);
  Element a = ext.left_hull().embed(A.indicator(0));
  Element b = ext.right_hull().embed(B.indicator(1));
  BilinearMap m = ext.as_map();
  EXPECT_EQ(rho(m.codomain_state, ext.codomain_hull().embed(beta(A.indicator(0), B.indicator(1))), ext(a, b)), R(0));
  EXPECT_TRUE(lipschitz_check(state_product_map(sA, sB), 500, 3).pass);
}

TEST(Factorization, BetaFactorsThroughIdentity) {
  Algebra A = Algebra::functions({"x", "y"}, 1);
  Algebra B = Algebra::functions({"u", "v"}, 1);
  State sA = measure_state(A, Rs({{1, 2}, {1, 2}}));
  State sB = measure_state(B, Rs({{1, 3}, {2, 3}}));
  IndependenceSetup setup(sA, sB);
  auto f = factorize(beta_map(setup), setup);
  const Algebra& T = setup.space().T();
  for (std::size_t p = 0; p < T.atoms().size(); ++p) EXPECT_EQ(f(T.indicator(p)).values(), T.indicator(p).values());
  EXPECT_TRUE(f.verify_factorization().pass);
  auto u = f.uniqueness();
  EXPECT_TRUE(u.pass);
  EXPECT_EQ(u.rank, 4u);
}

TEST(Factorization, StateProductIsIntegrationAgainstLambda) {
  Algebra A = Algebra::functions({"x", "y"}, 1);
  Algebra B = Algebra::functions({"u", "v"}, 1);
  State sA = measure_state(A, Rs({{1, 2}, {1, 2}}));
  State sB = measure_state(B, Rs({{1, 3}, {2, 3}}));
  IndependenceSetup setup(sA, sB);
  auto f = factorize(state_product_map(sA, sB), setup);
  const Algebra& T = setup.space().T();
  State sT = setup.space().s_T();
  for (std::size_t p = 0; p < T.atoms().size(); ++p) EXPECT_EQ(f(T.indicator(p)).values()[0], sT(T.indicator(p)));
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    Element h = T.random(rng, 10);
    EXPECT_EQ(f(h).values()[0], sT(h));
  }
  EXPECT_TRUE(f.verify_factorization().pass);
  EXPECT_TRUE(f.verify_bounded(200, 9).pass);
  EXPECT_TRUE(f.uniqueness().pass);
}

TEST(Factorization, PointEvaluationNeedsBoundTwo) {
  Algebra A = Algebra::functions({"x", "y"}, 1);
  Algebra D = Algebra::chain(1);
  Algebra U = Algebra::standard();
  State sA = State::measure(A, DiscreteMeasure::uniform(A.atoms()));
  State sD = State::chain_identity(D);
  State sU = State::identity(U);
  BilinearMap g = point_evaluation(sA, sD, sU, 2);
  IndependenceSetup setup(sA, sD);
  auto f = factorize(g, setup);
  EXPECT_TRUE(f.verify_factorization().pass);
  EXPECT_TRUE(f.verify_bounded(300, 5).pass);
  EXPECT_TRUE(f.uniqueness().pass);
  EXPECT_TRUE(lipschitz_check(g, 1000, 6).pass);
}

TEST(Factorization, RequiresFaithfulStates) {
  Algebra A = Algebra::functions({"x", "y"}, 1);
  State sA = State::measure(A, DiscreteMeasure(A.atoms(), Rs({{1, 1}, {0, 1}})));
  State sB = State::measure(A, DiscreteMeasure::uniform(A.atoms()));
  IndependenceSetup setup(sA, sB);
  EXPECT_THROW(factorize(state_product_map(sA, sB), setup), input_error);
}

TEST(Stabilizing, Limits) {
  Algebra A = Algebra::functions({"x", "y"}, 1);
  Algebra B = Algebra::functions({"u", "v"}, 1);
  State sA = State::measure(A, DiscreteMeasure::uniform(A.atoms()));
  State sB = State::measure(B, DiscreteMeasure::uniform(B.atoms()));
  BilinearMap g = state_product_map(sA, sB);
  Element a = A.indicator(0), a2 = A.one(), b = B.indicator(1);
  EXPECT_EQ(extend_bilinear_stabilizing(g, {a, a, a}, {b, b, b}), g(a, b));
  EXPECT_EQ(extend_bilinear_stabilizing(g, {a, a2, a2, a2}, {b, b, b, b}), g(a2, b));
  EXPECT_THROW(extend_bilinear_stabilizing(g, {a, a2, a, a2}, {b, b, b, b}), input_error);
}
