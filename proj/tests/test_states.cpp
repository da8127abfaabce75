#include "support.hpp"

using namespace mvt;

namespace {

Algebra two_atoms(std::optional<int> chain = std::nullopt) { return Algebra::functions({"x", "y"}, chain); }

State measure_state(const Algebra& A, std::vector<Rational> w) { return State::measure(A, DiscreteMeasure(A.atoms(), std::move(w))); }

}  // namespace

TEST(States, MeasureStateIsWeightedSum) {
  Algebra F = two_atoms();
  State s = measure_state(F, Rs({{1, 2}, {1, 2}}));
  EXPECT_EQ(s(F.function(Rs({{1, 1}, {0, 1}}))), R(1, 2));
  EXPECT_EQ(s(F.one()), R(1));
}

TEST(States, ChangFirstCoordinate) {
  Algebra C = Algebra::chang();
  State s = State::chang_first_coordinate(C);
  for (long k = 0; k < 10; ++k) {
    EXPECT_EQ(s(C.lower(k)), R(0));
    EXPECT_EQ(s(C.upper(k)), R(1));
  }
}

TEST(States, InvalidDefinitionsAreRejected) {
  Algebra F = two_atoms(2);
  EXPECT_THROW(DiscreteMeasure({"x", "y"}, Rs({{1, 2}, {1, 3}})), input_error);
  EXPECT_THROW(DiscreteMeasure({"x", "y"}, Rs({{3, 2}, {-1, 2}})), input_error);
  EXPECT_THROW(State::measure(F, DiscreteMeasure({"x", "z"}, Rs({{1, 2}, {1, 2}}))), input_error);
  EXPECT_THROW(State::identity(F), input_error);
  // Not additive: s(1/2,0) + s(1/2,0) != s(1,0).
  std::vector<Rational> bad(F.elements().size(), R(1, 2));
  bad.front() = R(0);
  bad.back() = R(1);
  EXPECT_THROW(State::table(F, bad), input_error);
}

TEST(States, TableStateMatchesMeasureState) {
  Algebra F = two_atoms(3);
  State m = measure_state(F, Rs({{1, 4}, {3, 4}}));
  std::vector<Rational> vals;
  for (const auto& a : F.elements()) vals.push_back(m(a));
  State t = State::table(F, vals);
  for (const auto& a : F.elements()) EXPECT_EQ(t(a), m(a));
}

TEST(States, Faithfulness) {
  Algebra F = two_atoms();
  EXPECT_TRUE(is_faithful(measure_state(F, Rs({{1, 2}, {1, 2}}))).faithful);
  auto rep = is_faithful(measure_state(F, Rs({{1, 1}, {0, 1}})));
  EXPECT_FALSE(rep.faithful);
  EXPECT_EQ(*rep.witness, F.function(Rs({{0, 1}, {1, 1}})));
  auto chang = is_faithful(State::chang_first_coordinate(Algebra::chang()));
  EXPECT_FALSE(chang.faithful);
  EXPECT_EQ(*chang.witness, Algebra::chang().lower(1));
}

TEST(States, Metric) {
  Algebra U = Algebra::standard();
  State id = State::identity(U);
  EXPECT_EQ(rho(id, U.value(R(3, 10)), U.value(R(4, 5))), R(1, 2));
  EXPECT_EQ(rho(id, U.value(R(2, 9)), U.value(R(2, 9))), R(0));
  Algebra F = two_atoms();
  State s = measure_state(F, Rs({{1, 1}, {0, 1}}));
  Element a = F.function(Rs({{1, 1}, {0, 1}}));
  Element b = F.one();
  EXPECT_FALSE(a == b);
  EXPECT_EQ(rho(s, a, b), R(0));
}

// rho_s separates points exactly when s is faithful, checked exhaustively.
TEST(States, MetricSeparatesPointsIffFaithful) {
  Rng rng(77);
  int faithful_seen = 0, degenerate_seen = 0;
  for (int trial = 0; trial < 10; ++trial) {
    Algebra F = Algebra::functions(atom_names(3), 2);
    DiscreteMeasure mu = random_measure(F.atoms(), rng, trial % 2 ? 0.4 : 0.0);
    State s = State::measure(F, mu);
    bool separates = true;
    auto all = F.elements();
    for (const auto& a : all)
      for (const auto& b : all)
        if (!(a == b) && rho(s, a, b) == 0) separates = false;
    bool oracle_faithful = mu.strictly_positive();
    EXPECT_EQ(is_faithful(s).faithful, oracle_faithful);
    EXPECT_EQ(separates, oracle_faithful);
    (oracle_faithful ? faithful_seen : degenerate_seen)++;
  }
  EXPECT_GT(faithful_seen, 0);
  EXPECT_GT(degenerate_seen, 0);
}

TEST(States, DivisibleExtension) {
  Algebra L2 = Algebra::chain(2);
  State s = State::chain_identity(L2);
  State sd = extend_state_divisible(s);
  const Algebra& H = sd.algebra();
  EXPECT_EQ(sd(H.function({R(1, 3)})), R(1, 3));
  EXPECT_EQ(sd(H.zero()), R(0));
  for (const auto& a : L2.elements()) {
    Element half = H.function({a.scalar() / 2});
    EXPECT_EQ(sd(half), s(a) / 2);
  }
  Algebra F = two_atoms(1);
  State m = measure_state(F, Rs({{1, 3}, {2, 3}}));
  State md = extend_state_divisible(m);
  EXPECT_EQ(md(md.algebra().function(Rs({{1, 2}, {1, 4}}))), R(1, 6) + R(1, 6));
}

TEST(States, NullIdealQuotient) {
  auto cq = state_quotient(State::chang_first_coordinate(Algebra::chang()));
  EXPECT_EQ(cq.map.target.size(), std::optional<std::size_t>(2));
  Algebra F = two_atoms();
  auto fq = state_quotient(measure_state(F, Rs({{1, 3}, {2, 3}})));
  EXPECT_EQ(fq.map.target, F);
  auto dq = state_quotient(measure_state(F, Rs({{1, 1}, {0, 1}})));
  EXPECT_EQ(dq.map.target.atoms(), std::vector<std::string>{"x"});
  Element f = F.function(Rs({{1, 5}, {4, 5}}));
  EXPECT_EQ(dq.map(f).values(), Rs({{1, 5}}));
  EXPECT_TRUE(is_faithful(dq.state).faithful);
}

TEST(States, QuotientFactorsTheState) {
  Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    Algebra F = Algebra::functions(atom_names(3), 2);
    State s = State::measure(F, random_measure(F.atoms(), rng, 0.5));
    auto q = state_quotient(s);
    EXPECT_TRUE(is_faithful(q.state).faithful);
    for (const auto& a : F.elements()) ASSERT_EQ(q.state(q.map(a)), s(a));
  }
}

TEST(States, SequenceLimits) {
  Algebra U = Algebra::standard();
  State id = State::identity(U);
  Element a = U.value(R(1, 4)), b = U.value(R(3, 4));
  EXPECT_EQ(*sequence_limit(id, {a, a, a}), a);
  EXPECT_EQ(*sequence_limit(id, {a, b, b, b}), b);
  EXPECT_FALSE(sequence_limit(id, {a, b, a, b}).has_value());
}

TEST(States, SigmaContinuityOnChains) {
  Algebra L = Algebra::chain(5);
  State s = State::chain_identity(L);
  std::vector<Element> chain;
  for (int k = 0; k <= 5; ++k) chain.push_back(L.level(k));
  EXPECT_TRUE(sigma_continuous_on(s, chain));
  EXPECT_THROW(sigma_continuous_on(s, {L.level(2), L.level(1)}), input_error);
}
