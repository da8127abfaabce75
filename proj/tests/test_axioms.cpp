#include "support.hpp"

#include <chrono>

using namespace mvt;

namespace {

TableStructure modular_chain(int n) {
  // Untruncated sum wrapped mod (n+1).
  std::vector<std::vector<int>> op(n + 1, std::vector<int>(n + 1));
  std::vector<int> ng(n + 1);
  for (int i = 0; i <= n; ++i) {
    ng[i] = n - i;
    for (int j = 0; j <= n; ++j) op[i][j] = (i + j) % (n + 1);
  }
  return TableStructure("modular", op, ng);
}

TableStructure kleene_chain(int n) {
  std::vector<std::vector<int>> op(n + 1, std::vector<int>(n + 1));
  std::vector<int> ng(n + 1);
  for (int i = 0; i <= n; ++i) {
    ng[i] = n - i;
    for (int j = 0; j <= n; ++j) op[i][j] = std::max(i, j);
  }
  return TableStructure("kleene", op, ng);
}

TableStructure broken_negation(int n) {
  TableStructure base = TableStructure::chain(n);
  std::vector<int> ng = base.neg_table();
  ng[1] = 0;
  return TableStructure("broken-negation", base.oplus_table(), ng);
}

}  // namespace

TEST(Axioms, FiniteChainsPassExhaustively) {
  auto start = std::chrono::steady_clock::now();
  for (int n = 1; n <= 8; ++n) {
    auto rep = check_axioms(Algebra::chain(n), AxiomLevel::MV, CheckMode::exhaustive());
    EXPECT_TRUE(rep.pass) << n << ": " << rep.axiom;
    EXPECT_GE(rep.checks, static_cast<std::size_t>((n + 1) * (n + 1) * (n + 1)));
  }
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 5.0);
}

TEST(Axioms, ChainOfThreeCoversAllTriples) {
  auto rep = check_axioms(Algebra::chain(3), AxiomLevel::MV, CheckMode::exhaustive());
  EXPECT_TRUE(rep.pass);
  EXPECT_GE(rep.checks, 64u);
}

TEST(Axioms, TableChainsMatchTheAlgebra) {
  for (int n = 1; n <= 6; ++n) EXPECT_TRUE(check_axioms(TableStructure::chain(n), AxiomLevel::MV, CheckMode::exhaustive()).pass);
}

TEST(Axioms, ChangWindowPasses) {
  auto rep = check_axioms(Algebra::chang(), AxiomLevel::MV, CheckMode::bounded(5));
  EXPECT_TRUE(rep.pass) << rep.axiom;
  EXPECT_THROW(check_axioms(Algebra::chang(), AxiomLevel::MV, CheckMode::exhaustive()), input_error);
}

TEST(Axioms, ProductAlgebrasPass) {
  EXPECT_TRUE(check_axioms(Algebra::chain(1, true), AxiomLevel::PMV, CheckMode::exhaustive()).pass);
  EXPECT_TRUE(check_axioms(Algebra::functions({"x", "y"}, 1, Signature{true, false}), AxiomLevel::PMV,
                           CheckMode::exhaustive())
                  .pass);
  auto rep = check_axioms(Algebra::standard(Signature{true, true}), AxiomLevel::fMV, CheckMode::sample(10000, 42));
  EXPECT_TRUE(rep.pass) << rep.axiom;
  auto fa = check_axioms(Algebra::functions({"x", "y", "z"}, std::nullopt, Signature{true, true}), AxiomLevel::fMV,
                         CheckMode::sample(2000, 7));
  EXPECT_TRUE(fa.pass) << fa.axiom;
  auto riesz = check_axioms(Algebra::functions({"x", "y"}, std::nullopt, Signature{false, true}), AxiomLevel::RMV,
                            CheckMode::sample(2000, 8));
  EXPECT_TRUE(riesz.pass) << riesz.axiom;
}

TEST(Axioms, LevelNeedsMatchingSignature) {
  EXPECT_THROW(check_axioms(Algebra::chain(3), AxiomLevel::PMV, CheckMode::exhaustive()), input_error);
  EXPECT_THROW(check_axioms(Algebra::standard(), AxiomLevel::RMV, CheckMode::sample(10, 1)), input_error);
}

TEST(Axioms, CorruptedTablesFailWithWitness) {
  for (const auto& t : {modular_chain(3), kleene_chain(2), broken_negation(3)}) {
    auto rep = check_axioms(t, AxiomLevel::MV, CheckMode::exhaustive());
    EXPECT_FALSE(rep.pass) << t.name();
    EXPECT_FALSE(rep.axiom.empty());
    EXPECT_FALSE(rep.witness.empty());
  }
}

TEST(Axioms, CorruptedProductFails) {
  TableStructure base = TableStructure::chain(1);
  // a.b = a ignores b and so breaks commutativity-driven distributivity.
  TableStructure bad("bad-product", base.oplus_table(), base.neg_table(), {{0, 0}, {1, 1}});
  auto rep = check_axioms(bad, AxiomLevel::PMV, CheckMode::exhaustive());
  EXPECT_FALSE(rep.pass);
  EXPECT_FALSE(rep.witness.empty());
}

TEST(Axioms, SamplingIsDeterministic) {
  Algebra S = Algebra::standard(Signature{true, true});
  auto a = check_axioms(S, AxiomLevel::fMV, CheckMode::sample(300, 99));
  auto b = check_axioms(S, AxiomLevel::fMV, CheckMode::sample(300, 99));
  EXPECT_EQ(a.checks, b.checks);
  EXPECT_EQ(a.pass, b.pass);
}
