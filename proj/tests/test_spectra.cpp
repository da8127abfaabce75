#include "support.hpp"

#include <set>

using namespace mvt;

namespace {

// Brute force over all subsets: downward closed, contains 0, closed under oplus.
std::size_t count_ideals_by_subsets(const Algebra& A) {
  auto all = A.elements();
  std::size_t n = all.size(), count = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    if (!(mask & 1)) continue;  // element 0 is index 0
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (leq(all[j], all[i]) && !(mask >> j & 1)) ok = false;
        if ((mask >> j & 1) && !(mask >> A.index_of(oplus(all[i], all[j])) & 1)) ok = false;
      }
    }
    if (ok) ++count;
  }
  return count;
}

}  // namespace

TEST(Spectra, IdealCountsMatchBruteForce) {
  std::vector<Algebra> algs = {Algebra::chain(1), Algebra::chain(3), Algebra::chain(5),
                               Algebra::functions({"x", "y"}, 1), Algebra::functions({"x", "y"}, 2),
                               Algebra::functions({"x", "y", "z"}, 1), Algebra::functions({"x", "y"}, 3)};
  for (const auto& A : algs) EXPECT_EQ(ideals(A).size(), count_ideals_by_subsets(A)) << A.describe();
}

TEST(Spectra, ChainsAreSimple) {
  for (int n = 1; n <= 6; ++n) {
    Algebra L = Algebra::chain(n);
    auto all = ideals(L);
    ASSERT_EQ(all.size(), 2u);
    auto maxes = maximal_ideals(L);
    ASSERT_EQ(maxes.size(), 1u);
    EXPECT_TRUE(maxes[0].is_zero());
    EXPECT_TRUE(radical(L).is_zero());
  }
}

TEST(Spectra, BooleanFourHasTwoMaximalIdeals) {
  Algebra B = Algebra::functions({"x", "y"}, 1);
  EXPECT_EQ(maximal_ideals(B).size(), 2u);
  EXPECT_EQ(ideals(B).size(), 4u);
}

TEST(Spectra, FunctionAlgebrasOverChainsAreSemisimple) {
  for (int n = 1; n <= 3; ++n)
    for (std::size_t k = 1; k <= 3; ++k) EXPECT_TRUE(is_semisimple(Algebra::functions(atom_names(k), n)));
}

TEST(Spectra, ChangRadical) {
  Algebra C = Algebra::chang();
  auto maxes = maximal_ideals(C);
  ASSERT_EQ(maxes.size(), 1u);
  Ideal rad = radical(C);
  EXPECT_FALSE(rad.is_zero());
  for (long k = 0; k < 8; ++k) {
    EXPECT_TRUE(rad.contains(C.lower(k)));
    EXPECT_FALSE(rad.contains(C.upper(k)));
  }
  EXPECT_FALSE(is_semisimple(C));
  Homomorphism q = quotient(C, rad);
  EXPECT_EQ(q.target.size(), std::optional<std::size_t>(2));
  EXPECT_EQ(q(C.lower(3)), q.target.zero());
  EXPECT_EQ(q(C.upper(3)), q.target.one());
}

TEST(Spectra, Quotients) {
  Algebra F = Algebra::functions({"x", "y"}, 2);
  Homomorphism id = quotient(F, Ideal::zero(F));
  EXPECT_EQ(id.target, F);
  Ideal I = Ideal::generated_by(F.function(Rs({{1, 1}, {0, 1}})));
  Homomorphism q = quotient(F, I);
  EXPECT_EQ(q.target, Algebra::chain(2));
  for (const auto& a : F.elements()) EXPECT_EQ(q(a).scalar(), a.values()[1]);
  // Homomorphism laws on every pair.
  for (const auto& a : F.elements())
    for (const auto& b : F.elements()) {
      ASSERT_EQ(q(oplus(a, b)), oplus(q(a), q(b)));
      ASSERT_EQ(q(neg(a)), neg(q(a)));
    }
}

TEST(Spectra, SemisimpleEmbeddings) {
  Algebra L = Algebra::chain(4);
  auto e = semisimple_embedding(L);
  EXPECT_TRUE(e.injective);
  for (const auto& a : L.elements()) {
    EXPECT_EQ(e.map(a).values().size(), 1u);
    EXPECT_EQ(e.map(a).values()[0], a.scalar());
  }
  auto c = semisimple_embedding(Algebra::chang());
  EXPECT_FALSE(c.injective);
  EXPECT_EQ(c.map(Algebra::chang().lower(1)), c.map.target.zero());
  Algebra B = Algebra::functions({"x", "y"}, 1);
  auto b = semisimple_embedding(B);
  EXPECT_TRUE(b.injective);
  EXPECT_EQ(b.map.target.atoms().size(), 2u);
  std::set<std::vector<Rational>> images;
  for (const auto& a : B.elements()) images.insert(b.map(a).values());
  EXPECT_EQ(images.size(), 4u);
}

TEST(Spectra, IdealValidation) {
  Algebra L = Algebra::chain(3);
  EXPECT_THROW(Ideal::from_members(L, {L.level(1)}), input_error);
  EXPECT_THROW(ideals(Algebra::standard()), input_error);
}

TEST(Hull, Membership) {
  Algebra L2 = Algebra::chain(2);
  DivisibleHull h(L2);
  const Algebra& amb = h.ambient();
  EXPECT_TRUE(h.contains(amb.function({R(1, 3)})));
  for (const auto& a : L2.elements()) EXPECT_TRUE(h.contains(h.embed(a)));
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    Rational r = random_unit_rational(rng, 60);
    auto d = h.decompose(amb.function({r}));
    ASSERT_TRUE(d.has_value());
    EXPECT_EQ(h.compose(*d), amb.function({r}));
  }
  EXPECT_THROW(DivisibleHull(Algebra::chang()), input_error);
}

TEST(Hull, FunctionAlgebraDecompositions) {
  Algebra F = Algebra::functions({"x", "y", "z"}, 1);
  DivisibleHull h(F);
  Rng rng(10);
  for (int i = 0; i < 100; ++i) {
    Element f = h.ambient().random(rng, 12);
    auto d = h.decompose(f);
    ASSERT_TRUE(d.has_value());
    Integer total(0);
    for (const auto& [term, mult] : d->terms) total += mult;
    EXPECT_EQ(total, d->n);
    EXPECT_EQ(h.compose(*d), f);
  }
}
