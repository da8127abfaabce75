// Two biased coins as states on Boolean function algebras, their product
// space, and a bilinear map factored through the tensor embedding.

#include "mvprob/mvprob.hpp"

#include <iostream>

using namespace mvp;

int main() {
  Algebra A = Algebra::functions({"heads", "tails"}, 1);
  Algebra B = Algebra::functions({"heads", "tails"}, 1);
  State sA = State::measure(A, DiscreteMeasure(A.atoms(), {make_rational(1, 2), make_rational(1, 2)}));
  State sB = State::measure(B, DiscreteMeasure(B.atoms(), {make_rational(1, 3), make_rational(2, 3)}));

  auto rep = embed_L1(sA);
  std::cout << "integral identity on A: " << (rep.verify_integral_identity().pass ? "holds" : "fails") << "\n";

  IndependenceSetup setup(sA, sB);
  State sT = setup.space().s_T();
  for (const auto& a : A.elements())
    for (const auto& b : B.elements())
      std::cout << "s(" << a.str() << " x " << b.str() << ") = " << sT(setup.beta(a, b)).get_str() << "\n";

  auto f = factorize(state_product_map(sA, sB), setup);
  auto u = f.uniqueness();
  std::cout << "state product factors: " << (f.verify_factorization().pass ? "yes" : "no")
            << ", rank " << u.rank << " of " << u.dimension << "\n";
}
