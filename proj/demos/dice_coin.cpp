// Roll a die; on a 3, toss a coin instead. Prints the composite outcome
// distribution, its entropy split by the chain rule, and a DOT picture.

#include "simplex_operad.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>

namespace so = simplex_operad;

int main() {
  const so::Dist die = so::Dist::uniform(6);
  const so::Dist coin{so::Scalar(1, 2), so::Scalar(1, 2)};
  const so::Dist game = so::compose_at(die, coin, 3);

  std::cout << "die o_3 coin = " << so::format_dist(game) << "\n";

  double direct = so::entropy(game);
  double split = so::entropy(die) + die.prob(3).to_double() * so::entropy(coin);
  std::printf("H(game)              = %.12f\n", direct);
  std::printf("H(die) + 1/6 H(coin) = %.12f\n", split);

  so::TreeExpr tree = so::tree_graft(so::TreeExpr::corolla(die), 3, so::TreeExpr::corolla(coin));
  std::cout << "\n" << so::to_dot(tree);
  return std::fabs(direct - split) <= so::kEntropyTolerance ? 0 : 1;
}
