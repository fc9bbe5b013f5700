// Expands a quasiordinary quadric with the library API and prints the roots,
// their branch partition and one value semigroup window.

#include <iostream>

#include "puiseux/pipeline.hpp"

int main() {
  using namespace puiseux;

  RunConfig cfg;
  cfg.omega = {QuadReal(Rat(1)), QuadReal(Rat(0), Rat(1), 2)};  // (1, sqrt(2))
  cfg.trunc = QuadReal(Rat(3));

  PolyExpr f = parse_poly("y^2 - 2*(x2+1)*y + (x2+1)^2 - x1");

  SemigroupOutcome sg = compute_semigroup(cfg, f, "all-in-branch");
  std::cout << render_semigroup_text(cfg, sg);
  return 0;
}
