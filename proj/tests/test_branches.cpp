#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "puiseux/branches.hpp"
#include "puiseux/parser.hpp"
#include "support/gen.hpp"

using namespace puiseux;

namespace {

ExpVec ev(std::vector<Rat> entries) { return ExpVec(std::move(entries)); }

Weight w12() { return testgen::weight_1_sqrt2(); }
Weight w15() { return Weight({QuadReal(Rat(1)), QuadReal(Rat(0), Rat(1), 5)}); }
Weight w_4_sqrt2() { return Weight({QuadReal(Rat(4)), QuadReal(Rat(0), Rat(1), 2)}); }
Weight w_sqrt2_1() { return Weight({QuadReal(Rat(0), Rat(1), 2), QuadReal(Rat(1))}); }

std::vector<RootExpansion> roots_of(const std::string& src, const Weight& w,
                                    const QuadReal& trunc) {
  return expand_roots(to_ypoly(parse_poly(src), w, true), trunc);
}

std::vector<size_t> sizes(const std::vector<Branch>& bs) {
  std::vector<size_t> out;
  for (const Branch& b : bs) out.push_back(b.members.size());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("orbit of the quasiordinary quadric root") {
  Weight w = w12();
  QuadReal T(Rat(3));
  GSeries xi = GSeries::from_terms(
      w, TruncBound::at(T),
      {{ev({Rat(1, 2), Rat(0)}), Cyc::one()},
       {ev({Rat(0), Rat(1)}), Cyc::one()},
       {ev({Rat(0), Rat(0)}), Cyc::one()}});
  auto orb = orbit(xi, 2, T);
  // mu_2 acts trivially on the integer exponent of x2: two elements.
  REQUIRE(orb.size() == 2);
  CHECK(orb[0].equal_upto(xi.galois_apply(2, {1, 0}), T));
  CHECK(orb[1].equal_upto(xi, T));
}

TEST_CASE("orbit with integer exponents is trivial") {
  Weight w = w12();
  QuadReal T(Rat(4));
  GSeries xi = GSeries::from_terms(w, TruncBound::at(T),
                                   {{ev({Rat(1), Rat(0)}), Cyc::rational(Rat(3))},
                                    {ev({Rat(0), Rat(2)}), Cyc::rational(Rat(-2))}});
  for (long k : {1L, 2L, 3L, 6L}) {
    auto orb = orbit(xi, k, T);
    REQUIRE(orb.size() == 1);
    CHECK(orb[0].equal_upto(xi, T));
  }
}

TEST_CASE("orbit of x1^(1/2)+x2^(1/2) has all four sign flips") {
  Weight w = w12();
  QuadReal T(Rat(3));
  GSeries xi = GSeries::from_terms(w, TruncBound::at(T),
                                   {{ev({Rat(1, 2), Rat(0)}), Cyc::one()},
                                    {ev({Rat(0), Rat(1, 2)}), Cyc::one()}});
  auto orb = orbit(xi, 2, T);
  REQUIRE(orb.size() == 4);
  int signs = 0;
  for (const GSeries& s : orb) {
    REQUIRE(s.terms().size() == 2);
    Rat c1 = s.terms()[0].coeff.rational_value();
    Rat c2 = s.terms()[1].coeff.rational_value();
    CHECK((c1 == 1 || c1 == -1));
    CHECK((c2 == 1 || c2 == -1));
    signs += (c1 == 1 ? 1 : 0) + (c2 == 1 ? 2 : 0);
  }
  CHECK(signs == 0 + 1 + 2 + 3);
}

TEST_CASE("orbit cap") {
  Weight w = w12();
  QuadReal T(Rat(3));
  GSeries xi = GSeries::monomial(w, TruncBound::at(T), ev({Rat(1, 2), Rat(0)}), Cyc::one());
  CHECK_THROWS_AS(orbit(xi, 100, T, /*orbit_cap=*/50), Error);
  try {
    orbit(xi, 100, T, 50);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::orbit_cap);
  }
}

TEST_CASE("the quadric has one branch") {
  Weight w = w12();
  auto roots = roots_of("y^2 - 2*(x2+1)*y + (x2+1)^2 - x1", w, QuadReal(Rat(3)));
  auto part = partition_branches(roots, QuadReal(Rat(3)));
  REQUIRE(part.branches.size() == 1);
  CHECK(part.branches[0].members == std::vector<size_t>{0, 1});
  CHECK(part.branches[0].k == 2);
  CHECK(part.warnings.empty());
}

TEST_CASE("the quartic has one branch of four roots") {
  Weight w = w12();
  auto roots = roots_of("y^4 - 2*(x1+x2)*y^2 + (x1-x2)^2", w, QuadReal(Rat(3)));
  auto part = partition_branches(roots, QuadReal(Rat(3)));
  REQUIRE(part.branches.size() == 1);
  CHECK(part.branches[0].members.size() == 4);
}

TEST_CASE("quintic branches split 3 + 2") {
  Weight w = w15();
  auto roots = roots_of("y^5 + x1^2*x2^2*y^2 + x2^5", w, QuadReal(Rat(3)));
  auto part = partition_branches(roots, QuadReal(Rat(3)));
  REQUIRE(part.branches.size() == 2);
  CHECK(sizes(part.branches) == std::vector<size_t>{2, 3});
  // the size-3 branch carries the (2/3,2/3) family, canonical indices 0..2
  for (const Branch& b : part.branches) {
    if (b.members.size() == 3) CHECK(b.members == std::vector<size_t>{0, 1, 2});
    if (b.members.size() == 2) CHECK(b.members == std::vector<size_t>{3, 4});
    CHECK(b.k == 6);
  }
  // expansions are inexact, so the match carries a warning
  CHECK(!part.warnings.empty());
}

TEST_CASE("z^2 = x + y^2 branch counts depend on the order") {
  // two branches under (4, sqrt(2)): integer exponents, trivial orbits
  {
    auto roots = roots_of("y^2 - (x1 + x2^2)", w_4_sqrt2(), QuadReal(Rat(8)));
    auto part = partition_branches(roots, QuadReal(Rat(8)));
    CHECK(part.branches.size() == 2);
    CHECK(sizes(part.branches) == std::vector<size_t>{1, 1});
  }
  // one branch under (sqrt(2), 1) and under (1, sqrt(2))
  {
    auto roots = roots_of("y^2 - (x1 + x2^2)", w_sqrt2_1(), QuadReal(Rat(8)));
    auto part = partition_branches(roots, QuadReal(Rat(8)));
    CHECK(part.branches.size() == 1);
  }
  {
    auto roots = roots_of("y^2 - (x1 + x2^2)", w12(), QuadReal(Rat(10)));
    auto part = partition_branches(roots, QuadReal(Rat(10)));
    CHECK(part.branches.size() == 1);
  }
}

TEST_CASE("partition is a partition and stable under reseeding") {
  Weight w = w15();
  auto roots = roots_of("y^5 + x1^2*x2^2*y^2 + x2^5", w, QuadReal(Rat(3)));
  auto part = partition_branches(roots, QuadReal(Rat(3)));
  // disjoint and exhaustive
  std::vector<bool> seen(roots.size(), false);
  for (const Branch& b : part.branches)
    for (size_t m : b.members) {
      CHECK(!seen[m]);
      seen[m] = true;
    }
  for (bool s : seen) CHECK(s);
  // every member's orbit reproduces its branch
  for (const Branch& b : part.branches)
    for (size_t m : b.members) {
      auto orb = orbit(roots[m].series, b.k, QuadReal(Rat(3)));
      std::vector<size_t> members;
      for (size_t j = 0; j < roots.size(); ++j)
        for (const GSeries& img : orb)
          if (img.equal_upto(roots[j].series, QuadReal(Rat(3)))) {
            members.push_back(j);
            break;
          }
      CHECK(members == b.members);
    }
}
