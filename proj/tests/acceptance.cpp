// Acceptance suite: reproduces the engine's reference fixtures exactly and
// runs the randomized property suites. One PASS/FAIL line per criterion;
// exit status is nonzero if any criterion fails its checks or time budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "puiseux/pipeline.hpp"
#include "support/gen.hpp"
#include "support/oracle.hpp"

using namespace puiseux;

namespace {

struct Checker {
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }

  template <typename A, typename B>
  void check_eq(const A& a, const B& b, const std::string& what) {
    if (!(a == b)) {
      std::ostringstream os;
      os << what << " (mismatch)";
      failures.push_back(os.str());
    }
  }
};

struct Criterion {
  std::string name;
  double time_limit_s;
  std::function<void(Checker&)> body;
};

ExpVec ev(std::vector<Rat> entries) { return ExpVec(std::move(entries)); }
Cyc rc(Rat q) { return Cyc::rational(std::move(q)); }

Weight w1() { return Weight({QuadReal(Rat(1))}); }
Weight w12() { return testgen::weight_1_sqrt2(); }
Weight w15() { return Weight({QuadReal(Rat(1)), QuadReal(Rat(0), Rat(1), 5)}); }
Weight w_4_sqrt2() { return Weight({QuadReal(Rat(4)), QuadReal(Rat(0), Rat(1), 2)}); }

YPoly poly(const std::string& src, const Weight& w) {
  return to_ypoly(parse_poly(src), w, true);
}

bool terms_match(const GSeries& s, const std::vector<std::pair<std::vector<Rat>, Cyc>>& expect) {
  if (s.terms().size() != expect.size()) return false;
  for (size_t i = 0; i < expect.size(); ++i) {
    if (s.terms()[i].exp != ev(expect[i].first)) return false;
    if (!(s.terms()[i].coeff == expect[i].second)) return false;
  }
  return true;
}

bool window_values_equal(const ValueWindow& a, const ValueWindow& b) {
  if (a.values.size() != b.values.size()) return false;
  for (size_t i = 0; i < a.values.size(); ++i)
    if (a.values[i] != b.values[i]) return false;
  return true;
}

// --- criterion bodies -------------------------------------------------------

void criterion_quadric(Checker& c) {
  Weight w = w12();
  YPoly f = poly("y^2 - 2*(x2+1)*y + (x2+1)^2 - x1", w);
  auto roots = expand_roots(f, QuadReal(Rat(3)));
  c.check_eq(roots.size(), size_t{2}, "two roots");
  for (const auto& r : roots) {
    c.check(r.exact, "roots exact");
    c.check_eq(r.multiplicity, 1, "multiplicity one");
  }
  c.check(terms_match(roots[0].series, {{{Rat(0), Rat(0)}, rc(Rat(1))},
                                        {{Rat(1, 2), Rat(0)}, rc(Rat(-1))},
                                        {{Rat(0), Rat(1)}, rc(Rat(1))}}),
          "minus root terms");
  c.check(terms_match(roots[1].series, {{{Rat(0), Rat(0)}, rc(Rat(1))},
                                        {{Rat(1, 2), Rat(0)}, rc(Rat(1))},
                                        {{Rat(0), Rat(1)}, rc(Rat(1))}}),
          "plus root terms");
  auto part = partition_branches(roots, QuadReal(Rat(3)));
  c.check_eq(part.branches.size(), size_t{1}, "one branch");
  auto report = check_invariance(f, roots, part.branches[0], SubringSpec{}, QuadReal(Rat(3)));
  c.check(report.equal, "invariance holds");
}

void criterion_quartic(Checker& c) {
  Weight w = w12();
  YPoly f = poly("y^4 - 2*(x1+x2)*y^2 + (x1-x2)^2", w);
  auto roots = expand_roots(f, QuadReal(Rat(3)));
  c.check_eq(roots.size(), size_t{4}, "four roots");
  size_t idx = 0;
  for (int s1 : {-1, 1})
    for (int s2 : {-1, 1}) {
      if (idx >= roots.size()) break;
      c.check(roots[idx].exact, "roots exact");
      c.check(terms_match(roots[idx].series, {{{Rat(1, 2), Rat(0)}, rc(Rat(s1))},
                                              {{Rat(0), Rat(1, 2)}, rc(Rat(s2))}}),
              "root terms +-x1^(1/2) +-x2^(1/2)");
      ++idx;
    }
  auto part = partition_branches(roots, QuadReal(Rat(3)));
  c.check_eq(part.branches.size(), size_t{1}, "one branch");
}

void criterion_zxy(Checker& c) {
  {
    Weight w = w_4_sqrt2();
    YPoly f = poly("y^2 - (x1 + x2^2)", w);
    auto roots = expand_roots(f, QuadReal(Rat(8)));
    c.check_eq(roots.size(), size_t{2}, "two roots under (4, sqrt2)");
    c.check(terms_match(roots[0].series, {{{Rat(0), Rat(1)}, rc(Rat(-1))},
                                          {{Rat(1), Rat(-1)}, rc(Rat(-1, 2))},
                                          {{Rat(2), Rat(-3)}, rc(Rat(1, 8))},
                                          {{Rat(3), Rat(-5)}, rc(Rat(-1, 16))},
                                          {{Rat(4), Rat(-7)}, rc(Rat(5, 128))},
                                          {{Rat(5), Rat(-9)}, rc(Rat(-7, 256))}}),
            "six printed coefficients under (4, sqrt2)");
    auto part = partition_branches(roots, QuadReal(Rat(8)));
    c.check_eq(part.branches.size(), size_t{2}, "two (4, sqrt2)-branches");
  }
  {
    Weight w = w12();
    YPoly f = poly("y^2 - (x1 + x2^2)", w);
    auto roots = expand_roots(f, QuadReal(Rat(10)));
    c.check_eq(roots.size(), size_t{2}, "two roots under (1, sqrt2)");
    c.check(terms_match(roots[1].series, {{{Rat(1, 2), Rat(0)}, rc(Rat(1))},
                                          {{Rat(-1, 2), Rat(2)}, rc(Rat(1, 2))},
                                          {{Rat(-3, 2), Rat(4)}, rc(Rat(-1, 8))},
                                          {{Rat(-5, 2), Rat(6)}, rc(Rat(1, 16))},
                                          {{Rat(-7, 2), Rat(8)}, rc(Rat(-5, 128))},
                                          {{Rat(-9, 2), Rat(10)}, rc(Rat(7, 256))}}),
            "six printed coefficients under (1, sqrt2)");
    auto part = partition_branches(roots, QuadReal(Rat(10)));
    c.check_eq(part.branches.size(), size_t{1}, "one (1, sqrt2)-branch");
  }
}

void criterion_quintic(Checker& c) {
  Weight w = w15();
  YPoly f = poly("y^5 + x1^2*x2^2*y^2 + x2^5", w);
  auto roots = expand_roots(f, QuadReal(Rat(3)));
  c.check_eq(roots.size(), size_t{5}, "five roots");
  int mult = 0;
  for (const auto& r : roots) mult += r.multiplicity;
  c.check_eq(mult, 5, "multiplicities sum to five");
  c.check(terms_match(roots[0].series, {{{Rat(2, 3), Rat(2, 3)}, rc(Rat(-1))},
                                        {{Rat(-8, 3), Rat(7, 3)}, rc(Rat(-1, 3))},
                                        {{Rat(-6), Rat(4)}, rc(Rat(1, 3))}}),
          "rational-leading root: -1, -1/3, 1/3 terms");
  c.check(roots[1].series.terms().size() >= 1 &&
              roots[1].series.terms()[0].exp == ev({Rat(2, 3), Rat(2, 3)}) &&
              roots[1].series.terms()[0].coeff == Cyc::zeta(6),
          "zeta_6 leading coefficient on (2/3, 2/3)");
  c.check(roots[2].series.terms().size() >= 1 &&
              roots[2].series.terms()[0].exp == ev({Rat(2, 3), Rat(2, 3)}) &&
              roots[2].series.terms()[0].coeff == Cyc::zeta(6, 5),
          "zeta_6^5 leading coefficient on (2/3, 2/3)");
  c.check(terms_match(roots[3].series, {{{Rat(-1), Rat(3, 2)}, -Cyc::zeta(4)},
                                        {{Rat(-6), Rat(4)}, rc(Rat(-1, 2))}}),
          "-zeta_4 leading and -1/2 second term");
  c.check(terms_match(roots[4].series, {{{Rat(-1), Rat(3, 2)}, Cyc::zeta(4)},
                                        {{Rat(-6), Rat(4)}, rc(Rat(-1, 2))}}),
          "+zeta_4 leading and -1/2 second term");
  auto part = partition_branches(roots, QuadReal(Rat(3)));
  c.check_eq(part.branches.size(), size_t{2}, "two branches");
  bool split_ok = false;
  if (part.branches.size() == 2) {
    const auto& b0 = part.branches[0].members;
    const auto& b1 = part.branches[1].members;
    split_ok = (b0 == std::vector<size_t>{0, 1, 2} && b1 == std::vector<size_t>{3, 4});
  }
  c.check(split_ok, "branches split {0,1,2} and {3,4}");
}

void criterion_invariance(Checker& c) {
  struct Fixture {
    std::string src;
    Weight w;
    QuadReal trunc;
    QuadReal bound;
  };
  std::vector<Fixture> fixtures{
      {"y^2 - 2*(x2+1)*y + (x2+1)^2 - x1", w12(), QuadReal(Rat(3)), QuadReal(Rat(3))},
      {"y^4 - 2*(x1+x2)*y^2 + (x1-x2)^2", w12(), QuadReal(Rat(3)), QuadReal(Rat(3))},
      {"y^2 - (x1 + x2^2)", w12(), QuadReal(Rat(10)), QuadReal(Rat(3))},
      {"y^5 + x1^2*x2^2*y^2 + x2^5", w15(), QuadReal(Rat(4)), QuadReal(Rat(4))},
  };
  int pairs_checked = 0;
  for (const Fixture& fx : fixtures) {
    YPoly f = poly(fx.src, fx.w);
    auto roots = expand_roots(f, fx.trunc);
    auto part = partition_branches(roots, fx.trunc);
    for (const Branch& b : part.branches) {
      if (b.members.size() < 2) continue;
      auto report = check_invariance(f, roots, b, SubringSpec{}, fx.bound);
      c.check(report.equal, "windows set-equal across " + fx.src);
      for (const ValueWindow& wdw : report.windows)
        c.check(wdw.values.size() >= 8, "window has at least 8 values for " + fx.src);
      int n = static_cast<int>(b.members.size());
      pairs_checked += n * (n - 1) / 2;
    }
  }
  c.check(pairs_checked >= 1 + 6 + 1 + 3 + 1, "all same-branch pairs covered");
}

void criterion_classical(Checker& c) {
  Weight w = w1();
  YPoly f = poly("y^2 - x1^3", w);
  auto roots = expand_roots(f, QuadReal(Rat(5)));
  c.check_eq(roots.size(), size_t{2}, "two expansions of the cusp");
  ValueWindow wdw = semigroup_window(roots[1].series, f, SubringSpec{}, QuadReal(Rat(4)));
  std::vector<Rat> expected{Rat(0),    Rat(1), Rat(3, 2), Rat(2),
                            Rat(5, 2), Rat(3), Rat(7, 2), Rat(4)};
  bool vals_ok = wdw.values.size() == expected.size();
  for (size_t i = 0; vals_ok && i < expected.size(); ++i)
    vals_ok = wdw.values[i][0] == expected[i];
  c.check(vals_ok, "window values 0,1,3/2,...,4");
  c.check(wdw.generators.size() == 2 && wdw.generators[0][0] == Rat(1) &&
              wdw.generators[1][0] == Rat(3, 2),
          "generators 1 and 3/2");
  // doubling is <2,3> within [0,8]
  std::set<Rat> doubled;
  for (const ExpVec& v : wdw.values) doubled.insert(v[0] * 2);
  std::set<Rat> am;
  for (long a = 0; 2 * a <= 8; ++a)
    for (long b = 0; 2 * a + 3 * b <= 8; ++b) am.insert(Rat(2 * a + 3 * b));
  c.check(doubled == am, "doubled window is <2,3> within [0,8]");
  // independent brute-force oracle
  std::set<Rat> engine;
  for (const ExpVec& v : wdw.values) engine.insert(v[0]);
  c.check(engine == oracle::window(oracle::Elem{{Rat(3, 2), Rat(1)}}, 2, Rat(4)),
          "independent oracle agrees");
}

void criterion_properties(Checker& c) {
  Weight w = w12();
  testgen::Rng rng(0xACCE97);

  {  // valuation axioms
    QuadReal T(Rat(10));
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
      GSeries a = rng.nonzero_gseries(w, T, 4, 2, 0, 2);
      GSeries b = rng.nonzero_gseries(w, T, 4, 2, 0, 2);
      GSeries p = a.mul(b);
      if (p.is_zero() || p.valuation() != a.valuation() + b.valuation()) ++bad;
      GSeries s = a.add(b);
      if (!s.is_zero()) {
        QuadReal wa = w.weight_of(a.valuation()), wb = w.weight_of(b.valuation());
        QuadReal lo = wa < wb ? wa : wb;
        if (!(w.weight_of(s.valuation()) >= lo)) ++bad;
        if (a.valuation() != b.valuation() && !(w.weight_of(s.valuation()) == lo)) ++bad;
      }
    }
    c.check_eq(bad, 0, "valuation axioms, 1000 cases");
  }
  {  // unit inverse
    QuadReal T(Rat(6));
    GSeries one = GSeries::constant(w, TruncBound::at(T), Cyc::one());
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
      GSeries u = rng.unit(w, T);
      if (!u.mul(u.unit_inverse()).equal_upto(one, T)) ++bad;
    }
    c.check_eq(bad, 0, "unit times inverse is one, 1000 cases");
  }
  {  // monomial-unit round trip
    QuadReal T(Rat(8));
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
      GSeries u = rng.unit(w, T);
      ExpVec gamma = rng.expvec(2, 2);
      auto [g2, u2] = u.mul_monomial(gamma).factor_monomial_unit();
      if (!(g2 == gamma) || !(u2 == u)) ++bad;
    }
    c.check_eq(bad, 0, "monomial-unit factorization round trip, 1000 cases");
  }
  {  // galois maps
    QuadReal T(Rat(8));
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
      GSeries a = rng.gseries(w, T), b = rng.gseries(w, T);
      std::vector<long> mu{rng.pick(0, 1), rng.pick(0, 1)};
      GSeries ga = a.galois_apply(2, mu), gb = b.galois_apply(2, mu);
      if (ga.terms().size() != a.terms().size()) ++bad;
      for (size_t t = 0; t < a.terms().size() && t < ga.terms().size(); ++t)
        if (ga.terms()[t].exp != a.terms()[t].exp) ++bad;
      if (!(a.mul(b).galois_apply(2, mu) == ga.mul(gb))) ++bad;
      if (!(a.add(b).galois_apply(2, mu) == ga.add(gb))) ++bad;
    }
    c.check_eq(bad, 0, "galois support preservation and homomorphism, 1000 cases");
  }
  {  // associativity / commutativity
    QuadReal T(Rat(8));
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
      GSeries a = rng.cone_gseries(w, T), b = rng.cone_gseries(w, T),
              cc = rng.cone_gseries(w, T);
      if (!(a.mul(b) == b.mul(a))) ++bad;
      if (!(a.mul(b).mul(cc) == a.mul(b.mul(cc)))) ++bad;
    }
    c.check_eq(bad, 0, "series multiplication associative/commutative, 1000 cases");
  }
  {  // echelon pivots under shuffles
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
      size_t nrows = static_cast<size_t>(rng.pick(2, 6));
      size_t ncols = static_cast<size_t>(rng.pick(3, 8));
      std::vector<std::map<size_t, Cyc>> rows(nrows);
      for (auto& row : rows) {
        long fill = rng.pick(1, 4);
        for (long t = 0; t < fill; ++t) {
          Cyc coeff = rng.cyc();
          if (!coeff.is_zero())
            row[static_cast<size_t>(rng.pick(0, static_cast<long>(ncols) - 1))] = coeff;
        }
      }
      auto base = puiseux::detail::echelon_pivots(rows);
      std::sort(base.begin(), base.end());
      auto shuffled = rows;
      std::shuffle(shuffled.begin(), shuffled.end(), rng.eng);
      auto other = puiseux::detail::echelon_pivots(shuffled);
      std::sort(other.begin(), other.end());
      if (base != other) ++bad;
    }
    c.check_eq(bad, 0, "echelon pivot set invariant under shuffles, 1000 cases");
  }
}

void criterion_reconstruction(Checker& c) {
  Weight w = w12();
  testgen::Rng rng(0x5EED);
  QuadReal T(Rat(12));
  int failures = 0;
  for (int run = 0; run < 100; ++run) {
    int deg = static_cast<int>(rng.pick(2, 3));
    std::vector<GSeries> xis;
    std::vector<ExpVec> gammas;
    for (int i = 0; i < deg; ++i) {
      ExpVec gamma;
      while (true) {
        gamma = rng.expvec(2, 2, 0, 3);
        bool dup = false;
        for (const ExpVec& g : gammas)
          if (g == gamma) dup = true;
        if (!dup) break;
      }
      gammas.push_back(gamma);
      GSeries tail = GSeries::constant(w, TruncBound::unbounded(), Cyc::one());
      long extra = rng.pick(0, 2);
      for (long t = 0; t < extra; ++t)
        tail = tail.add(GSeries::monomial(w, TruncBound::unbounded(), rng.expvec(2, 1, 1, 3),
                                          Cyc::rational(rng.rat_nonzero(5, 3))));
      xis.push_back(tail.scaled(Cyc::rational(rng.rat_nonzero(5, 3))).mul_monomial(gamma));
    }
    // f = product of (y - xi_i)
    std::vector<GSeries> acc{GSeries::constant(w, TruncBound::unbounded(), Cyc::one())};
    for (const GSeries& xi : xis) {
      std::vector<GSeries> next(acc.size() + 1, GSeries(w, TruncBound::unbounded()));
      for (size_t j = 0; j < acc.size(); ++j) {
        next[j + 1] = next[j + 1].add(acc[j]);
        next[j] = next[j].add(acc[j].mul(xi.negated()));
      }
      acc = std::move(next);
    }
    YPoly f(w, std::move(acc));

    bool ok = true;
    try {
      auto roots = expand_roots(f, T);
      int mult = 0;
      for (const auto& r : roots) mult += r.multiplicity;
      if (mult != deg) ok = false;
      std::vector<bool> used(roots.size(), false);
      for (const GSeries& xi : xis) {
        bool matched = false;
        for (size_t r = 0; r < roots.size() && !matched; ++r) {
          if (used[r]) continue;
          if (roots[r].series.equal_upto(xi, T)) {
            used[r] = true;
            matched = true;
          }
        }
        if (!matched) ok = false;
      }
      for (const auto& r : roots)
        if (!f.evaluate(r.series).is_zero()) ok = false;
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) ++failures;
  }
  c.check_eq(failures, 0, "100 random product reconstructions");
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {"quasiordinary quadric: exact roots, one branch, invariance", 1.0, criterion_quadric},
      {"quartic: four exact square-root expansions, one branch", 1.0, criterion_quartic},
      {"z^2 = x + y^2: six pinned coefficients per order, branch counts 2/1", 5.0,
       criterion_zxy},
      {"irreducible quintic: pinned terms, branches {0,1,2}/{3,4}", 10.0, criterion_quintic},
      {"invariance: same-branch windows set-equal with >= 8 values", 30.0,
       criterion_invariance},
      {"classical cusp window matches <2,3> and the brute-force oracle", 1.0,
       criterion_classical},
      {"property suites, 1000 exact cases each", 120.0, criterion_properties},
      {"reconstruction of 100 random products", 60.0, criterion_reconstruction},
  };

  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Checker checker;
    auto start = std::chrono::steady_clock::now();
    std::string blew_up;
    try {
      criteria[i].body(checker);
    } catch (const std::exception& e) {
      blew_up = e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = checker.failures.empty() && blew_up.empty() && secs <= criteria[i].time_limit_s;
    std::printf("%s criterion %zu: %s (%.2fs, limit %.0fs)\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].name.c_str(), secs, criteria[i].time_limit_s);
    if (!blew_up.empty()) std::printf("       exception: %s\n", blew_up.c_str());
    for (const std::string& f : checker.failures) std::printf("       check failed: %s\n", f.c_str());
    if (secs > criteria[i].time_limit_s) std::printf("       over time budget\n");
    if (!ok) ++failed;
  }
  if (failed) {
    std::printf("%d criteria FAILED\n", failed);
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
