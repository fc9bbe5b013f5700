#pragma once

#include <numeric>
#include <optional>
#include <vector>

#include "puiseux/cyclotomic.hpp"

namespace puiseux {

// Univariate polynomial over the cyclotomic tower, ascending coefficients.
using CharPoly = std::vector<Cyc>;

struct CharRoot {
  Cyc value;
  int multiplicity;
};

namespace detail {

inline int cp_degree(const CharPoly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (!p[static_cast<size_t>(i)].is_zero()) return i;
  return -1;
}

inline Cyc cp_eval(const CharPoly& p, const Cyc& x) {
  Cyc acc = Cyc::zero();
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    acc = acc * x + p[static_cast<size_t>(i)];
  return acc;
}

// Synthetic division by (c - r); caller guarantees p(r) == 0.
inline CharPoly cp_div_linear(const CharPoly& p, const Cyc& r) {
  int d = cp_degree(p);
  CharPoly q(static_cast<size_t>(d), Cyc::zero());
  Cyc carry = Cyc::zero();
  for (int i = d; i >= 1; --i) {
    carry = p[static_cast<size_t>(i)] + carry * r;
    q[static_cast<size_t>(i - 1)] = carry;
  }
  return q;
}

inline bool cp_all_rational(const CharPoly& p) {
  for (const Cyc& c : p)
    if (!c.is_rational()) return false;
  return true;
}

inline std::vector<BigInt> divisors_of(BigInt n, size_t limit = 4096) {
  if (n < 0) n = -n;
  std::vector<std::pair<BigInt, int>> factors;
  for (BigInt p = 2; p * p <= n && p <= 1000000; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    factors.emplace_back(p, e);
  }
  if (n > 1) factors.emplace_back(n, 1);
  std::vector<BigInt> divs{BigInt(1)};
  for (const auto& [p, e] : factors) {
    size_t base = divs.size();
    BigInt pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (size_t j = 0; j < base; ++j) {
        divs.push_back(divs[j] * pk);
        if (divs.size() > limit) return {};
      }
    }
  }
  return divs;
}

// Rational root search on a rational-coefficient polynomial. Returns only
// verified roots.
inline std::vector<Cyc> rational_roots(const CharPoly& p) {
  int d = cp_degree(p);
  std::vector<Rat> rc(static_cast<size_t>(d) + 1);
  BigInt L = 1;
  for (int i = 0; i <= d; ++i) {
    rc[static_cast<size_t>(i)] = p[static_cast<size_t>(i)].rational_value();
    L = lcm(L, rat_den(rc[static_cast<size_t>(i)]));
  }
  std::vector<BigInt> ic(rc.size());
  BigInt content = 0;
  for (size_t i = 0; i < rc.size(); ++i) {
    ic[i] = rat_num(rc[i] * Rat(L));
    content = gcd(content, ic[i]);
  }
  if (content > 1)
    for (BigInt& v : ic) v /= content;
  BigInt a0 = ic.front(), ad = ic.back();
  if (a0 == 0) fail(Errc::internal, "rational root search on a polynomial divisible by c");
  BigInt bound(1000000000000LL);
  if (abs(a0) > bound || abs(ad) > bound) return {};
  auto ps = divisors_of(a0);
  auto qs = divisors_of(ad);
  if (ps.empty() || qs.empty()) return {};
  std::vector<Cyc> found;
  auto eval_rat = [&](const Rat& x) {
    Rat acc(0);
    for (size_t i = rc.size(); i-- > 0;) acc = acc * x + rc[i];
    return acc;
  };
  std::vector<Rat> seen;
  for (const BigInt& pn : ps)
    for (const BigInt& qn : qs)
      for (int s : {1, -1}) {
        Rat cand = make_rat(s * pn, qn);
        bool dup = false;
        for (const Rat& r : seen)
          if (r == cand) dup = true;
        if (dup) continue;
        seen.push_back(cand);
        if (eval_rat(cand) == 0) found.push_back(Cyc::rational(cand));
      }
  return found;
}

// Writes v as r * zeta_m^t with rational r, if the element has that shape in
// its own conductor.
inline std::optional<std::pair<Rat, std::pair<long, long>>> monomial_form(const Cyc& v) {
  if (v.is_zero()) return std::nullopt;
  if (v.is_rational()) return std::make_pair(v.rational_value(), std::make_pair(1L, 0L));
  long m = v.conductor();
  for (long t = 1; t < m; ++t) {
    Cyc u = v * Cyc::zeta(m, m - t);
    if (u.is_rational()) return std::make_pair(u.rational_value(), std::make_pair(m, t));
  }
  return std::nullopt;
}

// Normalizes (r, m, t) so that r > 0, folding a sign into the root of unity.
inline void fold_sign(Rat& r, long& m, long& t) {
  if (r > 0) return;
  r = -r;
  if (m % 2 == 0) {
    t = (t + m / 2) % m;
  } else {
    m *= 2;
    t = (2 * t + m / 2) % m;
  }
}

// Square root of a monomial-form element: sqrt(r) * zeta_{2m}^t.
inline Cyc sqrt_of_monomial(const Rat& r, long m, long t) {
  Cyc s = sqrt_rational_in_cyclotomic(r);
  if (t != 0) s = s * Cyc::zeta(2 * m, t);
  return s;
}

// All q-th roots of v when v = r * zeta_m^t with r^(1/q) rational; for q = 2
// the Gauss-sum square root covers irrational sqrt(r) as well.
inline std::optional<std::vector<Cyc>> binomial_roots(const Cyc& v, long q) {
  auto mf = monomial_form(v);
  if (!mf) return std::nullopt;
  auto [r, mt] = *mf;
  auto [m, t] = mt;
  fold_sign(r, m, t);
  auto s = rational_qth_root(r, static_cast<unsigned>(q));
  if (s) {
    std::vector<Cyc> roots;
    Cyc base = Cyc::rational(*s);
    if (t != 0) base = base * Cyc::zeta(q * m, t);
    roots.push_back(base);
    for (long j = 1; j < q; ++j) roots.push_back(base * Cyc::zeta(q, j));
    return roots;
  }
  if (q == 2) {
    Cyc root = sqrt_of_monomial(r, m, t);
    return std::vector<Cyc>{root, -root};
  }
  return std::nullopt;
}

}  // namespace detail

// Nonzero roots of a characteristic polynomial, with multiplicities, inside
// the cyclotomic tower. Strategies: linear factors (including a rational
// root search when the coefficients are rational), binomial equations
// c^q = r*zeta_m^t, and the quadratic formula with monomial-form
// discriminants. Anything left unresolved is an explicit tower error, never
// a silently dropped root.
inline std::vector<CharRoot> charpoly_roots(const CharPoly& p) {
  int deg = detail::cp_degree(p);
  if (deg < 0) fail(Errc::bad_config, "zero characteristic polynomial");
  int ord = 0;
  while (p[static_cast<size_t>(ord)].is_zero()) ++ord;
  CharPoly work(p.begin() + ord, p.begin() + deg + 1);

  std::vector<CharRoot> out;
  while (detail::cp_degree(work) >= 1) {
    int d = detail::cp_degree(work);
    std::vector<Cyc> batch;
    if (d == 1) {
      batch.push_back(-(work[0] / work[1]));
    } else {
      int nonzero = 0;
      for (const Cyc& c : work)
        if (!c.is_zero()) ++nonzero;
      if (nonzero == 2 && !work[0].is_zero()) {
        auto roots = detail::binomial_roots(-(work[0] / work[static_cast<size_t>(d)]), d);
        if (roots) batch = *roots;
      }
      if (batch.empty() && d == 2) {
        Cyc disc = work[1] * work[1] - Cyc::rational(Rat(4)) * work[2] * work[0];
        Cyc two_a = Cyc::rational(Rat(2)) * work[2];
        if (disc.is_zero()) {
          batch.push_back(-(work[1] / two_a));
        } else if (auto mf = detail::monomial_form(disc)) {
          auto [r, mt] = *mf;
          auto [m, t] = mt;
          detail::fold_sign(r, m, t);
          Cyc s = detail::sqrt_of_monomial(r, m, t);
          batch.push_back((-work[1] + s) / two_a);
          batch.push_back((-work[1] - s) / two_a);
        }
      }
      if (batch.empty() && detail::cp_all_rational(work)) batch = detail::rational_roots(work);
    }

    bool progressed = false;
    for (const Cyc& v : batch) {
      int mult = 0;
      while (detail::cp_degree(work) >= 1 && detail::cp_eval(work, v).is_zero()) {
        work = detail::cp_div_linear(work, v);
        ++mult;
      }
      if (mult > 0) {
        out.push_back(CharRoot{v, mult});
        progressed = true;
      }
    }
    if (!progressed)
      fail(Errc::tower,
           "root requires extension beyond the supported cyclotomic tower (residual degree " +
               std::to_string(d) + ")");
  }

  std::sort(out.begin(), out.end(), [](const CharRoot& a, const CharRoot& b) {
    return Cyc::canonical_cmp(a.value, b.value) < 0;
  });
  return out;
}

}  // namespace puiseux
