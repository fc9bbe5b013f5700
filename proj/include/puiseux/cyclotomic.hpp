#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <vector>

#include "puiseux/rational.hpp"

namespace puiseux {

// Largest conductor the engine will work in. A session-wide setting; every
// promotion and root-of-unity construction checks against it and errors out
// explicitly instead of letting degrees run away.
inline long& conductor_cap_ref() {
  static long cap = 240;
  return cap;
}
inline long conductor_cap() { return conductor_cap_ref(); }
inline void set_conductor_cap(long cap) {
  if (cap < 1) fail(Errc::bad_config, "conductor cap must be positive");
  conductor_cap_ref() = cap;
}

struct ConductorCapGuard {
  long saved;
  explicit ConductorCapGuard(long cap) : saved(conductor_cap()) { set_conductor_cap(cap); }
  ~ConductorCapGuard() { conductor_cap_ref() = saved; }
};

inline void ensure_conductor(long m) {
  if (m > conductor_cap())
    fail(Errc::conductor_cap, "conductor " + std::to_string(m) +
                                  " exceeds the cap " + std::to_string(conductor_cap()));
}

namespace detail {

// Dense univariate polynomials over Q, ascending coefficients, no trailing
// zeros. Only what the cyclotomic layer needs.
using QPoly = std::vector<Rat>;

inline void poly_trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  poly_trim(r);
  return r;
}

inline std::pair<QPoly, QPoly> poly_divmod(QPoly num, const QPoly& den) {
  if (den.empty()) fail(Errc::division_by_zero, "polynomial division by zero");
  QPoly quot;
  if (num.size() >= den.size()) quot.assign(num.size() - den.size() + 1, Rat(0));
  const Rat& lead = den.back();
  while (num.size() >= den.size()) {
    Rat f = num.back() / lead;
    size_t shift = num.size() - den.size();
    quot[shift] = f;
    for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= f * den[i];
    poly_trim(num);
    if (num.size() < den.size()) break;
    // poly_trim may remove several coefficients at once; loop re-checks.
  }
  poly_trim(quot);
  return {quot, num};
}

inline long phi_of(long m) {
  long result = m, n = m;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      result -= result / p;
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

// Phi_m by dividing x^m - 1 by the cyclotomic polynomials of the proper
// divisors of m. Cached per conductor.
inline const QPoly& cyclotomic_poly(long m) {
  static std::map<long, QPoly> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;

  std::vector<long> stack{m};
  while (!stack.empty()) {
    long k = stack.back();
    if (cache.count(k)) {
      stack.pop_back();
      continue;
    }
    bool ready = true;
    for (long e = 1; e < k; ++e)
      if (k % e == 0 && !cache.count(e)) {
        stack.push_back(e);
        ready = false;
      }
    if (!ready) continue;
    stack.pop_back();
    QPoly num(k + 1, Rat(0));
    num[0] = -1;
    num[k] = 1;
    for (long e = 1; e < k; ++e) {
      if (k % e != 0) continue;
      auto [q, r] = poly_divmod(num, cache[e]);
      if (!r.empty()) fail(Errc::internal, "cyclotomic division left a remainder");
      num = std::move(q);
    }
    cache[k] = std::move(num);
  }
  return cache[m];
}

inline QPoly poly_mod_phi(QPoly p, long m) {
  const QPoly& phi = cyclotomic_poly(m);
  if (p.size() >= phi.size()) {
    auto [q, r] = poly_divmod(std::move(p), phi);
    (void)q;
    return r;
  }
  poly_trim(p);
  return p;
}

}  // namespace detail

inline long euler_phi(long m) { return detail::phi_of(m); }

// Element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^{phi(m)-1}
// reduced modulo Phi_m. The conductor m is part of the representation;
// arithmetic promotes both operands into Q(zeta_lcm).
class Cyc {
 public:
  Cyc() : m_(1), c_(1, Rat(0)) {}

  static Cyc rational(Rat r) {
    Cyc x;
    x.c_[0] = std::move(r);
    return x;
  }

  static Cyc zero() { return Cyc(); }
  static Cyc one() { return rational(Rat(1)); }

  static Cyc zeta(long m, long t = 1) {
    if (m < 1) fail(Errc::bad_config, "conductor must be positive");
    ensure_conductor(m);
    t %= m;
    if (t < 0) t += m;
    detail::QPoly p(static_cast<size_t>(t) + 1, Rat(0));
    p.back() = 1;
    return Cyc(m, detail::poly_mod_phi(std::move(p), m));
  }

  long conductor() const { return m_; }
  const std::vector<Rat>& coords() const { return c_; }

  bool is_zero() const {
    for (const Rat& q : c_)
      if (q != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  Rat rational_value() const {
    if (!is_rational()) fail(Errc::internal, "value is not rational");
    return c_[0];
  }

  // Same field element re-expressed in Q(zeta_m2); m must divide m2.
  Cyc promoted(long m2) const {
    if (m2 % m_ != 0)
      fail(Errc::bad_config, "conductor " + std::to_string(m_) + " does not divide " +
                                 std::to_string(m2));
    if (m2 == m_) return *this;
    ensure_conductor(m2);
    long r = m2 / m_;
    detail::QPoly p(static_cast<size_t>(c_.size() - 1) * r + 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) p[i * r] = c_[i];
    return Cyc(m2, detail::poly_mod_phi(std::move(p), m2));
  }

  friend Cyc operator+(const Cyc& x, const Cyc& y) {
    long m = std::lcm(x.m_, y.m_);
    Cyc a = x.promoted(m), b = y.promoted(m);
    for (size_t i = 0; i < b.c_.size(); ++i) a.c_[i] += b.c_[i];
    return demoted(std::move(a));
  }

  friend Cyc operator-(const Cyc& x) {
    Cyc r = x;
    for (Rat& q : r.c_) q = -q;
    return r;
  }

  friend Cyc operator-(const Cyc& x, const Cyc& y) { return x + (-y); }

  friend Cyc operator*(const Cyc& x, const Cyc& y) {
    long m = std::lcm(x.m_, y.m_);
    Cyc a = x.promoted(m), b = y.promoted(m);
    detail::QPoly pa(a.c_.begin(), a.c_.end()), pb(b.c_.begin(), b.c_.end());
    detail::poly_trim(pa);
    detail::poly_trim(pb);
    return demoted(Cyc(m, detail::poly_mod_phi(detail::poly_mul(pa, pb), m)));
  }

  // Inverse through the extended Euclidean algorithm against Phi_m, which is
  // irreducible over Q, so the gcd is a nonzero constant.
  Cyc inverse() const {
    if (is_zero()) fail(Errc::division_by_zero, "division by zero in Q(zeta)");
    if (is_rational()) return rational(Rat(1) / c_[0]);
    detail::QPoly r0 = detail::cyclotomic_poly(m_);
    detail::QPoly r1(c_.begin(), c_.end());
    detail::poly_trim(r1);
    detail::QPoly s0{}, s1{Rat(1)};
    while (!r1.empty()) {
      auto [q, rem] = detail::poly_divmod(r0, r1);
      detail::QPoly s2 = s0;
      detail::QPoly qs = detail::poly_mul(q, s1);
      if (s2.size() < qs.size()) s2.resize(qs.size(), Rat(0));
      for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
      detail::poly_trim(s2);
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    if (r0.size() != 1) fail(Errc::internal, "cyclotomic inverse: gcd not constant");
    Rat g = r0[0];
    for (Rat& q : s0) q /= g;
    return demoted(Cyc(m_, detail::poly_mod_phi(std::move(s0), m_)));
  }

  friend Cyc operator/(const Cyc& x, const Cyc& y) { return x * y.inverse(); }

  Cyc pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyc base = *this, acc = one();
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  friend bool operator==(const Cyc& x, const Cyc& y) {
    long m = std::lcm(x.m_, y.m_);
    return x.promoted(m).c_ == y.promoted(m).c_;
  }
  friend bool operator!=(const Cyc& x, const Cyc& y) { return !(x == y); }

  // Representation compare used for canonical sorting; not a value compare
  // across conductors.
  static int canonical_cmp(const Cyc& x, const Cyc& y) {
    if (x.m_ != y.m_) return x.m_ < y.m_ ? -1 : 1;
    for (size_t i = 0; i < x.c_.size(); ++i) {
      if (x.c_[i] != y.c_[i]) return x.c_[i] < y.c_[i] ? -1 : 1;
    }
    return 0;
  }

  // TODO: demote results to their minimal conductor before printing, so a
  // value computed in Q(zeta_12) that happens to lie in Q(zeta_6) prints as
  // zeta(6) powers.
  std::string str() const {
    if (is_rational()) return rat_str(c_[0]);
    std::string out;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      Rat q = c_[i];
      std::string piece;
      if (i == 0) {
        piece = rat_str(q < 0 ? Rat(-q) : q);
      } else {
        std::string z = "zeta(" + std::to_string(m_) + ")";
        if (i > 1) z += "^" + std::to_string(i);
        Rat mag = q < 0 ? Rat(-q) : q;
        piece = (mag == 1) ? z : rat_str(mag) + "*" + z;
      }
      if (first) {
        out += (q < 0 ? "-" : "") + piece;
        first = false;
      } else {
        out += (q < 0 ? " - " : " + ") + piece;
      }
    }
    return out;
  }

 private:
  Cyc(long m, detail::QPoly reduced) : m_(m), c_(std::move(reduced)) {
    c_.resize(static_cast<size_t>(detail::phi_of(m_)), Rat(0));
  }

  // Arithmetic results that happen to be rational drop to conductor 1 so
  // representation-level comparisons see through trivial embeddings.
  // promoted() deliberately keeps its target conductor.
  static Cyc demoted(Cyc x) {
    if (x.m_ > 1 && x.is_rational()) return rational(x.c_[0]);
    return x;
  }

  long m_;
  std::vector<Rat> c_;
};

inline Cyc cyc_arith(const Cyc& x, const Cyc& y, char op) {
  switch (op) {
    case '+': return x + y;
    case '*': return x * y;
    case '/': return x / y;
    default: fail(Errc::bad_config, "unknown cyclotomic operation");
  }
}

namespace detail {

inline int legendre_symbol(long a, long p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  long r = 1, base = a, e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) r = (r * base) % p;
    base = (base * base) % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

// Quadratic Gauss sum: g = sum_j (j|p) zeta_p^j squares to (-1)^((p-1)/2) p,
// so it yields sqrt(p) directly for p = 1 mod 4 and after division by
// zeta_4 for p = 3 mod 4.
inline Cyc sqrt_of_prime(long p) {
  if (p == 2) return Cyc::zeta(8, 1) + Cyc::zeta(8, 7);
  Cyc g = Cyc::zero();
  for (long j = 1; j < p; ++j)
    if (legendre_symbol(j, p) == 1)
      g = g + Cyc::zeta(p, j);
    else
      g = g - Cyc::zeta(p, j);
  if (p % 4 == 3) g = g * Cyc::zeta(4, 3);
  return g;
}

}  // namespace detail

// An element s of the cyclotomic tower with s^2 = r, assembled
// multiplicatively from the square part, sqrt(2) in Q(zeta_8), Gauss sums
// for odd primes and zeta_4 for the sign.
inline Cyc sqrt_rational_in_cyclotomic(const Rat& r) {
  if (r == 0) fail(Errc::bad_config, "sqrt of zero requested");
  BigInt n = numerator(r) * denominator(r);
  bool neg = n < 0;
  if (neg) n = -n;

  BigInt square = 1;
  std::vector<long> primes;
  BigInt rest = n;
  for (BigInt p = 2; p * p <= rest && p <= 1000000; ++p) {
    if (rest % p != 0) continue;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) square *= p;
    if (e % 2) primes.push_back(static_cast<long>(p));
  }
  if (rest > 1) {
    auto sq = exact_iroot(rest, 2);
    if (sq) {
      square *= *sq;
    } else if (rest <= 1000000) {
      primes.push_back(static_cast<long>(rest));
    } else {
      // Any leftover prime factor exceeds 10^6, far beyond any conductor cap.
      fail(Errc::conductor_cap,
           "squarefree part of the radicand needs a conductor beyond the cap " +
               std::to_string(conductor_cap()));
    }
  }

  Cyc out = Cyc::rational(Rat(square, rat_den(r)));
  for (long p : primes) {
    ensure_conductor(p == 2 ? 8 : (p % 4 == 3 ? 4 * p : p));
    out = out * detail::sqrt_of_prime(p);
  }
  if (neg) out = out * Cyc::zeta(4, 1);
  return out;
}

}  // namespace puiseux
