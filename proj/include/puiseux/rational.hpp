#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

#include "puiseux/errors.hpp"

namespace puiseux {

using BigInt = boost::multiprecision::cpp_int;
// Arbitrary-precision rational, kept normalized (gcd 1, positive denominator)
// by the backing type.
using Rat = boost::multiprecision::cpp_rational;

inline Rat make_rat(BigInt num, BigInt den) {
  if (den == 0) fail(Errc::division_by_zero, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rat(num, den);
}

inline int sign_of(const Rat& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

inline BigInt rat_num(const Rat& q) { return numerator(q); }
inline BigInt rat_den(const Rat& q) { return denominator(q); }
inline bool is_integer(const Rat& q) { return denominator(q) == 1; }

inline BigInt rat_floor(const Rat& q) {
  BigInt n = numerator(q), d = denominator(q);
  BigInt f = n / d;
  if (n % d != 0 && n < 0) --f;
  return f;
}

inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(BigInt(s));
    BigInt n(s.substr(0, slash));
    BigInt d(s.substr(slash + 1));
    return make_rat(n, d);
  } catch (const std::exception&) {
    fail(Errc::syntax, "malformed rational literal '" + s + "'");
  }
}

inline std::string rat_str(const Rat& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

// Uniform "p/q" form used by the JSON schemas.
inline std::string rat_str_full(const Rat& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= BigInt(n - i);
    r /= BigInt(i + 1);
  }
  return r;
}

// Exact q-th root of a nonnegative integer, if it exists.
inline std::optional<BigInt> exact_iroot(const BigInt& v, unsigned q) {
  if (v < 0) return std::nullopt;
  if (v == 0 || v == 1 || q == 1) return q == 1 ? v : v;
  BigInt lo = 0, hi = v;
  while (lo < hi) {
    BigInt mid = (lo + hi + 1) / 2;
    BigInt p = 1;
    bool over = false;
    for (unsigned i = 0; i < q && !over; ++i) {
      p *= mid;
      if (p > v) over = true;
    }
    if (over)
      hi = mid - 1;
    else
      lo = mid;
  }
  BigInt p = 1;
  for (unsigned i = 0; i < q; ++i) p *= lo;
  if (p == v) return lo;
  return std::nullopt;
}

// Exact q-th root of a rational, honoring sign (q odd allows negatives).
inline std::optional<Rat> rational_qth_root(const Rat& r, unsigned q) {
  if (q == 0) fail(Errc::internal, "zeroth root");
  if (r == 0) return Rat(0);
  bool neg = r < 0;
  if (neg && q % 2 == 0) return std::nullopt;
  BigInt n = numerator(r), d = denominator(r);
  if (n < 0) n = -n;
  auto rn = exact_iroot(n, q);
  auto rd = exact_iroot(d, q);
  if (!rn || !rd) return std::nullopt;
  Rat out(*rn, *rd);
  return neg ? Rat(-out) : out;
}

}  // namespace puiseux
