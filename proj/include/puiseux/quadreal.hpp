#pragma once

#include <string>

#include "puiseux/rational.hpp"

namespace puiseux {

namespace detail {
inline bool is_squarefree(long long d) {
  for (long long p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0) return false;
  return true;
}
}  // namespace detail

// Exact real quadratic number a + b*sqrt(d). Normal form: b == 0 forces
// d == 1, otherwise d is squarefree and >= 2, so equality of values is
// equality of fields.
struct QuadReal {
  Rat a;
  Rat b;
  long long d = 1;

  QuadReal() : a(0), b(0), d(1) {}
  QuadReal(Rat av) : a(std::move(av)), b(0), d(1) {}
  QuadReal(long v) : a(v), b(0), d(1) {}
  QuadReal(Rat av, Rat bv, long long dv) : a(std::move(av)), b(std::move(bv)), d(dv) {
    if (b == 0) {
      d = 1;
    } else if (d == 1) {
      a += b;
      b = 0;
    } else {
      if (d < 2) fail(Errc::bad_config, "sqrt argument must be positive");
      if (!detail::is_squarefree(d))
        fail(Errc::bad_config, "sqrt argument " + std::to_string(d) + " is not squarefree");
    }
  }
};

inline int quadreal_sign(const QuadReal& q) {
  int sa = sign_of(q.a), sb = sign_of(q.b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 against b^2 d.
  Rat lhs = q.a * q.a, rhs = q.b * q.b * q.d;
  if (lhs == rhs) return 0;  // unreachable for squarefree d >= 2
  return lhs > rhs ? sa : sb;
}

namespace detail {
inline long long unify_d(const QuadReal& x, const QuadReal& y) {
  if (x.b != 0 && y.b != 0 && x.d != y.d)
    fail(Errc::bad_config, "incompatible quadratic fields Q(sqrt(" + std::to_string(x.d) +
                               ")) and Q(sqrt(" + std::to_string(y.d) + "))");
  return x.b != 0 ? x.d : y.d;
}
}  // namespace detail

inline QuadReal operator+(const QuadReal& x, const QuadReal& y) {
  long long d = detail::unify_d(x, y);
  return QuadReal(x.a + y.a, x.b + y.b, d);
}

inline QuadReal operator-(const QuadReal& x) { return QuadReal(-x.a, -x.b, x.d); }

inline QuadReal operator-(const QuadReal& x, const QuadReal& y) { return x + (-y); }

inline QuadReal operator*(const QuadReal& x, const QuadReal& y) {
  long long d = detail::unify_d(x, y);
  return QuadReal(x.a * y.a + x.b * y.b * d, x.a * y.b + x.b * y.a, d);
}

inline QuadReal scale(const QuadReal& x, const Rat& c) {
  return QuadReal(x.a * c, x.b * c, x.d);
}

inline bool operator==(const QuadReal& x, const QuadReal& y) {
  return x.a == y.a && x.b == y.b && x.d == y.d;
}
inline bool operator!=(const QuadReal& x, const QuadReal& y) { return !(x == y); }
inline bool operator<(const QuadReal& x, const QuadReal& y) {
  return quadreal_sign(x - y) < 0;
}
inline bool operator>(const QuadReal& x, const QuadReal& y) { return y < x; }
inline bool operator<=(const QuadReal& x, const QuadReal& y) { return !(y < x); }
inline bool operator>=(const QuadReal& x, const QuadReal& y) { return !(x < y); }

inline QuadReal quadreal_div(const QuadReal& x, const QuadReal& y) {
  if (quadreal_sign(y) == 0) fail(Errc::division_by_zero, "division by zero QuadReal");
  long long d = detail::unify_d(x, y);
  // Multiply by the conjugate; the norm a^2 - b^2 d is a nonzero rational.
  Rat norm = y.a * y.a - y.b * y.b * d;
  QuadReal conj(y.a, -y.b, d);
  QuadReal num = x * conj;
  return QuadReal(num.a / norm, num.b / norm, d);
}

// Largest integer <= a + b*sqrt(d), by exact bisection.
inline BigInt quadreal_floor(const QuadReal& q) {
  if (q.b == 0) return rat_floor(q.a);
  Rat babs = q.b < 0 ? Rat(-q.b) : q.b;
  BigInt span = rat_floor(babs) + 1;
  BigInt lo = rat_floor(q.a) - span * q.d - 1;
  BigInt hi = rat_floor(q.a) + span * q.d + 1;
  while (lo < hi) {
    BigInt mid = (lo + hi + 1) / 2;
    if (quadreal_sign(q - QuadReal(Rat(mid))) >= 0)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

inline std::string quadreal_str(const QuadReal& q) {
  if (q.b == 0) return rat_str(q.a);
  std::string root = "sqrt(" + std::to_string(q.d) + ")";
  std::string bs;
  if (q.b == 1)
    bs = root;
  else if (q.b == -1)
    bs = "-" + root;
  else
    bs = rat_str(q.b) + "*" + root;
  if (q.a == 0) return bs;
  if (q.b > 0) return rat_str(q.a) + "+" + bs;
  return rat_str(q.a) + "-" + (q.b == -1 ? root : rat_str(-q.b) + "*" + root);
}

// Parses weight/truncation literals: "a", "a+b*sqrt(d)", "b*sqrt(d)",
// "sqrt(d)" and the sign variants. Whitespace is insignificant.
inline QuadReal parse_quadreal(const std::string& input) {
  std::string s;
  for (char c : input)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) fail(Errc::syntax, "empty weight literal");

  size_t pos = 0;
  auto parse_number = [&](int sgn) -> Rat {
    size_t start = pos;
    while (pos < s.size() && (isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/'))
      ++pos;
    if (start == pos) fail(Errc::syntax, "malformed literal '" + input + "'");
    Rat r = parse_rat(s.substr(start, pos - start));
    return sgn < 0 ? Rat(-r) : r;
  };
  auto parse_sqrt = [&]() -> long long {
    if (s.compare(pos, 5, "sqrt(") != 0)
      fail(Errc::syntax, "malformed literal '" + input + "'");
    pos += 5;
    size_t close = s.find(')', pos);
    if (close == std::string::npos) fail(Errc::syntax, "missing ')' in '" + input + "'");
    long long d;
    try {
      d = std::stoll(s.substr(pos, close - pos));
    } catch (const std::exception&) {
      fail(Errc::syntax, "malformed sqrt argument in '" + input + "'");
    }
    pos = close + 1;
    return d;
  };
  auto parse_part = [&](int sgn) -> QuadReal {
    if (s.compare(pos, 5, "sqrt(") == 0) {
      long long d = parse_sqrt();
      return QuadReal(Rat(0), Rat(sgn), d);
    }
    Rat r = parse_number(sgn);
    if (pos < s.size() && s[pos] == '*') {
      ++pos;
      long long d = parse_sqrt();
      return QuadReal(Rat(0), r, d);
    }
    return QuadReal(r);
  };

  int sgn = 1;
  if (s[pos] == '+' || s[pos] == '-') {
    sgn = s[pos] == '-' ? -1 : 1;
    ++pos;
  }
  QuadReal out = parse_part(sgn);
  while (pos < s.size()) {
    if (s[pos] != '+' && s[pos] != '-')
      fail(Errc::syntax, "unexpected character in '" + input + "'");
    sgn = s[pos] == '-' ? -1 : 1;
    ++pos;
    out = out + parse_part(sgn);
  }
  return out;
}

}  // namespace puiseux
