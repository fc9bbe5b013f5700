#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "puiseux/ypoly.hpp"

namespace puiseux {

// Expanded canonical polynomial in x1..xn and y over the cyclotomic tower.
// x-exponents are nonnegative integers in the input language; the key order
// makes printing and equality canonical.
struct PolyExpr {
  using Key = std::pair<std::vector<long>, long>;  // (x exponents, y degree)
  std::map<Key, Cyc> terms;
  size_t nvars = 0;  // highest x index used

  bool is_zero() const { return terms.empty(); }

  long ydeg() const {
    long d = 0;
    for (const auto& [key, c] : terms) d = std::max(d, key.second);
    return d;
  }

  // Equality pads to a common dimension: printing drops unused trailing
  // variables, so x1*y and the same polynomial seen in three variables are
  // the same object.
  friend bool operator==(const PolyExpr& a, const PolyExpr& b) {
    size_t n = std::max(a.nvars, b.nvars);
    auto norm = [n](const PolyExpr& p) {
      std::map<Key, Cyc> out;
      for (const auto& [key, c] : p.terms) {
        std::vector<long> xe = key.first;
        xe.resize(n, 0);
        out.emplace(Key{std::move(xe), key.second}, c);
      }
      return out;
    };
    return norm(a) == norm(b);
  }
};

namespace detail {

inline void poly_add_term(PolyExpr& p, std::vector<long> xexp, long yd, const Cyc& c) {
  if (c.is_zero()) return;
  if (xexp.size() < p.nvars) xexp.resize(p.nvars, 0);
  PolyExpr::Key key{std::move(xexp), yd};
  auto it = p.terms.find(key);
  if (it == p.terms.end()) {
    p.terms.emplace(std::move(key), c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) p.terms.erase(it);
  }
}

inline void poly_align(PolyExpr& p, size_t nvars) {
  if (p.nvars >= nvars) return;
  PolyExpr q;
  q.nvars = nvars;
  for (const auto& [key, c] : p.terms) {
    std::vector<long> xe = key.first;
    xe.resize(nvars, 0);
    q.terms.emplace(PolyExpr::Key{std::move(xe), key.second}, c);
  }
  p = std::move(q);
}

inline PolyExpr poly_sum(PolyExpr a, const PolyExpr& b) {
  size_t n = std::max(a.nvars, b.nvars);
  poly_align(a, n);
  for (const auto& [key, c] : b.terms) {
    std::vector<long> xe = key.first;
    xe.resize(n, 0);
    poly_add_term(a, std::move(xe), key.second, c);
  }
  return a;
}

inline PolyExpr poly_product(const PolyExpr& a, const PolyExpr& b) {
  PolyExpr r;
  r.nvars = std::max(a.nvars, b.nvars);
  for (const auto& [ka, ca] : a.terms)
    for (const auto& [kb, cb] : b.terms) {
      std::vector<long> xe(r.nvars, 0);
      for (size_t i = 0; i < ka.first.size(); ++i) xe[i] += ka.first[i];
      for (size_t i = 0; i < kb.first.size(); ++i) xe[i] += kb.first[i];
      poly_add_term(r, std::move(xe), ka.second + kb.second, ca * cb);
    }
  return r;
}

inline PolyExpr poly_neg(PolyExpr a) {
  for (auto& [key, c] : a.terms) c = -c;
  return a;
}

struct Parser {
  const std::string& src;
  size_t pos = 0;

  explicit Parser(const std::string& s) : src(s) {}

  [[noreturn]] void error(const std::string& what) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < pos && i < src.size(); ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(Errc::syntax, "syntax error at " + std::to_string(line) + ":" + std::to_string(col) +
                           ": " + what);
  }

  void skip_ws() {
    while (pos < src.size() && isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  bool peek_char(char c) {
    skip_ws();
    return pos < src.size() && src[pos] == c;
  }

  bool eat_char(char c) {
    if (!peek_char(c)) return false;
    ++pos;
    return true;
  }

  BigInt parse_uint() {
    skip_ws();
    size_t start = pos;
    while (pos < src.size() && isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
    if (start == pos) error("expected an integer");
    return BigInt(src.substr(start, pos - start));
  }

  long parse_int() {
    skip_ws();
    bool neg = eat_char('-');
    BigInt v = parse_uint();
    if (v > 1000000000) error("exponent too large");
    long out = static_cast<long>(v);
    return neg ? -out : out;
  }

  // base := rational | 'zeta(' integer ')' | var | '(' expr ')'
  PolyExpr parse_base() {
    skip_ws();
    if (pos >= src.size()) error("unexpected end of input");
    char c = src[pos];
    if (c == '(') {
      ++pos;
      PolyExpr e = parse_expr();
      if (!eat_char(')')) error("expected ')'");
      return e;
    }
    if (isdigit(static_cast<unsigned char>(c))) {
      BigInt num = parse_uint();
      BigInt den = 1;
      if (eat_char('/')) den = parse_uint();
      if (den == 0) error("zero denominator");
      PolyExpr p;
      poly_add_term(p, {}, 0, Cyc::rational(make_rat(num, den)));
      return p;
    }
    if (src.compare(pos, 5, "zeta(") == 0) {
      pos += 5;
      BigInt m = parse_uint();
      if (!eat_char(')')) error("expected ')' after zeta conductor");
      if (m < 1 || m > 1000000) error("bad zeta conductor");
      PolyExpr p;
      poly_add_term(p, {}, 0, Cyc::zeta(static_cast<long>(m), 1));
      return p;
    }
    if (c == 'y') {
      ++pos;
      PolyExpr p;
      poly_add_term(p, {}, 1, Cyc::one());
      return p;
    }
    if (c == 'x') {
      size_t start = pos;
      ++pos;
      size_t dstart = pos;
      while (pos < src.size() && isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
      if (dstart == pos) {
        pos = start;
        error("variables are x1..xn and y");
      }
      long idx = std::stol(src.substr(dstart, pos - dstart));
      if (idx < 1 || idx > 64) error("variable index out of range");
      PolyExpr p;
      p.nvars = static_cast<size_t>(idx);
      std::vector<long> xe(p.nvars, 0);
      xe[static_cast<size_t>(idx - 1)] = 1;
      poly_add_term(p, std::move(xe), 0, Cyc::one());
      return p;
    }
    error("expected a rational, zeta(m), a variable or '('");
  }

  bool base_is_variable(size_t at) const {
    return at < src.size() && (src[at] == 'x' || src[at] == 'y');
  }

  // factor := base ('^' integer)?
  PolyExpr parse_factor() {
    skip_ws();
    size_t base_start = pos;
    bool var = base_is_variable(pos);
    PolyExpr b = parse_base();
    if (!eat_char('^')) return b;
    long e = parse_int();
    if (var && e < 0) {
      pos = base_start;
      error("negative exponents on variables are not allowed");
    }
    if (e < 0) {
      // Inverse of a constant (rational or root of unity).
      if (b.terms.size() != 1 || !b.terms.begin()->first.first.empty() ||
          b.terms.begin()->first.second != 0)
        error("negative exponent on a non-constant base");
      Cyc c = b.terms.begin()->second.pow(e);
      PolyExpr p;
      poly_add_term(p, {}, 0, c);
      return p;
    }
    PolyExpr acc;
    poly_add_term(acc, {}, 0, Cyc::one());
    PolyExpr pw = std::move(b);
    long exp = e;
    while (exp > 0) {
      if (exp & 1) acc = poly_product(acc, pw);
      if (exp > 1) pw = poly_product(pw, pw);
      exp >>= 1;
    }
    return acc;
  }

  // term := factor ('*' factor)*
  PolyExpr parse_term() {
    PolyExpr t = parse_factor();
    while (eat_char('*')) t = poly_product(t, parse_factor());
    return t;
  }

  // expr := ['-'] term (('+'|'-') term)*
  PolyExpr parse_expr() {
    skip_ws();
    bool neg = false;
    if (peek_char('-')) {
      ++pos;
      neg = true;
    } else if (peek_char('+')) {
      ++pos;
    }
    PolyExpr acc = parse_term();
    if (neg) acc = poly_neg(std::move(acc));
    while (true) {
      skip_ws();
      if (pos >= src.size()) break;
      if (src[pos] == '+') {
        ++pos;
        acc = poly_sum(std::move(acc), parse_term());
      } else if (src[pos] == '-') {
        ++pos;
        acc = poly_sum(std::move(acc), poly_neg(parse_term()));
      } else {
        break;
      }
    }
    return acc;
  }
};

}  // namespace detail

inline PolyExpr parse_poly(const std::string& src) {
  detail::Parser p(src);
  PolyExpr e = p.parse_expr();
  p.skip_ws();
  if (p.pos != src.size()) p.error("trailing input");
  size_t n = e.nvars;
  detail::poly_align(e, n);
  return e;
}

// Canonical, re-parseable text form. Terms ordered by descending y-degree
// then ascending x-exponents.
inline std::string print_poly(const PolyExpr& p) {
  if (p.terms.empty()) return "0";
  std::vector<std::pair<PolyExpr::Key, Cyc>> terms(p.terms.begin(), p.terms.end());
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    if (a.first.second != b.first.second) return a.first.second > b.first.second;
    return a.first.first < b.first.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [key, c] : terms) {
    std::string mono;
    for (size_t i = 0; i < key.first.size(); ++i) {
      if (key.first[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (key.first[i] != 1) mono += "^" + std::to_string(key.first[i]);
    }
    if (key.second > 0) {
      if (!mono.empty()) mono += "*";
      mono += "y";
      if (key.second > 1) mono += "^" + std::to_string(key.second);
    }
    std::string cs = c.str();
    bool composite =
        cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
    bool negative = !composite && !cs.empty() && cs[0] == '-';
    std::string mag = negative ? cs.substr(1) : cs;
    std::string piece;
    if (composite)
      piece = mono.empty() ? "(" + cs + ")" : "(" + cs + ")*" + mono;
    else if (mono.empty())
      piece = mag;
    else if (mag == "1")
      piece = mono;
    else
      piece = mag + "*" + mono;
    if (first) {
      out = (negative ? "-" : "") + piece;
      first = false;
    } else {
      out += (negative ? " - " : " + ") + piece;
    }
  }
  return out;
}

// Lifts the y-coefficients into series over the given weight. The leading
// y-coefficient must be a nonzero constant; the result is normalized monic
// when `monic` is requested.
inline YPoly to_ypoly(const PolyExpr& p, const Weight& w, bool monic) {
  if (p.is_zero()) fail(Errc::bad_config, "zero polynomial");
  if (p.nvars > w.dim())
    fail(Errc::bad_config, "polynomial uses x" + std::to_string(p.nvars) +
                               " but omega has dimension " + std::to_string(w.dim()));
  long d = p.ydeg();
  Cyc lead = Cyc::zero();
  for (const auto& [key, c] : p.terms) {
    if (key.second != d) continue;
    bool constant = true;
    for (long e : key.first)
      if (e != 0) constant = false;
    if (!constant) {
      if (monic) fail(Errc::non_monic, "leading y-coefficient must be a nonzero constant");
      continue;
    }
    lead = c;
  }
  if (monic && lead.is_zero())
    fail(Errc::non_monic, "leading y-coefficient must be a nonzero constant");
  Cyc scale_by = monic ? lead.inverse() : Cyc::one();

  std::vector<std::vector<std::pair<ExpVec, Cyc>>> buckets(static_cast<size_t>(d) + 1);
  for (const auto& [key, c] : p.terms) {
    std::vector<Rat> entries(w.dim(), Rat(0));
    for (size_t i = 0; i < key.first.size(); ++i) entries[i] = Rat(key.first[i]);
    buckets[static_cast<size_t>(key.second)].emplace_back(ExpVec(std::move(entries)),
                                                          c * scale_by);
  }
  std::vector<GSeries> coeffs;
  coeffs.reserve(buckets.size());
  for (auto& b : buckets)
    coeffs.push_back(GSeries::from_terms(w, TruncBound::unbounded(), b));
  return YPoly(w, std::move(coeffs));
}

}  // namespace puiseux
