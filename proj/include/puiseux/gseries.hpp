#pragma once

#include <json.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "puiseux/cyclotomic.hpp"
#include "puiseux/exponent.hpp"

namespace puiseux {

// Weight bound up to which a series is known. Series built from exact
// polynomial data carry an unbounded mark; computed expansions are always
// finite. Only finite bounds are serializable.
struct TruncBound {
  bool finite = true;
  QuadReal value;

  static TruncBound at(QuadReal v) { return TruncBound{true, std::move(v)}; }
  static TruncBound unbounded() { return TruncBound{false, QuadReal()}; }

  bool allows(const QuadReal& w) const { return !finite || w <= value; }

  TruncBound shifted(const QuadReal& dw) const {
    return finite ? at(value + dw) : unbounded();
  }

  friend TruncBound min(const TruncBound& x, const TruncBound& y) {
    if (!x.finite) return y;
    if (!y.finite) return x;
    return at(x.value < y.value ? x.value : y.value);
  }

  friend bool operator==(const TruncBound& x, const TruncBound& y) {
    if (x.finite != y.finite) return false;
    return !x.finite || x.value == y.value;
  }
};

struct Term {
  ExpVec exp;
  QuadReal wt;
  Cyc coeff;
};

struct MonomialUnitForm;

// Truncated generalized power series: finitely many exponent/coefficient
// pairs of weight <= trunc, kept sorted by ascending weight with nonzero
// coefficients. Values are immutable once built.
class GSeries {
 public:
  GSeries(Weight w, TruncBound trunc) : w_(std::move(w)), trunc_(std::move(trunc)) {}

  static GSeries from_terms(const Weight& w, const TruncBound& trunc,
                            const std::vector<std::pair<ExpVec, Cyc>>& raw) {
    std::map<ExpVec, Cyc, ExpVecLexLess> acc;
    for (const auto& [e, c] : raw) {
      auto it = acc.find(e);
      if (it == acc.end())
        acc.emplace(e, c);
      else
        it->second = it->second + c;
    }
    GSeries out(w, trunc);
    for (auto& [e, c] : acc) {
      if (c.is_zero()) continue;
      QuadReal wt = w.weight_of(e);
      if (!trunc.allows(wt)) continue;
      out.terms_.push_back(Term{e, std::move(wt), std::move(c)});
    }
    std::sort(out.terms_.begin(), out.terms_.end(),
              [](const Term& a, const Term& b) { return a.wt < b.wt; });
    return out;
  }

  static GSeries monomial(const Weight& w, const TruncBound& trunc, const ExpVec& e,
                          const Cyc& c) {
    return from_terms(w, trunc, {{e, c}});
  }

  static GSeries constant(const Weight& w, const TruncBound& trunc, const Cyc& c) {
    return monomial(w, trunc, ExpVec::zeros(w.dim()), c);
  }

  const Weight& weight() const { return w_; }
  const TruncBound& trunc() const { return trunc_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t dim() const { return w_.dim(); }

  // Common denominator of all stored exponents.
  long k() const {
    BigInt k = 1;
    for (const Term& t : terms_) k = lcm(k, t.exp.lcd());
    if (k > 1000000000) fail(Errc::denominator_cap, "series lattice denominator overflow");
    return static_cast<long>(k);
  }

  GSeries add(const GSeries& other) const {
    require_same_weight(other);
    TruncBound t = min(trunc_, other.trunc_);
    GSeries out(w_, t);
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < other.terms_.size()) {
      int which;
      if (i == terms_.size())
        which = 1;
      else if (j == other.terms_.size())
        which = -1;
      else {
        const QuadReal& wa = terms_[i].wt;
        const QuadReal& wb = other.terms_[j].wt;
        which = wa < wb ? -1 : (wb < wa ? 1 : 0);
      }
      if (which < 0) {
        if (t.allows(terms_[i].wt)) out.terms_.push_back(terms_[i]);
        ++i;
      } else if (which > 0) {
        if (t.allows(other.terms_[j].wt)) out.terms_.push_back(other.terms_[j]);
        ++j;
      } else {
        if (terms_[i].exp != other.terms_[j].exp)
          fail(Errc::injectivity, "weight vector is not injective: exponents " +
                                      terms_[i].exp.str() + " and " + other.terms_[j].exp.str() +
                                      " have equal weight");
        Cyc c = terms_[i].coeff + other.terms_[j].coeff;
        if (!c.is_zero() && t.allows(terms_[i].wt))
          out.terms_.push_back(Term{terms_[i].exp, terms_[i].wt, std::move(c)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  GSeries negated() const {
    GSeries out(w_, trunc_);
    out.terms_ = terms_;
    for (Term& t : out.terms_) t.coeff = -t.coeff;
    return out;
  }

  GSeries sub(const GSeries& other) const { return add(other.negated()); }

  GSeries scaled(const Cyc& c) const {
    if (c.is_zero()) return GSeries(w_, trunc_);
    GSeries out(w_, trunc_);
    out.terms_.reserve(terms_.size());
    for (const Term& t : terms_) out.terms_.push_back(Term{t.exp, t.wt, t.coeff * c});
    return out;
  }

  GSeries mul(const GSeries& other) const {
    require_same_weight(other);
    TruncBound t = min(trunc_, other.trunc_);
    if (is_zero() || other.is_zero()) return GSeries(w_, t);
    std::vector<std::pair<ExpVec, Cyc>> acc;
    const QuadReal& min_other = other.terms_.front().wt;
    for (const Term& ta : terms_) {
      if (!t.allows(ta.wt + min_other)) break;
      for (const Term& tb : other.terms_) {
        QuadReal wt = ta.wt + tb.wt;
        if (!t.allows(wt)) break;
        acc.emplace_back(ta.exp + tb.exp, ta.coeff * tb.coeff);
      }
    }
    return from_terms(w_, t, acc);
  }

  // Exact monomial shift: X^e * this, with the truncation bound moved along.
  GSeries mul_monomial(const ExpVec& e) const {
    QuadReal we = w_.weight_of(e);
    GSeries out(w_, trunc_.shifted(we));
    out.terms_.reserve(terms_.size());
    for (const Term& t : terms_)
      out.terms_.push_back(Term{t.exp + e, w_.weight_of(t.exp + e), t.coeff});
    return out;
  }

  GSeries clipped(const TruncBound& t) const {
    TruncBound nt = min(trunc_, t);
    GSeries out(w_, nt);
    for (const Term& term : terms_) {
      if (!nt.allows(term.wt)) break;
      out.terms_.push_back(term);
    }
    return out;
  }

  // Weight-minimal exponent. Undefined on the zero series.
  ExpVec valuation() const {
    if (is_zero()) fail(Errc::zero_series, "valuation of the zero series is undefined");
    return terms_.front().exp;
  }

  MonomialUnitForm factor_monomial_unit() const;

  // Inverse of a unit (dominating constant term), summed geometrically up
  // to the truncation bound.
  GSeries unit_inverse() const {
    if (is_zero() || !terms_.front().exp.is_zero())
      fail(Errc::not_unit, "not a unit: constant term must dominate");
    Cyc a0_inv = terms_.front().coeff.inverse();
    if (terms_.size() == 1) return constant(w_, trunc_, a0_inv);
    if (!trunc_.finite)
      fail(Errc::trunc_insufficient, "unit inversion requires a finite truncation bound");
    // u = a0 (1 - r) with r of strictly positive weight.
    GSeries r = constant(w_, trunc_, Cyc::one()).sub(scaled(a0_inv));
    GSeries acc = constant(w_, trunc_, Cyc::one());
    GSeries p = r;
    long guard = 0;
    while (!p.is_zero()) {
      acc = acc.add(p);
      p = p.mul(r);
      if (++guard > 100000) fail(Errc::internal, "unit inversion did not terminate");
    }
    return acc.scaled(a0_inv);
  }

  // tau_{eta,mu}: multiplies the term at exponent alpha by
  // zeta_k^{mu.(k alpha) mod k}. The support is untouched.
  GSeries galois_apply(long k, const std::vector<long>& mu) const {
    if (k < 1) fail(Errc::bad_config, "orbit order k must be positive");
    if (mu.size() != w_.dim()) fail(Errc::bad_config, "mu dimension mismatch");
    GSeries out(w_, trunc_);
    out.terms_.reserve(terms_.size());
    for (const Term& t : terms_) {
      long s = 0;
      for (size_t i = 0; i < mu.size(); ++i) {
        Rat ke = t.exp[i] * Rat(k);
        if (!is_integer(ke))
          fail(Errc::lattice_mismatch,
               "exponent " + t.exp.str() + " is not in (1/" + std::to_string(k) + ")Z^n");
        long r = static_cast<long>(rat_num(ke) % k);
        if (r < 0) r += k;
        s = (s + (mu[i] % k) * r) % k;
      }
      Cyc c = s == 0 ? t.coeff : t.coeff * Cyc::zeta(k, s);
      out.terms_.push_back(Term{t.exp, t.wt, std::move(c)});
    }
    return out;
  }

  bool equal_upto(const GSeries& other, const QuadReal& bound) const {
    require_same_weight(other);
    if ((trunc_.finite && bound > trunc_.value) ||
        (other.trunc_.finite && bound > other.trunc_.value))
      fail(Errc::trunc_insufficient, "comparison bound exceeds a truncation bound");
    size_t i = 0, j = 0;
    while (true) {
      bool ia = i < terms_.size() && terms_[i].wt <= bound;
      bool ib = j < other.terms_.size() && other.terms_[j].wt <= bound;
      if (!ia || !ib) return ia == ib;
      if (terms_[i].exp != other.terms_[j].exp) return false;
      if (terms_[i].coeff != other.terms_[j].coeff) return false;
      ++i;
      ++j;
    }
  }

  friend bool operator==(const GSeries& x, const GSeries& y) {
    if (!x.w_.same_as(y.w_) || !(x.trunc_ == y.trunc_)) return false;
    if (x.terms_.size() != y.terms_.size()) return false;
    for (size_t i = 0; i < x.terms_.size(); ++i) {
      if (x.terms_[i].exp != y.terms_[i].exp) return false;
      if (x.terms_[i].coeff != y.terms_[i].coeff) return false;
    }
    return true;
  }

  // Representation invariant: coefficients nonzero, weights within trunc and
  // strictly ascending.
  void validate() const {
    for (size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].coeff.is_zero()) fail(Errc::internal, "stored zero coefficient");
      if (!trunc_.allows(terms_[i].wt)) fail(Errc::internal, "term beyond trunc");
      if (i && !(terms_[i - 1].wt < terms_[i].wt))
        fail(Errc::internal, "terms not strictly ascending");
    }
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < terms_.size(); ++i) {
      std::string piece = term_str(terms_[i]);
      if (i == 0) {
        out = piece;
      } else if (piece.size() && piece[0] == '-') {
        out += " - " + piece.substr(1);
      } else {
        out += " + " + piece;
      }
    }
    return out;
  }

  nlohmann::json to_json() const;
  static GSeries from_json(const nlohmann::json& j, const Weight& w);

 private:
  void require_same_weight(const GSeries& other) const {
    if (!w_.same_as(other.w_))
      fail(Errc::omega_mismatch, "series built over different weight vectors");
  }

  static std::string mono_str(const ExpVec& e) {
    std::string out;
    for (size_t i = 0; i < e.dim(); ++i) {
      if (e[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += "x" + std::to_string(i + 1);
      if (e[i] != 1) {
        if (is_integer(e[i]) && e[i] > 0)
          out += "^" + rat_str(e[i]);
        else
          out += "^(" + rat_str(e[i]) + ")";
      }
    }
    return out;
  }

  static std::string term_str(const Term& t) {
    std::string mono = mono_str(t.exp);
    std::string c = t.coeff.str();
    bool composite = c.find(" + ") != std::string::npos || c.find(" - ") != std::string::npos;
    if (composite) c = "(" + c + ")";
    if (mono.empty()) return c;
    if (c == "1") return mono;
    if (c == "-1") return "-" + mono;
    return c + "*" + mono;
  }

  Weight w_;
  TruncBound trunc_;
  std::vector<Term> terms_;
};

// Unique factorization X^gamma * unit with the unit's constant coefficient
// nonzero.
struct MonomialUnitForm {
  ExpVec gamma;
  GSeries unit;
};

inline MonomialUnitForm GSeries::factor_monomial_unit() const {
  if (is_zero()) fail(Errc::zero_series, "cannot factor the zero series");
  ExpVec gamma = terms_.front().exp;
  return MonomialUnitForm{gamma, mul_monomial(-gamma)};
}

inline nlohmann::json quadreal_to_json(const QuadReal& q) {
  return nlohmann::json{{"a", rat_str_full(q.a)}, {"b", rat_str_full(q.b)}, {"d", q.d}};
}

inline QuadReal quadreal_from_json(const nlohmann::json& j) {
  return QuadReal(parse_rat(j.at("a").get<std::string>()),
                  parse_rat(j.at("b").get<std::string>()), j.at("d").get<long long>());
}

inline nlohmann::json cyc_to_json(const Cyc& c) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const Rat& q : c.coords()) coeffs.push_back(rat_str_full(q));
  return nlohmann::json{{"m", c.conductor()}, {"coeffs", coeffs}};
}

inline Cyc cyc_from_json(const nlohmann::json& j) {
  long m = j.at("m").get<long>();
  const auto& arr = j.at("coeffs");
  if (static_cast<long>(arr.size()) != euler_phi(m))
    fail(Errc::syntax, "cyclotomic coordinate count does not match phi(m)");
  Cyc out = Cyc::zero();
  long i = 0;
  for (const auto& item : arr) {
    Rat q = parse_rat(item.get<std::string>());
    if (q != 0) out = out + Cyc::zeta(m, i) * Cyc::rational(q);
    ++i;
  }
  return out.promoted(m);
}

inline nlohmann::json GSeries::to_json() const {
  if (!trunc_.finite)
    fail(Errc::internal, "cannot serialize a series with unbounded truncation");
  nlohmann::json terms = nlohmann::json::array();
  for (const Term& t : terms_) {
    nlohmann::json exp = nlohmann::json::array();
    for (const Rat& q : t.exp.entries()) exp.push_back(rat_str_full(q));
    terms.push_back(nlohmann::json{{"exp", exp}, {"coeff", cyc_to_json(t.coeff)}});
  }
  return nlohmann::json{{"k", k()}, {"trunc", quadreal_to_json(trunc_.value)}, {"terms", terms}};
}

inline GSeries GSeries::from_json(const nlohmann::json& j, const Weight& w) {
  TruncBound t = TruncBound::at(quadreal_from_json(j.at("trunc")));
  std::vector<std::pair<ExpVec, Cyc>> raw;
  for (const auto& item : j.at("terms")) {
    std::vector<Rat> entries;
    for (const auto& q : item.at("exp")) entries.push_back(parse_rat(q.get<std::string>()));
    raw.emplace_back(ExpVec(std::move(entries)), cyc_from_json(item.at("coeff")));
  }
  return from_terms(w, t, raw);
}

}  // namespace puiseux
