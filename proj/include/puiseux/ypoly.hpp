#pragma once

#include <utility>
#include <vector>

#include "puiseux/gseries.hpp"

namespace puiseux {

// Polynomial in y with GSeries coefficients, coeff(j) multiplying y^j.
// Solver entry points require a monic polynomial; intermediate polynomials
// produced during expansion only keep a nonzero leading coefficient.
class YPoly {
 public:
  YPoly(Weight w, std::vector<GSeries> coeffs) : w_(std::move(w)), c_(std::move(coeffs)) {
    for (const GSeries& s : c_)
      if (!s.weight().same_as(w_))
        fail(Errc::omega_mismatch, "coefficient built over a different weight vector");
    while (c_.size() > 1 && c_.back().is_zero()) c_.pop_back();
    if (c_.empty() || (c_.size() == 1 && c_[0].is_zero()))
      fail(Errc::bad_config, "zero polynomial");
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const GSeries& coeff(int j) const { return c_[static_cast<size_t>(j)]; }
  const Weight& weight() const { return w_; }

  bool is_monic() const {
    const GSeries& top = c_.back();
    return top.terms().size() == 1 && top.terms()[0].exp.is_zero() &&
           top.terms()[0].coeff == Cyc::one();
  }

  int y_order() const {
    for (size_t j = 0; j < c_.size(); ++j)
      if (!c_[j].is_zero()) return static_cast<int>(j);
    fail(Errc::internal, "zero polynomial has no y-order");
  }

  YPoly shifted_down(int r) const {
    if (r <= 0) return *this;
    std::vector<GSeries> rest(c_.begin() + r, c_.end());
    return YPoly(w_, std::move(rest));
  }

  std::vector<std::pair<ExpVec, int>> support_points() const {
    std::vector<std::pair<ExpVec, int>> pts;
    for (size_t j = 0; j < c_.size(); ++j)
      for (const Term& t : c_[j].terms()) pts.emplace_back(t.exp, static_cast<int>(j));
    return pts;
  }

  // Horner evaluation; all intermediate products truncate per the series
  // contract, so the result is sound up to min(coefficient trunc, xi trunc).
  GSeries evaluate(const GSeries& xi) const {
    GSeries acc = c_.back();
    for (int j = degree() - 1; j >= 0; --j) acc = acc.mul(xi).add(c_[static_cast<size_t>(j)]);
    return acc;
  }

  long lattice_k() const {
    BigInt k = 1;
    for (const GSeries& s : c_)
      for (const Term& t : s.terms()) k = lcm(k, t.exp.lcd());
    if (k > 1000000000) fail(Errc::denominator_cap, "polynomial lattice denominator overflow");
    return static_cast<long>(k);
  }

  TruncBound min_coeff_trunc() const {
    TruncBound t = TruncBound::unbounded();
    for (const GSeries& s : c_) t = min(t, s.trunc());
    return t;
  }

 private:
  Weight w_;
  std::vector<GSeries> c_;
};

inline std::vector<std::pair<ExpVec, int>> support_points(const YPoly& f) {
  return f.support_points();
}

inline GSeries evaluate(const YPoly& f, const GSeries& xi) { return f.evaluate(xi); }

}  // namespace puiseux
