#pragma once

#include <unordered_map>
#include <memory>
#include <mutex>
#include <numeric>
#include <vector>

#include "puiseux/quadreal.hpp"

namespace puiseux {

// Exponent vector with rational (possibly negative) entries. The common
// denominator k is derived from the entries on demand.
class ExpVec {
 public:
  ExpVec() = default;
  explicit ExpVec(std::vector<Rat> entries) : e_(std::move(entries)) {}

  static ExpVec zeros(size_t n) { return ExpVec(std::vector<Rat>(n, Rat(0))); }

  size_t dim() const { return e_.size(); }
  const Rat& operator[](size_t i) const { return e_[i]; }
  const std::vector<Rat>& entries() const { return e_; }

  bool is_zero() const {
    for (const Rat& q : e_)
      if (q != 0) return false;
    return true;
  }

  friend ExpVec operator+(const ExpVec& x, const ExpVec& y) {
    if (x.dim() != y.dim()) fail(Errc::bad_config, "exponent dimension mismatch");
    std::vector<Rat> r(x.dim());
    for (size_t i = 0; i < r.size(); ++i) r[i] = x.e_[i] + y.e_[i];
    return ExpVec(std::move(r));
  }

  friend ExpVec operator-(const ExpVec& x, const ExpVec& y) {
    if (x.dim() != y.dim()) fail(Errc::bad_config, "exponent dimension mismatch");
    std::vector<Rat> r(x.dim());
    for (size_t i = 0; i < r.size(); ++i) r[i] = x.e_[i] - y.e_[i];
    return ExpVec(std::move(r));
  }

  ExpVec operator-() const {
    std::vector<Rat> r(e_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = -e_[i];
    return ExpVec(std::move(r));
  }

  ExpVec scaled(const Rat& c) const {
    std::vector<Rat> r(e_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = e_[i] * c;
    return ExpVec(std::move(r));
  }

  friend bool operator==(const ExpVec& x, const ExpVec& y) { return x.e_ == y.e_; }
  friend bool operator!=(const ExpVec& x, const ExpVec& y) { return !(x == y); }

  static bool lex_less(const ExpVec& x, const ExpVec& y) {
    if (x.dim() != y.dim()) return x.dim() < y.dim();
    for (size_t i = 0; i < x.dim(); ++i)
      if (x.e_[i] != y.e_[i]) return x.e_[i] < y.e_[i];
    return false;
  }

  // Least common denominator of the entries, i.e. the k with entries in
  // (1/k)Z^n.
  BigInt lcd() const {
    BigInt k = 1;
    for (const Rat& q : e_) k = lcm(k, rat_den(q));
    return k;
  }

  bool in_lattice(long k) const {
    for (const Rat& q : e_)
      if (!is_integer(q * Rat(k))) return false;
    return true;
  }

  std::string str() const {
    std::string out = "(";
    for (size_t i = 0; i < e_.size(); ++i) {
      if (i) out += ", ";
      out += rat_str(e_[i]);
    }
    return out + ")";
  }

 private:
  std::vector<Rat> e_;
};

struct ExpVecLexLess {
  bool operator()(const ExpVec& x, const ExpVec& y) const { return ExpVec::lex_less(x, y); }
};

namespace detail {
struct QuadRealHash {
  size_t operator()(const QuadReal& q) const {
    size_t h = std::hash<Rat>{}(q.a);
    h ^= std::hash<Rat>{}(q.b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<long long>{}(q.d) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};
struct QuadRealEq {
  bool operator()(const QuadReal& x, const QuadReal& y) const { return x == y; }
};
struct WeightRegistry {
  std::unordered_map<QuadReal, ExpVec, QuadRealHash, QuadRealEq> seen;
  std::mutex mu;
};
}  // namespace detail

// Strictly positive weight vector over one quadratic field, defining the
// exponent order alpha <= beta  iff  w.alpha <= w.beta. The registry records
// every weight the engine evaluates; if two distinct exponents ever share a
// weight the vector was not injective on the working lattice and the run
// aborts rather than silently picking an order.
class Weight {
 public:
  explicit Weight(std::vector<QuadReal> comps)
      : comps_(std::move(comps)), reg_(std::make_shared<detail::WeightRegistry>()) {
    if (comps_.empty()) fail(Errc::bad_config, "weight vector must be nonempty");
    long long d = 1;
    for (const QuadReal& c : comps_) {
      if (quadreal_sign(c) <= 0)
        fail(Errc::bad_config, "weight components must be strictly positive");
      if (c.b != 0) {
        if (d != 1 && d != c.d)
          fail(Errc::bad_config, "weight components must share one quadratic field");
        d = c.d;
      }
    }
  }

  size_t dim() const { return comps_.size(); }
  const QuadReal& component(size_t i) const { return comps_[i]; }
  const std::vector<QuadReal>& components() const { return comps_; }

  QuadReal weight_of(const ExpVec& e) const {
    if (e.dim() != comps_.size())
      fail(Errc::bad_config, "exponent dimension does not match the weight vector");
    QuadReal w(Rat(0));
    for (size_t i = 0; i < comps_.size(); ++i) w = w + scale(comps_[i], e[i]);
    std::lock_guard<std::mutex> lock(reg_->mu);
    auto it = reg_->seen.find(w);
    if (it == reg_->seen.end()) {
      reg_->seen.emplace(w, e);
    } else if (it->second != e) {
      fail(Errc::injectivity, "weight vector is not injective: exponents " + e.str() +
                                  " and " + it->second.str() + " have equal weight " +
                                  quadreal_str(w));
    }
    return w;
  }

  // <0, 0, >0 as e1 compares to e2 in the weight order.
  int compare(const ExpVec& e1, const ExpVec& e2) const {
    if (e1 == e2) return 0;
    QuadReal w1 = weight_of(e1), w2 = weight_of(e2);
    int s = quadreal_sign(w1 - w2);
    if (s == 0)
      fail(Errc::injectivity, "weight vector is not injective: exponents " + e1.str() +
                                  " and " + e2.str() + " have equal weight");
    return s;
  }

  bool same_as(const Weight& other) const { return comps_ == other.comps_; }

 private:
  std::vector<QuadReal> comps_;
  std::shared_ptr<detail::WeightRegistry> reg_;
};

inline QuadReal weight_of(const ExpVec& e, const Weight& w) { return w.weight_of(e); }

}  // namespace puiseux
