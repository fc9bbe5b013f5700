#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "puiseux/branches.hpp"

namespace puiseux {

// Subring A of coefficient series whose exponents supply the X^a part of the
// window generators. `formal` is K[[x1..xn]]; `cone` restricts exponents to
// an integer cone that must contain the first orthant (so monic reduction of
// y-powers stays inside A).
struct SubringSpec {
  enum class Kind { formal, cone };
  Kind kind = Kind::formal;
  std::vector<std::vector<long>> generators;  // cone kind only
};

// Finite window of a value semigroup: all attainable valuations of weight
// <= bound, ascending, with a greedy (hence tentative) generating set.
struct ValueWindow {
  QuadReal bound;
  std::vector<ExpVec> values;
  std::vector<ExpVec> generators;
  bool tentative = true;

  nlohmann::json to_json() const {
    nlohmann::json values_j = nlohmann::json::array();
    for (const ExpVec& v : values) {
      nlohmann::json e = nlohmann::json::array();
      for (const Rat& q : v.entries()) e.push_back(rat_str_full(q));
      values_j.push_back(e);
    }
    nlohmann::json gens_j = nlohmann::json::array();
    for (const ExpVec& v : generators) {
      nlohmann::json e = nlohmann::json::array();
      for (const Rat& q : v.entries()) e.push_back(rat_str_full(q));
      gens_j.push_back(e);
    }
    return nlohmann::json{{"bound", quadreal_to_json(bound)},
                          {"values", values_j},
                          {"generators", gens_j},
                          {"tentative", tentative}};
  }
};

namespace detail {

// Lattice points of the subring with weight <= bound.
inline std::vector<ExpVec> subring_points(const SubringSpec& spec, const Weight& w,
                                          const QuadReal& bound) {
  size_t n = w.dim();
  std::vector<ExpVec> out;
  if (spec.kind == SubringSpec::Kind::formal) {
    std::vector<long> cur(n, 0);
    auto rec = [&](auto&& self, size_t i, const QuadReal& left) -> void {
      if (i == n) {
        std::vector<Rat> entries(n);
        for (size_t t = 0; t < n; ++t) entries[t] = Rat(cur[t]);
        out.push_back(ExpVec(std::move(entries)));
        return;
      }
      for (long v = 0;; ++v) {
        QuadReal used = scale(w.component(i), Rat(v));
        if (quadreal_sign(left - used) < 0) break;
        cur[i] = v;
        self(self, i + 1, left - used);
      }
      cur[i] = 0;
    };
    if (quadreal_sign(bound) >= 0) rec(rec, 0, bound);
    return out;
  }

  // Cone kind: exact membership is implemented for n <= 2 (extreme-ray
  // sandwich); the cone must contain the first orthant.
  if (spec.generators.empty()) fail(Errc::bad_config, "cone subring needs generators");
  for (const auto& g : spec.generators) {
    if (g.size() != n) fail(Errc::bad_config, "cone generator dimension mismatch");
    std::vector<Rat> entries(n);
    for (size_t t = 0; t < n; ++t) entries[t] = Rat(g[t]);
    QuadReal gw = w.weight_of(ExpVec(std::move(entries)));
    if (quadreal_sign(gw) <= 0)
      fail(Errc::bad_config, "cone generator must have strictly positive weight");
  }
  if (n == 1) {
    bool covers = false;
    for (const auto& g : spec.generators)
      if (g[0] > 0) covers = true;
    if (!covers) fail(Errc::bad_config, "cone must contain the first orthant");
    for (long v = 0;; ++v) {
      QuadReal used = scale(w.component(0), Rat(v));
      if (quadreal_sign(bound - used) < 0) break;
      out.push_back(ExpVec(std::vector<Rat>{Rat(v)}));
    }
    return out;
  }
  if (n != 2)
    fail(Errc::bad_config, "cone subrings are supported for n <= 2");

  auto cross = [](const std::vector<long>& u, const std::vector<long>& v) {
    return static_cast<long long>(u[0]) * v[1] - static_cast<long long>(u[1]) * v[0];
  };
  // Extreme rays: right ray has every generator on its left, left ray the
  // reverse. Positive weights already exclude cones spanning a half plane.
  std::vector<long> right = spec.generators[0], left = spec.generators[0];
  for (const auto& g : spec.generators) {
    if (cross(right, g) < 0) right = g;
    if (cross(g, left) < 0) left = g;
  }
  auto contains = [&](long long x, long long y) {
    long long cr = static_cast<long long>(right[0]) * y - static_cast<long long>(right[1]) * x;
    long long cl = x * static_cast<long long>(left[1]) - y * static_cast<long long>(left[0]);
    return cr >= 0 && cl >= 0;
  };
  if (!contains(1, 0) || !contains(0, 1))
    fail(Errc::bad_config, "cone must contain the first orthant");

  // Bounding box: any point is sum lambda_i u_i with lambda_i <= bound/(w.u_i).
  QuadReal coord_bound(Rat(0));
  for (const auto& g : spec.generators) {
    std::vector<Rat> entries{Rat(g[0]), Rat(g[1])};
    QuadReal gw = w.weight_of(ExpVec(entries));
    QuadReal lam = quadreal_div(bound, gw);
    long m0 = g[0] < 0 ? -g[0] : g[0];
    long m1 = g[1] < 0 ? -g[1] : g[1];
    coord_bound = coord_bound + scale(lam, Rat(std::max(m0, m1)));
  }
  BigInt box = quadreal_floor(coord_bound) + 1;
  if (box > 4096) fail(Errc::bad_config, "cone window bounding box too large");
  long b = static_cast<long>(box);
  for (long x = -b; x <= b; ++x)
    for (long y = -b; y <= b; ++y) {
      if (!contains(x, y)) continue;
      ExpVec e(std::vector<Rat>{Rat(x), Rat(y)});
      if (quadreal_sign(bound - w.weight_of(e)) < 0) continue;
      out.push_back(std::move(e));
    }
  return out;
}

// Row echelon over the coefficient field with columns in ascending weight.
// The pivot columns are exactly the attainable leading exponents of the row
// span, independent of row order.
inline std::vector<size_t> echelon_pivots(std::vector<std::map<size_t, Cyc>> rows) {
  std::map<size_t, std::map<size_t, Cyc>> pivots;  // leading column -> reduced row
  for (auto& row : rows) {
    auto drop_zeros = [](std::map<size_t, Cyc>& r) {
      for (auto it = r.begin(); it != r.end();)
        it = it->second.is_zero() ? r.erase(it) : std::next(it);
    };
    drop_zeros(row);
    while (!row.empty()) {
      size_t lead = row.begin()->first;
      auto hit = pivots.find(lead);
      if (hit == pivots.end()) {
        Cyc inv = row.begin()->second.inverse();
        for (auto& [col, val] : row) val = val * inv;
        pivots.emplace(lead, std::move(row));
        break;
      }
      Cyc factor = row.begin()->second;
      for (const auto& [col, val] : hit->second) {
        auto it = row.find(col);
        Cyc delta = factor * val;
        if (it == row.end())
          row.emplace(col, -delta);
        else
          it->second = it->second - delta;
      }
      drop_zeros(row);
    }
  }
  std::vector<size_t> out;
  for (const auto& [col, row] : pivots) out.push_back(col);
  return out;
}

}  // namespace detail

// Window of the value semigroup of xi over A: valuations attainable by
// K-linear combinations of {X^a xi^b : a in A, w(a) <= bound, 0 <= b < d}.
// Powers b >= d reduce through the monic f with coefficients in A, and
// X^a with w(a) > bound only contributes above the window, so the finite
// generator family is complete for values <= bound.
inline ValueWindow semigroup_window(const GSeries& xi, const YPoly& f, const SubringSpec& A,
                                    const QuadReal& bound) {
  const Weight& w = xi.weight();
  if (quadreal_sign(bound) < 0) fail(Errc::bad_config, "window bound must be nonnegative");
  if (xi.trunc().finite && bound > xi.trunc().value)
    fail(Errc::trunc_insufficient, "window bound exceeds the root truncation");
  int d = f.degree();
  if (d < 1) fail(Errc::bad_config, "window needs a polynomial of positive degree");

  auto lattice = detail::subring_points(A, w, bound);

  std::vector<GSeries> powers;
  powers.push_back(GSeries::constant(w, xi.trunc(), Cyc::one()));
  for (int b = 1; b < d; ++b) powers.push_back(powers.back().mul(xi));

  // Column order: exponents of weight <= bound, ascending.
  std::map<ExpVec, size_t, ExpVecLexLess> col_of;
  std::vector<std::pair<ExpVec, QuadReal>> cols;
  std::vector<std::vector<std::pair<ExpVec, Cyc>>> raw_rows;
  for (const ExpVec& a : lattice) {
    for (const GSeries& p : powers) {
      GSeries row = p.mul_monomial(a);
      std::vector<std::pair<ExpVec, Cyc>> entries;
      for (const Term& t : row.terms()) {
        if (!(t.wt <= bound)) break;
        entries.emplace_back(t.exp, t.coeff);
        if (!col_of.count(t.exp)) {
          col_of.emplace(t.exp, 0);
          cols.emplace_back(t.exp, t.wt);
        }
      }
      if (!entries.empty()) raw_rows.push_back(std::move(entries));
    }
  }
  std::sort(cols.begin(), cols.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  for (size_t i = 0; i < cols.size(); ++i) col_of[cols[i].first] = i;

  std::vector<std::map<size_t, Cyc>> rows;
  rows.reserve(raw_rows.size());
  for (const auto& entries : raw_rows) {
    std::map<size_t, Cyc> row;
    for (const auto& [e, c] : entries) row.emplace(col_of[e], c);
    rows.push_back(std::move(row));
  }

  ValueWindow window;
  window.bound = bound;
  auto pivot_cols = detail::echelon_pivots(std::move(rows));
  std::sort(pivot_cols.begin(), pivot_cols.end());
  for (size_t col : pivot_cols) window.values.push_back(cols[col].first);

  // Window sanity: zero attainable, all values nonnegative, additive closure
  // inside the window.
  bool has_zero = false;
  for (const ExpVec& v : window.values) {
    if (v.is_zero()) has_zero = true;
    if (quadreal_sign(w.weight_of(v)) < 0)
      fail(Errc::bad_config, "window produced a negative value; is f over K[[X]]?");
  }
  if (!has_zero) fail(Errc::internal, "window is missing the zero value");
  auto in_values = [&](const ExpVec& v) {
    for (const ExpVec& u : window.values)
      if (u == v) return true;
    return false;
  };
  for (const ExpVec& v1 : window.values)
    for (const ExpVec& v2 : window.values) {
      ExpVec s = v1 + v2;
      if (quadreal_sign(bound - w.weight_of(s)) < 0) continue;
      if (!in_values(s)) fail(Errc::internal, "window not closed under addition");
    }

  // Greedy generator extraction: drop any value that is an in-window sum of
  // smaller nonzero values. A finite window cannot certify global minimal
  // generation, hence the tentative label.
  for (size_t i = 0; i < window.values.size(); ++i) {
    const ExpVec& v = window.values[i];
    if (v.is_zero()) continue;
    bool decomposable = false;
    for (size_t a = 1; a < i && !decomposable; ++a)
      for (size_t b = a; b < i && !decomposable; ++b) {
        if (window.values[a].is_zero() || window.values[b].is_zero()) continue;
        if (window.values[a] + window.values[b] == v) decomposable = true;
      }
    if (!decomposable) window.generators.push_back(v);
  }
  return window;
}

struct InvarianceReport {
  Branch branch;
  QuadReal bound;
  std::vector<ValueWindow> windows;  // parallel to branch.members
  bool equal = true;
  struct Discrepancy {
    size_t root_a, root_b;
    ExpVec value;
    bool missing_in_b;
  };
  std::vector<Discrepancy> discrepancies;
};

// Executable form of the invariance statement: window equality across every
// pair of roots in one branch. Discrepancies are reported, not asserted.
inline InvarianceReport check_invariance(const YPoly& f, const std::vector<RootExpansion>& roots,
                                         const Branch& branch, const SubringSpec& A,
                                         const QuadReal& bound) {
  if (branch.members.size() < 2)
    fail(Errc::bad_config, "invariance check needs a branch with at least two members");
  InvarianceReport report;
  report.branch = branch;
  report.bound = bound;
  for (size_t idx : branch.members)
    report.windows.push_back(semigroup_window(roots[idx].series, f, A, bound));
  for (size_t i = 0; i < report.windows.size(); ++i)
    for (size_t j = i + 1; j < report.windows.size(); ++j) {
      const auto& vi = report.windows[i].values;
      const auto& vj = report.windows[j].values;
      auto contains = [](const std::vector<ExpVec>& vs, const ExpVec& v) {
        for (const ExpVec& u : vs)
          if (u == v) return true;
        return false;
      };
      for (const ExpVec& v : vi)
        if (!contains(vj, v)) {
          report.equal = false;
          report.discrepancies.push_back(
              {branch.members[i], branch.members[j], v, /*missing_in_b=*/true});
        }
      for (const ExpVec& v : vj)
        if (!contains(vi, v)) {
          report.equal = false;
          report.discrepancies.push_back(
              {branch.members[i], branch.members[j], v, /*missing_in_b=*/false});
        }
    }
  return report;
}

}  // namespace puiseux
