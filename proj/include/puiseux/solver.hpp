#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "puiseux/charpoly.hpp"
#include "puiseux/ypoly.hpp"

namespace puiseux {

struct SolverCaps {
  int depth = 64;
  long denominator = 360;
  long conductor = 240;
  long orbit = 4096;
};

// One admissible initial exponent gamma together with the support points on
// the minimal face and the characteristic polynomial of the leading
// coefficient.
struct NewtonCandidate {
  ExpVec gamma;
  QuadReal gamma_weight;
  std::vector<std::pair<ExpVec, int>> face;  // sorted by j
  CharPoly charpoly;
};

struct RootExpansion {
  GSeries series;
  int multiplicity = 1;
  bool exact = false;
};

namespace detail {

inline std::optional<Cyc> coeff_at(const GSeries& s, const ExpVec& e) {
  for (const Term& t : s.terms())
    if (t.exp == e) return t.coeff;
  return std::nullopt;
}

// Candidate gammas arise from pairs of support points with distinct y-degrees
// (the vector equation a1 + j1 g = a2 + j2 g). A gamma survives when the
// minimum of a + j g over the support is attained at points covering at
// least two distinct j; injectivity of the weight forces those points to
// share a single exponent vector.
inline std::vector<NewtonCandidate> collect_candidates(const YPoly& f, bool positive_only) {
  const Weight& w = f.weight();
  auto pts = f.support_points();
  std::vector<ExpVec> gammas;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i].second == pts[j].second) continue;
      Rat denom(pts[j].second - pts[i].second);
      ExpVec g = (pts[i].first - pts[j].first).scaled(Rat(1) / denom);
      bool dup = false;
      for (const ExpVec& seen : gammas)
        if (seen == g) dup = true;
      if (!dup) gammas.push_back(g);
    }

  std::vector<NewtonCandidate> out;
  for (const ExpVec& g : gammas) {
    QuadReal gw = w.weight_of(g);
    if (positive_only && quadreal_sign(gw) <= 0) continue;
    std::optional<ExpVec> min_vec;
    std::optional<QuadReal> min_w;
    for (const auto& [alpha, j] : pts) {
      ExpVec v = alpha + g.scaled(Rat(j));
      QuadReal vw = w.weight_of(v);
      if (!min_w || vw < *min_w) {
        min_w = vw;
        min_vec = v;
      }
    }
    std::vector<std::pair<ExpVec, int>> face;
    int jmin = -1, jmax = -1;
    for (const auto& [alpha, j] : pts) {
      if (alpha + g.scaled(Rat(j)) == *min_vec) {
        face.emplace_back(alpha, j);
        jmin = jmin < 0 ? j : std::min(jmin, j);
        jmax = std::max(jmax, j);
      }
    }
    if (jmin == jmax) continue;
    std::sort(face.begin(), face.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    CharPoly cp(static_cast<size_t>(jmax) + 1, Cyc::zero());
    for (const auto& [alpha, j] : face) {
      auto c = coeff_at(f.coeff(j), alpha);
      if (!c) fail(Errc::internal, "face point without a coefficient");
      cp[static_cast<size_t>(j)] = *c;
    }
    out.push_back(NewtonCandidate{g, gw, std::move(face), std::move(cp)});
  }
  std::sort(out.begin(), out.end(), [](const NewtonCandidate& a, const NewtonCandidate& b) {
    return a.gamma_weight < b.gamma_weight;
  });
  return out;
}

// y = X^gamma (c + y'), followed by division of every coefficient by the
// weight-minimal monomial of the whole polynomial. The monomial shift is
// root-inert and keeps the minimal support at weight zero across levels.
inline YPoly substitute_normalized(const YPoly& h, const ExpVec& gamma, const Cyc& c) {
  const Weight& w = h.weight();
  int d = h.degree();
  std::vector<GSeries> shifted;
  shifted.reserve(static_cast<size_t>(d) + 1);
  for (int l = 0; l <= d; ++l)
    shifted.push_back(h.coeff(l).mul_monomial(gamma.scaled(Rat(l))));

  std::vector<Cyc> cpow(static_cast<size_t>(d) + 1, Cyc::one());
  for (int i = 1; i <= d; ++i) cpow[static_cast<size_t>(i)] = cpow[static_cast<size_t>(i - 1)] * c;

  std::vector<GSeries> coeffs;
  coeffs.reserve(static_cast<size_t>(d) + 1);
  for (int j = 0; j <= d; ++j) {
    GSeries acc(w, TruncBound::unbounded());
    for (int l = j; l <= d; ++l) {
      if (shifted[static_cast<size_t>(l)].is_zero()) continue;
      Cyc factor = Cyc::rational(Rat(binomial(static_cast<unsigned>(l), static_cast<unsigned>(j)))) *
                   cpow[static_cast<size_t>(l - j)];
      acc = acc.add(shifted[static_cast<size_t>(l)].scaled(factor));
    }
    coeffs.push_back(std::move(acc));
  }

  std::optional<ExpVec> content;
  for (const GSeries& s : coeffs) {
    if (s.is_zero()) continue;
    ExpVec v = s.valuation();
    if (!content || w.compare(v, *content) < 0) content = v;
  }
  if (!content) fail(Errc::internal, "substitution produced the zero polynomial");
  if (!content->is_zero()) {
    ExpVec neg = -*content;
    for (GSeries& s : coeffs) s = s.mul_monomial(neg);
  }
  return YPoly(w, std::move(coeffs));
}

struct ExpandContext {
  QuadReal trunc;
  SolverCaps caps;
  long base_k = 1;
  std::vector<RootExpansion> out;
};

inline GSeries series_from_prefix(const Weight& w, const QuadReal& trunc,
                                  const std::vector<std::pair<ExpVec, Cyc>>& prefix) {
  return GSeries::from_terms(w, TruncBound::at(trunc), prefix);
}

// Expands the roots of h whose tails have strictly positive weight (all
// roots at the top level). Returns the total multiplicity emitted, which
// must account for the full degree at the top and for the parent root's
// multiplicity below.
inline int expand_rec(const YPoly& h, const ExpVec& offset, const QuadReal& offset_w,
                      const std::vector<std::pair<ExpVec, Cyc>>& prefix, int depth, bool top,
                      ExpandContext& ctx) {
  if (depth > ctx.caps.depth)
    fail(Errc::depth_cap, "expansion depth exceeds the cap " + std::to_string(ctx.caps.depth));
  const Weight& w = h.weight();
  int emitted = 0;

  YPoly work = h;
  if (work.coeff(0).is_zero()) {
    int ord = work.y_order();
    ctx.out.push_back(RootExpansion{series_from_prefix(w, ctx.trunc, prefix), ord,
                                    /*exact=*/true});
    emitted += ord;
    if (ord == work.degree()) return emitted;
    work = work.shifted_down(ord);
  }

  for (const NewtonCandidate& cand : collect_candidates(work, /*positive_only=*/!top)) {
    int jmin = cand.face.front().second, jmax = cand.face.back().second;
    ExpVec e = offset + cand.gamma;
    BigInt kk = lcm(BigInt(ctx.base_k), e.lcd());
    if (kk > ctx.caps.denominator)
      fail(Errc::denominator_cap, "exponent denominator " + kk.str() + " exceeds the cap " +
                                      std::to_string(ctx.caps.denominator));
    QuadReal ew = offset_w + cand.gamma_weight;
    if (!(ew <= ctx.trunc)) {
      // The next term lies beyond the window: report the partial expansion
      // with the face's full multiplicity.
      ctx.out.push_back(
          RootExpansion{series_from_prefix(w, ctx.trunc, prefix), jmax - jmin, /*exact=*/false});
      emitted += jmax - jmin;
      continue;
    }
    for (const CharRoot& root : charpoly_roots(cand.charpoly)) {
      YPoly next = substitute_normalized(work, cand.gamma, root.value);
      auto prefix2 = prefix;
      prefix2.emplace_back(e, root.value);
      int got = expand_rec(next, e, ew, prefix2, depth + 1, /*top=*/false, ctx);
      if (got != root.multiplicity)
        fail(Errc::internal, "expansion accounting mismatch below a charpoly root");
      emitted += got;
    }
  }
  return emitted;
}

inline int cmp_series_canonical(const GSeries& a, const GSeries& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  for (size_t i = 0; i < std::min(ta.size(), tb.size()); ++i) {
    int s = quadreal_sign(ta[i].wt - tb[i].wt);
    if (s) return s;
    if (ta[i].exp != tb[i].exp) return ExpVec::lex_less(ta[i].exp, tb[i].exp) ? -1 : 1;
    int c = Cyc::canonical_cmp(ta[i].coeff, tb[i].coeff);
    if (c) return c;
  }
  if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
  return 0;
}

}  // namespace detail

// Candidates of the public entry polynomial (the y = 0 root must be split
// off by the caller first).
inline std::vector<NewtonCandidate> initial_candidates(const YPoly& f) {
  if (f.coeff(0).is_zero())
    fail(Errc::bad_config, "initial candidates require a nonzero constant coefficient");
  return detail::collect_candidates(f, /*positive_only=*/false);
}

// All roots of a monic f in the weight-ordered series field, truncated at
// the given weight. Multiplicities sum to deg_y f; partial expansions are
// flagged exact=false.
inline std::vector<RootExpansion> expand_roots(const YPoly& f, const QuadReal& trunc,
                                               const SolverCaps& caps = {}) {
  if (!f.is_monic())
    fail(Errc::non_monic, "expand_roots requires a monic polynomial");
  TruncBound ct = f.min_coeff_trunc();
  if (ct.finite && trunc > ct.value)
    fail(Errc::trunc_insufficient, "requested truncation exceeds the coefficient truncation");
  ConductorCapGuard guard(caps.conductor);

  detail::ExpandContext ctx;
  ctx.trunc = trunc;
  ctx.caps = caps;
  ctx.base_k = f.lattice_k();
  if (f.degree() == 0) return {};
  int got = detail::expand_rec(f, ExpVec::zeros(f.weight().dim()), QuadReal(Rat(0)), {}, 0,
                               /*top=*/true, ctx);
  if (got != f.degree()) fail(Errc::internal, "expansion accounting mismatch at top level");

  std::sort(ctx.out.begin(), ctx.out.end(), [](const RootExpansion& a, const RootExpansion& b) {
    int s = detail::cmp_series_canonical(a.series, b.series);
    if (s) return s < 0;
    if (a.multiplicity != b.multiplicity) return a.multiplicity < b.multiplicity;
    return a.exact && !b.exact;
  });
  return ctx.out;
}

}  // namespace puiseux
