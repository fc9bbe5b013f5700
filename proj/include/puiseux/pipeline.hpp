#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include "puiseux/parser.hpp"
#include "puiseux/semigroup.hpp"

namespace puiseux {

struct RunConfig {
  std::vector<QuadReal> omega;
  QuadReal trunc;
  SolverCaps caps;
  SubringSpec subring;
  std::optional<QuadReal> window_bound;   // defaults to trunc
  std::optional<QuadReal> compare_bound;  // defaults to trunc
};

struct RootsOutcome {
  Weight weight;
  YPoly f;
  std::vector<RootExpansion> roots;
};

struct BranchesOutcome {
  RootsOutcome base;
  std::vector<Branch> branches;
  std::vector<std::string> warnings;
};

// Either a single window for one root, or windows plus an invariance report
// per multi-member branch.
struct SemigroupOutcome {
  BranchesOutcome base;
  std::vector<std::pair<size_t, ValueWindow>> windows;
  std::vector<InvarianceReport> reports;
  bool all_in_branch = false;
};

struct EvalOutcome {
  GSeries value;
  ExpVec valuation;
};

inline RootsOutcome compute_roots(const RunConfig& cfg, const PolyExpr& fexpr) {
  ConductorCapGuard guard(cfg.caps.conductor);
  Weight w(cfg.omega);
  if (fexpr.ydeg() < 1) fail(Errc::bad_config, "polynomial must involve y");
  YPoly f = to_ypoly(fexpr, w, /*monic=*/true);
  auto roots = expand_roots(f, cfg.trunc, cfg.caps);
  return RootsOutcome{w, std::move(f), std::move(roots)};
}

inline BranchesOutcome compute_branches(const RunConfig& cfg, const PolyExpr& fexpr) {
  RootsOutcome base = compute_roots(cfg, fexpr);
  ConductorCapGuard guard(cfg.caps.conductor);
  QuadReal bound = cfg.compare_bound.value_or(cfg.trunc);
  auto part = partition_branches(base.roots, bound, cfg.caps.orbit);
  return BranchesOutcome{std::move(base), std::move(part.branches), std::move(part.warnings)};
}

inline SemigroupOutcome compute_semigroup(const RunConfig& cfg, const PolyExpr& fexpr,
                                          const std::string& selector) {
  BranchesOutcome base = compute_branches(cfg, fexpr);
  ConductorCapGuard guard(cfg.caps.conductor);
  QuadReal bound = cfg.window_bound.value_or(cfg.trunc);
  SemigroupOutcome out{std::move(base), {}, {}, false};
  if (selector == "all-in-branch") {
    out.all_in_branch = true;
    for (const Branch& b : out.base.branches) {
      if (b.members.size() >= 2) {
        out.reports.push_back(
            check_invariance(out.base.base.f, out.base.base.roots, b, cfg.subring, bound));
      } else {
        out.windows.emplace_back(
            b.members[0],
            semigroup_window(out.base.base.roots[b.members[0]].series, out.base.base.f,
                             cfg.subring, bound));
      }
    }
    return out;
  }
  size_t idx = 0;
  try {
    size_t used = 0;
    idx = std::stoul(selector, &used);
    if (used != selector.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    fail(Errc::bad_selector, "root selector must be an index or 'all-in-branch'");
  }
  if (idx >= out.base.base.roots.size())
    fail(Errc::bad_selector, "root index " + selector + " out of range (have " +
                                 std::to_string(out.base.base.roots.size()) + " roots)");
  out.windows.emplace_back(
      idx, semigroup_window(out.base.base.roots[idx].series, out.base.base.f, cfg.subring, bound));
  return out;
}

inline EvalOutcome compute_eval(const RunConfig& cfg, const PolyExpr& fexpr,
                                const PolyExpr& hexpr, size_t root_index) {
  RootsOutcome base = compute_roots(cfg, fexpr);
  ConductorCapGuard guard(cfg.caps.conductor);
  if (root_index >= base.roots.size())
    fail(Errc::bad_selector, "root index " + std::to_string(root_index) + " out of range (have " +
                                 std::to_string(base.roots.size()) + " roots)");
  YPoly h = to_ypoly(hexpr, base.weight, /*monic=*/false);
  GSeries value =
      h.evaluate(base.roots[root_index].series).clipped(TruncBound::at(cfg.trunc));
  if (value.is_zero())
    fail(Errc::undetermined, "value undetermined at this truncation: h vanishes on the root "
                             "up to the truncation bound");
  return EvalOutcome{value, value.valuation()};
}

// ---------------------------------------------------------------------------
// Rendering

inline std::string omega_str(const std::vector<QuadReal>& omega) {
  std::string out = "(";
  for (size_t i = 0; i < omega.size(); ++i) {
    if (i) out += ", ";
    out += quadreal_str(omega[i]);
  }
  return out + ")";
}

inline nlohmann::json omega_json(const std::vector<QuadReal>& omega) {
  nlohmann::json arr = nlohmann::json::array();
  for (const QuadReal& c : omega) arr.push_back(quadreal_to_json(c));
  return arr;
}

inline std::string render_roots_text(const RunConfig& cfg, const RootsOutcome& r) {
  std::ostringstream os;
  os << "omega: " << omega_str(cfg.omega) << "\n";
  os << "trunc: " << quadreal_str(cfg.trunc) << "\n";
  os << "roots: " << r.roots.size() << "\n";
  for (size_t i = 0; i < r.roots.size(); ++i) {
    const RootExpansion& root = r.roots[i];
    os << "root[" << i << "]: multiplicity=" << root.multiplicity
       << " exact=" << (root.exact ? "yes" : "no") << "\n";
    os << "  " << root.series.str() << "\n";
    if (!root.series.is_zero())
      os << "  valuation: " << root.series.valuation().str() << "\n";
  }
  return os.str();
}

inline nlohmann::json roots_json_payload(const RootsOutcome& r) {
  nlohmann::json arr = nlohmann::json::array();
  for (const RootExpansion& root : r.roots) {
    arr.push_back(nlohmann::json{{"series", root.series.to_json()},
                                 {"multiplicity", root.multiplicity},
                                 {"exact", root.exact}});
  }
  return arr;
}

inline nlohmann::json render_roots_json(const RunConfig& cfg, const RootsOutcome& r) {
  return nlohmann::json{{"omega", omega_json(cfg.omega)},
                        {"trunc", quadreal_to_json(cfg.trunc)},
                        {"roots", roots_json_payload(r)}};
}

inline std::string render_branches_text(const RunConfig& cfg, const BranchesOutcome& b) {
  std::ostringstream os;
  os << render_roots_text(cfg, b.base);
  os << "branches: " << b.branches.size() << "\n";
  for (size_t i = 0; i < b.branches.size(); ++i) {
    os << "branch[" << i << "]: size=" << b.branches[i].members.size()
       << " k=" << b.branches[i].k << " members={";
    for (size_t j = 0; j < b.branches[i].members.size(); ++j) {
      if (j) os << ", ";
      os << b.branches[i].members[j];
    }
    os << "}\n";
  }
  for (const std::string& wmsg : b.warnings) os << "warning: " << wmsg << "\n";
  return os.str();
}

inline nlohmann::json render_branches_json(const RunConfig& cfg, const BranchesOutcome& b) {
  nlohmann::json branches = nlohmann::json::array();
  for (const Branch& br : b.branches)
    branches.push_back(nlohmann::json{{"members", br.members}, {"k", br.k}});
  nlohmann::json out = render_roots_json(cfg, b.base);
  out["branches"] = branches;
  out["warnings"] = b.warnings;
  return out;
}

inline std::string render_window_text(const ValueWindow& wdw, const std::string& label) {
  std::ostringstream os;
  os << "window[" << label << "]: bound=" << quadreal_str(wdw.bound) << " values="
     << wdw.values.size() << "\n";
  os << "  values:";
  for (const ExpVec& v : wdw.values) os << " " << v.str();
  os << "\n  tentative generators:";
  for (const ExpVec& v : wdw.generators) os << " " << v.str();
  os << "\n";
  return os.str();
}

inline std::string render_semigroup_text(const RunConfig& cfg, const SemigroupOutcome& s) {
  std::ostringstream os;
  os << render_branches_text(cfg, s.base);
  for (const auto& [idx, wdw] : s.windows)
    os << render_window_text(wdw, "root=" + std::to_string(idx));
  for (const InvarianceReport& rep : s.reports) {
    for (size_t i = 0; i < rep.branch.members.size(); ++i)
      os << render_window_text(rep.windows[i],
                               "root=" + std::to_string(rep.branch.members[i]));
    os << "invariance[members={";
    for (size_t i = 0; i < rep.branch.members.size(); ++i) {
      if (i) os << ", ";
      os << rep.branch.members[i];
    }
    os << "}]: " << (rep.equal ? "equal" : "NOT equal") << "\n";
    for (const auto& d : rep.discrepancies)
      os << "  discrepancy: value " << d.value.str() << " of root " << d.root_a
         << (d.missing_in_b ? " missing for root " : " extra versus root ") << d.root_b << "\n";
  }
  return os.str();
}

inline nlohmann::json render_semigroup_json(const RunConfig& cfg, const SemigroupOutcome& s) {
  nlohmann::json out = render_branches_json(cfg, s.base);
  nlohmann::json windows = nlohmann::json::array();
  for (const auto& [idx, wdw] : s.windows)
    windows.push_back(nlohmann::json{{"root", idx}, {"window", wdw.to_json()}});
  nlohmann::json reports = nlohmann::json::array();
  for (const InvarianceReport& rep : s.reports) {
    nlohmann::json rw = nlohmann::json::array();
    for (size_t i = 0; i < rep.branch.members.size(); ++i)
      rw.push_back(nlohmann::json{{"root", rep.branch.members[i]},
                                  {"window", rep.windows[i].to_json()}});
    nlohmann::json disc = nlohmann::json::array();
    for (const auto& d : rep.discrepancies) {
      nlohmann::json e = nlohmann::json::array();
      for (const Rat& q : d.value.entries()) e.push_back(rat_str_full(q));
      disc.push_back(nlohmann::json{{"root_a", d.root_a},
                                    {"root_b", d.root_b},
                                    {"value", e},
                                    {"missing_in_b", d.missing_in_b}});
    }
    reports.push_back(nlohmann::json{{"members", rep.branch.members},
                                     {"equal", rep.equal},
                                     {"windows", rw},
                                     {"discrepancies", disc}});
  }
  out["windows"] = windows;
  out["invariance"] = reports;
  return out;
}

inline std::string render_eval_text(const EvalOutcome& e) {
  std::ostringstream os;
  os << "value: " << e.value.str() << "\n";
  os << "valuation: " << e.valuation.str() << "\n";
  return os.str();
}

inline nlohmann::json render_eval_json(const EvalOutcome& e) {
  nlohmann::json exp = nlohmann::json::array();
  for (const Rat& q : e.valuation.entries()) exp.push_back(rat_str_full(q));
  return nlohmann::json{{"value", e.value.to_json()}, {"valuation", exp}};
}

}  // namespace puiseux
