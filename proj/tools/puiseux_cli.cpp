#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "puiseux/pipeline.hpp"

namespace {

using namespace puiseux;

struct CliOptions {
  std::vector<std::string> omega;
  std::string trunc;
  int depth_cap = 64;
  long denominator_cap = 360;
  long conductor_cap = 240;
  long orbit_cap = 4096;
  std::string subring = "formal";
  std::string format = "text";
  std::string root = "0";
  std::string bound;          // window bound, defaults to trunc
  std::string compare_bound;  // branch comparison bound, defaults to trunc
  std::string poly;
  std::string hpoly;
};

void add_common(CLI::App* cmd, CliOptions& opt, bool with_subring, bool with_root,
                bool with_h) {
  cmd->add_option("--omega", opt.omega,
                  "weight components, e.g. --omega 1 --omega 0+1*sqrt(2) "
                  "(comma separation works too)")
      ->required()
      ->delimiter(',');
  cmd->add_option("--trunc", opt.trunc, "truncation bound, same literal form")->required();
  cmd->add_option("--depth-cap", opt.depth_cap);
  cmd->add_option("--denominator-cap", opt.denominator_cap);
  cmd->add_option("--conductor-cap", opt.conductor_cap);
  cmd->add_option("--orbit-cap", opt.orbit_cap);
  cmd->add_option("--format", opt.format)->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--compare-bound", opt.compare_bound,
                  "branch comparison bound (default: trunc)");
  if (with_subring) {
    cmd->add_option("--subring", opt.subring, "formal | cone:<u11,u12;u21,u22;...>");
    cmd->add_option("--bound", opt.bound, "semigroup window bound (default: trunc)");
  }
  if (with_root)
    cmd->add_option("--root", opt.root, "root index, or all-in-branch for semigroup");
  cmd->add_option("poly", opt.poly, "polynomial in x1..xn and y")->required();
  if (with_h) cmd->add_option("hpoly", opt.hpoly, "polynomial to evaluate at the root")->required();
}

SubringSpec parse_subring(const std::string& s, size_t n) {
  SubringSpec spec;
  if (s == "formal") return spec;
  if (s.rfind("cone:", 0) != 0)
    fail(Errc::bad_config, "subring must be 'formal' or 'cone:<generators>'");
  spec.kind = SubringSpec::Kind::cone;
  std::string body = s.substr(5);
  size_t pos = 0;
  while (pos <= body.size()) {
    size_t end = body.find(';', pos);
    std::string vec = body.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    std::vector<long> entries;
    size_t vp = 0;
    while (vp <= vec.size()) {
      size_t comma = vec.find(',', vp);
      std::string item = vec.substr(vp, comma == std::string::npos ? std::string::npos : comma - vp);
      try {
        entries.push_back(std::stol(item));
      } catch (const std::exception&) {
        fail(Errc::bad_config, "malformed cone generator '" + vec + "'");
      }
      if (comma == std::string::npos) break;
      vp = comma + 1;
    }
    if (entries.size() != n)
      fail(Errc::bad_config, "cone generator dimension must match omega");
    spec.generators.push_back(std::move(entries));
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return spec;
}

RunConfig build_config(const CliOptions& opt) {
  RunConfig cfg;
  for (const std::string& c : opt.omega) cfg.omega.push_back(parse_quadreal(c));
  cfg.trunc = parse_quadreal(opt.trunc);
  cfg.caps.depth = opt.depth_cap;
  cfg.caps.denominator = opt.denominator_cap;
  cfg.caps.conductor = opt.conductor_cap;
  cfg.caps.orbit = opt.orbit_cap;
  cfg.subring = parse_subring(opt.subring, cfg.omega.size());
  if (!opt.bound.empty()) cfg.window_bound = parse_quadreal(opt.bound);
  if (!opt.compare_bound.empty()) cfg.compare_bound = parse_quadreal(opt.compare_bound);
  return cfg;
}

int emit_error(const Error& e, bool json_mode) {
  if (json_mode) {
    nlohmann::json j{{"error", {{"code", errc_name(e.code())}, {"message", e.what()}}}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cerr << "error[" << errc_name(e.code()) << "]: " << e.what() << "\n";
  }
  return e.usage() ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Newton-Puiseux expansions, branches and value semigroup windows "
               "over weight-ordered series fields"};
  app.require_subcommand(1);

  CliOptions opt;
  CLI::App* roots = app.add_subcommand("roots", "expand the roots of a monic polynomial");
  add_common(roots, opt, /*subring=*/false, /*root=*/false, /*h=*/false);
  CLI::App* branches = app.add_subcommand("branches", "partition the roots into branches");
  add_common(branches, opt, /*subring=*/false, /*root=*/false, /*h=*/false);
  CLI::App* semigroup =
      app.add_subcommand("semigroup", "value semigroup window of a root (or a whole branch)");
  add_common(semigroup, opt, /*subring=*/true, /*root=*/true, /*h=*/false);
  CLI::App* eval = app.add_subcommand("eval", "evaluate h at a root and print its valuation");
  add_common(eval, opt, /*subring=*/false, /*root=*/true, /*h=*/true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  bool json_mode = opt.format == "json";
  try {
    RunConfig cfg = build_config(opt);
    PolyExpr f = parse_poly(opt.poly);
    if (roots->parsed()) {
      RootsOutcome out = compute_roots(cfg, f);
      if (json_mode)
        std::cout << render_roots_json(cfg, out).dump(2) << "\n";
      else
        std::cout << render_roots_text(cfg, out);
    } else if (branches->parsed()) {
      BranchesOutcome out = compute_branches(cfg, f);
      if (json_mode)
        std::cout << render_branches_json(cfg, out).dump(2) << "\n";
      else
        std::cout << render_branches_text(cfg, out);
    } else if (semigroup->parsed()) {
      SemigroupOutcome out = compute_semigroup(cfg, f, opt.root);
      if (json_mode)
        std::cout << render_semigroup_json(cfg, out).dump(2) << "\n";
      else
        std::cout << render_semigroup_text(cfg, out);
    } else if (eval->parsed()) {
      size_t idx = 0;
      try {
        size_t used = 0;
        idx = std::stoul(opt.root, &used);
        if (used != opt.root.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        fail(Errc::bad_selector, "eval expects a numeric --root index");
      }
      EvalOutcome out = compute_eval(cfg, f, parse_poly(opt.hpoly), idx);
      if (json_mode)
        std::cout << render_eval_json(out).dump(2) << "\n";
      else
        std::cout << render_eval_text(out);
    }
  } catch (const Error& e) {
    return emit_error(e, json_mode);
  } catch (const std::exception& e) {
    return emit_error(Error(Errc::internal, e.what()), json_mode);
  }
  return 0;
}
