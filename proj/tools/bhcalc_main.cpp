// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Batch front end: search-tree construction and dumps, eps-term arithmetic,
// collapse checking/synthesis, code verification, the full pipeline, and
// the verification suites. Exit codes: 0 pass, 1 fail, 2 error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bhcalc/pipeline.hpp"
#include "bhcalc/suites.hpp"
#include "json.hpp"

using namespace bhcalc;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Err::BadInput, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<HFSet> read_u_file(const std::string& path) {
  Sexpr s = parse_sexpr(slurp(path));
  if (s.head() != "u") throw Error(Err::BadInput, "u-file must hold (u <set>...)");
  std::vector<HFSet> out;
  for (size_t i = 1; i < s.size(); ++i) out.push_back(HFSet::from_sexpr(s.at(i)));
  return out;
}

std::vector<HFSet> default_u() { return {HFSet::numeral(0), HFSet::numeral(1)}; }

SyntheticBase base_from_ranks(const std::string& ranks_csv) {
  std::vector<OrdCNF> ranks;
  std::stringstream ss(ranks_csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) ranks.push_back(OrdCNF::parse(item));
  if (ranks.empty()) throw Error(Err::BadInput, "empty base");
  return SyntheticBase(std::move(ranks));
}

int cmd_search_tree(const std::string& u_file, unsigned alpha, unsigned depth, bool dump,
                    const std::string& kb_pair) {
  std::vector<HFSet> u = u_file.empty() ? default_u() : read_u_file(u_file);
  unsigned build_depth = std::max(alpha, 1u);
  StageUniverse universe = StageUniverse::build(u, build_depth);
  SearchTree tree(universe, alpha);

  struct Item {
    Path p;
    unsigned d;
  };
  std::vector<Item> queue = {{{}, 0}};
  for (size_t i = 0; i < queue.size(); ++i) {
    Item it = queue[i];
    std::cout << tree.node_dump(it.p).str() << "\n";
    if (it.d >= depth) continue;
    for (auto& [a, lab] : tree.expand(it.p)) {
      Path q = it.p;
      q.push_back(a);
      if (dump) {
        Sexpr edge = Sexpr::make_list();
        edge.add_atom("edge").add(path_to_sexpr(it.p)).add(a.set.to_sexpr());
        std::cout << edge.str() << "\n";
      }
      queue.push_back({q, it.d + 1});
    }
  }
  if (!kb_pair.empty()) {
    auto exprs = parse_sexpr_list(slurp(kb_pair));
    if (exprs.size() != 2) throw Error(Err::BadInput, "--kb-compare file needs two paths");
    auto read_path = [&](const Sexpr& s) {
      Path p;
      for (size_t i = 1; i < s.size(); ++i)
        p.push_back({OrdCNF::from_sexpr(s.at(i).at(0)), HFSet::from_sexpr(s.at(i).at(1))});
      return p;
    };
    auto c = tree.kb_compare(read_path(exprs[0]), read_path(exprs[1]));
    std::cout << "(kb-compare "
              << (c == std::strong_ordering::less      ? "less"
                  : c == std::strong_ordering::greater ? "greater"
                                                       : "equal")
              << ")\n";
  }
  return 0;
}

int cmd_eps(const std::string& op, const std::vector<std::string>& terms,
            const std::string& ranks_csv, const std::string& alpha_str) {
  SyntheticBase base = base_from_ranks(ranks_csv);
  OrdCNF alpha = OrdCNF::parse(alpha_str);
  std::vector<EpsTerm> ts;
  for (const auto& t : terms) ts.push_back(EpsTerm::parse(t, base));
  if (op == "compare") {
    if (ts.size() != 2) throw Error(Err::BadInput, "eps compare needs two terms");
    auto c = eps_compare(ts[0], ts[1], base);
    std::cout << (c == std::strong_ordering::less      ? "less"
                  : c == std::strong_ordering::greater ? "greater"
                                                       : "equal")
              << "\n";
    return 0;
  }
  if (op == "add") {
    if (ts.size() != 2) throw Error(Err::BadInput, "eps add needs two terms");
    std::cout << eps_add(ts[0], ts[1], alpha, base).str(base) << "\n";
    return 0;
  }
  if (op == "star") {
    if (ts.size() != 1) throw Error(Err::BadInput, "eps star needs one term");
    std::cout << eps_star(ts[0], base).str() << "\n";
    return 0;
  }
  if (op == "validate") {
    if (ts.size() != 1) throw Error(Err::BadInput, "eps validate needs one term");
    std::cout << (eps_validate(ts[0], alpha, base) ? "valid" : "invalid") << "\n";
    return 0;
  }
  throw Error(Err::BadInput, "unknown eps operation " + op);
}

int cmd_collapse(const std::string& op, const std::string& wop_file,
                 const std::string& theta_file, const std::string& alpha_str,
                 const std::string& ranks_csv, const std::string& terms_file, bool json_out) {
  if (op == "check") {
    FiniteWop T = FiniteWop::from_sexpr(parse_sexpr(slurp(wop_file)));
    WopCollapse th = WopCollapse::from_sexpr(parse_sexpr(slurp(theta_file)), T);
    auto violations = check_bh(T, th, OrdCNF::parse(alpha_str));
    if (json_out) {
      nlohmann::json j = nlohmann::json::array();
      for (const auto& v : violations)
        j.push_back({{"clause", v.clause}, {"i", v.i}, {"j", v.j}, {"detail", v.detail}});
      std::cout << j.dump(2) << "\n";
    } else {
      for (const auto& v : violations)
        std::cout << "violation clause " << v.clause << " at (" << v.i << ", " << v.j
                  << "): " << v.detail << "\n";
      std::cout << (violations.empty() ? "accepted" : "rejected") << "\n";
    }
    return violations.empty() ? 0 : 1;
  }
  if (op == "synth") {
    FiniteWop T = FiniteWop::from_sexpr(parse_sexpr(slurp(wop_file)));
    WopCollapse th = synthesize_collapse(T);
    if (json_out) {
      nlohmann::json j = nlohmann::json::object();
      for (size_t i = 0; i < T.size(); ++i) j[T.names[i]] = th.values[i].str();
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << th.to_sexpr(T).str() << "\n";
    }
    return 0;
  }
  if (op == "oracle") {
    SyntheticBase base = base_from_ranks(ranks_csv);
    GreedyThetaOracle oracle(base);
    std::istringstream in(slurp(terms_file));
    std::string line;
    nlohmann::json j = nlohmann::json::array();
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      EpsTerm t = EpsTerm::parse(line, base);
      OrdCNF v = oracle.theta(t);
      if (json_out)
        j.push_back({{"term", t.str(base)}, {"theta", v.str()}});
      else
        std::cout << "theta(" << t.str(base) << ") = " << v.str() << "\n";
    }
    bool ok = oracle.map().check().empty();
    if (json_out) {
      std::cout << nlohmann::json({{"assignments", j}, {"consistent", ok}}).dump(2) << "\n";
    } else {
      std::cout << (ok ? "map consistent" : "map inconsistent") << "\n";
    }
    return ok ? 0 : 1;
  }
  throw Error(Err::BadInput, "unknown collapse operation " + op);
}

int cmd_codes_check(const std::string& code_file, const std::string& u_file, unsigned stage_depth,
                    unsigned alpha, unsigned depth, unsigned walks, uint64_t seed, uint64_t fuel,
                    bool json_out) {
  std::vector<HFSet> u = u_file.empty() ? default_u() : read_u_file(u_file);
  StageUniverse universe = StageUniverse::build(u, stage_depth);
  ProofSystem sys(universe, stage_depth, OrdCNF(alpha));
  GreedyThetaOracle oracle(sys.kb_base());
  sys.set_oracle(&oracle);
  CodeId code = sys.code_from_sexpr(parse_sexpr(slurp(code_file)));

  PipelineConfig cfg;
  cfg.u = u;
  cfg.depth = stage_depth;
  cfg.alpha = alpha;
  cfg.walks = walks;
  cfg.walk_depth = depth;
  cfg.breadth_depth = std::min(depth, 3u);
  cfg.seed = seed;
  cfg.fuel = fuel;
  VerifySummary s = verify_code(sys, oracle, code, "code", cfg);
  if (json_out) {
    nlohmann::json lines = nlohmann::json::array();
    for (const auto& r : s.reports) {
      nlohmann::json verdicts = nlohmann::json::object();
      for (const auto& v : r.verdicts)
        verdicts[v.name] = v.verdict == ProofSystem::Verdict::Pass      ? "pass"
                           : v.verdict == ProofSystem::Verdict::Unknown ? "unknown"
                                                                        : "fail";
      lines.push_back({{"path", r.path},
                       {"rule", r.rule},
                       {"height", r.height},
                       {"verdicts", verdicts}});
    }
    std::cout << lines.dump(2) << "\n";
  } else {
    std::cout << "nodes " << s.nodes << " conditions " << s.conditions << " fails " << s.fails
              << " unknowns " << s.unknowns << " edge violations " << s.edge_violations << "\n";
  }
  return (s.fails + s.edge_violations) == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"search trees, eps-terms, Bachmann-Howard collapses and proof codes"};
  app.require_subcommand(1);
  app.fallthrough();

  uint64_t seed = 0, fuel = 10000;
  bool json_out = false;
  app.add_option("--seed", seed, "random seed");
  app.add_option("--fuel", fuel, "saturation fuel");
  app.add_flag("--json", json_out, "machine-readable output");

  // search-tree
  auto* st = app.add_subcommand("search-tree", "expand a search tree and dump nodes");
  std::string st_u;
  unsigned st_alpha = 1, st_depth = 4;
  bool st_dump = false;
  std::string st_kb;
  st->add_option("--u", st_u, "u-file (sexpr), default {0, 1}");
  st->add_option("--alpha", st_alpha, "alphabet stage");
  st->add_option("--depth", st_depth, "expansion depth");
  st->add_flag("--dump", st_dump, "emit edges too");
  st->add_option("--kb-compare", st_kb, "file with two paths to compare");

  // eps
  auto* ep = app.add_subcommand("eps", "eps-term operations over a synthetic base");
  std::string ep_op, ep_ranks = "0,0,1,2", ep_alpha = "3";
  std::vector<std::string> ep_terms;
  ep->add_option("op", ep_op, "compare | add | star | validate")->required();
  ep->add_option("terms", ep_terms, "term expressions");
  ep->add_option("--base-ranks", ep_ranks, "comma-separated element ranks");
  ep->add_option("--alpha", ep_alpha, "ambient index");

  // collapse
  auto* co = app.add_subcommand("collapse", "check or synthesize collapses");
  std::string co_op, co_wop, co_theta, co_alpha = "w^(5)", co_ranks = "0,0,1,2", co_terms;
  co->add_option("op", co_op, "check | synth | oracle")->required();
  co->add_option("--wop", co_wop, "wop file (sexpr)");
  co->add_option("--theta", co_theta, "theta file (sexpr)");
  co->add_option("--alpha", co_alpha, "codomain bound");
  co->add_option("--base-ranks", co_ranks, "oracle base ranks");
  co->add_option("--terms", co_terms, "oracle query file, one term per line");

  // codes
  auto* cd = app.add_subcommand("codes", "verify a proof code node-wise");
  std::string cd_op, cd_code, cd_u;
  unsigned cd_depth = 8, cd_walks = 200, cd_stage_depth = 2, cd_alpha = 2;
  cd->add_option("op", cd_op, "check")->required();
  cd->add_option("--code", cd_code, "code file (sexpr)")->required();
  cd->add_option("--u", cd_u, "u-file");
  cd->add_option("--stage-depth", cd_stage_depth, "built stage depth");
  cd->add_option("--alpha", cd_alpha, "ambient term index");
  cd->add_option("--depth", cd_depth, "walk depth");
  cd->add_option("--walks", cd_walks, "number of walks");

  // pipeline
  auto* pl = app.add_subcommand("pipeline", "basic -> E^C -> C_Omega with verification");
  std::string pl_u, pl_out;
  PipelineConfig cfg = PipelineConfig::defaults();
  pl->add_option("--u", pl_u, "u-file");
  pl->add_option("--depth", cfg.depth, "stage depth n");
  pl->add_option("--alpha", cfg.alpha, "ambient term index");
  pl->add_option("--e-iterations", cfg.e_iterations, "cut elimination steps C");
  pl->add_option("--walks", cfg.walks, "random walks");
  pl->add_option("--walk-depth", cfg.walk_depth, "walk depth");
  pl->add_option("--breadth-depth", cfg.breadth_depth, "exhaustive depth");
  pl->add_option("--out", pl_out, "write the report to a file");

  // suite
  auto* su = app.add_subcommand("suite", "run a verification suite");
  std::string su_name, su_golden = "tests/golden";
  su->add_option("name", su_name, "suite name")->required();
  su->add_option("--golden-dir", su_golden, "golden file directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*st) return cmd_search_tree(st_u, st_alpha, st_depth, st_dump, st_kb);
    if (*ep) return cmd_eps(ep_op, ep_terms, ep_ranks, ep_alpha);
    if (*co) return cmd_collapse(co_op, co_wop, co_theta, co_alpha, co_ranks, co_terms, json_out);
    if (*cd) {
      if (cd_op != "check") throw Error(Err::BadInput, "unknown codes operation " + cd_op);
      return cmd_codes_check(cd_code, cd_u, cd_stage_depth, cd_alpha, cd_depth, cd_walks, seed,
                             fuel, json_out);
    }
    if (*pl) {
      cfg.u = pl_u.empty() ? default_u() : read_u_file(pl_u);
      cfg.seed = seed;
      cfg.fuel = fuel;
      PipelineResult r = run_pipeline(cfg);
      std::string report = json_out ? pipeline_report_json(r) : pipeline_report_text(r);
      if (!pl_out.empty()) {
        std::ofstream out(pl_out);
        out << report;
      } else {
        std::cout << report << "\n";
      }
      return r.total_fails() == 0 ? 0 : 1;
    }
    if (*su) {
      SuiteOptions opt;
      opt.golden_dir = su_golden;
      opt.seed = seed;
      opt.fuel = fuel;
      SuiteResult res = run_suite(su_name, opt);
      for (const auto& p : res.parts) {
        std::cout << (p.pass ? "[PASS] " : "[FAIL] ") << p.summary << " (" << p.seconds
                  << "s)\n";
        for (const auto& d : p.details) std::cout << "    " << d << "\n";
      }
      return res.pass ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
