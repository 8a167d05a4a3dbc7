// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "bhcalc/suites.hpp"

#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include "bhcalc/pipeline.hpp"
#include "bhcalc/symord.hpp"

namespace bhcalc {

namespace {

using Clock = std::chrono::steady_clock;

struct Battery {
  CriterionResult r;
  Clock::time_point start = Clock::now();
  size_t checks = 0, failures = 0;

  explicit Battery(int criterion) { r.criterion = criterion; }

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      if (r.details.size() < 12) r.details.push_back("failed: " + what);
    }
  }
  void note(std::string line) { r.details.push_back(std::move(line)); }

  CriterionResult finish(double budget_seconds, std::string summary) {
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    bool in_budget = r.seconds < budget_seconds;
    if (!in_budget)
      r.details.push_back("runtime " + std::to_string(r.seconds) + "s exceeds budget");
    r.pass = failures == 0 && in_budget;
    r.summary = std::move(summary) + " (" + std::to_string(checks) + " checks, " +
                std::to_string(failures) + " failures)";
    return r;
  }
};

SyntheticBase base6() {
  return SyntheticBase({OrdCNF(0), OrdCNF(0), OrdCNF(1), OrdCNF(2), OrdCNF::omega(),
                        OrdCNF::omega_times(2)});
}

struct TermGen {
  std::mt19937_64 rng;
  const SyntheticBase& base;
  OrdCNF alpha;

  OrdCNF coeff() {
    uint64_t k = rng() % 4;
    OrdCNF r(rng() % 3);
    if (k >= 2) r = OrdCNF::omega_times(1 + rng() % 2) + r;
    if (k == 3) r = OrdCNF::omega_pow(OrdCNF(2)) + r;
    if (r.is_zero()) r = OrdCNF(1);
    return r;
  }

  EpsTerm raw(int depth) {
    unsigned c = rng() % 10;
    if (c < 2) return EpsTerm::zero();
    if (c < 5) return EpsTerm::eps(static_cast<int>(rng() % base.size()));
    size_t len = 1 + rng() % 3;
    std::vector<EpsTerm::Summand> parts;
    for (size_t i = 0; i < len; ++i) {
      EpsTerm e = depth > 0
                      ? raw(depth - 1)
                      : (rng() % 2 ? EpsTerm::zero()
                                   : EpsTerm::eps(static_cast<int>(rng() % base.size())));
      parts.push_back({e, coeff()});
    }
    std::sort(parts.begin(), parts.end(), [&](const auto& a, const auto& b) {
      return eps_compare(a.first, b.first, base) == std::strong_ordering::greater;
    });
    std::vector<EpsTerm::Summand> desc;
    for (auto& p : parts)
      if (desc.empty() ||
          eps_compare(p.first, desc.back().first, base) == std::strong_ordering::less)
        desc.push_back(std::move(p));
    return EpsTerm::sum(std::move(desc));
  }

  EpsTerm term(int depth) {
    while (true) {
      EpsTerm t = raw(depth);
      if (eps_validate(t, alpha, base)) return t;
    }
  }
};

// ---------------------------------------------------------------- criterion 1

CriterionResult criterion1(const SuiteOptions& opt) {
  Battery b(1);
  SyntheticBase base = base6();
  OrdCNF alpha(3);
  TermGen gen{std::mt19937_64(opt.seed + 1), base, alpha};
  OrdInterpreter interp(base, [](int e) { return OrdCNF(static_cast<uint64_t>(e)); },
                        OrdCNF::omega_pow(OrdCNF(4)), alpha);

  for (int i = 0; i < 1000; ++i) {
    EpsTerm s = gen.term(2), t = gen.term(2), r = gen.term(2);
    auto st = eps_compare(s, t, base);
    auto ts = eps_compare(t, s, base);
    b.expect((st == std::strong_ordering::equal) == eps_equal(s, t), "equality vs compare");
    b.expect((st == std::strong_ordering::less) == (ts == std::strong_ordering::greater),
             "antisymmetry");
    if (st == std::strong_ordering::less &&
        eps_compare(t, r, base) == std::strong_ordering::less)
      b.expect(eps_compare(s, r, base) == std::strong_ordering::less, "transitivity");
    b.expect(eps_compare(s, s, base) == std::strong_ordering::equal, "reflexive equality");
    // oracle agreement
    b.expect(interp.interpret(s).compare(interp.interpret(t)) == st, "interpretation oracle");
  }

  // exhaustive over a 3-element base, sums of length <= 2 from atoms and
  // coefficients in {1, 2} (every term has length <= 6)
  SyntheticBase small({OrdCNF(0), OrdCNF(1), OrdCNF(2)});
  std::vector<EpsTerm> all = {EpsTerm::zero(), EpsTerm::eps(0), EpsTerm::eps(1),
                              EpsTerm::eps(2)};
  std::vector<EpsTerm> atoms = all;
  for (const auto& e0 : atoms)
    for (uint64_t c0 = 1; c0 <= 2; ++c0) {
      EpsTerm t1 = EpsTerm::sum({{e0, OrdCNF(c0)}});
      if (eps_validate(t1, OrdCNF(3), small)) all.push_back(t1);
      for (const auto& e1 : atoms)
        for (uint64_t c1 = 1; c1 <= 2; ++c1) {
          EpsTerm t2 = EpsTerm::sum({{e0, OrdCNF(c0)}, {e1, OrdCNF(c1)}});
          if (eps_validate(t2, OrdCNF(3), small)) all.push_back(t2);
        }
    }
  for (const auto& x : all)
    for (const auto& y : all) {
      auto xy = eps_compare(x, y, small);
      b.expect((xy == std::strong_ordering::equal) == eps_equal(x, y), "exhaustive equality");
      for (const auto& z : all)
        if (xy == std::strong_ordering::less &&
            eps_compare(y, z, small) == std::strong_ordering::less)
          b.expect(eps_compare(x, z, small) == std::strong_ordering::less,
                   "exhaustive transitivity");
    }
  b.note("exhaustive base size 3: " + std::to_string(all.size()) + " terms");
  return b.finish(30.0, "eps_compare strict total order + interpretation oracle");
}

// ---------------------------------------------------------------- criterion 2

CriterionResult criterion2(const SuiteOptions& opt) {
  Battery b(2);
  SyntheticBase base = base6();
  OrdCNF alpha(3);
  TermGen gen{std::mt19937_64(opt.seed + 2), base, alpha};

  size_t literal_holds = 0, literal_fails = 0;
  std::string counterexample;
  for (int i = 0; i < 1000; ++i) {
    EpsTerm s = gen.term(2), t = gen.term(2), r = gen.term(2);
    // (i) s <= W^s and strict monotonicity of exponentiation
    b.expect(eps_compare(s, eps_omega_pow(s), base) != std::strong_ordering::greater,
             "s <= W^s");
    if (eps_compare(s, t, base) == std::strong_ordering::less)
      b.expect(eps_compare(eps_omega_pow(s), eps_omega_pow(t), base) ==
                   std::strong_ordering::less,
               "W^ monotone");
    // (ii)
    if (eps_compare(t, r, base) == std::strong_ordering::less) {
      b.expect(eps_compare(eps_add(s, t, alpha, base), eps_add(s, r, alpha, base), base) ==
                   std::strong_ordering::less,
               "right strict monotonicity");
      b.expect(eps_compare(eps_add(t, s, alpha, base), eps_add(r, s, alpha, base), base) !=
                   std::strong_ordering::greater,
               "left weak monotonicity");
    }
    // (iii) as stated in the source: s + (t + r) = (s + r) + t
    {
      EpsTerm lhs = eps_add(s, eps_add(t, r, alpha, base), alpha, base);
      EpsTerm rhs = eps_add(eps_add(s, r, alpha, base), t, alpha, base);
      if (eps_equal(lhs, rhs))
        ++literal_holds;
      else {
        ++literal_fails;
        if (counterexample.empty())
          counterexample = "s=" + s.str(base) + " t=" + t.str(base) + " r=" + r.str(base);
      }
      // and as standard associativity, which must hold exactly
      EpsTerm assoc = eps_add(eps_add(s, t, alpha, base), r, alpha, base);
      EpsTerm assoc2 = eps_add(s, eps_add(t, r, alpha, base), alpha, base);
      b.expect(eps_equal(assoc, assoc2), "associativity");
    }
    // (iv)
    EpsTerm wt = eps_omega_pow(t);
    if (eps_compare(s, wt, base) == std::strong_ordering::less)
      b.expect(eps_equal(eps_add(s, wt, alpha, base), wt), "absorption below W^t");
    // (v) subtraction witness
    if (eps_compare(s, t, base) != std::strong_ordering::greater) {
      auto w = eps_subtract(s, t, alpha, base);
      b.expect(w.has_value() && eps_equal(eps_add(s, *w, alpha, base), t),
               "subtraction witness");
    }
    // star subadditivity
    b.expect(eps_star(eps_add(s, t, alpha, base), base) <=
                 OrdCNF::max(eps_star(s, base), eps_star(t, base)),
             "star subadditivity");
    b.expect(eps_star(eps_omega_pow(s), base) <= eps_star(s, base), "star of W^s");
  }
  b.note("literal claim s+(t+r)=(s+r)+t: holds on " + std::to_string(literal_holds) +
         ", fails on " + std::to_string(literal_fails) + " of 1000 instances");
  if (!counterexample.empty()) b.note("first counterexample: " + counterexample);
  b.note("recorded outcome: the literal claim is not an identity of the addition "
         "table; standard associativity holds exactly");
  return b.finish(30.0, "arithmetic lemma laws");
}

// ---------------------------------------------------------------- criterion 3

FiniteWop example_wop_suite() {
  FiniteWop T;
  for (unsigned i = 0; i < 5; ++i) {
    T.names.push_back(std::to_string(i));
    T.ranks.push_back(OrdCNF(i));
  }
  T.names.push_back("star");
  T.ranks.push_back(OrdCNF(0));
  return T;
}

CriterionResult criterion3(const SuiteOptions& opt) {
  Battery b(3);
  // the example assignment
  FiniteWop T = example_wop_suite();
  OrdCNF alpha = OrdCNF::omega_times(2);
  WopCollapse theta;
  for (unsigned i = 0; i < 5; ++i) theta.values.push_back(OrdCNF(i + 1));
  theta.values.push_back(OrdCNF::omega());
  b.expect(check_bh(T, theta, alpha).empty(), "example assignment accepted");
  for (uint64_t v = 0; v < 6; ++v) {
    WopCollapse bad = theta;
    bad.values[5] = OrdCNF(v);
    b.expect(!check_bh(T, bad, alpha).empty(),
             "perturbation theta(star) = " + std::to_string(v) + " rejected");
  }

  // 200 random wops of size <= 7
  std::mt19937_64 rng(opt.seed + 3);
  OrdCNF big = OrdCNF::omega_pow(OrdCNF(5));
  for (int i = 0; i < 200; ++i) {
    FiniteWop W;
    size_t n = rng() % 8;
    for (size_t k = 0; k < n; ++k) {
      W.names.push_back("e" + std::to_string(k));
      uint64_t pick = rng() % 5;
      W.ranks.push_back(pick < 3 ? OrdCNF(rng() % 4)
                                 : OrdCNF::omega_times(rng() % 2) + OrdCNF(rng() % 3));
    }
    WopCollapse th = synthesize_collapse(W);
    b.expect(check_bh(W, th, big).empty(), "synthesized collapse passes check_bh");
    WopCollapse ref = synthesize_collapse_reference(W);
    bool same = th.values.size() == ref.values.size();
    for (size_t k = 0; same && k < th.values.size(); ++k) same = th.values[k] == ref.values[k];
    b.expect(same, "synthesis matches the independent fixpoint recomputation");
  }

  // brute force on all wops of size <= 4 over a 10-value grid
  std::vector<OrdCNF> rank_pool = {OrdCNF(0), OrdCNF(1), OrdCNF(2), OrdCNF::omega()};
  std::vector<OrdCNF> grid;
  for (uint64_t v = 1; v <= 6; ++v) grid.push_back(OrdCNF(v));
  grid.push_back(OrdCNF::omega());
  grid.push_back(OrdCNF::omega() + OrdCNF(1));
  grid.push_back(OrdCNF::omega() + OrdCNF(2));
  grid.push_back(OrdCNF::omega_times(2));
  size_t searched = 0;
  for (size_t n = 1; n <= 4; ++n) {
    std::vector<size_t> pick(n, 0);
    while (true) {
      FiniteWop W;
      for (size_t i = 0; i < n; ++i) {
        W.names.push_back("e" + std::to_string(i));
        W.ranks.push_back(rank_pool[pick[i]]);
      }
      ++searched;
      auto found = brute_force_collapse_exists(W, OrdCNF::omega_times(3), grid);
      if (found)
        b.expect(check_bh(W, *found, OrdCNF::omega_times(3)).empty(), "witness validates");
      WopCollapse synth = synthesize_collapse(W);
      bool in_grid = true;
      for (const auto& v : synth.values)
        if (std::find(grid.begin(), grid.end(), v) == grid.end()) in_grid = false;
      if (in_grid) b.expect(found.has_value(), "brute force finds a witness when one exists");
      size_t i = 0;
      while (i < n && ++pick[i] == rank_pool.size()) pick[i++] = 0;
      if (i == n) break;
    }
  }
  b.note("brute-force searched " + std::to_string(searched) + " wops");
  return b.finish(60.0, "collapse checking, synthesis, brute-force cross-check");
}

// ---------------------------------------------------------------- criterion 4

CriterionResult criterion4(const SuiteOptions& opt) {
  Battery b(4);
  SyntheticBase base({OrdCNF(0), OrdCNF(1), OrdCNF(2), OrdCNF::omega(),
                      OrdCNF::omega() + OrdCNF(1), OrdCNF::omega_times(2)});
  OrdCNF alpha(3);
  // synthesize a collapse over the base's eps-constants
  FiniteWop T;
  for (int i = 0; i < 6; ++i) {
    T.names.push_back(std::to_string(i));
    T.ranks.push_back(base.rank(i));
  }
  WopCollapse th = synthesize_collapse(T);
  TermCollapse theta(base);
  for (int i = 0; i < 6; ++i) theta.insert(EpsTerm::eps(i), th.values[i]);
  b.expect(theta.check().empty(), "embedded synthesized collapse is BH-consistent");

  // recover identity over the representable grid, in both directions
  for (int i = 0; i < 6; ++i) {
    EpsTerm t = EpsTerm::eps(i);
    OrdCNF value = th.values[static_cast<size_t>(i)];
    // X = grid below theta(t)
    std::vector<OrdCNF> grid;
    for (uint64_t v = 0; v < 6; ++v) grid.push_back(OrdCNF(v));
    grid.push_back(OrdCNF::omega());
    grid.push_back(OrdCNF::omega() + OrdCNF(2));
    grid.push_back(OrdCNF::omega_times(2));
    CsetSeed seed;
    seed.below = value;
    CsetEngine eng(theta, t, seed, opt.fuel);
    for (const auto& g : grid)
      if (g < value) b.expect(eng.member_ord(g), "grid ordinal below theta(t) is a member");
    // every ordinal the engine established is below theta(t)
    for (const auto& g : eng.established_ords())
      b.expect(g < value, "established member below theta(t)");
  }

  // special property (iv): theta(t + W^s) < theta(t + W^s') for s < s',
  // sampled where the (extended) oracle is defined
  {
    GreedyThetaOracle oracle(base);
    std::vector<EpsTerm> batch;
    EpsTerm t = EpsTerm::eps(5);
    std::vector<EpsTerm> ss = {EpsTerm::zero(), eps_one(), EpsTerm::embed_ord(OrdCNF(2)),
                               EpsTerm::embed_ord(OrdCNF::omega()), EpsTerm::eps(0),
                               EpsTerm::eps(2)};
    for (const auto& sworth : ss)
      batch.push_back(eps_add(t, eps_omega_pow(sworth), alpha, base));
    oracle.assign_ascending(batch);
    b.expect(oracle.map().check().empty(), "extended oracle stays BH-consistent");
    for (const auto& s1 : ss)
      for (const auto& s2 : ss) {
        if (eps_compare(s1, s2, base) != std::strong_ordering::less) continue;
        auto v1 = oracle.lookup(eps_add(t, eps_omega_pow(s1), alpha, base));
        auto v2 = oracle.lookup(eps_add(t, eps_omega_pow(s2), alpha, base));
        if (v1 && v2) b.expect(*v1 < *v2, "theta monotone over t + W^s");
      }
  }

  // operator laws on 500 sampled membership queries
  std::mt19937_64 rng(opt.seed + 4);
  size_t queries = 0, unknowns = 0;
  TermGen gen{std::mt19937_64(opt.seed + 44), base, alpha};
  for (int i = 0; i < 500; ++i) {
    EpsTerm t = EpsTerm::eps(static_cast<int>(2 + rng() % 4));
    std::vector<OrdCNF> params;
    for (size_t k = 0; k < rng() % 3; ++k) params.push_back(OrdCNF(rng() % 5));
    try {
      CsetEngine H = h_operator(theta, t, params, alpha, opt.fuel);
      ++queries;
      for (const auto& p : params) b.expect(H.member_ord(p), "parameters are members");
      b.expect(H.member_ord(OrdCNF(0)) && H.member_ord(OrdCNF::omega()), "0 and omega members");
      // closure under + and W-power on established members
      const auto& est = H.established_ords();
      if (!est.empty()) {
        OrdCNF x = est[rng() % est.size()], y = est[rng() % est.size()];
        b.expect(H.member_ord(x + y), "closure under addition");
        b.expect(H.member(eps_omega_pow(EpsTerm::embed_ord(x))), "closure under W-power");
        b.expect(H.member(eps_add(EpsTerm::embed_ord(x), EpsTerm::embed_ord(y), alpha, base)),
                 "closure under term addition");
      }
      // downward closure below Omega
      if (!est.empty()) {
        OrdCNF m = est[rng() % est.size()];
        if (OrdCNF(1) < m) b.expect(H.member_ord(OrdCNF(1)), "downward closure");
      }
      // eps-constants with member ranks
      int e = static_cast<int>(rng() % 6);
      if (H.member_ord(base.rank(e))) b.expect(H.member(EpsTerm::eps(e)), "eps of member rank");
      // max-count monotonicity
      if (params.size() >= 1) {
        CsetEngine H2 = h_operator(theta, t, {params[0]}, alpha, opt.fuel);
        for (const auto& g : H2.established_ords())
          b.expect(H.member_ord(g), "max-parameter monotonicity");
      }
      // special property (iii): established members below Omega sit below
      // theta(t + 1), where defined
      EpsTerm t1 = eps_add(t, eps_one(), alpha, base);
      if (auto v = theta.lookup(t1)) {
        for (const auto& g : est) b.expect(g < *v, "members below theta(t+1)");
      }
    } catch (const Error&) {
      ++unknowns;
    }
  }
  b.expect(unknowns * 100 < queries + unknowns, "unknown rate below 1%");
  b.note("membership batteries: " + std::to_string(queries) + " runs, " +
         std::to_string(unknowns) + " unknown");
  return b.finish(60.0, "C-set recover identity and operator laws");
}

}  // namespace

}  // namespace bhcalc

namespace bhcalc {

namespace {

// ---------------------------------------------------------------- criterion 5

std::string dump_tree(SearchTree& tree, unsigned dump_depth) {
  std::ostringstream os;
  struct Item {
    Path p;
    unsigned depth;
  };
  std::vector<Item> queue = {{{}, 0}};
  for (size_t i = 0; i < queue.size(); ++i) {
    Item it = queue[i];
    os << tree.node_dump(it.p).str() << "\n";
    if (it.depth >= dump_depth) continue;
    for (auto& [a, lab] : tree.expand(it.p)) {
      Path q = it.p;
      q.push_back(a);
      queue.push_back({q, it.depth + 1});
    }
  }
  return os.str();
}

CriterionResult criterion5(const SuiteOptions& opt) {
  Battery b(5);
  StageUniverse u = StageUniverse::build({HFSet::numeral(0), HFSet::numeral(1)}, 2);
  SearchTree t1(u, 1), t2(u, 2);

  for (unsigned n : {1u, 2u}) {
    SearchTree& t = n == 1 ? t1 : t2;
    std::string dump = dump_tree(t, 4);
    std::string file = opt.golden_dir + "/search_tree_S" + std::to_string(n) + "_depth4.sexpr";
    std::ifstream in(file);
    if (!in) {
      b.expect(false, "missing golden file " + file);
      continue;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    b.expect(buf.str() == dump, "golden diff for S_" + std::to_string(n));
  }

  // compatibility S_1 = S_2 over the smaller alphabet, plus label equality
  std::vector<Path> n1;
  {
    struct Item {
      Path p;
      unsigned d;
    };
    std::vector<Item> queue = {{{}, 0}};
    for (size_t i = 0; i < queue.size(); ++i) {
      n1.push_back(queue[i].p);
      if (queue[i].d >= 8) continue;
      for (auto& [a, lab] : t1.expand(queue[i].p)) {
        Path q = queue[i].p;
        q.push_back(a);
        queue.push_back({q, queue[i].d + 1});
      }
    }
  }
  for (const auto& p : n1) {
    b.expect(t2.node(p).in_tree, "S_1 node lies in S_2");
    b.expect(t1.node(p).label == t2.node(p).label, "labels agree across stages");
  }
  // KB order: total, irreflexive, transitive by exhaustion; orders agree
  for (const auto& a : n1) {
    for (const auto& p : n1) {
      auto c12 = t1.kb_compare(a, p);
      b.expect(c12 == t2.kb_compare(a, p), "KB orders agree on the intersection");
      if (!(a == p))
        b.expect(c12 != std::strong_ordering::equal, "KB total");
      for (const auto& q : n1)
        if (t1.kb_compare(a, p) == std::strong_ordering::less &&
            t1.kb_compare(p, q) == std::strong_ordering::less)
          b.expect(t1.kb_compare(a, q) == std::strong_ordering::less, "KB transitive");
    }
    if (!a.empty())
      b.expect(t1.kb_compare(a, {}) == std::strong_ordering::less, "root is maximal");
  }
  // rank identity |p|_S = min{ m : p in S_{m+1} } via stagewise rebuild
  std::vector<Path> n2;
  {
    struct Item {
      Path p;
      unsigned d;
    };
    std::vector<Item> queue = {{{}, 0}};
    for (size_t i = 0; i < queue.size(); ++i) {
      n2.push_back(queue[i].p);
      if (queue[i].d >= 8) continue;
      for (auto& [a, lab] : t2.expand(queue[i].p)) {
        Path q = queue[i].p;
        q.push_back(a);
        queue.push_back({q, queue[i].d + 1});
      }
    }
  }
  for (const auto& p : n2) {
    OrdCNF r = t2.node_rank(p);
    bool in_s1 = t1.node(p).in_tree;
    b.expect(in_s1 == (r < OrdCNF(1)), "rank identity vs membership in S_1");
  }
  b.note("exhausted " + std::to_string(n1.size()) + " nodes of S_1, " +
         std::to_string(n2.size()) + " nodes of S_2");
  return b.finish(60.0, "search tree golden diff, compatibility, KB order, ranks");
}

// ------------------------------------------------------------ criteria 6,7,8

struct CodesRun {
  PipelineResult pipeline;
  std::vector<VerifySummary> axiom_runs;
  double seconds = 0;
  bool no_high_cuts_in_elim = true;
  bool no_ref_in_collapsed = true;
  bool collapsed_all_below_omega = true;
  bool elim_root_matches = true;
};

CodesRun run_codes(const SuiteOptions& opt) {
  auto start = Clock::now();
  CodesRun out;
  PipelineConfig cfg = PipelineConfig::defaults();
  cfg.fuel = opt.fuel;
  cfg.seed = opt.seed;
  out.pipeline = run_pipeline(cfg);

  // The (C1) pass at d(elim) = 2 is exactly "no traversed cut of height
  // >= 2"; collect it from the verdicts.
  for (const auto& rep : out.pipeline.elim_run.reports)
    for (const auto& v : rep.verdicts)
      if (v.name == "C1" && v.verdict != ProofSystem::Verdict::Pass)
        out.no_high_cuts_in_elim = false;
  for (const auto& rep : out.pipeline.collapsed_run.reports) {
    if (rep.rule.rfind("(ref", 0) == 0) out.no_ref_in_collapsed = false;
    if (rep.height.find("eps(") != std::string::npos ||
        rep.height.find("W^(") != std::string::npos)
      out.collapsed_all_below_omega = false;
  }
  out.elim_root_matches = out.pipeline.elim_root.end_sequent_empty &&
                          out.pipeline.elim_root.cut_rank == 2;

  // the axiom-proof codes, verified with the same traversal plan
  StageUniverse universe = StageUniverse::build(cfg.u, cfg.depth);
  ProofSystem sys(universe, cfg.depth, OrdCNF(cfg.alpha));
  GreedyThetaOracle oracle(sys.kb_base());
  sys.set_oracle(&oracle);
  PipelineConfig axiom_cfg = cfg;
  axiom_cfg.walks = 40;  // nine families; the budget covers all of them
  for (unsigned k = 0; k < 9; ++k) {
    CodeId c = sys.kp_axiom_proof(k);
    out.axiom_runs.push_back(
        verify_code(sys, oracle, c, "axiom-" + std::to_string(k), axiom_cfg));
  }
  out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

const CodesRun& shared_codes_run(const SuiteOptions& opt) {
  static CodesRun* run = new CodesRun(run_codes(opt));
  return *run;
}

CriterionResult criterion6(const SuiteOptions& opt) {
  Battery b(6);
  const CodesRun& run = shared_codes_run(opt);
  size_t conditions = 0, fails = 0, unknowns = 0, edges = 0;
  auto absorb = [&](const VerifySummary& s) {
    conditions += s.conditions;
    fails += s.fails;
    unknowns += s.unknowns;
    edges += s.edge_violations;
  };
  absorb(run.pipeline.basic_run);
  absorb(run.pipeline.elim_run);
  absorb(run.pipeline.collapsed_run);
  for (const auto& s : run.axiom_runs) absorb(s);
  b.expect(fails == 0, "zero (L)/(C)/(H) failures");
  b.expect(edges == 0, "height decreases along every traversed edge");
  b.expect(unknowns * 50 < conditions, "unknown rate below 2%");
  b.note("conditions " + std::to_string(conditions) + ", fails " + std::to_string(fails) +
         ", unknowns " + std::to_string(unknowns));
  b.note("codes run took " + std::to_string(run.seconds) + "s (shared by criteria 6-8)");
  return b.finish(300.0, "node-level local correctness on all code families");
}

CriterionResult criterion7(const SuiteOptions& opt) {
  Battery b(7);
  const CodesRun& run = shared_codes_run(opt);
  b.expect(run.pipeline.elim_root.cut_rank == 2, "d(E^C basic) = 2");
  b.expect(run.no_high_cuts_in_elim, "no traversed cut of height >= 2 in E^C basic");
  b.expect(run.pipeline.elim_root.end_sequent_empty, "empty end-sequent");
  b.expect(run.pipeline.elim_root.height == "eps([])", "height eps_<>");
  return b.finish(300.0, "continuous cut elimination to rank 2");
}

CriterionResult criterion8(const SuiteOptions& opt) {
  Battery b(8);
  const CodesRun& run = shared_codes_run(opt);
  b.expect(run.collapsed_all_below_omega,
           "every traversed node of C_Omega E^C has height below Omega");
  b.expect(run.no_ref_in_collapsed, "no reflection rule appears");
  b.expect(run.pipeline.collapsed_height_matches,
           "root height equals theta(Omega + W^(eps_<>))");
  b.expect(run.pipeline.theta_map_consistent, "oracle map passes check_bh");
  b.expect(run.pipeline.collapsed_run.fails == 0, "no collapsed-stage failures");
  return b.finish(300.0, "collapsing below Omega with the greedy oracle");
}

// ---------------------------------------------------------------- criterion 9

CriterionResult criterion9(const SuiteOptions& opt) {
  Battery b(9);
  StageUniverse u = StageUniverse::build({HFSet::numeral(0), HFSet::numeral(1)}, 2);
  ProofSystem sys(u, 2, OrdCNF(2));
  std::mt19937_64 rng(opt.seed + 9);

  Param m0 = u.marker(0).to_param();
  Param m1 = u.marker(1).to_param();
  auto rand_elem = [&]() {
    const auto& stage = u.stage(2);
    HFSet s = stage[rng() % stage.size()];
    return u.ranked(s).to_param();
  };

  // twenty handcrafted finite preproofs with o < Omega over L_2
  int built = 0;
  for (int i = 0; i < 20; ++i) {
    Param a = rand_elem(), bb = rand_elem();
    Formula in_ab = Formula::in(Term::mk_param(a), Term::mk_param(bb));
    Formula base_true = in_ab.eval_delta0() ? in_ab : in_ab.negate();
    Formula other = Formula::eq(Term::mk_param(m0), Term::mk_param(m1));  // false

    CodeId code;
    switch (i % 5) {
      case 0: code = sys.ax_theta(base_true); break;
      case 1: code = sys.vee(0, base_true, other, sys.ax_theta(base_true)); break;
      case 2:
        code = sys.wedge(base_true, base_true, sys.ax_theta(base_true),
                         sys.ax_theta(base_true));
        break;
      case 3:
        code = sys.vee(1, other, base_true, sys.ax_theta(base_true));
        break;
      default:
        code = sys.vee(0, base_true, other,
                       sys.wedge(base_true, base_true, sys.ax_theta(base_true),
                                 sys.ax_theta(base_true)));
        break;
    }
    ++built;
    Formula witness = sys.sound_eval(code);
    b.expect(sequent_member(sys.label(code), witness), "witness in the end-sequent");
    // verified true by full bounded evaluation
    bool truth = false;
    if (witness.is_delta0() && witness.closed())
      truth = witness.eval_delta0();
    else
      truth = witness.satisfied_in(u.stage(2));
    b.expect(truth, "witness formula is true");
  }
  b.expect(built == 20, "twenty preproofs");

  // a two-rule proof of a disjunction returns the disjunction
  Formula tl = Formula::eq(Term::mk_param(m0), Term::mk_param(m0));
  Formula fr = Formula::in(Term::mk_param(m0), Term::mk_param(m0));
  CodeId disj = sys.vee(0, tl, fr, sys.ax_theta(tl));
  b.expect(sys.sound_eval(disj) == Formula::disj(tl, fr), "disjunction returned");

  // the deliberately empty end-sequent raises EmptyEndSequent
  bool raised = false;
  try {
    sys.sound_eval(sys.ax_unchecked({}));
  } catch (const Error& e) {
    raised = e.kind() == Err::EmptyEndSequent;
  }
  b.expect(raised, "EmptyEndSequent raised");
  return b.finish(10.0, "soundness evaluator below Omega");
}

}  // namespace

CriterionResult run_criterion(int criterion, const SuiteOptions& opt) {
  switch (criterion) {
    case 1: return criterion1(opt);
    case 2: return criterion2(opt);
    case 3: return criterion3(opt);
    case 4: return criterion4(opt);
    case 5: return criterion5(opt);
    case 6: return criterion6(opt);
    case 7: return criterion7(opt);
    case 8: return criterion8(opt);
    case 9: return criterion9(opt);
    default: throw Error(Err::BadInput, "criterion out of range");
  }
}

std::vector<std::string> suite_names() {
  return {"ordinal-laws", "eps-laws", "collapse", "search-tree-golden", "codes-local",
          "pipeline"};
}

namespace {

CriterionResult ordinal_laws(const SuiteOptions& opt) {
  Battery b(0);
  std::mt19937_64 rng(opt.seed + 10);
  std::vector<OrdCNF> xs = {OrdCNF(0)};
  std::vector<OrdCNF> exps = {OrdCNF(0), OrdCNF(1), OrdCNF(2), OrdCNF::omega()};
  for (const auto& e1 : exps)
    for (uint64_t c1 = 1; c1 <= 3; ++c1) {
      xs.push_back(OrdCNF({{e1, c1}}));
      for (const auto& e2 : exps)
        for (uint64_t c2 = 1; c2 <= 3; ++c2)
          if (e2 < e1) xs.push_back(OrdCNF({{e1, c1}, {e2, c2}}));
    }
  for (const auto& a : xs)
    for (const auto& c : xs) {
      auto ac = a.compare(c);
      auto ca = c.compare(a);
      b.expect((ac == std::strong_ordering::less) == (ca == std::strong_ordering::greater),
               "antisymmetry");
    }
  for (int i = 0; i < 3000; ++i) {
    const OrdCNF &a = xs[rng() % xs.size()], &c = xs[rng() % xs.size()],
                 &d = xs[rng() % xs.size()];
    b.expect((a + c) + d == a + (c + d), "associativity");
    if (c < d) b.expect(a + c < a + d, "right monotonicity");
    if (!a.is_zero()) {
      b.expect(OrdCNF::omega_pow(a.star()) <= a, "star lower bound");
      b.expect(a < OrdCNF::omega_pow(a.star().succ()), "star upper bound");
    }
    b.expect((a + c).star() <= OrdCNF::max(a.star(), c.star()), "star subadditivity");
    b.expect(OrdCNF::parse(a.str()) == a, "round trip");
  }
  return b.finish(30.0, "CNF ordinal laws");
}

CriterionResult pipeline_suite(const SuiteOptions& opt) {
  Battery b(0);
  PipelineConfig cfg = PipelineConfig::defaults();
  cfg.fuel = opt.fuel;
  cfg.seed = opt.seed;
  PipelineResult r = run_pipeline(cfg);
  b.expect(r.total_fails() == 0, "no fail verdicts");
  b.expect(r.basic_root.end_sequent_empty, "basic end-sequent empty");
  b.expect(r.elim_root.cut_rank == 2, "elim cut rank 2");
  b.expect(r.collapsed_below_omega, "collapsed height below Omega");
  b.expect(r.collapsed_height_matches, "collapsed height equals the oracle value");
  b.expect(r.theta_map_consistent, "theta map consistent");
  PipelineResult r2 = run_pipeline(cfg);
  b.expect(pipeline_report_json(r) == pipeline_report_json(r2),
           "identical seed gives byte-identical report");
  return b.finish(600.0, "default pipeline");
}

}  // namespace

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
  SuiteResult out;
  out.name = name;
  if (name == "ordinal-laws") {
    out.parts.push_back(ordinal_laws(opt));
  } else if (name == "eps-laws") {
    out.parts.push_back(run_criterion(1, opt));
    out.parts.push_back(run_criterion(2, opt));
  } else if (name == "collapse") {
    out.parts.push_back(run_criterion(3, opt));
    out.parts.push_back(run_criterion(4, opt));
  } else if (name == "search-tree-golden") {
    out.parts.push_back(run_criterion(5, opt));
  } else if (name == "codes-local") {
    out.parts.push_back(run_criterion(6, opt));
    out.parts.push_back(run_criterion(7, opt));
    out.parts.push_back(run_criterion(8, opt));
    out.parts.push_back(run_criterion(9, opt));
  } else if (name == "pipeline") {
    out.parts.push_back(pipeline_suite(opt));
  } else {
    throw Error(Err::UnknownSuite, name);
  }
  out.pass = true;
  for (const auto& p : out.parts) out.pass = out.pass && p.pass;
  return out;
}

std::string search_tree_dump(unsigned stage_alpha, unsigned build_depth, unsigned dump_depth) {
  StageUniverse u = StageUniverse::build({HFSet::numeral(0), HFSet::numeral(1)}, build_depth);
  SearchTree t(u, stage_alpha);
  return dump_tree(t, dump_depth);
}

}  // namespace bhcalc
