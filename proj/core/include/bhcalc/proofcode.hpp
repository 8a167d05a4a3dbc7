// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef BHCALC_PROOFCODE_HPP
#define BHCALC_PROOFCODE_HPP

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bhcalc/collapse.hpp"
#include "bhcalc/searchtree.hpp"

namespace bhcalc {

// A proof-side sequent: the set of its entries (sorted by formula id).
using Sequent = std::vector<Formula>;
Sequent to_sequent(const std::vector<Formula>& ordered);
bool sequent_member(const Sequent& s, Formula f);
bool sequent_subset(const Sequent& a, const Sequent& b);
Sequent sequent_remove(const Sequent& s, Formula f);
Sequent sequent_union(Sequent a, const Sequent& b);
Sequent sequent_add(Sequent a, Formula f);

// An L-rule; quantifier/cut rules carry closed formulas, the existential
// rule also a witness parameter, the repetition rule its premise index.
struct Rule {
  enum class K : uint8_t { Ax, And, Or, All, Ex, Cut, Ref, Rep };
  K k = K::Ax;
  Formula f0, f1;               // And/Or: psi0, psi1; All/Ex/Cut/Ref: the formula
  int or_i = 0;                 // Or
  std::optional<Param> elem;    // Ex witness, Rep premise

  // Parameter bound k(r): |a| for (Ex,a,.) and (rep,a), k(psi) for cuts.
  OrdCNF param_bound() const;
  std::string display() const;
  Sexpr to_sexpr() const;
};

// Relevant premises iota(r).
struct Iota {
  enum class K : uint8_t { None, M0, M01, AllElems, Single } k = K::None;
  std::optional<Param> single;
};
Iota iota_of(const Rule& r);

using CodeId = int32_t;

// The code system: a hash-consed term algebra whose terms denote preproofs.
// Labels, rules, heights, cut ranks and operator assignments are computed
// by structural recursion with memoization; children are computed on
// demand, so the denoted trees are never materialized.
class ProofSystem {
 public:
  // tree_alpha: the alphabet stage of the search tree (and of forall
  // branching); eps_alpha: the index of the ambient term system (>= 2).
  ProofSystem(const StageUniverse& universe, unsigned tree_alpha, OrdCNF eps_alpha);

  SearchTree& tree() { return tree_; }
  KbBase& kb_base() { return kb_; }
  const StageUniverse& universe() const { return *universe_; }
  const AxiomList& axioms() const { return tree_.axioms(); }
  const OrdCNF& eps_alpha() const { return eps_alpha_; }
  static constexpr unsigned kBasicCutRank = AxiomList::kParamBound + 6;  // C

  // The theta oracle used by collapsing codes (required for Ct heights).
  void set_oracle(GreedyThetaOracle* oracle) { oracle_ = oracle; }
  GreedyThetaOracle* oracle() const { return oracle_; }

  // Constructors -----------------------------------------------------------
  CodeId basic(const Path& p);
  CodeId axiom_root(unsigned k, const Path& suffix);   // kp_axiom_proof(k) at a node
  CodeId kp_axiom_proof(unsigned k) { return axiom_root(k, {}); }
  CodeId inv_all(Formula all_psi, const Param& b, CodeId p);
  CodeId inv_and(Formula conj_psi, int i, CodeId p);
  CodeId red_ex(Formula ex_psi, CodeId p0, CodeId p1);  // hth > 1 required
  CodeId red_or(Formula or_psi, CodeId p0, CodeId p1);
  CodeId elim(CodeId p);                                // E
  CodeId elim_iter(CodeId p, unsigned iterations);      // E^C
  CodeId ax_theta(Formula theta);                       // theta must be true Delta0
  CodeId ax_unchecked(Sequent label);                   // raw axiom node (tests, CLI input)
  CodeId wedge(Formula f0, Formula f1, CodeId p0, CodeId p1);
  CodeId vee(int i, Formula f0, Formula f1, CodeId p);
  CodeId bound_ex(Formula sigma_phi, const OrdCNF& beta, CodeId p);
  CodeId bound_all(Formula pi_psi, const OrdCNF& beta, CodeId p);
  CodeId collapse_code(const EpsTerm& t, CodeId p);     // C_t, Omega <= t

  // Recursions --------------------------------------------------------------
  const Sequent& label(CodeId c);     // l<>
  const Rule& rule(CodeId c);         // r<>
  const EpsTerm& height(CodeId c);    // o<>
  unsigned cut_rank(CodeId c);        // d
  const EpsTerm& h0(CodeId c);
  const OrdCNF& h1(CodeId c);
  std::pair<EpsTerm, OrdCNF> h_pair(CodeId c) { return {h0(c), h1(c)}; }
  OrdCNF k_bound(CodeId c);           // k<>(P)
  Iota iota(CodeId c) { return iota_of(rule(c)); }

  // n(P,a); IrrelevantPremise when a is not in iota(r(P)).
  CodeId child(CodeId c, const RankedElem& a);
  bool premise_ok(const Rule& r, const RankedElem& a);
  // n-bar(P, sigma); PathNotInTree when some step is irrelevant.
  CodeId walk(CodeId c, const Path& sigma);
  // The interpreted preproof node at sigma.
  struct PreproofNode {
    CodeId code;
    Path path;
    Sequent label;
    Rule rule;
    EpsTerm height;
  };
  PreproofNode interpret(CodeId c, const Path& sigma);
  // The premise elements of a node, enumerated (for walks and checks).
  std::vector<RankedElem> premise_elems(CodeId c);

  // Whether a Ct code with the given subcode falls under the intended case
  // (Sigma end-sequent, cut rank <= 2, h0(p) <= t).
  bool ct_intended(const EpsTerm& t, CodeId p);
  bool bex_intended(const OrdCNF& beta, CodeId p);

  // Node-level verification --------------------------------------------------
  enum class Verdict : uint8_t { Pass, Fail, Unknown };
  struct Condition {
    std::string name;
    Verdict verdict;
    std::string detail;
  };
  struct CheckReport {
    std::vector<Condition> conditions;
    bool failed() const;
    bool unknown() const;
  };
  // Conditions (L), (C1), (C2) and, when an oracle is set, (H1)-(H3).
  CheckReport check_local(CodeId c, uint64_t fuel = 10000);

  // Soundness below Omega: returns a formula of the end-sequent true in the
  // structure (L_m, in) for m = universe depth. EmptyEndSequent on dead
  // ends; UnboundedBranching when forall branching cannot be enumerated.
  Formula sound_eval(CodeId c);

  // Serialization of codes.
  Sexpr code_to_sexpr(CodeId c);
  CodeId code_from_sexpr(const Sexpr& s);
  std::string code_display(CodeId c);

 private:
  struct Node {
    enum class K : uint8_t {
      Basic, AxRoot, IAll, IAnd, REx, ROr, E, AxTheta, AxRaw, Wedge, Vee, BEx, BAll, Ct
    };
    K k = K::Basic;
    int path = -1;  // Basic/AxRoot (suffix for AxRoot)
    unsigned axk = 0;
    Formula f, g;
    int i = 0;
    std::optional<Param> b;
    OrdCNF beta;
    EpsTerm t;
    CodeId c0 = -1, c1 = -1;
    Sequent raw;

    uint64_t hash_value() const;
    bool same(const Node& o) const;
  };

  CodeId intern(Node n);
  const Node& node(CodeId c) const { return nodes_[static_cast<size_t>(c)]; }
  OrdCNF theta_of(const EpsTerm& t);
  EpsTerm ct_query_term(const EpsTerm& t, CodeId p);  // t + W^(o(p))

  // the concrete preproof P_alpha^u (search tree + axiom proofs)
  struct ConcreteInfo {
    bool in_tree = false;
    std::vector<Formula> label;
    Rule rule;
    EpsTerm height;
  };
  // paths are taken by value: the callees intern new paths, which may grow
  // the pool a caller-supplied reference would point into
  ConcreteInfo basic_info(Path p, bool want_rule = true);
  ConcreteInfo axiom_info(unsigned k, Path suffix);
  ConcreteInfo separation_info(unsigned k, const Path& suffix);
  ConcreteInfo collection_info(unsigned k, const Path& suffix);

  const StageUniverse* universe_;
  OrdCNF eps_alpha_;
  SearchTree tree_;
  KbBase kb_;
  GreedyThetaOracle* oracle_ = nullptr;

  std::deque<Node> nodes_;
  std::unordered_multimap<uint64_t, CodeId> index_;
  // memo slots (deques: references stay valid while the pools grow)
  std::deque<std::optional<Sequent>> label_;
  std::deque<std::optional<Rule>> rule_;
  std::deque<std::optional<EpsTerm>> height_;
  std::deque<std::optional<unsigned>> d_;
  std::deque<std::optional<EpsTerm>> h0_;
  std::deque<std::optional<OrdCNF>> h1_;
  // heights and rules computed against a recording oracle carry placeholder
  // theta values; they are marked stale and recomputed on the next pass
  std::deque<bool> height_stale_;
  std::deque<bool> rule_stale_;
};

}  // namespace bhcalc

#endif  // BHCALC_PROOFCODE_HPP
