// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "bhcalc/proofcode.hpp"

#include <algorithm>

namespace bhcalc {

// Sequents --------------------------------------------------------------------

Sequent to_sequent(const std::vector<Formula>& ordered) {
  Sequent s = ordered;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

bool sequent_member(const Sequent& s, Formula f) {
  return std::binary_search(s.begin(), s.end(), f);
}

bool sequent_subset(const Sequent& a, const Sequent& b) {
  for (Formula f : a)
    if (!sequent_member(b, f)) return false;
  return true;
}

Sequent sequent_remove(const Sequent& s, Formula f) {
  Sequent out;
  for (Formula g : s)
    if (g != f) out.push_back(g);
  return out;
}

Sequent sequent_union(Sequent a, const Sequent& b) {
  a.insert(a.end(), b.begin(), b.end());
  return to_sequent(a);
}

Sequent sequent_add(Sequent a, Formula f) {
  a.push_back(f);
  return to_sequent(a);
}

// Rules -----------------------------------------------------------------------

OrdCNF Rule::param_bound() const {
  switch (k) {
    case K::Ex:
    case K::Rep: return elem ? elem->rank : OrdCNF();
    case K::Cut: return f0.param_bound();
    default: return OrdCNF();
  }
}

std::string Rule::display() const {
  switch (k) {
    case K::Ax: return "ax";
    case K::And: return "(and " + f0.display() + " , " + f1.display() + ")";
    case K::Or: return "(or" + std::to_string(or_i) + " " + f0.display() + " , " + f1.display() + ")";
    case K::All: return "(all " + f0.display() + ")";
    case K::Ex: return "(ex " + (elem ? elem->display() : "?") + " " + f0.display() + ")";
    case K::Cut: return "(cut " + f0.display() + ")";
    case K::Ref: return "(ref " + f0.display() + ")";
    case K::Rep: return "(rep " + (elem ? elem->display() : "?") + ")";
  }
  return "?";
}

Sexpr Rule::to_sexpr() const {
  Sexpr s = Sexpr::make_list();
  switch (k) {
    case K::Ax: s.add_atom("ax"); break;
    case K::And: s.add_atom("rule-and").add(f0.to_sexpr()).add(f1.to_sexpr()); break;
    case K::Or:
      s.add_atom("rule-or").add_atom(std::to_string(or_i)).add(f0.to_sexpr()).add(f1.to_sexpr());
      break;
    case K::All: s.add_atom("rule-all").add(f0.to_sexpr()); break;
    case K::Ex: s.add_atom("rule-ex").add(elem->to_sexpr()).add(f0.to_sexpr()); break;
    case K::Cut: s.add_atom("rule-cut").add(f0.to_sexpr()); break;
    case K::Ref: s.add_atom("rule-ref").add(f0.to_sexpr()); break;
    case K::Rep: s.add_atom("rule-rep").add(elem->to_sexpr()); break;
  }
  return s;
}

Iota iota_of(const Rule& r) {
  Iota io;
  switch (r.k) {
    case Rule::K::Ax: io.k = Iota::K::None; break;
    case Rule::K::And:
    case Rule::K::Cut: io.k = Iota::K::M01; break;
    case Rule::K::Or:
    case Rule::K::Ex:
    case Rule::K::Ref: io.k = Iota::K::M0; break;
    case Rule::K::All: io.k = Iota::K::AllElems; break;
    case Rule::K::Rep:
      io.k = Iota::K::Single;
      io.single = r.elem;
      break;
  }
  return io;
}

// Code nodes ------------------------------------------------------------------

uint64_t ProofSystem::Node::hash_value() const {
  uint64_t h = static_cast<uint64_t>(k) * 0x9e3779b97f4a7c15ull;
  auto mix = [&](uint64_t x) { h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
  mix(static_cast<uint64_t>(path) + 1);
  mix(axk);
  mix(f.valid() ? f.id() : 0xffffffffu);
  mix(g.valid() ? g.id() : 0xffffffffu);
  mix(static_cast<uint64_t>(i));
  mix(b ? b->hash() : 0);
  mix(beta.hash());
  mix(t.hash());
  mix(static_cast<uint64_t>(c0) + 1);
  mix(static_cast<uint64_t>(c1) + 1);
  for (Formula x : raw) mix(x.id());
  return h;
}

bool ProofSystem::Node::same(const Node& o) const {
  return k == o.k && path == o.path && axk == o.axk && f == o.f && g == o.g && i == o.i &&
         ((!b && !o.b) || (b && o.b && *b == *o.b)) && beta == o.beta && eps_equal(t, o.t) &&
         c0 == o.c0 && c1 == o.c1 && raw == o.raw;
}

ProofSystem::ProofSystem(const StageUniverse& universe, unsigned tree_alpha, OrdCNF eps_alpha)
    : universe_(&universe), eps_alpha_(std::move(eps_alpha)), tree_(universe, tree_alpha),
      kb_(tree_) {
  if (eps_alpha_ < OrdCNF(2))
    throw Error(Err::BadInput, "the ambient term index must be at least 2");
}

CodeId ProofSystem::intern(Node n) {
  uint64_t h = n.hash_value();
  auto range = index_.equal_range(h);
  for (auto it = range.first; it != range.second; ++it)
    if (nodes_[static_cast<size_t>(it->second)].same(n)) return it->second;
  CodeId id = static_cast<CodeId>(nodes_.size());
  nodes_.push_back(std::move(n));
  index_.emplace(h, id);
  label_.emplace_back();
  rule_.emplace_back();
  height_.emplace_back();
  d_.emplace_back();
  h0_.emplace_back();
  h1_.emplace_back();
  height_stale_.push_back(false);
  rule_stale_.push_back(false);
  return id;
}

// Constructors ----------------------------------------------------------------

CodeId ProofSystem::basic(const Path& p) {
  Node n;
  n.k = Node::K::Basic;
  n.path = tree_.intern_path(p);
  return intern(std::move(n));
}

CodeId ProofSystem::axiom_root(unsigned k, const Path& suffix) {
  Node n;
  n.k = Node::K::AxRoot;
  n.axk = k;
  n.path = tree_.intern_path(suffix);
  return intern(std::move(n));
}

CodeId ProofSystem::inv_all(Formula all_psi, const Param& b, CodeId p) {
  if (all_psi.kind() != FKind::All) throw Error(Err::BadInput, "inv_all needs a universal formula");
  Node n;
  n.k = Node::K::IAll;
  n.f = all_psi;
  n.b = b;
  n.c0 = p;
  return intern(std::move(n));
}

CodeId ProofSystem::inv_and(Formula conj_psi, int i, CodeId p) {
  if (conj_psi.kind() != FKind::And) throw Error(Err::BadInput, "inv_and needs a conjunction");
  Node n;
  n.k = Node::K::IAnd;
  n.f = conj_psi;
  n.i = i;
  n.c0 = p;
  return intern(std::move(n));
}

CodeId ProofSystem::red_ex(Formula ex_psi, CodeId p0, CodeId p1) {
  if (ex_psi.kind() != FKind::Ex || ex_psi.hth() <= 1)
    throw Error(Err::BadInput, "red_ex needs an existential formula of height > 1");
  Node n;
  n.k = Node::K::REx;
  n.f = ex_psi;
  n.c0 = p0;
  n.c1 = p1;
  return intern(std::move(n));
}

CodeId ProofSystem::red_or(Formula or_psi, CodeId p0, CodeId p1) {
  if (or_psi.kind() != FKind::Or || or_psi.hth() <= 1)
    throw Error(Err::BadInput, "red_or needs a disjunction of height > 1");
  Node n;
  n.k = Node::K::ROr;
  n.f = or_psi;
  n.c0 = p0;
  n.c1 = p1;
  return intern(std::move(n));
}

CodeId ProofSystem::elim(CodeId p) {
  Node n;
  n.k = Node::K::E;
  n.c0 = p;
  return intern(std::move(n));
}

CodeId ProofSystem::elim_iter(CodeId p, unsigned iterations) {
  CodeId c = p;
  for (unsigned i = 0; i < iterations; ++i) c = elim(c);
  return c;
}

CodeId ProofSystem::ax_theta(Formula theta) {
  if (!theta.is_delta0() || !theta.closed() || !theta.eval_delta0())
    throw Error(Err::BadInput, "ax_theta needs a true closed Delta0 formula");
  Node n;
  n.k = Node::K::AxTheta;
  n.f = theta;
  return intern(std::move(n));
}

CodeId ProofSystem::ax_unchecked(Sequent label) {
  Node n;
  n.k = Node::K::AxRaw;
  n.raw = std::move(label);
  return intern(std::move(n));
}

CodeId ProofSystem::wedge(Formula f0, Formula f1, CodeId p0, CodeId p1) {
  Node n;
  n.k = Node::K::Wedge;
  n.f = f0;
  n.g = f1;
  n.c0 = p0;
  n.c1 = p1;
  return intern(std::move(n));
}

CodeId ProofSystem::vee(int i, Formula f0, Formula f1, CodeId p) {
  Node n;
  n.k = Node::K::Vee;
  n.f = f0;
  n.g = f1;
  n.i = i;
  n.c0 = p;
  return intern(std::move(n));
}

CodeId ProofSystem::bound_ex(Formula sigma_phi, const OrdCNF& beta, CodeId p) {
  if (!sigma_phi.is_sigma()) throw Error(Err::BadInput, "bound_ex needs a Sigma formula");
  Node n;
  n.k = Node::K::BEx;
  n.f = sigma_phi;
  n.beta = beta;
  n.c0 = p;
  return intern(std::move(n));
}

CodeId ProofSystem::bound_all(Formula pi_psi, const OrdCNF& beta, CodeId p) {
  if (!pi_psi.is_pi1())
    throw Error(Err::BadInput, "bound_all needs an unbounded Pi1 formula");
  Node n;
  n.k = Node::K::BAll;
  n.f = pi_psi;
  n.beta = beta;
  n.c0 = p;
  return intern(std::move(n));
}

CodeId ProofSystem::collapse_code(const EpsTerm& t, CodeId p) {
  if (eps_compare(eps_Omega(), t, kb_) == std::strong_ordering::greater)
    throw Error(Err::BadInput, "collapse_code needs Omega <= t");
  Node n;
  n.k = Node::K::Ct;
  n.t = t;
  n.c0 = p;
  return intern(std::move(n));
}

// The concrete preproof P_alpha^u ----------------------------------------------

ProofSystem::ConcreteInfo ProofSystem::basic_info(Path p, bool want_rule) {
  // Split the path into a search-tree part and an optional axiom-proof
  // suffix entered via child 1 of an even node.
  const RankedElem m1 = universe_->marker(1);
  Path st;
  for (size_t i = 0; i < p.size(); ++i) {
    const SearchTree::Node& n = tree_.node(st);
    if (!n.in_tree) break;
    bool even = st.size() % 2 == 0;
    if (even && p[i] == m1 && !(n.kind == SearchTree::NodeKind::Leaf)) {
      Path suffix(p.begin() + static_cast<long>(i) + 1, p.end());
      ConcreteInfo info = axiom_info(n.axiom_index, suffix);
      return info;
    }
    if (!tree_.child_valid(st, p[i])) {
      ConcreteInfo out;  // out of tree
      return out;
    }
    st.push_back(p[i]);
  }
  if (st.size() != p.size() || !tree_.node(p).in_tree) return {};
  const SearchTree::Node& n = tree_.node(p);
  ConcreteInfo out;
  out.in_tree = true;
  out.label = n.label;
  out.height = EpsTerm::eps(tree_.intern_path(p));
  switch (n.kind) {
    case SearchTree::NodeKind::Even:
      out.rule.k = Rule::K::Cut;
      out.rule.f0 = axioms().axiom(n.axiom_index).negate();
      break;
    case SearchTree::NodeKind::Leaf: out.rule.k = Rule::K::Ax; break;
    case SearchTree::NodeKind::Repetition:
      out.rule.k = Rule::K::Rep;
      out.rule.elem = universe_->marker(0).to_param();
      break;
    case SearchTree::NodeKind::RedexAnd: {
      Formula phi = n.label[static_cast<size_t>(n.redex)];
      out.rule.k = Rule::K::And;
      out.rule.f0 = phi.child0();
      out.rule.f1 = phi.child1();
      break;
    }
    case SearchTree::NodeKind::RedexOr: {
      Formula phi = n.label[static_cast<size_t>(n.redex)];
      bool have0 = std::find(n.label.begin(), n.label.end(), phi.child0()) != n.label.end();
      out.rule.k = Rule::K::Or;
      out.rule.or_i = have0 ? 1 : 0;
      out.rule.f0 = phi.child0();
      out.rule.f1 = phi.child1();
      break;
    }
    case SearchTree::NodeKind::RedexAll: {
      out.rule.k = Rule::K::All;
      out.rule.f0 = n.label[static_cast<size_t>(n.redex)];
      break;
    }
    case SearchTree::NodeKind::RedexEx: {
      out.rule.k = Rule::K::Ex;
      out.rule.f0 = n.label[static_cast<size_t>(n.redex)];
      // The witness scan can exhaust the finite pool at the deepest
      // reachable nodes; labels and heights stay available without it.
      if (want_rule) {
        tree_.expand(p);  // forces the witness choice
        out.rule.elem = tree_.node(p).witness->to_param();
      }
      break;
    }
  }
  return out;
}

namespace {

EpsTerm plus_ord(const EpsTerm& base_term, const OrdCNF& o, const OrdCNF& alpha,
                 const RankedBase& kb) {
  return eps_add(base_term, EpsTerm::embed_ord(o), alpha, kb);
}

}  // namespace

ProofSystem::ConcreteInfo ProofSystem::axiom_info(unsigned k, Path suffix) {
  AxiomList::Info info = axioms().info(k);
  if (info.scheme == AxiomList::Scheme::Separation) return separation_info(k, suffix);
  if (info.scheme == AxiomList::Scheme::Collection) return collection_info(k, suffix);

  const RankedElem m0 = universe_->marker(0);
  ConcreteInfo out;
  auto alphabet_ok = [&](const RankedElem& e) {
    return universe_->in_stage(e.set, tree_.alpha()) && e.stage == universe_->rank_of(e.set);
  };
  // universal prefix lengths and the existential tail per axiom
  unsigned foralls = k == 0 ? 4 : k == 1 ? 2 : k == 2 ? 2 : k == 3 ? 1 : 0;
  bool has_ex = k >= 2;
  Formula cur = axioms().axiom(k);
  size_t i = 0;
  for (; i < suffix.size() && i < foralls; ++i) {
    if (!alphabet_ok(suffix[i])) return out;
    cur = cur.instantiate(suffix[i].to_param());
  }
  if (suffix.size() <= foralls) {
    out.in_tree = true;
    out.label = {cur};
    if (suffix.size() < foralls) {
      out.rule.k = Rule::K::All;
      out.rule.f0 = cur;
      OrdCNF o = OrdCNF::omega_times(foralls - static_cast<unsigned>(suffix.size()));
      out.height = has_ex ? plus_ord(eps_Omega(), o, eps_alpha_, kb_) : EpsTerm::embed_ord(o);
      return out;
    }
    // at the existential node (or the axiom leaf for k = 0, 1)
    if (!has_ex) {
      out.rule.k = Rule::K::Ax;
      out.height = EpsTerm::zero();
      return out;
    }
    Param witness = Param::of_omega();
    if (k == 2) {
      HFSet pair = HFSet::pair(suffix[0].set, suffix[1].set);
      witness = Param::of_set(pair, universe_->rank_extended(pair));
    } else if (k == 3) {
      HFSet un = suffix[0].set.union_all();
      witness = Param::of_set(un, universe_->rank_extended(un));
    }
    out.rule.k = Rule::K::Ex;
    out.rule.f0 = cur;
    out.rule.elem = witness;
    out.height = eps_Omega();
    return out;
  }
  // below the existential node: the single axiom leaf
  if (!has_ex || suffix.size() != foralls + 1 || !(suffix.back() == m0)) return out;
  for (size_t j = 0; j < foralls; ++j)
    if (!alphabet_ok(suffix[j])) return out;
  Param witness = Param::of_omega();
  if (k == 2) {
    HFSet pair = HFSet::pair(suffix[0].set, suffix[1].set);
    witness = Param::of_set(pair, universe_->rank_extended(pair));
  } else if (k == 3) {
    HFSet un = suffix[0].set.union_all();
    witness = Param::of_set(un, universe_->rank_extended(un));
  }
  out.in_tree = true;
  out.label = {cur.instantiate(witness)};
  out.rule.k = Rule::K::Ax;
  out.height = EpsTerm::zero();
  return out;
}

ProofSystem::ConcreteInfo ProofSystem::separation_info(unsigned k, const Path& suffix) {
  AxiomList::Info info = axioms().info(k);
  unsigned j = info.params;
  const RankedElem m0 = universe_->marker(0);
  ConcreteInfo out;
  auto alphabet_ok = [&](const RankedElem& e) {
    return universe_->in_stage(e.set, tree_.alpha()) && e.stage == universe_->rank_of(e.set);
  };

  Formula cur = axioms().axiom(k);
  size_t quant = j + 1;  // the v's and x
  size_t i = 0;
  for (; i < suffix.size() && i < quant; ++i) {
    if (!alphabet_ok(suffix[i])) return out;
    cur = cur.instantiate(suffix[i].to_param());
  }
  if (suffix.size() < quant) {
    out.in_tree = true;
    out.label = {cur};
    out.rule.k = Rule::K::All;
    out.rule.f0 = cur;
    out.height = plus_ord(eps_Omega(), OrdCNF::omega_times(quant - suffix.size()), eps_alpha_, kb_);
    return out;
  }
  // compute the separation witness b = { z in a | theta(a, z, c...) }
  const RankedElem& a = suffix[quant - 1];
  Formula exbody = cur.child0();                       // under Ey
  Formula first = exbody.child0();                     // Az in y (z in x & theta)
  Formula theta_z = first.child0().child1().child1();  // free Var0 = z
  std::vector<HFSet> chosen;
  for (HFSet z : a.set.elements())
    if (theta_z.substitute_keep(0, Param::of_set_unranked(z)).eval_delta0()) chosen.push_back(z);
  HFSet bset = HFSet::make(std::move(chosen));
  Param b = Param::of_set(bset, universe_->rank_extended(bset));

  if (suffix.size() == quant) {
    out.in_tree = true;
    out.label = {cur};
    out.rule.k = Rule::K::Ex;
    out.rule.f0 = cur;
    out.rule.elem = b;
    out.height = eps_Omega();
    return out;
  }
  if (suffix.size() == quant + 1 && suffix.back() == m0) {
    out.in_tree = true;
    out.label = {cur.instantiate(b)};
    out.rule.k = Rule::K::Ax;
    out.height = EpsTerm::zero();
    return out;
  }
  return out;
}

ProofSystem::ConcreteInfo ProofSystem::collection_info(unsigned k, const Path& suffix) {
  AxiomList::Info info = axioms().info(k);
  unsigned j = info.params;
  const RankedElem m0 = universe_->marker(0);
  const RankedElem m1 = universe_->marker(1);
  ConcreteInfo out;
  auto alphabet_ok = [&](const RankedElem& e) {
    return universe_->in_stage(e.set, tree_.alpha()) && e.stage == universe_->rank_of(e.set);
  };

  Formula cur = axioms().axiom(k);
  size_t quant = j + 1;  // the v's and w
  size_t i = 0;
  for (; i < suffix.size() && i < quant; ++i) {
    if (!alphabet_ok(suffix[i])) return out;
    cur = cur.instantiate(suffix[i].to_param());
  }
  if (suffix.size() < quant) {
    out.in_tree = true;
    out.label = {cur};
    out.rule.k = Rule::K::All;
    out.rule.f0 = cur;
    out.height = plus_ord(eps_Omega(),
                          OrdCNF::omega_times(3 + static_cast<unsigned>(quant - suffix.size())),
                          eps_alpha_, kb_);
    return out;
  }

  const Param d = suffix[quant - 1].to_param();
  Formula L = cur.child0();
  Formula R = cur.child1();
  Formula negtheta_xy = L.child0().child1().child0();  // free y = Var0, x = Var1
  Formula theta_xy = negtheta_xy.negate();
  Term dterm = Term::mk_param(d);
  Formula bounded_allex = Formula::all_in(dterm, Formula::ex(theta_xy));

  auto omega_h = [&](unsigned mult, unsigned add) {
    return plus_ord(eps_Omega(), OrdCNF::omega_times(mult) + OrdCNF(add), eps_alpha_, kb_);
  };

  size_t rel = suffix.size() - quant;  // steps below the (v..., w) prefix
  // rel 0: (or1 L R); 1: (or0 L R); 2: (ref R); 3: (all x!in d | Ey th);
  // then an alphabet entry a at rel 4; 4: (or1 a!in d, Ey th(a)); 5: (or0);
  // 6: (ex a L); 7: (and a in d, Ay ~th(a)); 8: leaf (m0) or (all Ay ~th(a))
  // (m1); then b at rel 9; 9: (ex b, Ey th(a)); 10: leaf.
  auto check_m0 = [&](size_t at) { return suffix[quant + at] == m0; };

  Param a;
  Formula exth_a, allneg_a, a_in_d, a_nin_d, or_form, psiL_a;
  if (rel >= 4) {
    // entries at rel positions 0,1,2 must be markers
    if (!check_m0(0) || !check_m0(1) || !check_m0(2)) return out;
    if (!alphabet_ok(suffix[quant + 3])) return out;
    a = suffix[quant + 3].to_param();
    psiL_a = L.instantiate(a);
    a_in_d = psiL_a.child0();
    allneg_a = psiL_a.child1();
    a_nin_d = a_in_d.negate();
    exth_a = Formula::ex(theta_xy.substitute_keep(1, a));
    or_form = Formula::disj(a_nin_d, exth_a);
  }
  Param bprm;
  Formula th_ab, negth_ab;
  if (rel >= 10) {
    if (!alphabet_ok(suffix[quant + 8])) return out;
    bprm = suffix[quant + 8].to_param();
    th_ab = theta_xy.substitute_keep(1, a).substitute_keep(0, bprm);
    negth_ab = th_ab.negate();
  }

  out.in_tree = true;
  switch (rel) {
    case 0:
      out.label = {cur};
      out.rule = {Rule::K::Or, L, R, 1, std::nullopt};
      out.height = omega_h(3, 3);
      return out;
    case 1:
      if (!check_m0(0)) break;
      out.label = {R, cur};
      out.rule = {Rule::K::Or, L, R, 0, std::nullopt};
      out.height = omega_h(3, 2);
      return out;
    case 2:
      if (!check_m0(0) || !check_m0(1)) break;
      out.label = {L, R};
      out.rule = {Rule::K::Ref, R, Formula(), 0, std::nullopt};
      out.height = omega_h(3, 1);
      return out;
    case 3:
      if (!check_m0(0) || !check_m0(1) || !check_m0(2)) break;
      out.label = {L, bounded_allex};
      out.rule = {Rule::K::All, bounded_allex, Formula(), 0, std::nullopt};
      out.height = omega_h(3, 0);
      return out;
    case 4:
      out.label = {L, or_form};
      out.rule = {Rule::K::Or, a_nin_d, exth_a, 1, std::nullopt};
      out.height = omega_h(2, 2);
      return out;
    case 5:
      if (!check_m0(4)) break;
      out.label = {L, exth_a, or_form};
      out.rule = {Rule::K::Or, a_nin_d, exth_a, 0, std::nullopt};
      out.height = omega_h(2, 1);
      return out;
    case 6:
      if (!check_m0(4) || !check_m0(5)) break;
      out.label = {L, a_nin_d, exth_a};
      out.rule = {Rule::K::Ex, L, Formula(), 0, a};
      out.height = omega_h(2, 0);
      return out;
    case 7:
      if (!check_m0(4) || !check_m0(5) || !check_m0(6)) break;
      out.label = {psiL_a, a_nin_d, exth_a};
      out.rule = {Rule::K::And, a_in_d, allneg_a, 0, std::nullopt};
      out.height = omega_h(1, 1);
      return out;
    case 8: {
      if (!check_m0(4) || !check_m0(5) || !check_m0(6)) break;
      const RankedElem& step = suffix[quant + 7];
      if (step == m0) {
        out.label = {a_in_d, a_nin_d, exth_a};
        out.rule.k = Rule::K::Ax;
        out.height = EpsTerm::zero();
        return out;
      }
      if (step == m1) {
        out.label = {allneg_a, a_nin_d, exth_a};
        out.rule = {Rule::K::All, allneg_a, Formula(), 0, std::nullopt};
        out.height = omega_h(1, 0);
        return out;
      }
      break;
    }
    case 9: {
      if (!check_m0(4) || !check_m0(5) || !check_m0(6) || !(suffix[quant + 7] == m1)) break;
      out.label = {negth_ab, a_nin_d, exth_a};
      out.rule = {Rule::K::Ex, exth_a, Formula(), 0, bprm};
      out.height = eps_Omega();
      return out;
    }
    case 10: {
      if (!check_m0(4) || !check_m0(5) || !check_m0(6) || !(suffix[quant + 7] == m1) ||
          !check_m0(9))
        break;
      out.label = {negth_ab, a_nin_d, th_ab};
      out.rule.k = Rule::K::Ax;
      out.height = EpsTerm::zero();
      return out;
    }
    default: break;
  }
  out = ConcreteInfo{};
  return out;
}

}  // namespace bhcalc

namespace bhcalc {

// Recursions -------------------------------------------------------------------

OrdCNF ProofSystem::theta_of(const EpsTerm& t) {
  if (!oracle_) throw Error(Err::OracleGap, "no theta oracle attached");
  return oracle_->theta(t);
}

EpsTerm ProofSystem::ct_query_term(const EpsTerm& t, CodeId p) {
  return eps_add(t, eps_omega_pow(height(p)), eps_alpha_, kb_);
}

bool ProofSystem::bex_intended(const OrdCNF& beta, CodeId p) {
  return eps_compare(height(p), EpsTerm::embed_ord(beta), kb_) != std::strong_ordering::greater;
}

bool ProofSystem::ct_intended(const EpsTerm& t, CodeId p) {
  if (cut_rank(p) > 2) return false;
  if (eps_compare(h0(p), t, kb_) == std::strong_ordering::greater) return false;
  for (Formula f : label(p))
    if (!f.is_sigma()) return false;
  return true;
}

const Sequent& ProofSystem::label(CodeId c) {
  auto& slot = label_[static_cast<size_t>(c)];
  if (slot) return *slot;
  const Node n = node(c);
  Sequent out;
  switch (n.k) {
    case Node::K::Basic: {
      ConcreteInfo ci = basic_info(tree_.path_of(n.path), /*want_rule=*/false);
      if (!ci.in_tree) {
        Formula zeq = Formula::eq(Term::mk_param(universe_->marker(0).to_param()),
                                  Term::mk_param(universe_->marker(0).to_param()));
        out = {zeq};
      } else {
        out = to_sequent(ci.label);
      }
      break;
    }
    case Node::K::AxRoot: {
      ConcreteInfo ci = axiom_info(n.axk, tree_.path_of(n.path));
      if (!ci.in_tree) {
        Formula zeq = Formula::eq(Term::mk_param(universe_->marker(0).to_param()),
                                  Term::mk_param(universe_->marker(0).to_param()));
        out = {zeq};
      } else {
        out = to_sequent(ci.label);
      }
      break;
    }
    case Node::K::IAll:
      out = sequent_add(sequent_remove(label(n.c0), n.f), n.f.instantiate(*n.b));
      break;
    case Node::K::IAnd:
      out = sequent_add(sequent_remove(label(n.c0), n.f),
                        n.i == 0 ? n.f.child0() : n.f.child1());
      break;
    case Node::K::REx:
      out = sequent_union(sequent_remove(label(n.c0), n.f),
                          sequent_remove(label(n.c1), n.f.negate()));
      break;
    case Node::K::ROr:
      out = sequent_union(sequent_remove(label(n.c0), n.f),
                          sequent_remove(label(n.c1), n.f.negate()));
      break;
    case Node::K::E: out = label(n.c0); break;
    case Node::K::AxTheta: out = {n.f}; break;
    case Node::K::AxRaw: out = n.raw; break;
    case Node::K::Wedge:
      out = sequent_add(sequent_union(sequent_remove(label(n.c0), n.f),
                                      sequent_remove(label(n.c1), n.g)),
                        Formula::conj(n.f, n.g));
      break;
    case Node::K::Vee:
      out = sequent_add(sequent_remove(label(n.c0), n.i == 0 ? n.f : n.g),
                        Formula::disj(n.f, n.g));
      break;
    case Node::K::BEx:
      if (bex_intended(n.beta, n.c0))
        out = sequent_add(sequent_remove(label(n.c0), n.f),
                          n.f.relativize(universe_->stage_param(n.beta)));
      else
        out = label(n.c0);
      break;
    case Node::K::BAll:
      out = sequent_add(sequent_remove(label(n.c0), n.f),
                        n.f.relativize(universe_->stage_param(n.beta)));
      break;
    case Node::K::Ct: out = label(n.c0); break;
  }
  slot = std::move(out);
  return *slot;
}

const EpsTerm& ProofSystem::height(CodeId c) {
  auto& slot = height_[static_cast<size_t>(c)];
  if (slot && !height_stale_[static_cast<size_t>(c)]) return *slot;
  const Node n = node(c);
  EpsTerm out;
  switch (n.k) {
    case Node::K::Basic: {
      ConcreteInfo ci = basic_info(tree_.path_of(n.path), /*want_rule=*/false);
      out = ci.in_tree ? ci.height : EpsTerm::zero();
      break;
    }
    case Node::K::AxRoot: {
      ConcreteInfo ci = axiom_info(n.axk, tree_.path_of(n.path));
      out = ci.in_tree ? ci.height : EpsTerm::zero();
      break;
    }
    case Node::K::IAll:
    case Node::K::IAnd: out = height(n.c0); break;
    case Node::K::REx:
    case Node::K::ROr: out = eps_add(height(n.c1), height(n.c0), eps_alpha_, kb_); break;
    case Node::K::E: out = eps_omega_pow(height(n.c0)); break;
    case Node::K::AxTheta:
    case Node::K::AxRaw: out = EpsTerm::zero(); break;
    case Node::K::Wedge: {
      const EpsTerm& a = height(n.c0);
      const EpsTerm& b = height(n.c1);
      const EpsTerm& m =
          eps_compare(a, b, kb_) == std::strong_ordering::less ? b : a;
      out = eps_add(m, eps_one(), eps_alpha_, kb_);
      break;
    }
    case Node::K::Vee: out = eps_add(height(n.c0), eps_one(), eps_alpha_, kb_); break;
    case Node::K::BEx:
    case Node::K::BAll: out = height(n.c0); break;
    case Node::K::Ct:
      if (ct_intended(n.t, n.c0))
        out = EpsTerm::embed_ord(theta_of(ct_query_term(n.t, n.c0)));
      else
        out = height(n.c0);
      break;
  }
  slot = std::move(out);
  height_stale_[static_cast<size_t>(c)] = oracle_ && oracle_->recording();
  return *slot;
}

unsigned ProofSystem::cut_rank(CodeId c) {
  auto& slot = d_[static_cast<size_t>(c)];
  if (slot) return *slot;
  const Node n = node(c);
  unsigned out = 0;
  switch (n.k) {
    case Node::K::Basic:
    case Node::K::AxRoot: out = kBasicCutRank; break;
    case Node::K::IAll:
    case Node::K::IAnd: out = cut_rank(n.c0); break;
    case Node::K::REx:
    case Node::K::ROr:
      out = std::max({cut_rank(n.c0), cut_rank(n.c1), n.f.hth()});
      break;
    case Node::K::E: out = std::max(2u, cut_rank(n.c0) == 0 ? 2u : cut_rank(n.c0) - 1); break;
    case Node::K::AxTheta:
    case Node::K::AxRaw: out = 0; break;
    case Node::K::Wedge: out = std::max(cut_rank(n.c0), cut_rank(n.c1)); break;
    case Node::K::Vee: out = cut_rank(n.c0); break;
    case Node::K::BEx:
    case Node::K::BAll: out = cut_rank(n.c0); break;
    case Node::K::Ct: out = ct_intended(n.t, n.c0) ? 1 : cut_rank(n.c0); break;
  }
  slot = out;
  return *slot;
}

const EpsTerm& ProofSystem::h0(CodeId c) {
  auto& slot = h0_[static_cast<size_t>(c)];
  if (slot) return *slot;
  const Node n = node(c);
  EpsTerm out;
  switch (n.k) {
    case Node::K::Basic:
    case Node::K::AxRoot:
    case Node::K::AxTheta:
    case Node::K::AxRaw: out = eps_Omega(); break;
    case Node::K::IAll:
    case Node::K::IAnd:
    case Node::K::E:
    case Node::K::Vee:
    case Node::K::BEx:
    case Node::K::BAll: out = h0(n.c0); break;
    case Node::K::REx:
    case Node::K::ROr:
    case Node::K::Wedge: {
      const EpsTerm& a = h0(n.c0);
      const EpsTerm& b = h0(n.c1);
      out = eps_compare(a, b, kb_) == std::strong_ordering::less ? b : a;
      break;
    }
    case Node::K::Ct:
      out = ct_intended(n.t, n.c0) ? ct_query_term(n.t, n.c0) : h0(n.c0);
      break;
  }
  slot = std::move(out);
  return *slot;
}

const OrdCNF& ProofSystem::h1(CodeId c) {
  auto& slot = h1_[static_cast<size_t>(c)];
  if (slot) return *slot;
  const Node n = node(c);
  OrdCNF out;
  switch (n.k) {
    case Node::K::Basic:
    case Node::K::AxRoot: out = tree_.node_rank(tree_.path_of(n.path)); break;
    case Node::K::IAll:
      out = OrdCNF::max(h1(n.c0), OrdCNF::max(n.f.param_bound(), n.b->rank));
      break;
    case Node::K::IAnd:
      out = OrdCNF::max(h1(n.c0), (n.i == 0 ? n.f.child0() : n.f.child1()).param_bound());
      break;
    case Node::K::REx:
    case Node::K::ROr: out = OrdCNF::max(h1(n.c0), h1(n.c1)); break;
    case Node::K::E: out = h1(n.c0); break;
    case Node::K::AxTheta: out = n.f.param_bound(); break;
    case Node::K::AxRaw: {
      for (Formula f : n.raw) out = OrdCNF::max(out, f.param_bound());
      break;
    }
    case Node::K::Wedge:
      out = OrdCNF::max(OrdCNF::max(h1(n.c0), h1(n.c1)),
                        Formula::conj(n.f, n.g).param_bound());
      break;
    case Node::K::Vee:
      out = OrdCNF::max(h1(n.c0), Formula::disj(n.f, n.g).param_bound());
      break;
    case Node::K::BEx:
      if (bex_intended(n.beta, n.c0))
        out = OrdCNF::max(h1(n.c0),
                          n.f.relativize(universe_->stage_param(n.beta)).param_bound());
      else
        out = h1(n.c0);
      break;
    case Node::K::BAll:
      out = OrdCNF::max(h1(n.c0),
                        n.f.relativize(universe_->stage_param(n.beta)).param_bound());
      break;
    case Node::K::Ct: out = ct_intended(n.t, n.c0) ? OrdCNF() : h1(n.c0); break;
  }
  slot = std::move(out);
  return *slot;
}

OrdCNF ProofSystem::k_bound(CodeId c) {
  OrdCNF out = eps_star(height(c), kb_);
  for (Formula f : label(c)) out = OrdCNF::max(out, f.param_bound());
  return OrdCNF::max(out, rule(c).param_bound());
}

const Rule& ProofSystem::rule(CodeId c) {
  auto& slot = rule_[static_cast<size_t>(c)];
  if (slot && !rule_stale_[static_cast<size_t>(c)]) return *slot;
  const Node n = node(c);
  Rule out;
  switch (n.k) {
    case Node::K::Basic: {
      ConcreteInfo ci = basic_info(tree_.path_of(n.path));
      out = ci.in_tree ? ci.rule : Rule{};  // out-of-tree: ax
      break;
    }
    case Node::K::AxRoot: {
      ConcreteInfo ci = axiom_info(n.axk, tree_.path_of(n.path));
      out = ci.in_tree ? ci.rule : Rule{};
      break;
    }
    case Node::K::IAll: {
      const Rule& r = rule(n.c0);
      if (r.k == Rule::K::All && r.f0 == n.f) {
        out.k = Rule::K::Rep;
        out.elem = *n.b;
      } else {
        out = r;
      }
      break;
    }
    case Node::K::IAnd: {
      const Rule& r = rule(n.c0);
      if (r.k == Rule::K::And && Formula::conj(r.f0, r.f1) == n.f) {
        out.k = Rule::K::Rep;
        out.elem = universe_->marker(static_cast<unsigned>(n.i)).to_param();
      } else {
        out = r;
      }
      break;
    }
    case Node::K::REx: {
      const Rule& r = rule(n.c0);
      if (r.k == Rule::K::Ex && r.f0 == n.f) {
        out.k = Rule::K::Cut;
        out.f0 = n.f.instantiate(*r.elem);
      } else {
        out = r;
      }
      break;
    }
    case Node::K::ROr: {
      const Rule& r = rule(n.c0);
      if (r.k == Rule::K::Or && Formula::disj(r.f0, r.f1) == n.f) {
        out.k = Rule::K::Cut;
        out.f0 = r.or_i == 0 ? r.f0 : r.f1;
      } else {
        out = r;
      }
      break;
    }
    case Node::K::E: {
      const Rule& r = rule(n.c0);
      if (r.k == Rule::K::Cut && r.f0.hth() > 1) {
        out.k = Rule::K::Rep;
        out.elem = universe_->marker(0).to_param();
      } else {
        out = r;
      }
      break;
    }
    case Node::K::AxTheta:
    case Node::K::AxRaw: out.k = Rule::K::Ax; break;
    case Node::K::Wedge:
      out.k = Rule::K::And;
      out.f0 = n.f;
      out.f1 = n.g;
      break;
    case Node::K::Vee:
      out.k = Rule::K::Or;
      out.or_i = n.i;
      out.f0 = n.f;
      out.f1 = n.g;
      break;
    case Node::K::BEx: {
      if (!bex_intended(n.beta, n.c0)) {
        out = rule(n.c0);
        break;
      }
      const Rule& r = rule(n.c0);
      Param stage = universe_->stage_param(n.beta);
      if (r.k == Rule::K::Ex && r.f0 == n.f) {
        // bounded or not, the new rule introduces phi^beta with the same witness
        out.k = Rule::K::Ex;
        out.f0 = n.f.relativize(stage);
        out.elem = r.elem;
      } else if (r.k == Rule::K::And && Formula::conj(r.f0, r.f1) == n.f) {
        out.k = Rule::K::And;
        out.f0 = r.f0.relativize(stage);
        out.f1 = r.f1.relativize(stage);
      } else if (r.k == Rule::K::Or && Formula::disj(r.f0, r.f1) == n.f) {
        out.k = Rule::K::Or;
        out.or_i = r.or_i;
        out.f0 = r.f0.relativize(stage);
        out.f1 = r.f1.relativize(stage);
      } else if (r.k == Rule::K::All && r.f0 == n.f) {
        out.k = Rule::K::All;
        out.f0 = n.f.relativize(stage);
      } else if (r.k == Rule::K::Ref) {
        throw Error(Err::BadInput, "reflection rule under a bounding operator");
      } else {
        out = r;
      }
      break;
    }
    case Node::K::BAll: {
      const Rule& r = rule(n.c0);
      Param stage = universe_->stage_param(n.beta);
      if (r.k == Rule::K::All && r.f0 == n.f) {
        out.k = Rule::K::All;
        out.f0 = n.f.relativize(stage);
      } else {
        out = r;
      }
      break;
    }
    case Node::K::Ct: {
      if (!ct_intended(n.t, n.c0)) {
        out = rule(n.c0);
        break;
      }
      const Rule& r = rule(n.c0);
      switch (r.k) {
        case Rule::K::Cut: {
          unsigned h = r.f0.hth();
          if (h == 0) {
            out = r;
            break;
          }
          // hth == 1: an unbounded quantifier over a Delta0 body
          if (r.f0.kind() == FKind::Ex) {
            EpsTerm dterm = ct_query_term(n.t, child(n.c0, universe_->marker(0)));
            OrdCNF delta = theta_of(dterm);
            out.k = Rule::K::Cut;
            out.f0 = r.f0.relativize(universe_->stage_param(delta));
          } else {
            EpsTerm dterm = ct_query_term(n.t, child(n.c0, universe_->marker(1)));
            OrdCNF delta = theta_of(dterm);
            out.k = Rule::K::Cut;
            out.f0 = r.f0.negate().relativize(universe_->stage_param(delta));
          }
          break;
        }
        case Rule::K::Ref: {
          EpsTerm dterm = ct_query_term(n.t, child(n.c0, universe_->marker(0)));
          OrdCNF delta = theta_of(dterm);
          // (Ex, L_delta, ...): the stage witnesses the collected set.
          out.k = Rule::K::Ex;
          out.f0 = r.f0;
          out.elem = universe_->stage_param(delta);
          break;
        }
        default: out = r; break;
      }
      break;
    }
  }
  slot = std::move(out);
  rule_stale_[static_cast<size_t>(c)] = oracle_ && oracle_->recording();
  return *slot;
}

bool ProofSystem::premise_ok(const Rule& r, const RankedElem& a) {
  Iota io = iota_of(r);
  const RankedElem m0 = universe_->marker(0);
  const RankedElem m1 = universe_->marker(1);
  switch (io.k) {
    case Iota::K::None: return false;
    case Iota::K::M0: return a == m0;
    case Iota::K::M01: return a == m0 || a == m1;
    case Iota::K::AllElems:
      return universe_->in_stage(a.set, tree_.alpha()) && a.stage == universe_->rank_of(a.set);
    case Iota::K::Single:
      return io.single && io.single->kind == Param::Kind::Set && a.set == io.single->set &&
             a.stage == io.single->rank;
  }
  return false;
}

CodeId ProofSystem::child(CodeId c, const RankedElem& a) {
  if (!premise_ok(rule(c), a))
    throw Error(Err::IrrelevantPremise,
                "element " + a.display() + " is not a relevant premise");
  const Node n = node(c);
  const RankedElem m0 = universe_->marker(0);
  const RankedElem m1 = universe_->marker(1);
  switch (n.k) {
    case Node::K::Basic: {
      Path p = tree_.path_of(n.path);
      p.push_back(a);
      return basic(p);
    }
    case Node::K::AxRoot: {
      Path p = tree_.path_of(n.path);
      p.push_back(a);
      return axiom_root(n.axk, p);
    }
    case Node::K::IAll: return inv_all(n.f, *n.b, child(n.c0, a));
    case Node::K::IAnd: return inv_and(n.f, n.i, child(n.c0, a));
    case Node::K::REx: {
      const Rule& r = rule(n.c0);
      if (r.k == Rule::K::Ex && r.f0 == n.f && a == m1)
        return inv_all(n.f.negate(), *r.elem, n.c1);
      return red_ex(n.f, child(n.c0, a), n.c1);
    }
    case Node::K::ROr: {
      const Rule& r = rule(n.c0);
      if (r.k == Rule::K::Or && Formula::disj(r.f0, r.f1) == n.f && a == m1)
        return inv_and(n.f.negate(), r.or_i, n.c1);
      return red_or(n.f, child(n.c0, a), n.c1);
    }
    case Node::K::E: {
      const Rule& r = rule(n.c0);
      if (r.k == Rule::K::Cut && r.f0.hth() > 1) {
        switch (r.f0.kind()) {
          case FKind::Ex:
            return red_ex(r.f0, elim(child(n.c0, m0)), elim(child(n.c0, m1)));
          case FKind::All:
            return red_ex(r.f0.negate(), elim(child(n.c0, m1)), elim(child(n.c0, m0)));
          case FKind::Or:
            return red_or(r.f0, elim(child(n.c0, m0)), elim(child(n.c0, m1)));
          case FKind::And:
            return red_or(r.f0.negate(), elim(child(n.c0, m1)), elim(child(n.c0, m0)));
          default: break;
        }
      }
      return elim(child(n.c0, a));
    }
    case Node::K::AxTheta:
    case Node::K::AxRaw: return c;  // irrelevant; iota is empty
    case Node::K::Wedge: return a == m0 ? n.c0 : n.c1;
    case Node::K::Vee: return n.c0;
    case Node::K::BEx: {
      if (!bex_intended(n.beta, n.c0)) return child(n.c0, a);
      const Rule& r = rule(n.c0);
      Param stage = universe_->stage_param(n.beta);
      if (r.k == Rule::K::Ex && r.f0 == n.f) {
        Formula theta_b = n.f.instantiate(*r.elem);
        CodeId inner = bound_ex(theta_b, n.beta, bound_ex(n.f, n.beta, child(n.c0, m0)));
        if (!n.f.bounded()) {
          Formula guard = Formula::in(Term::mk_param(*r.elem), Term::mk_param(stage));
          Formula theta_b_rel = theta_b.relativize(stage);
          return wedge(guard, theta_b_rel, ax_theta(guard), inner);
        }
        return inner;
      }
      if (r.k == Rule::K::And && Formula::conj(r.f0, r.f1) == n.f) {
        Formula part = a == m0 ? r.f0 : r.f1;
        return bound_ex(part, n.beta, bound_ex(n.f, n.beta, child(n.c0, a)));
      }
      if (r.k == Rule::K::Or && Formula::disj(r.f0, r.f1) == n.f) {
        Formula part = r.or_i == 0 ? r.f0 : r.f1;
        return bound_ex(part, n.beta, bound_ex(n.f, n.beta, child(n.c0, a)));
      }
      if (r.k == Rule::K::All && r.f0 == n.f) {
        Formula inst = n.f.instantiate(a.to_param());
        return bound_ex(inst, n.beta, bound_ex(n.f, n.beta, child(n.c0, a)));
      }
      return bound_ex(n.f, n.beta, child(n.c0, a));
    }
    case Node::K::BAll: {
      const Rule& r = rule(n.c0);
      if (r.k == Rule::K::All && r.f0 == n.f) {
        Formula inst = n.f.instantiate(a.to_param());
        Param stage = universe_->stage_param(n.beta);
        Formula guard = Formula::not_in(Term::mk_param(a.to_param()), Term::mk_param(stage));
        return vee(1, guard, inst, bound_all(n.f, n.beta, child(n.c0, a)));
      }
      return bound_all(n.f, n.beta, child(n.c0, a));
    }
    case Node::K::Ct: {
      if (!ct_intended(n.t, n.c0)) return child(n.c0, a);
      const Rule& r = rule(n.c0);
      switch (r.k) {
        case Rule::K::Cut: {
          if (r.f0.hth() == 0) return collapse_code(n.t, child(n.c0, a));
          if (r.f0.kind() == FKind::Ex) {
            EpsTerm dterm = ct_query_term(n.t, child(n.c0, m0));
            OrdCNF delta = theta_of(dterm);
            if (a == m0)
              return bound_ex(r.f0, delta, collapse_code(n.t, child(n.c0, m0)));
            return collapse_code(dterm,
                                 bound_all(r.f0.negate(), delta, child(n.c0, m1)));
          }
          // symmetric: psi = Ax theta; collapse the side carrying ~psi first
          EpsTerm dterm = ct_query_term(n.t, child(n.c0, m1));
          OrdCNF delta = theta_of(dterm);
          if (a == m0)
            return bound_ex(r.f0.negate(), delta, collapse_code(n.t, child(n.c0, m1)));
          return collapse_code(dterm, bound_all(r.f0, delta, child(n.c0, m0)));
        }
        case Rule::K::All: {
          // Sigma: the formula is a bounded universal x !in b | theta
          Term bound = r.f0.bounded_by();
          OrdCNF brank = bound.param.rank;
          if (!(brank < a.stage)) return collapse_code(n.t, child(n.c0, a));
          Formula inst = r.f0.instantiate(a.to_param());
          return vee(0, inst.child0(), inst.child1(), ax_theta(inst.child0()));
        }
        case Rule::K::Ref: {
          EpsTerm dterm = ct_query_term(n.t, child(n.c0, m0));
          OrdCNF delta = theta_of(dterm);
          // The Sigma premise of the reflection rule: Ax in a Ey theta,
          // recovered from Ez Ax in a Ey in z theta (z does not occur in
          // theta, so no unshifting is needed).
          Formula body = r.f0.child0();  // the bounded All over a, under Ez
          Term abound = body.bounded_by();
          Formula theta2 = body.child0().child1().child0().child1();  // y=V0, x=V1
          Formula prem = Formula::all_in(abound, Formula::ex(theta2));
          return bound_ex(prem, delta, collapse_code(n.t, child(n.c0, m0)));
        }
        default: return collapse_code(n.t, child(n.c0, a));
      }
    }
  }
  throw Error(Err::IrrelevantPremise, "unreachable");
}

}  // namespace bhcalc

namespace bhcalc {

CodeId ProofSystem::walk(CodeId c, const Path& sigma) {
  CodeId cur = c;
  for (const RankedElem& a : sigma) {
    try {
      cur = child(cur, a);
    } catch (const Error& e) {
      if (e.kind() == Err::IrrelevantPremise)
        throw Error(Err::PathNotInTree, "path leaves the denoted tree at " + a.display());
      throw;
    }
  }
  return cur;
}

ProofSystem::PreproofNode ProofSystem::interpret(CodeId c, const Path& sigma) {
  CodeId at = walk(c, sigma);
  return {at, sigma, label(at), rule(at), height(at)};
}

std::vector<RankedElem> ProofSystem::premise_elems(CodeId c) {
  Iota io = iota(c);
  switch (io.k) {
    case Iota::K::None: return {};
    case Iota::K::M0: return {universe_->marker(0)};
    case Iota::K::M01: return {universe_->marker(0), universe_->marker(1)};
    case Iota::K::AllElems: return universe_->ranked_stage(tree_.alpha());
    case Iota::K::Single:
      if (io.single && io.single->kind == Param::Kind::Set)
        return {RankedElem{io.single->rank, io.single->set}};
      return {};
  }
  return {};
}

// Node-level checks -------------------------------------------------------------

bool ProofSystem::CheckReport::failed() const {
  for (const auto& c : conditions)
    if (c.verdict == Verdict::Fail) return true;
  return false;
}

bool ProofSystem::CheckReport::unknown() const {
  for (const auto& c : conditions)
    if (c.verdict == Verdict::Unknown) return true;
  return false;
}

namespace {

using Verdict = ProofSystem::Verdict;

ProofSystem::Condition cond(std::string name, Verdict v, std::string detail = "") {
  return {std::move(name), v, std::move(detail)};
}

}  // namespace

ProofSystem::CheckReport ProofSystem::check_local(CodeId c, uint64_t fuel) {
  CheckReport rep;
  const Rule r = rule(c);
  const Sequent l = label(c);
  const EpsTerm o = height(c);
  const EpsTerm omega_term = EpsTerm::embed_ord(OrdCNF::omega());

  auto lt = [&](const EpsTerm& x, const EpsTerm& y) {
    return eps_compare(x, y, kb_) == std::strong_ordering::less;
  };
  auto le = [&](const EpsTerm& x, const EpsTerm& y) {
    return eps_compare(x, y, kb_) != std::strong_ordering::greater;
  };

  // ------------------------------ (L) -----------------------------------
  switch (r.k) {
    case Rule::K::Ax: {
      bool found = false, unknown = false;
      for (Formula f : l) {
        if (!f.is_delta0() || !f.closed()) continue;
        try {
          if (f.eval_delta0()) {
            found = true;
            break;
          }
        } catch (const Error&) {
          unknown = true;
        }
      }
      if (found)
        rep.conditions.push_back(cond("L", Verdict::Pass));
      else if (unknown)
        rep.conditions.push_back(cond("L", Verdict::Unknown, "some formulas not evaluable"));
      else
        rep.conditions.push_back(cond("L", Verdict::Fail, "no true Delta0 formula at ax"));
      break;
    }
    case Rule::K::And:
    case Rule::K::Cut: {
      bool ok = true;
      std::string why;
      Formula principal =
          r.k == Rule::K::And ? Formula::conj(r.f0, r.f1) : Formula();
      if (r.k == Rule::K::And && !sequent_member(l, principal)) {
        ok = false;
        why = "principal conjunction missing";
      }
      for (unsigned i = 0; i < 2 && ok; ++i) {
        CodeId ni = child(c, universe_->marker(i));
        if (!lt(height(ni), o)) {
          ok = false;
          why = "height does not strictly decrease at child " + std::to_string(i);
          break;
        }
        Formula extra;
        if (r.k == Rule::K::And)
          extra = i == 0 ? r.f0 : r.f1;
        else
          extra = i == 0 ? r.f0 : r.f0.negate();
        if (!sequent_subset(label(ni), sequent_add(l, extra))) {
          ok = false;
          why = "child sequent not within parent plus side formula";
        }
      }
      rep.conditions.push_back(cond("L", ok ? Verdict::Pass : Verdict::Fail, why));
      break;
    }
    case Rule::K::Or: {
      bool ok = sequent_member(l, Formula::disj(r.f0, r.f1));
      std::string why = ok ? "" : "principal disjunction missing";
      if (ok) {
        CodeId n0 = child(c, universe_->marker(0));
        if (!lt(height(n0), o)) {
          ok = false;
          why = "height does not strictly decrease";
        } else if (!sequent_subset(label(n0), sequent_add(l, r.or_i == 0 ? r.f0 : r.f1))) {
          ok = false;
          why = "child sequent not within parent plus disjunct";
        }
      }
      rep.conditions.push_back(cond("L", ok ? Verdict::Pass : Verdict::Fail, why));
      break;
    }
    case Rule::K::All: {
      bool ok = sequent_member(l, r.f0);
      std::string why = ok ? "" : "principal formula missing";
      if (ok) {
        for (const RankedElem& a : premise_elems(c)) {
          CodeId na = child(c, a);
          if (!le(eps_add(height(na), omega_term, eps_alpha_, kb_), o)) {
            ok = false;
            why = "o(child) + omega exceeds o at " + a.display();
            break;
          }
          if (!sequent_subset(label(na), sequent_add(l, r.f0.instantiate(a.to_param())))) {
            ok = false;
            why = "child sequent not within parent plus instance at " + a.display();
            break;
          }
        }
      }
      rep.conditions.push_back(cond("L", ok ? Verdict::Pass : Verdict::Fail, why));
      break;
    }
    case Rule::K::Ex: {
      bool ok = sequent_member(l, r.f0);
      std::string why = ok ? "" : "principal formula missing";
      if (ok) {
        CodeId n0 = child(c, universe_->marker(0));
        if (!le(eps_add(height(n0), omega_term, eps_alpha_, kb_), o)) {
          ok = false;
          why = "o(child) + omega exceeds o";
        } else if (!lt(EpsTerm::embed_ord(r.elem->rank), o)) {
          ok = false;
          why = "witness rank not below the height";
        } else if (!sequent_subset(label(n0), sequent_add(l, r.f0.instantiate(*r.elem)))) {
          ok = false;
          why = "child sequent not within parent plus witness instance";
        }
      }
      rep.conditions.push_back(cond("L", ok ? Verdict::Pass : Verdict::Fail, why));
      break;
    }
    case Rule::K::Ref: {
      bool ok = sequent_member(l, r.f0);
      std::string why = ok ? "" : "principal formula missing";
      if (ok) {
        CodeId n0 = child(c, universe_->marker(0));
        if (!lt(height(n0), o)) {
          ok = false;
          why = "height does not strictly decrease";
        } else if (!le(eps_Omega(), o)) {
          ok = false;
          why = "reflection below Omega";
        } else {
          Formula body = r.f0.child0();
          Term abound = body.bounded_by();
          Formula theta2 = body.child0().child1().child0().child1();
          Formula prem = Formula::all_in(abound, Formula::ex(theta2));
          if (!sequent_subset(label(n0), sequent_add(l, prem))) {
            ok = false;
            why = "child sequent not within parent plus Sigma premise";
          }
        }
      }
      rep.conditions.push_back(cond("L", ok ? Verdict::Pass : Verdict::Fail, why));
      break;
    }
    case Rule::K::Rep: {
      bool ok = true;
      std::string why;
      auto elems = premise_elems(c);
      if (elems.empty()) {
        ok = false;
        why = "repetition premise is not a concrete element";
      } else {
        CodeId nb = child(c, elems[0]);
        if (!lt(height(nb), o)) {
          ok = false;
          why = "height does not strictly decrease";
        } else if (!sequent_subset(label(nb), l)) {
          ok = false;
          why = "child sequent not within parent";
        }
      }
      rep.conditions.push_back(cond("L", ok ? Verdict::Pass : Verdict::Fail, why));
      break;
    }
  }

  // ------------------------------ (C1), (C2) ----------------------------
  if (r.k == Rule::K::Cut) {
    bool ok = r.f0.hth() < cut_rank(c);
    rep.conditions.push_back(cond("C1", ok ? Verdict::Pass : Verdict::Fail,
                                  ok ? "" : "cut formula height not below d"));
  } else {
    rep.conditions.push_back(cond("C1", Verdict::Pass, "not a cut"));
  }
  {
    bool ok = true;
    std::string why;
    for (const RankedElem& a : premise_elems(c)) {
      if (cut_rank(child(c, a)) > cut_rank(c)) {
        ok = false;
        why = "d increases at child " + a.display();
        break;
      }
    }
    rep.conditions.push_back(cond("C2", ok ? Verdict::Pass : Verdict::Fail, why));
  }

  // ------------------------------ (H1)-(H3) -----------------------------
  if (oracle_) {
    const TermCollapse& theta = oracle_->map();
    auto h_engine = [&](std::vector<OrdCNF> params) {
      return h_operator(theta, h0(c), std::move(params), eps_alpha_, fuel);
    };
    try {
      CsetEngine eng = h_engine({h1(c)});
      bool ok = eng.member_ord(k_bound(c));
      rep.conditions.push_back(
          cond("H1", ok ? Verdict::Pass : Verdict::Fail, ok ? "" : "k<> outside H_P"));
    } catch (const Error& e) {
      rep.conditions.push_back(cond("H1", Verdict::Unknown, e.what()));
    }
    {
      bool ok = true;
      std::string why;
      for (const RankedElem& a : premise_elems(c)) {
        if (eps_compare(h0(child(c, a)), h0(c), kb_) == std::strong_ordering::greater) {
          ok = false;
          why = "h0 increases at child " + a.display();
          break;
        }
      }
      rep.conditions.push_back(cond("H2", ok ? Verdict::Pass : Verdict::Fail, why));
    }
    try {
      bool ok = true;
      std::string why;
      for (const RankedElem& a : premise_elems(c)) {
        CodeId na = child(c, a);
        CsetEngine eng = h_engine({h1(c), a.stage});
        if (!eng.member_ord(h1(na))) {
          ok = false;
          why = "h1(child) outside H_P[|a|] at " + a.display();
          break;
        }
        if (!eng.member(height(na))) {
          ok = false;
          why = "o(child) outside H_P[|a|] at " + a.display();
          break;
        }
      }
      rep.conditions.push_back(cond("H3", ok ? Verdict::Pass : Verdict::Fail, why));
    } catch (const Error& e) {
      rep.conditions.push_back(cond("H3", Verdict::Unknown, e.what()));
    }
  }
  return rep;
}

// Soundness below Omega ----------------------------------------------------------

Formula ProofSystem::sound_eval(CodeId c) {
  const EpsTerm& o = height(c);
  if (!o.as_ordinal())
    throw Error(Err::BadInput, "sound_eval needs height below Omega");
  const Rule r = rule(c);
  const Sequent l = label(c);
  const std::vector<HFSet>& world = universe_->stage(universe_->depth());

  switch (r.k) {
    case Rule::K::Ax: {
      for (Formula f : l) {
        if (!f.is_delta0() || !f.closed()) continue;
        try {
          if (f.eval_delta0()) return f;
        } catch (const Error&) {
        }
      }
      throw Error(Err::EmptyEndSequent, "axiom node carries no true Delta0 formula");
    }
    case Rule::K::And: {
      Formula f0 = sound_eval(child(c, universe_->marker(0)));
      if (f0 != r.f0) return f0;
      Formula f1 = sound_eval(child(c, universe_->marker(1)));
      if (f1 != r.f1) return f1;
      return Formula::conj(r.f0, r.f1);
    }
    case Rule::K::Or: {
      Formula f = sound_eval(child(c, universe_->marker(0)));
      Formula side = r.or_i == 0 ? r.f0 : r.f1;
      if (f != side) return f;
      return Formula::disj(r.f0, r.f1);
    }
    case Rule::K::All: {
      auto elems = premise_elems(c);
      if (elems.empty()) throw Error(Err::UnboundedBranching, "no enumerable forall range");
      for (const RankedElem& a : elems) {
        Formula fa = sound_eval(child(c, a));
        if (fa != r.f0.instantiate(a.to_param())) return fa;
      }
      return r.f0;
    }
    case Rule::K::Ex: {
      Formula f = sound_eval(child(c, universe_->marker(0)));
      if (f != r.f0.instantiate(*r.elem)) return f;
      return r.f0;
    }
    case Rule::K::Cut: {
      bool holds = r.f0.satisfied_in(world);
      Formula f = sound_eval(child(c, universe_->marker(holds ? 1 : 0)));
      Formula side = holds ? r.f0.negate() : r.f0;
      if (f == side)
        throw Error(Err::EmptyEndSequent, "cut premise returned the refuted formula");
      return f;
    }
    case Rule::K::Ref:
      throw Error(Err::BadInput, "reflection rule below Omega");
    case Rule::K::Rep: {
      auto elems = premise_elems(c);
      if (elems.empty()) throw Error(Err::UnboundedBranching, "repetition premise missing");
      return sound_eval(child(c, elems[0]));
    }
  }
  throw Error(Err::BadInput, "unreachable");
}

// Serialization ------------------------------------------------------------------

namespace {

Sexpr eps_to_sexpr_paths(const EpsTerm& t, SearchTree& tree) {
  Sexpr s = Sexpr::make_list();
  switch (t.kind()) {
    case EpsTerm::Kind::Zero: s.add_atom("zero"); break;
    case EpsTerm::Kind::Eps:
      s.add_atom("eps");
      s.add(path_to_sexpr(tree.path_of(t.eps_elem())));
      break;
    case EpsTerm::Kind::Sum:
      s.add_atom("sum");
      for (const auto& [e, c] : t.summands()) {
        Sexpr part = Sexpr::make_list();
        part.add(eps_to_sexpr_paths(e, tree)).add(c.to_sexpr());
        s.add(std::move(part));
      }
      break;
  }
  return s;
}

Path path_from_sexpr(const Sexpr& s) {
  if (s.head() != "path") throw Error(Err::BadInput, "expected (path ...)");
  Path p;
  for (size_t i = 1; i < s.size(); ++i)
    p.push_back({OrdCNF::from_sexpr(s.at(i).at(0)), HFSet::from_sexpr(s.at(i).at(1))});
  return p;
}

EpsTerm eps_from_sexpr_paths(const Sexpr& s, SearchTree& tree) {
  const std::string h = s.head();
  if (h == "zero") return EpsTerm::zero();
  if (h == "eps") return EpsTerm::eps(tree.intern_path(path_from_sexpr(s.at(1))));
  if (h == "sum") {
    std::vector<EpsTerm::Summand> xs;
    for (size_t i = 1; i < s.size(); ++i)
      xs.push_back({eps_from_sexpr_paths(s.at(i).at(0), tree), OrdCNF::from_sexpr(s.at(i).at(1))});
    return EpsTerm::sum(std::move(xs));
  }
  throw Error(Err::BadInput, "not an eps-term: " + s.str());
}

}  // namespace

Sexpr ProofSystem::code_to_sexpr(CodeId c) {
  const Node n = node(c);
  Sexpr s = Sexpr::make_list();
  switch (n.k) {
    case Node::K::Basic:
      s.add_atom("basic").add(path_to_sexpr(tree_.path_of(n.path)));
      break;
    case Node::K::AxRoot:
      s.add_atom("axproof").add_atom(std::to_string(n.axk)).add(
          path_to_sexpr(tree_.path_of(n.path)));
      break;
    case Node::K::IAll:
      s.add_atom("iall").add(n.f.to_sexpr()).add(n.b->to_sexpr()).add(code_to_sexpr(n.c0));
      break;
    case Node::K::IAnd:
      s.add_atom("iand").add(n.f.to_sexpr()).add_atom(std::to_string(n.i)).add(
          code_to_sexpr(n.c0));
      break;
    case Node::K::REx:
      s.add_atom("rex").add(n.f.to_sexpr()).add(code_to_sexpr(n.c0)).add(code_to_sexpr(n.c1));
      break;
    case Node::K::ROr:
      s.add_atom("ror").add(n.f.to_sexpr()).add(code_to_sexpr(n.c0)).add(code_to_sexpr(n.c1));
      break;
    case Node::K::E: s.add_atom("E").add(code_to_sexpr(n.c0)); break;
    case Node::K::AxTheta: s.add_atom("axT").add(n.f.to_sexpr()); break;
    case Node::K::AxRaw: {
      s.add_atom("axraw");
      for (Formula f : n.raw) s.add(f.to_sexpr());
      break;
    }
    case Node::K::Wedge:
      s.add_atom("wedge").add(n.f.to_sexpr()).add(n.g.to_sexpr()).add(code_to_sexpr(n.c0)).add(
          code_to_sexpr(n.c1));
      break;
    case Node::K::Vee:
      s.add_atom("vee").add_atom(std::to_string(n.i)).add(n.f.to_sexpr()).add(n.g.to_sexpr()).add(
          code_to_sexpr(n.c0));
      break;
    case Node::K::BEx:
      s.add_atom("bex").add(n.f.to_sexpr()).add(n.beta.to_sexpr()).add(code_to_sexpr(n.c0));
      break;
    case Node::K::BAll:
      s.add_atom("ball-code").add(n.f.to_sexpr()).add(n.beta.to_sexpr()).add(code_to_sexpr(n.c0));
      break;
    case Node::K::Ct:
      s.add_atom("C").add(eps_to_sexpr_paths(n.t, tree_)).add(code_to_sexpr(n.c0));
      break;
  }
  return s;
}

CodeId ProofSystem::code_from_sexpr(const Sexpr& s) {
  const std::string h = s.head();
  if (h == "basic") return basic(path_from_sexpr(s.at(1)));
  if (h == "axproof")
    return axiom_root(static_cast<unsigned>(std::stoul(s.at(1).atom)),
                      path_from_sexpr(s.at(2)));
  if (h == "iall")
    return inv_all(Formula::from_sexpr(s.at(1)), Param::from_sexpr(s.at(2)),
                   code_from_sexpr(s.at(3)));
  if (h == "iand")
    return inv_and(Formula::from_sexpr(s.at(1)), std::stoi(s.at(2).atom),
                   code_from_sexpr(s.at(3)));
  if (h == "rex")
    return red_ex(Formula::from_sexpr(s.at(1)), code_from_sexpr(s.at(2)),
                  code_from_sexpr(s.at(3)));
  if (h == "ror")
    return red_or(Formula::from_sexpr(s.at(1)), code_from_sexpr(s.at(2)),
                  code_from_sexpr(s.at(3)));
  if (h == "E") return elim(code_from_sexpr(s.at(1)));
  if (h == "axT") return ax_theta(Formula::from_sexpr(s.at(1)));
  if (h == "axraw") {
    std::vector<Formula> fs;
    for (size_t i = 1; i < s.size(); ++i) fs.push_back(Formula::from_sexpr(s.at(i)));
    return ax_unchecked(to_sequent(fs));
  }
  if (h == "wedge")
    return wedge(Formula::from_sexpr(s.at(1)), Formula::from_sexpr(s.at(2)),
                 code_from_sexpr(s.at(3)), code_from_sexpr(s.at(4)));
  if (h == "vee")
    return vee(std::stoi(s.at(1).atom), Formula::from_sexpr(s.at(2)),
               Formula::from_sexpr(s.at(3)), code_from_sexpr(s.at(4)));
  if (h == "bex")
    return bound_ex(Formula::from_sexpr(s.at(1)), OrdCNF::from_sexpr(s.at(2)),
                    code_from_sexpr(s.at(3)));
  if (h == "ball-code")
    return bound_all(Formula::from_sexpr(s.at(1)), OrdCNF::from_sexpr(s.at(2)),
                     code_from_sexpr(s.at(3)));
  if (h == "C")
    return collapse_code(eps_from_sexpr_paths(s.at(1), tree_), code_from_sexpr(s.at(2)));
  throw Error(Err::BadInput, "not a code: " + s.str());
}

std::string ProofSystem::code_display(CodeId c) {
  const Node n = node(c);
  switch (n.k) {
    case Node::K::Basic: return "P" + path_display(tree_.path_of(n.path));
    case Node::K::AxRoot:
      return "A" + std::to_string(n.axk) + path_display(tree_.path_of(n.path));
    case Node::K::IAll: return "I_all(" + code_display(n.c0) + ")";
    case Node::K::IAnd: return "I_and(" + code_display(n.c0) + ")";
    case Node::K::REx: return "R_ex(" + code_display(n.c0) + "," + code_display(n.c1) + ")";
    case Node::K::ROr: return "R_or(" + code_display(n.c0) + "," + code_display(n.c1) + ")";
    case Node::K::E: return "E " + code_display(n.c0);
    case Node::K::AxTheta: return "ax[" + n.f.display() + "]";
    case Node::K::AxRaw: return "axraw";
    case Node::K::Wedge: return "/\\(" + code_display(n.c0) + "," + code_display(n.c1) + ")";
    case Node::K::Vee: return "\\/(" + code_display(n.c0) + ")";
    case Node::K::BEx: return "B_ex^" + n.beta.str() + "(" + code_display(n.c0) + ")";
    case Node::K::BAll: return "B_all^" + n.beta.str() + "(" + code_display(n.c0) + ")";
    case Node::K::Ct: return "C(" + code_display(n.c0) + ")";
  }
  return "?";
}

}  // namespace bhcalc
