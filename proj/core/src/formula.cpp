// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "bhcalc/formula.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

namespace bhcalc {

const char* err_name(Err e) {
  switch (e) {
    case Err::NotDelta0: return "NotDelta0";
    case Err::UnboundVariable: return "UnboundVariable";
    case Err::ArityMismatch: return "ArityMismatch";
    case Err::NotTransitive: return "NotTransitive";
    case Err::MissingMarkers: return "MissingMarkers";
    case Err::NotInHierarchy: return "NotInHierarchy";
    case Err::EmptySet: return "EmptySet";
    case Err::NotANode: return "NotANode";
    case Err::NotExtensional: return "NotExtensional";
    case Err::IndexZero: return "IndexZero";
    case Err::NotEmbedding: return "NotEmbedding";
    case Err::DomainGap: return "DomainGap";
    case Err::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case Err::FuelExhausted: return "FuelExhausted";
    case Err::OracleGap: return "OracleGap";
    case Err::InconsistentExtension: return "InconsistentExtension";
    case Err::IrrelevantPremise: return "IrrelevantPremise";
    case Err::PathNotInTree: return "PathNotInTree";
    case Err::StageUnavailable: return "StageUnavailable";
    case Err::EmptyEndSequent: return "EmptyEndSequent";
    case Err::UnboundedBranching: return "UnboundedBranching";
    case Err::UnknownSuite: return "UnknownSuite";
    case Err::WitnessExhausted: return "WitnessExhausted";
    case Err::BadInput: return "BadInput";
  }
  return "Error";
}

// Param --------------------------------------------------------------------

Param Param::of_set(HFSet s, OrdCNF rank) {
  Param p;
  p.kind = Kind::Set;
  p.set = s;
  p.rank = std::move(rank);
  return p;
}

Param Param::of_set_unranked(HFSet s) {
  Param p = of_set(s, OrdCNF());
  p.rank_exact = false;
  return p;
}

Param Param::of_stage(OrdCNF beta, std::optional<HFSet> mat) {
  if (mat) {
    Param p = of_set(*mat, beta);
    return p;
  }
  Param p;
  p.kind = Kind::Stage;
  p.rank = beta;
  p.stage = std::move(beta);
  p.materialized = false;
  return p;
}

Param Param::of_omega() {
  Param p;
  p.kind = Kind::Omega;
  p.rank = OrdCNF::omega();
  p.materialized = false;
  return p;
}

bool Param::operator==(const Param& o) const {
  return order(o) == std::strong_ordering::equal;
}

std::strong_ordering Param::order(const Param& o) const {
  if (kind != o.kind) return static_cast<int>(kind) <=> static_cast<int>(o.kind);
  switch (kind) {
    case Kind::Set: {
      auto c = HFSet::code_compare(set, o.set);
      if (c != std::strong_ordering::equal) return c;
      if (rank_exact != o.rank_exact) return rank_exact <=> o.rank_exact;
      return rank.compare(o.rank);
    }
    case Kind::Stage: return stage.compare(o.stage);
    case Kind::Omega: return std::strong_ordering::equal;
  }
  return std::strong_ordering::equal;
}

size_t Param::hash() const {
  size_t h = static_cast<size_t>(kind) * 0x9e3779b97f4a7c15ull;
  h ^= rank.hash() + (h << 6);
  if (kind == Kind::Set) h ^= set.id() * 0x100000001b3ull;
  if (kind == Kind::Stage) h ^= stage.hash() * 3;
  return h;
}

bool Param::member(const Param& a, const Param& b) {
  switch (b.kind) {
    case Kind::Set:
      // A symbolic stage or omega never lies in a concrete desk-scale set.
      return a.kind == Kind::Set && b.set.contains(a.set);
    case Kind::Stage:
      // a in L_beta iff |a| < beta.
      if (a.kind == Kind::Set && !a.rank_exact)
        throw Error(Err::StageUnavailable, "rank of transient element unknown");
      return a.rank < b.stage;
    case Kind::Omega:
      return a.kind == Kind::Set && a.set.is_von_neumann_numeral();
  }
  return false;
}

bool Param::equal(const Param& a, const Param& b) {
  if (a.kind == Kind::Set && b.kind == Kind::Set) return a.set == b.set;
  if (a.kind == Kind::Stage && b.kind == Kind::Stage) return a.stage == b.stage;
  if (a.kind == Kind::Omega && b.kind == Kind::Omega) return true;
  // Mixed kinds: a symbolic parameter is only kept symbolic when it cannot
  // be materialized, so it differs from every concrete set (rank mismatch).
  return false;
}

std::string Param::display() const {
  switch (kind) {
    case Kind::Set: return set.display();
    case Kind::Stage: return "L_" + stage.str();
    case Kind::Omega: return "omega";
  }
  return "?";
}

Sexpr Param::to_sexpr() const {
  Sexpr s = Sexpr::make_list();
  switch (kind) {
    case Kind::Set:
      s.add_atom("param").add(rank.to_sexpr()).add(set.to_sexpr());
      break;
    case Kind::Stage:
      s.add_atom("stage-param").add(stage.to_sexpr());
      break;
    case Kind::Omega:
      s.add_atom("omega-param");
      break;
  }
  return s;
}

Param Param::from_sexpr(const Sexpr& s) {
  const std::string h = s.head();
  if (h == "param") return of_set(HFSet::from_sexpr(s.at(2)), OrdCNF::from_sexpr(s.at(1)));
  if (h == "stage-param") return of_stage(OrdCNF::from_sexpr(s.at(1)), std::nullopt);
  if (h == "omega-param") return of_omega();
  throw Error(Err::BadInput, "not a parameter: " + s.str());
}

// Term ---------------------------------------------------------------------

bool Term::operator==(const Term& o) const { return order(o) == std::strong_ordering::equal; }

std::strong_ordering Term::order(const Term& o) const {
  if (is_var != o.is_var) return is_var <=> o.is_var;
  if (is_var) return var <=> o.var;
  return param.order(o.param);
}

size_t Term::hash() const {
  if (is_var) return 0x517cc1b727220a95ull + var;
  return param.hash();
}

// Formula registry ----------------------------------------------------------

namespace {

struct FNode {
  FKind kind;
  Term lhs, rhs;
  uint32_t c0 = UINT32_MAX, c1 = UINT32_MAX;
  bool bounded = false;

  // memoized analyses (lazily filled)
  int negation = -1;  // id of the NNF negation
  int delta0 = -1;    // -1 unknown, 0 no, 1 yes
  int hth = -1;
  int max_free = -2;  // -2 unknown
  int truth = -1;     // closed Delta0 truth: -1 unknown, 0 false, 1 true
  bool has_k = false;
  OrdCNF k;

  size_t hash() const {
    size_t h = static_cast<size_t>(kind) * 0x9e3779b97f4a7c15ull;
    h ^= lhs.hash() + (h << 6) + (h >> 2);
    h ^= rhs.hash() + (h << 6) + (h >> 2);
    h ^= c0 * 0x100000001b3ull;
    h ^= c1 * 0x85ebca77c2b2ae63ull;
    h ^= bounded ? 0x27d4eb2f165667c5ull : 0;
    return h;
  }
  bool same_shape(const FNode& o) const {
    return kind == o.kind && c0 == o.c0 && c1 == o.c1 && bounded == o.bounded &&
           lhs == o.lhs && rhs == o.rhs;
  }
};

struct FReg {
  // Interning is guarded; the per-node analysis caches hold idempotent
  // single-word results and concurrent recomputation is harmless.
  std::mutex mu;
  std::deque<FNode> nodes;
  std::unordered_multimap<size_t, uint32_t> index;
  std::unordered_map<uint32_t, bool> known_truths;

  uint32_t intern(FNode n) {
    std::lock_guard<std::mutex> lock(mu);
    size_t h = n.hash();
    auto range = index.equal_range(h);
    for (auto it = range.first; it != range.second; ++it)
      if (nodes[it->second].same_shape(n)) return it->second;
    uint32_t id = static_cast<uint32_t>(nodes.size());
    nodes.push_back(std::move(n));
    index.emplace(h, id);
    return id;
  }

  static FReg& get() {
    static FReg* r = new FReg();
    return *r;
  }
};

FNode& node(uint32_t id) { return FReg::get().nodes[id]; }

bool is_prime_kind(FKind k) {
  return k == FKind::In || k == FKind::NotIn || k == FKind::Eq || k == FKind::NotEq;
}

Term shift_term(const Term& t, int by, uint32_t level) {
  if (t.is_var && t.var >= level) {
    Term r = t;
    r.var = static_cast<uint32_t>(static_cast<int>(r.var) + by);
    return r;
  }
  return t;
}

}  // namespace

Formula Formula::prime(FKind k, Term lhs, Term rhs) {
  FNode n;
  n.kind = k;
  n.lhs = std::move(lhs);
  n.rhs = std::move(rhs);
  return Formula(FReg::get().intern(std::move(n)));
}

Formula Formula::conj(Formula a, Formula b) {
  FNode n;
  n.kind = FKind::And;
  n.c0 = a.id();
  n.c1 = b.id();
  return Formula(FReg::get().intern(std::move(n)));
}

Formula Formula::disj(Formula a, Formula b) {
  FNode n;
  n.kind = FKind::Or;
  n.c0 = a.id();
  n.c1 = b.id();
  return Formula(FReg::get().intern(std::move(n)));
}

Formula Formula::quantifier(FKind k, Formula body, bool bounded) {
  if (k != FKind::All && k != FKind::Ex) throw Error(Err::BadInput, "not a quantifier kind");
  if (bounded) {
    // Required shapes: All(x !in t \/ psi), Ex(x in t /\ psi), t != x.
    const FNode& b = node(body.id());
    bool ok = false;
    if (k == FKind::All && b.kind == FKind::Or) {
      const FNode& g = node(b.c0);
      ok = g.kind == FKind::NotIn && g.lhs.is_var && g.lhs.var == 0 &&
           !(g.rhs.is_var && g.rhs.var == 0);
    } else if (k == FKind::Ex && b.kind == FKind::And) {
      const FNode& g = node(b.c0);
      ok = g.kind == FKind::In && g.lhs.is_var && g.lhs.var == 0 &&
           !(g.rhs.is_var && g.rhs.var == 0);
    }
    if (!ok) throw Error(Err::BadInput, "malformed bounded quantifier body");
  }
  FNode n;
  n.kind = k;
  n.c0 = body.id();
  n.bounded = bounded;
  return Formula(FReg::get().intern(std::move(n)));
}

Formula Formula::all(Formula body) { return quantifier(FKind::All, body, false); }
Formula Formula::ex(Formula body) { return quantifier(FKind::Ex, body, false); }

Formula Formula::all_in(Term bound, Formula body) {
  Term inner = shift_term(bound, +1, 0);
  return quantifier(FKind::All, disj(not_in(Term::mk_var(0), inner), body), true);
}

Formula Formula::ex_in(Term bound, Formula body) {
  Term inner = shift_term(bound, +1, 0);
  return quantifier(FKind::Ex, conj(in(Term::mk_var(0), inner), body), true);
}

FKind Formula::kind() const { return node(id_).kind; }
Term Formula::lhs() const { return node(id_).lhs; }
Term Formula::rhs() const { return node(id_).rhs; }
Formula Formula::child0() const { return Formula(node(id_).c0); }
Formula Formula::child1() const { return Formula(node(id_).c1); }
bool Formula::bounded() const { return node(id_).bounded; }

Term Formula::bounded_by() const {
  const FNode& n = node(id_);
  if ((n.kind != FKind::All && n.kind != FKind::Ex) || !n.bounded)
    throw Error(Err::BadInput, "bounded_by on unbounded formula");
  const FNode& body = node(n.c0);
  Term inner = node(body.c0).rhs;
  return shift_term(inner, -1, 1);
}

Formula Formula::negate() const {
  FNode& n = node(id_);
  if (n.negation >= 0) return Formula(static_cast<uint32_t>(n.negation));
  Formula result;
  switch (n.kind) {
    case FKind::In: result = prime(FKind::NotIn, n.lhs, n.rhs); break;
    case FKind::NotIn: result = prime(FKind::In, n.lhs, n.rhs); break;
    case FKind::Eq: result = prime(FKind::NotEq, n.lhs, n.rhs); break;
    case FKind::NotEq: result = prime(FKind::Eq, n.lhs, n.rhs); break;
    case FKind::And: result = disj(child0().negate(), child1().negate()); break;
    case FKind::Or: result = conj(child0().negate(), child1().negate()); break;
    case FKind::All: result = quantifier(FKind::Ex, child0().negate(), n.bounded); break;
    case FKind::Ex: result = quantifier(FKind::All, child0().negate(), n.bounded); break;
  }
  node(id_).negation = static_cast<int>(result.id());
  node(result.id()).negation = static_cast<int>(id_);
  return result;
}

bool Formula::is_delta0() const {
  FNode& n = node(id_);
  if (n.delta0 >= 0) return n.delta0 == 1;
  bool r = true;
  switch (n.kind) {
    case FKind::In:
    case FKind::NotIn:
    case FKind::Eq:
    case FKind::NotEq: r = true; break;
    case FKind::And:
    case FKind::Or: r = child0().is_delta0() && child1().is_delta0(); break;
    case FKind::All:
    case FKind::Ex: r = n.bounded && child0().is_delta0(); break;
  }
  node(id_).delta0 = r ? 1 : 0;
  return r;
}

bool Formula::is_sigma() const {
  switch (kind()) {
    case FKind::In:
    case FKind::NotIn:
    case FKind::Eq:
    case FKind::NotEq: return true;
    case FKind::And:
    case FKind::Or: return child0().is_sigma() && child1().is_sigma();
    case FKind::All: return bounded() && child0().is_sigma();
    case FKind::Ex: return child0().is_sigma();
  }
  return false;
}

bool Formula::is_pi1() const {
  return kind() == FKind::All && !bounded() && child0().is_delta0();
}

unsigned Formula::hth() const {
  FNode& n = node(id_);
  if (n.hth >= 0) return static_cast<unsigned>(n.hth);
  unsigned r = 0;
  if (!is_delta0()) {
    switch (n.kind) {
      case FKind::And:
      case FKind::Or: r = std::max(child0().hth(), child1().hth()) + 1; break;
      case FKind::All:
      case FKind::Ex: r = child0().hth() + 1; break;
      default: r = 0; break;
    }
  }
  node(id_).hth = static_cast<int>(r);
  return r;
}

int Formula::max_free_var() const {
  FNode& n = node(id_);
  if (n.max_free != -2) return n.max_free;
  int r = -1;
  auto term_free = [](const Term& t) { return t.is_var ? static_cast<int>(t.var) : -1; };
  switch (n.kind) {
    case FKind::In:
    case FKind::NotIn:
    case FKind::Eq:
    case FKind::NotEq: r = std::max(term_free(n.lhs), term_free(n.rhs)); break;
    case FKind::And:
    case FKind::Or: r = std::max(child0().max_free_var(), child1().max_free_var()); break;
    case FKind::All:
    case FKind::Ex: r = child0().max_free_var() - 1; break;
  }
  if (r < -1) r = -1;
  node(id_).max_free = r;
  return r;
}

namespace {

Formula subst_rec(Formula f, uint32_t level, const Param& p) {
  const FNode n = node(f.id());
  auto sub_term = [&](const Term& t) -> Term {
    if (!t.is_var) return t;
    if (t.var == level) return Term::mk_param(p);
    if (t.var > level) return Term::mk_var(t.var - 1);
    return t;
  };
  switch (n.kind) {
    case FKind::In:
    case FKind::NotIn:
    case FKind::Eq:
    case FKind::NotEq: return Formula::prime(n.kind, sub_term(n.lhs), sub_term(n.rhs));
    case FKind::And:
      return Formula::conj(subst_rec(f.child0(), level, p), subst_rec(f.child1(), level, p));
    case FKind::Or:
      return Formula::disj(subst_rec(f.child0(), level, p), subst_rec(f.child1(), level, p));
    case FKind::All:
    case FKind::Ex:
      return Formula::quantifier(n.kind, subst_rec(f.child0(), level + 1, p), n.bounded);
  }
  return f;
}

}  // namespace

Formula Formula::substitute(uint32_t var, const Param& p) const {
  if (max_free_var() < static_cast<int>(var))
    throw Error(Err::ArityMismatch, "no free variable with index " + std::to_string(var));
  return subst_rec(*this, var, p);
}

Formula Formula::substitute_keep(uint32_t var, const Param& p) const {
  return subst_rec(*this, var, p);
}

Formula Formula::instantiate(const Param& p) const {
  const FNode& n = node(id_);
  if (n.kind != FKind::All && n.kind != FKind::Ex)
    throw Error(Err::ArityMismatch, "instantiate on non-quantifier");
  return subst_rec(child0(), 0, p);
}

OrdCNF Formula::param_bound() const {
  FNode& n = node(id_);
  if (n.has_k) return n.k;
  OrdCNF r;
  auto term_k = [](const Term& t) { return t.is_var ? OrdCNF() : t.param.rank; };
  switch (n.kind) {
    case FKind::In:
    case FKind::NotIn:
    case FKind::Eq:
    case FKind::NotEq: r = OrdCNF::max(term_k(n.lhs), term_k(n.rhs)); break;
    case FKind::And:
    case FKind::Or: r = OrdCNF::max(child0().param_bound(), child1().param_bound()); break;
    case FKind::All:
    case FKind::Ex: r = child0().param_bound(); break;
  }
  node(id_).k = r;
  node(id_).has_k = true;
  return r;
}

void Formula::collect_params(std::vector<Param>& out) const {
  const FNode& n = node(id_);
  auto add_term = [&](const Term& t) {
    if (!t.is_var) out.push_back(t.param);
  };
  switch (n.kind) {
    case FKind::In:
    case FKind::NotIn:
    case FKind::Eq:
    case FKind::NotEq: add_term(n.lhs); add_term(n.rhs); break;
    case FKind::And:
    case FKind::Or: child0().collect_params(out); child1().collect_params(out); break;
    case FKind::All:
    case FKind::Ex: child0().collect_params(out); break;
  }
}

Formula Formula::relativize(const Param& stage) const {
  const FNode& n = node(id_);
  if (is_delta0()) return *this;
  switch (n.kind) {
    case FKind::And: return conj(child0().relativize(stage), child1().relativize(stage));
    case FKind::Or: return disj(child0().relativize(stage), child1().relativize(stage));
    case FKind::All:
      if (n.bounded) return quantifier(FKind::All, child0().relativize(stage), true);
      return all_in(Term::mk_param(stage), child0().relativize(stage));
    case FKind::Ex:
      if (n.bounded) return quantifier(FKind::Ex, child0().relativize(stage), true);
      return ex_in(Term::mk_param(stage), child0().relativize(stage));
    default: return *this;  // non-Delta0 primes cannot occur
  }
}

// Evaluation ----------------------------------------------------------------

namespace {

// Evaluates a closed Delta0 formula by eager instantiation. Throws
// StageUnavailable when a bounded range cannot be enumerated.
bool eval_closed(Formula f);

bool eval_prime(FKind k, const Param& a, const Param& b) {
  switch (k) {
    case FKind::In: return Param::member(a, b);
    case FKind::NotIn: return !Param::member(a, b);
    case FKind::Eq: return Param::equal(a, b);
    case FKind::NotEq: return !Param::equal(a, b);
    default: throw Error(Err::BadInput, "not a prime");
  }
}

std::vector<Param> bound_range(const Param& bound) {
  switch (bound.kind) {
    case Param::Kind::Set: {
      std::vector<Param> out;
      for (HFSet e : bound.set.elements()) out.push_back(Param::of_set_unranked(e));
      return out;
    }
    case Param::Kind::Stage:
      throw Error(Err::StageUnavailable,
                  "cannot enumerate symbolic stage L_" + bound.stage.str());
    case Param::Kind::Omega:
      throw Error(Err::StageUnavailable, "cannot enumerate omega");
  }
  return {};
}

bool eval_closed(Formula f) {
  FNode& n = node(f.id());
  {
    auto it = FReg::get().known_truths.find(f.id());
    if (it != FReg::get().known_truths.end()) return it->second;
  }
  if (n.truth >= 0) return n.truth == 1;
  bool r = false;
  switch (n.kind) {
    case FKind::In:
    case FKind::NotIn:
    case FKind::Eq:
    case FKind::NotEq:
      if (n.lhs.is_var || n.rhs.is_var) throw Error(Err::UnboundVariable, "open prime");
      r = eval_prime(n.kind, n.lhs.param, n.rhs.param);
      break;
    case FKind::And: r = eval_closed(f.child0()) && eval_closed(f.child1()); break;
    case FKind::Or: r = eval_closed(f.child0()) || eval_closed(f.child1()); break;
    case FKind::All:
    case FKind::Ex: {
      if (!n.bounded) throw Error(Err::NotDelta0, "unbounded quantifier");
      Term bt = f.bounded_by();
      if (bt.is_var) throw Error(Err::UnboundVariable, "open bound");
      bool exists = n.kind == FKind::Ex;
      r = !exists;
      for (const Param& e : bound_range(bt.param)) {
        bool v = eval_closed(f.instantiate(e));
        if (exists && v) { r = true; break; }
        if (!exists && !v) { r = false; break; }
      }
      break;
    }
  }
  node(f.id()).truth = r ? 1 : 0;
  return r;
}

}  // namespace

bool Formula::eval_delta0(const std::vector<HFSet>&) const { return eval_delta0(); }

bool Formula::eval_delta0() const {
  if (!closed()) throw Error(Err::UnboundVariable, "formula not closed");
  if (!is_delta0()) throw Error(Err::NotDelta0, "formula not Delta0");
  return eval_closed(*this);
}

namespace {

bool sat_rec(Formula f, const std::vector<HFSet>& m, std::vector<HFSet>& env) {
  const FNode n = node(f.id());
  auto term_set = [&](const Term& t) -> HFSet {
    if (t.is_var) {
      if (t.var >= env.size()) throw Error(Err::UnboundVariable, "unbound variable");
      return env[env.size() - 1 - t.var];
    }
    if (t.param.kind == Param::Kind::Set) return t.param.set;
    if (t.param.kind == Param::Kind::Stage && t.param.materialized) return t.param.set;
    throw Error(Err::StageUnavailable, "symbolic parameter in structure satisfaction");
  };
  switch (n.kind) {
    case FKind::In: return term_set(n.rhs).contains(term_set(n.lhs));
    case FKind::NotIn: return !term_set(n.rhs).contains(term_set(n.lhs));
    case FKind::Eq: return term_set(n.lhs) == term_set(n.rhs);
    case FKind::NotEq: return !(term_set(n.lhs) == term_set(n.rhs));
    case FKind::And: return sat_rec(f.child0(), m, env) && sat_rec(f.child1(), m, env);
    case FKind::Or: return sat_rec(f.child0(), m, env) || sat_rec(f.child1(), m, env);
    case FKind::All:
      for (HFSet e : m) {
        env.push_back(e);
        bool v = sat_rec(f.child0(), m, env);
        env.pop_back();
        if (!v) return false;
      }
      return true;
    case FKind::Ex:
      for (HFSet e : m) {
        env.push_back(e);
        bool v = sat_rec(f.child0(), m, env);
        env.pop_back();
        if (v) return true;
      }
      return false;
  }
  return false;
}

}  // namespace

bool Formula::satisfied_in(const std::vector<HFSet>& m) const {
  std::vector<HFSet> env;
  return sat_rec(*this, m, env);
}

void Formula::register_known_truth(Formula f, bool value) {
  FReg::get().known_truths[f.id()] = value;
}

// Display / serialization ----------------------------------------------------

namespace {

std::string term_str(const Term& t, int depth) {
  if (t.is_var) {
    int level = depth - 1 - static_cast<int>(t.var);
    return "x" + std::to_string(level);
  }
  return t.param.display();
}

std::string disp_rec(Formula f, int depth) {
  const FNode n = node(f.id());
  switch (n.kind) {
    case FKind::In: return term_str(n.lhs, depth) + " in " + term_str(n.rhs, depth);
    case FKind::NotIn: return term_str(n.lhs, depth) + " !in " + term_str(n.rhs, depth);
    case FKind::Eq: return term_str(n.lhs, depth) + " = " + term_str(n.rhs, depth);
    case FKind::NotEq: return term_str(n.lhs, depth) + " != " + term_str(n.rhs, depth);
    case FKind::And:
      return "(" + disp_rec(f.child0(), depth) + " & " + disp_rec(f.child1(), depth) + ")";
    case FKind::Or:
      return "(" + disp_rec(f.child0(), depth) + " | " + disp_rec(f.child1(), depth) + ")";
    case FKind::All:
    case FKind::Ex: {
      std::string q = n.kind == FKind::All ? "A" : "E";
      std::string v = "x" + std::to_string(depth);
      if (n.bounded) {
        Term bt = f.bounded_by();
        Formula rest = n.kind == FKind::All ? f.child0().child1() : f.child0().child1();
        return q + v + " in " + term_str(bt, depth) + ". " + disp_rec(rest, depth + 1);
      }
      return q + v + ". " + disp_rec(f.child0(), depth + 1);
    }
  }
  return "?";
}

Sexpr term_sexpr(const Term& t) {
  if (t.is_var) {
    Sexpr s = Sexpr::make_list();
    s.add_atom("var").add_atom(std::to_string(t.var));
    return s;
  }
  return t.param.to_sexpr();
}

Term term_from_sexpr(const Sexpr& s) {
  if (s.head() == "var") return Term::mk_var(static_cast<uint32_t>(std::stoul(s.at(1).atom)));
  return Term::mk_param(Param::from_sexpr(s));
}

}  // namespace

std::string Formula::display() const { return disp_rec(*this, 0); }

Sexpr Formula::to_sexpr() const {
  const FNode n = node(id_);
  Sexpr s = Sexpr::make_list();
  switch (n.kind) {
    case FKind::In: s.add_atom("in"); break;
    case FKind::NotIn: s.add_atom("notin"); break;
    case FKind::Eq: s.add_atom("eq"); break;
    case FKind::NotEq: s.add_atom("noteq"); break;
    case FKind::And: s.add_atom("and"); break;
    case FKind::Or: s.add_atom("or"); break;
    case FKind::All: s.add_atom(n.bounded ? "ball" : "all"); break;
    case FKind::Ex: s.add_atom(n.bounded ? "bex" : "ex"); break;
  }
  if (is_prime_kind(n.kind)) {
    s.add(term_sexpr(n.lhs)).add(term_sexpr(n.rhs));
  } else if (n.kind == FKind::And || n.kind == FKind::Or) {
    s.add(child0().to_sexpr()).add(child1().to_sexpr());
  } else {
    s.add(child0().to_sexpr());
  }
  return s;
}

Formula Formula::from_sexpr(const Sexpr& s) {
  const std::string h = s.head();
  if (h == "in") return in(term_from_sexpr(s.at(1)), term_from_sexpr(s.at(2)));
  if (h == "notin") return not_in(term_from_sexpr(s.at(1)), term_from_sexpr(s.at(2)));
  if (h == "eq") return eq(term_from_sexpr(s.at(1)), term_from_sexpr(s.at(2)));
  if (h == "noteq") return not_eq_(term_from_sexpr(s.at(1)), term_from_sexpr(s.at(2)));
  if (h == "and") return conj(from_sexpr(s.at(1)), from_sexpr(s.at(2)));
  if (h == "or") return disj(from_sexpr(s.at(1)), from_sexpr(s.at(2)));
  if (h == "all") return all(from_sexpr(s.at(1)));
  if (h == "ex") return ex(from_sexpr(s.at(1)));
  if (h == "ball") return quantifier(FKind::All, from_sexpr(s.at(1)), true);
  if (h == "bex") return quantifier(FKind::Ex, from_sexpr(s.at(1)), true);
  throw Error(Err::BadInput, "not a formula: " + s.str());
}

}  // namespace bhcalc
