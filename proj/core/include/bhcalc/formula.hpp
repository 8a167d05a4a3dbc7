// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef BHCALC_FORMULA_HPP
#define BHCALC_FORMULA_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bhcalc/hfset.hpp"
#include "bhcalc/ordinal.hpp"
#include "bhcalc/sexpr.hpp"

namespace bhcalc {

// A parameter occurring in a formula: a set together with its L-rank.
// Stage parameters L_beta that cannot be materialized at desk scale are
// kept symbolic; membership in them is decided by rank comparison. The
// omega parameter is the witness for the infinity axiom.
struct Param {
  enum class Kind : uint8_t { Set, Stage, Omega };

  Kind kind = Kind::Set;
  OrdCNF rank;           // |a|, the L-rank
  bool rank_exact = true;
  HFSet set;             // Set: the set itself; Stage: materialization if any
  bool materialized = true;
  OrdCNF stage;          // Stage: the index beta (rank == beta)

  static Param of_set(HFSet s, OrdCNF rank);
  // For truth-only evaluation where the L-rank is unknown.
  static Param of_set_unranked(HFSet s);
  // A stage parameter L_beta; pass the stage's set when it exists.
  static Param of_stage(OrdCNF beta, std::optional<HFSet> mat);
  static Param of_omega();

  bool operator==(const Param& o) const;
  std::strong_ordering order(const Param& o) const;  // total order
  size_t hash() const;

  // Semantic membership a in b and equality a = b over the real sets.
  static bool member(const Param& a, const Param& b);
  static bool equal(const Param& a, const Param& b);

  std::string display() const;
  Sexpr to_sexpr() const;
  static Param from_sexpr(const Sexpr& s);
};

// A term: a de Bruijn variable or a parameter.
struct Term {
  bool is_var = false;
  uint32_t var = 0;
  Param param;

  static Term mk_var(uint32_t i) {
    Term t;
    t.is_var = true;
    t.var = i;
    return t;
  }
  static Term mk_param(Param p) {
    Term t;
    t.param = std::move(p);
    return t;
  }
  bool operator==(const Term& o) const;
  std::strong_ordering order(const Term& o) const;
  size_t hash() const;
};

enum class FKind : uint8_t { In, NotIn, Eq, NotEq, And, Or, All, Ex };

// First-order set formulas in negation normal form, interned in a global
// registry; a Formula is a handle. Negation occurs only on prime formulas.
// A quantifier marked bounded has the shape All(x !in t \/ psi) resp.
// Ex(x in t /\ psi) with t distinct from the bound variable.
class Formula {
 public:
  Formula() : id_(UINT32_MAX) {}
  bool valid() const { return id_ != UINT32_MAX; }
  uint32_t id() const { return id_; }
  static Formula from_id(uint32_t id) { return Formula(id); }

  static Formula prime(FKind k, Term lhs, Term rhs);
  static Formula in(Term a, Term b) { return prime(FKind::In, a, b); }
  static Formula not_in(Term a, Term b) { return prime(FKind::NotIn, a, b); }
  static Formula eq(Term a, Term b) { return prime(FKind::Eq, a, b); }
  static Formula not_eq_(Term a, Term b) { return prime(FKind::NotEq, a, b); }
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  // Unbounded quantifiers.
  static Formula all(Formula body);
  static Formula ex(Formula body);
  // Bounded quantifiers: `bound` is given in outer coordinates and `body`
  // in inner coordinates (Var 0 is the quantified variable).
  static Formula all_in(Term bound, Formula body);
  static Formula ex_in(Term bound, Formula body);
  // Marks a raw quantifier body as bounded; validates the required shape.
  static Formula quantifier(FKind k, Formula body, bool bounded);

  FKind kind() const;
  Term lhs() const;
  Term rhs() const;
  Formula child0() const;  // And/Or left, All/Ex body
  Formula child1() const;  // And/Or right
  bool bounded() const;
  // The bounding term of a bounded quantifier, in outer coordinates.
  Term bounded_by() const;

  bool operator==(const Formula& o) const { return id_ == o.id_; }
  bool operator!=(const Formula& o) const { return id_ != o.id_; }
  bool operator<(const Formula& o) const { return id_ < o.id_; }

  // NNF negation; involutive, preserves bounded markings.
  Formula negate() const;
  bool is_delta0() const;
  // A Sigma formula contains no unbounded universal quantifier; a Pi1
  // formula is an unbounded universal quantifier over a Delta0 body.
  bool is_sigma() const;
  bool is_pi1() const;
  // Height per the cut-elimination measure: 0 on Delta0 formulas,
  // max of parts + 1 on non-Delta0 connectives, body + 1 on quantifiers.
  unsigned hth() const;
  // Largest free de Bruijn index, or -1 when closed.
  int max_free_var() const;
  bool closed() const { return max_free_var() < 0; }

  // Capture-free substitution of the variable with de Bruijn index `var`
  // (counted at the top level) by a parameter.
  Formula substitute(uint32_t var, const Param& p) const;
  // Same, but tolerates a variable with no occurrences (higher indices
  // still shift down).
  Formula substitute_keep(uint32_t var, const Param& p) const;
  // Instantiates the body of this quantifier with a witness.
  Formula instantiate(const Param& p) const;

  // max rank of any parameter (0 when there are none) — the measure k(.)
  OrdCNF param_bound() const;
  void collect_params(std::vector<Param>& out) const;

  // phi^beta: every unbounded quantifier becomes bounded by L_beta.
  Formula relativize(const Param& stage) const;

  // Truth of a closed Delta0 formula. The universe argument is only a
  // sanity anchor: Delta0 truth is absolute over transitive sets.
  bool eval_delta0(const std::vector<HFSet>& universe) const;
  bool eval_delta0() const;

  // Tarskian satisfaction over the finite structure (m, in); quantifiers
  // range over m. All parameters must project into m's world.
  bool satisfied_in(const std::vector<HFSet>& m) const;

  // Registers a closed formula whose truth is known by a meta-argument
  // (used for statements about the symbolic omega witness).
  static void register_known_truth(Formula f, bool value);

  std::string display() const;
  Sexpr to_sexpr() const;
  static Formula from_sexpr(const Sexpr& s);

 private:
  explicit Formula(uint32_t id) : id_(id) {}
  uint32_t id_;
};

struct FormulaHash {
  size_t operator()(const Formula& f) const { return f.id(); }
};

// Errors ------------------------------------------------------------------

enum class Err {
  NotDelta0,
  UnboundVariable,
  ArityMismatch,
  NotTransitive,
  MissingMarkers,
  NotInHierarchy,
  EmptySet,
  NotANode,
  NotExtensional,
  IndexZero,
  NotEmbedding,
  DomainGap,
  SearchSpaceTooLarge,
  FuelExhausted,
  OracleGap,
  InconsistentExtension,
  IrrelevantPremise,
  PathNotInTree,
  StageUnavailable,
  EmptyEndSequent,
  UnboundedBranching,
  UnknownSuite,
  WitnessExhausted,
  BadInput,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err kind, const std::string& msg)
      : std::runtime_error(std::string(err_name(kind)) + ": " + msg), kind_(kind) {}
  Err kind() const { return kind_; }

 private:
  Err kind_;
};

}  // namespace bhcalc

#endif  // BHCALC_FORMULA_HPP
