// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef BHCALC_LHIER_HPP
#define BHCALC_LHIER_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bhcalc/formula.hpp"
#include "bhcalc/hfset.hpp"
#include "bhcalc/ordinal.hpp"

namespace bhcalc {

// A pair <stage, set> from the ranked hierarchy; stage is minimal with
// set in L_{stage+1}. At desk scale stages are naturals (kept as OrdCNF
// to stay uniform with the general indices).
struct RankedElem {
  OrdCNF stage;
  HFSet set;

  bool operator==(const RankedElem& o) const { return stage == o.stage && set == o.set; }
  Param to_param() const { return Param::of_set(set, stage); }
  std::string display() const { return "<" + stage.str() + "," + set.display() + ">"; }
};

// Finite stages L_0 <= ... <= L_n of the constructible hierarchy over a
// transitive u with a fixed enumeration. Each L_{m+1} is the set of
// first-order definable subsets of (L_m, in) with parameters; over a finite
// structure that closure is exactly the full power set, which the builder
// reaches by formula enumeration plus closure and then verifies.
class StageUniverse {
 public:
  // u transitive with 0,1 in u; the enumeration is the listing order.
  static StageUniverse build(std::vector<HFSet> u_enumeration, unsigned depth,
                             unsigned formula_size_bound = 3);

  unsigned depth() const { return static_cast<unsigned>(stages_.size()) - 1; }
  const std::vector<HFSet>& u() const { return u_; }
  const std::vector<HFSet>& stage(unsigned m) const;
  // All elements of the ranked stage bold-L_m (== L_m with ranks attached).
  std::vector<RankedElem> ranked_stage(unsigned m) const;

  bool in_stage(HFSet a, unsigned m) const;

  // |a| = min{ m | a in L_{m+1} }; throws NotInHierarchy beyond depth.
  OrdCNF rank_of(HFSet a) const;
  // Rank of a set one level beyond the built stages (all elements cached);
  // justified by Def(L_m) = P(L_m) over finite structures.
  OrdCNF rank_extended(HFSet a) const;
  unsigned rank_of_nat(HFSet a) const;
  RankedElem ranked(HFSet a) const { return {rank_of(a), a}; }

  // The stage L_beta as a set (available for beta <= depth+1 at desk
  // scale; the top one is the power set of the deepest built stage).
  std::optional<HFSet> stage_as_set(const OrdCNF& beta) const;
  Param stage_param(const OrdCNF& beta) const;

  // Strict total order on ranked elements: rank first, then u-members by
  // enumeration order, then the fixed code order. Compatible across stages.
  std::strong_ordering stage_order_compare(const RankedElem& a, const RankedElem& b) const;
  RankedElem min_choice(const std::vector<RankedElem>& xs) const;

  // Markers 0 and 1 (as rank-0 elements of u).
  RankedElem marker(unsigned i) const;
  std::optional<unsigned> u_index(HFSet a) const;

  Sexpr stage_dump(unsigned m) const;

 private:
  bool stage_contains(HFSet a, unsigned m) const;

  std::vector<HFSet> u_;
  std::vector<std::vector<HFSet>> stages_;
  std::unordered_map<uint32_t, unsigned> rank_cache_;
};

// The definable-subset engine, exposed for the oracle tests: all subsets of
// `domain` of the form {z in domain | (domain,in) |= phi(z, params)} where
// phi ranges over formulas up to the given syntactic size bound.
std::vector<HFSet> definable_subsets(const std::vector<HFSet>& domain, unsigned size_bound);

// Transitive collapse of a finite extensional structure; returns the
// collapsed sets in input order. Throws NotExtensional.
std::vector<HFSet> mostowski_collapse(const std::vector<HFSet>& structure);

}  // namespace bhcalc

#endif  // BHCALC_LHIER_HPP
