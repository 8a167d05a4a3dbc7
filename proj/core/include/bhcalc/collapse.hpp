// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef BHCALC_COLLAPSE_HPP
#define BHCALC_COLLAPSE_HPP

#include <optional>
#include <string>
#include <vector>

#include "bhcalc/epsterm.hpp"
#include "bhcalc/ordinal.hpp"

namespace bhcalc {

// A finite ranked well-ordering: element i precedes element j iff i < j,
// and each element carries an OrdCNF rank. The induced family
// T_a = { s | rank(s) < a } is compatible by construction.
struct FiniteWop {
  std::vector<std::string> names;  // ascending listing order
  std::vector<OrdCNF> ranks;

  size_t size() const { return ranks.size(); }
  Sexpr to_sexpr() const;
  static FiniteWop from_sexpr(const Sexpr& s);
};

// A total assignment of collapse values to a FiniteWop's elements.
struct WopCollapse {
  std::vector<OrdCNF> values;
  Sexpr to_sexpr(const FiniteWop& T) const;
  static WopCollapse from_sexpr(const Sexpr& s, const FiniteWop& T);
};

struct BhViolation {
  int clause;  // 0: codomain, 1: (BH1), 2: (BH2)
  size_t i, j;
  std::string detail;
};

// Checks (BH1) rank(s) < theta(s) and (BH2) s < t and rank(s) < theta(t)
// implies theta(s) < theta(t), plus the codomain bound; empty iff accepted.
std::vector<BhViolation> check_bh(const FiniteWop& T, const WopCollapse& theta,
                                  const OrdCNF& alpha);

// The D_T recursion: a(0) = rank(s)+1, a(n+1) = sup{ theta(t)+1 | t in
// T_{a(n)}, t < s }, theta(s) = sup_n a(n); stabilization detected by value
// equality of successive a(n).
WopCollapse synthesize_collapse(const FiniteWop& T);

// Second route to the same display: theta(s) is computed as the fixpoint of
// x -> max(rank(s)+1, sup{ theta(t)+1 | t < s, rank(t) < x }) from below,
// with no explicit sequence. Used as an oracle for synthesize_collapse.
WopCollapse synthesize_collapse_reference(const FiniteWop& T);

// Exhaustive search over grid assignments; a witness or nullopt. Throws
// SearchSpaceTooLarge when grid^|T| is unreasonable.
std::optional<WopCollapse> brute_force_collapse_exists(const FiniteWop& T,
                                                       const OrdCNF& alpha_bound,
                                                       const std::vector<OrdCNF>& grid);

// A finite partial collapse over eps-terms (a frozen oracle snapshot).
class TermCollapse {
 public:
  explicit TermCollapse(const RankedBase& base) : base_(&base) {}
  const RankedBase& base() const { return *base_; }

  void insert(const EpsTerm& t, OrdCNF value);
  std::optional<OrdCNF> lookup(const EpsTerm& t) const;
  const std::vector<std::pair<EpsTerm, OrdCNF>>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }

  // Pairwise (BH1)/(BH2) over the domain, with rank(s) = eps_star(s).
  std::vector<BhViolation> check() const;

 private:
  const RankedBase* base_;
  std::vector<std::pair<EpsTerm, OrdCNF>> entries_;  // sorted by term order
};

// Seed X for a C-set: finitely many listed ordinals plus an optional
// initial segment {g | g < below} (the finite-support reading of C(t, b)).
struct CsetSeed {
  std::vector<OrdCNF> elems;
  std::optional<OrdCNF> below;
};

// Decides membership in C^theta(t, X) by saturation: X u {0}; closure under
// s* -> s; theta-images of established members below t; downward closure
// under Omega. Fuel bounds the saturation; FuelExhausted is an error, never
// a silent false.
class CsetEngine {
 public:
  CsetEngine(const TermCollapse& theta, EpsTerm t, CsetSeed seed, uint64_t fuel = 10000);

  bool member(const EpsTerm& s) const;
  bool member_ord(const OrdCNF& g) const;

  // The ordinals the saturation has certified as members (seed elements and
  // theta-images); the `below` segment is reported separately.
  const std::vector<OrdCNF>& established_ords() const { return established_; }
  const std::optional<OrdCNF>& below() const { return seed_below_; }

 private:
  void saturate(uint64_t fuel);

  const TermCollapse& theta_;
  EpsTerm t_;
  std::vector<OrdCNF> established_;
  std::optional<OrdCNF> seed_below_;
  std::optional<OrdCNF> max_established_;
};

// Decides s in C^theta(t, X); FuelExhausted is reported, never a silent
// false.
bool cset_member(const TermCollapse& theta, const EpsTerm& t, const CsetSeed& seed,
                 const EpsTerm& s, uint64_t fuel = 10000);

// H_t^theta[b_1,...,b_k] = C^theta(t+1, {b_1,...,b_k}).
CsetEngine h_operator(const TermCollapse& theta, const EpsTerm& t, std::vector<OrdCNF> params,
                      const OrdCNF& alpha, uint64_t fuel = 10000);
bool h_member(const TermCollapse& theta, const EpsTerm& t, std::vector<OrdCNF> params,
              const OrdCNF& alpha, const EpsTerm& query, uint64_t fuel = 10000);

// Incrementally extended collapse: each new term receives the least OrdCNF
// value consistent with (BH1)/(BH2) against all previously assigned terms.
// Ascending query order never fails; a failed extension is an error.
class GreedyThetaOracle {
 public:
  explicit GreedyThetaOracle(const RankedBase& base) : map_(base) {}

  // Returns the value, assigning one first if needed (InconsistentExtension
  // when no consistent value exists; OracleGap when frozen and missing).
  OrdCNF theta(const EpsTerm& t);
  std::optional<OrdCNF> lookup(const EpsTerm& t) const { return map_.lookup(t); }

  // Sorts the batch ascending and assigns in that order.
  void assign_ascending(std::vector<EpsTerm> terms);

  // Recording mode: unknown queries are collected and answered with a large
  // placeholder instead of being assigned (used by the query pre-pass).
  void start_recording();
  std::vector<EpsTerm> stop_recording();
  bool recording() const { return recording_; }

  void set_frozen(bool frozen) { frozen_ = frozen; }
  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }
  const TermCollapse& map() const { return map_; }

 private:
  OrdCNF assign(const EpsTerm& t);

  TermCollapse map_;
  bool frozen_ = false;
  bool recording_ = false;
  std::vector<EpsTerm> recorded_;
};

}  // namespace bhcalc

#endif  // BHCALC_COLLAPSE_HPP
