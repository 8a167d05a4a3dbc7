// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "bhcalc/formula.hpp"

#include <random>

#include "doctest.h"

using namespace bhcalc;

namespace {

Term pv(HFSet s) { return Term::mk_param(Param::of_set(s, OrdCNF(s.vn_rank()))); }

// Random closed NNF formulas over small parameters (possibly quantified).
Formula random_formula(std::mt19937_64& rng, int depth, int vars) {
  auto term = [&](int d) -> Term {
    if (vars > 0 && rng() % 3 == 0) return Term::mk_var(rng() % vars);
    (void)d;
    return pv(HFSet::numeral(rng() % 3));
  };
  unsigned c = rng() % (depth > 0 ? 6 : 4);
  switch (c) {
    case 0: return Formula::in(term(0), term(0));
    case 1: return Formula::not_in(term(0), term(0));
    case 2: return Formula::eq(term(0), term(0));
    case 3: return Formula::not_eq_(term(0), term(0));
    case 4: {
      Formula a = random_formula(rng, depth - 1, vars);
      Formula b = random_formula(rng, depth - 1, vars);
      return rng() % 2 ? Formula::conj(a, b) : Formula::disj(a, b);
    }
    default: {
      // quantifier; bounded with probability 1/2
      bool bounded = rng() % 2;
      if (bounded) {
        Term bound = pv(HFSet::numeral(1 + rng() % 2));
        auto saved = vars;
        vars += 1;
        Formula body = random_formula(rng, depth - 1, vars);
        vars = saved;
        return rng() % 2 ? Formula::all_in(bound, body) : Formula::ex_in(bound, body);
      }
      auto saved = vars;
      vars += 1;
      Formula body = random_formula(rng, depth - 1, vars);
      vars = saved;
      return rng() % 2 ? Formula::all(body) : Formula::ex(body);
    }
  }
}

}  // namespace

TEST_CASE("negate basics") {
  Term a = pv(HFSet::empty()), b = pv(HFSet::numeral(1));
  CHECK(Formula::in(a, b).negate() == Formula::not_in(a, b));
  Formula f = Formula::conj(Formula::in(a, b), Formula::eq(a, a));
  CHECK(f.negate() == Formula::disj(Formula::not_in(a, b), Formula::not_eq_(a, a)));
}

TEST_CASE("negate is involutive and preserves hth and markers") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 100; ++i) {
    Formula f = random_formula(rng, 3, 0);
    CHECK(f.negate().negate() == f);
    CHECK(f.negate().hth() == f.hth());
    CHECK(f.is_delta0() == f.negate().is_delta0());
  }
}

TEST_CASE("delta0 evaluation") {
  HFSet e = HFSet::empty();
  HFSet one = HFSet::numeral(1);
  std::vector<HFSet> universe = {e, one};
  CHECK(Formula::eq(pv(e), pv(e)).eval_delta0(universe));
  CHECK(Formula::in(pv(e), pv(one)).eval_delta0(universe));
  CHECK(!Formula::in(pv(one), pv(e)).eval_delta0());
  // Ax in 1 (x = 0): bounded, true
  Formula f = Formula::all_in(pv(one), Formula::eq(Term::mk_var(0), pv(e)));
  CHECK(f.eval_delta0());
  // unbounded quantifier raises NotDelta0
  Formula g = Formula::all(Formula::eq(Term::mk_var(0), Term::mk_var(0)));
  CHECK_THROWS_AS(g.eval_delta0(), Error);
  // open formula raises UnboundVariable
  Formula h = Formula::eq(Term::mk_var(0), pv(e));
  CHECK_THROWS_AS(h.eval_delta0(), Error);
}

TEST_CASE("limit ordinal formula is false on small HF sets") {
  // the usual Delta0 limit-ordinal formula, instantiated at {0}: false
  // (built inline; the axioms module owns the canonical copy)
  Term x = Term::mk_var(0);
  Formula trans = Formula::all_in(x, Formula::all_in(Term::mk_var(0), Formula::in(Term::mk_var(0), Term::mk_var(2))));
  Formula nonempty = Formula::ex_in(x, Formula::eq(Term::mk_var(0), Term::mk_var(0)));
  Formula nomax = Formula::all_in(x, Formula::ex_in(Term::mk_var(1), Formula::in(Term::mk_var(1), Term::mk_var(0))));
  Formula lim_ish = Formula::conj(Formula::conj(trans, nonempty), nomax);
  for (unsigned n = 0; n < 4; ++n) {
    Formula inst = Formula::ex(lim_ish).instantiate(Param::of_set(HFSet::numeral(n), OrdCNF(0)));
    CHECK(!inst.eval_delta0());
  }
}

TEST_CASE("substitute then eval agrees with environment-based satisfaction") {
  std::mt19937_64 rng(43);
  std::vector<HFSet> m = {HFSet::empty(), HFSet::numeral(1), HFSet::numeral(2),
                          HFSet::singleton(HFSet::numeral(1))};
  int checked = 0;
  for (int i = 0; i < 400 && checked < 100; ++i) {
    Formula f = random_formula(rng, 2, 1);  // one free variable
    if (f.max_free_var() != 0) continue;
    for (HFSet w : m) {
      Formula inst = Formula::ex(f).instantiate(Param::of_set(w, OrdCNF(w.vn_rank())));
      if (!inst.is_delta0()) continue;
      // environment-based evaluation over the transitive world
      bool via_env = inst.satisfied_in(m);
      // bounded-eval is absolute; satisfied_in treats bounded quantifiers
      // over the full world, which agrees on transitive worlds
      CHECK(via_env == inst.eval_delta0());
      ++checked;
    }
  }
  CHECK(checked >= 50);
}

TEST_CASE("bound parameter substitution keeps markings") {
  HFSet a = HFSet::numeral(2);
  Formula f = Formula::all(Formula::all_in(Term::mk_var(0), Formula::in(Term::mk_var(0), Term::mk_var(1))));
  Formula inst = f.instantiate(Param::of_set(a, OrdCNF(2)));
  CHECK(inst.kind() == FKind::All);
  CHECK(inst.bounded());
  CHECK(inst.bounded_by().param.set == a);
}

TEST_CASE("relativization") {
  Param stage = Param::of_stage(OrdCNF(2), HFSet::numeral(3));
  Term a = pv(HFSet::empty());
  Formula d0 = Formula::in(a, pv(HFSet::numeral(1)));
  CHECK(d0.relativize(stage) == d0);
  Formula f = Formula::ex(Formula::eq(Term::mk_var(0), a));
  Formula fr = f.relativize(stage);
  CHECK(fr.bounded());
  CHECK(fr.is_delta0());
  std::mt19937_64 rng(44);
  for (int i = 0; i < 100; ++i) {
    Formula g = random_formula(rng, 3, 0);
    CHECK(g.relativize(stage).negate() == g.negate().relativize(stage));
  }
}

TEST_CASE("relativization parameter bound") {
  // k(phi^beta) <= max(k(phi), beta)
  std::mt19937_64 rng(77);
  for (int i = 0; i < 100; ++i) {
    Formula f = random_formula(rng, 3, 0);
    OrdCNF beta(1 + rng() % 5);
    Param stage = Param::of_stage(beta, std::nullopt);
    CHECK(f.relativize(stage).param_bound() <= OrdCNF::max(f.param_bound(), beta));
  }
}

TEST_CASE("eval invariant under universe enlargement") {
  HFSet e = HFSet::empty();
  Formula f = Formula::in(pv(e), pv(HFSet::numeral(1)));
  std::vector<HFSet> u1 = {e, HFSet::numeral(1)};
  std::vector<HFSet> u2 = u1;
  u2.push_back(HFSet::numeral(2));
  CHECK(f.eval_delta0(u1) == f.eval_delta0(u2));
}

TEST_CASE("stage and omega parameters") {
  Param omega = Param::of_omega();
  Param big_stage = Param::of_stage(OrdCNF::omega_pow(OrdCNF(2)), std::nullopt);
  Param small = Param::of_set(HFSet::numeral(3), OrdCNF(0));
  CHECK(Param::member(small, omega));          // 3 is a numeral
  CHECK(Param::member(small, big_stage));      // rank 0 < w^2
  CHECK(Param::member(omega, big_stage));      // omega < w^2... rank w < w^2
  CHECK(!Param::member(omega, small));
  CHECK(!Param::equal(omega, small));
  Formula f = Formula::in(Term::mk_param(small), Term::mk_param(big_stage));
  CHECK(f.eval_delta0());
}
