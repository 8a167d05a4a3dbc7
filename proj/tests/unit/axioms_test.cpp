// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "bhcalc/axioms.hpp"

#include "doctest.h"

using namespace bhcalc;

TEST_CASE("display order and shapes of the base axioms") {
  AxiomList ax;
  // theta_0 Equality: four unbounded universal quantifiers over a Delta0 matrix
  Formula eq = ax.axiom(0);
  CHECK(eq.hth() == 4);
  Formula cur = eq;
  for (int i = 0; i < 4; ++i) {
    CHECK(cur.kind() == FKind::All);
    CHECK(!cur.bounded());
    cur = cur.child0();
  }
  CHECK(cur.is_delta0());

  // theta_1 Extensionality: two quantifiers over a Delta0 matrix
  Formula ext = ax.axiom(1);
  CHECK(ext.hth() == 2);

  // theta_2 Pairing: AxAyEz
  Formula pair = ax.axiom(2);
  CHECK(pair.hth() == 3);
  CHECK(pair.child0().child0().kind() == FKind::Ex);

  // theta_3 Union
  CHECK(ax.axiom(3).hth() == 2);

  // theta_4 Infinity: an existential limit-ordinal statement
  Formula inf = ax.axiom(4);
  CHECK(inf.kind() == FKind::Ex);
  CHECK(!inf.bounded());
  CHECK(inf.child0().is_delta0());
  CHECK(inf.hth() == 1);

  // all closed
  for (unsigned k = 0; k < 30; ++k) CHECK(ax.axiom(k).closed());
  // determinism
  for (unsigned k = 0; k < 30; ++k) CHECK(ax.axiom(k) == ax.axiom(k));
}

TEST_CASE("schemata: parameter bound, disjunction matrices, height cap") {
  AxiomList ax;
  for (unsigned k = 5; k < 60; ++k) {
    AxiomList::Info info = ax.info(k);
    CHECK(info.params <= AxiomList::kParamBound);
    Formula f = ax.axiom(k);
    CHECK(f.closed());
    CHECK(f.hth() <= AxiomList::hth_bound());
    if (info.scheme == AxiomList::Scheme::Collection) {
      CHECK(f.hth() == info.params + 5);
      // peel the universal prefix; the disjunction of the two halves remains
      Formula cur = f;
      while (cur.kind() == FKind::All && !cur.bounded()) cur = cur.child0();
      CHECK(cur.kind() == FKind::Or);
      // the collection matrix is syntactically a disjunction: recover it
      // from the right disjunct Ez Ax in w Ey in z theta
      Formula r = cur.child1();
      CHECK(r.kind() == FKind::Ex);
      CHECK(!r.bounded());
      Formula inner = r.child0();      // bounded All
      CHECK(inner.kind() == FKind::All);
      CHECK(inner.bounded());
      Formula exy = inner.child0().child1();  // bounded Ex
      CHECK(exy.kind() == FKind::Ex);
      CHECK(exy.bounded());
      Formula theta = exy.child0().child1();
      CHECK(theta.kind() == FKind::Or);
      CHECK(theta.is_delta0());
    } else {
      CHECK(info.scheme == AxiomList::Scheme::Separation);
      CHECK(f.hth() == info.params + 2);
    }
  }
}

TEST_CASE("limit ordinal at omega is registered true") {
  AxiomList ax;
  Formula lim = AxiomList::lim_at_omega();
  CHECK(lim.is_delta0());
  CHECK(lim.eval_delta0());
  // but no finite set is a limit ordinal
  Formula body = AxiomList::lim_body();
  for (unsigned n = 0; n < 4; ++n) {
    Formula inst = Formula::ex(body).instantiate(Param::of_set(HFSet::numeral(n), OrdCNF(0)));
    CHECK(!inst.eval_delta0());
  }
}
