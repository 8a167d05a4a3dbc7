// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "bhcalc/axioms.hpp"

#include <map>

namespace bhcalc {

namespace {

Term V(uint32_t i) { return Term::mk_var(i); }

// --- Delta0 matrix schemas ---------------------------------------------------
//
// A schema is a tiny formula tree over a fixed supply of named slots plus
// schema-local bound variables; materializing maps each slot to a concrete
// de Bruijn index at the insertion depth.

struct Schema {
  enum class K : uint8_t { Prime, And, Or, BAll, BEx } k;
  FKind rel = FKind::In;            // Prime
  int a = 0, b = 0;                 // operand codes: >=0 supply slot, <0 local binder (-1-i)
  int bound = 0;                    // BAll/BEx bound operand code
  std::vector<Schema> kids;

  bool is_disjunction() const { return k == K::Or; }
  void used_slots(std::vector<bool>& used) const {
    auto mark = [&](int code) {
      if (code >= 0) used[static_cast<size_t>(code)] = true;
    };
    if (k == K::Prime) {
      mark(a);
      mark(b);
    } else if (k == K::BAll || k == K::BEx) {
      mark(bound);
    }
    for (const auto& c : kids) c.used_slots(used);
  }
};

// Decodes bits of m into a schema over `supply_size` slots; deterministic
// and total. Local binder depth is capped at 2.
struct BitStream {
  uint64_t v;
  unsigned take(unsigned n) {
    unsigned r = static_cast<unsigned>(v & ((1u << n) - 1));
    v >>= n;
    return r;
  }
};

Schema decode_schema(BitStream& bits, unsigned supply_size, unsigned local_depth,
                     unsigned conn_budget) {
  unsigned scope = supply_size + local_depth;
  auto pick = [&](void) -> int {
    unsigned x = bits.take(3) % scope;
    if (x < supply_size) return static_cast<int>(x);
    return -1 - static_cast<int>(x - supply_size);
  };
  unsigned tag = conn_budget == 0 ? 0 : bits.take(2);
  if (tag == 2 && local_depth >= 2) tag = 0;
  Schema s;
  switch (tag) {
    case 0:
    case 3: {  // prime
      s.k = Schema::K::Prime;
      unsigned rel = bits.take(2);
      s.rel = rel == 0 ? FKind::In : rel == 1 ? FKind::NotIn : rel == 2 ? FKind::Eq : FKind::NotEq;
      s.a = pick();
      s.b = pick();
      return s;
    }
    case 1: {  // binary connective
      s.k = bits.take(1) ? Schema::K::Or : Schema::K::And;
      s.kids.push_back(decode_schema(bits, supply_size, local_depth, conn_budget - 1));
      s.kids.push_back(decode_schema(bits, supply_size, local_depth, conn_budget - 1));
      return s;
    }
    default: {  // bounded quantifier
      s.k = bits.take(1) ? Schema::K::BEx : Schema::K::BAll;
      s.bound = pick();
      s.kids.push_back(decode_schema(bits, supply_size, local_depth + 1, conn_budget - 1));
      return s;
    }
  }
}

// Materializes a schema; `slots` gives the de Bruijn index of each supply
// slot at insertion depth, local binders shift them as usual.
Formula materialize(const Schema& s, const std::vector<uint32_t>& slots, unsigned depth) {
  auto term = [&](int code) -> Term {
    if (code >= 0) return V(slots[static_cast<size_t>(code)] + depth);
    return V(static_cast<uint32_t>(-1 - code));
  };
  switch (s.k) {
    case Schema::K::Prime: return Formula::prime(s.rel, term(s.a), term(s.b));
    case Schema::K::And:
      return Formula::conj(materialize(s.kids[0], slots, depth),
                           materialize(s.kids[1], slots, depth));
    case Schema::K::Or:
      return Formula::disj(materialize(s.kids[0], slots, depth),
                           materialize(s.kids[1], slots, depth));
    case Schema::K::BAll:
      return Formula::all_in(term(s.bound), materialize(s.kids[0], slots, depth + 1));
    case Schema::K::BEx:
      return Formula::ex_in(term(s.bound), materialize(s.kids[0], slots, depth + 1));
  }
  throw Error(Err::BadInput, "unreachable");
}

// Schema slot conventions. Separation: x=0, z=1, v1=2, v2=3. Collection:
// x=0, y=1, w=2, v1=3, v2=4.
Schema separation_schema(uint64_t m, unsigned& params_out, std::vector<bool>* used_out = nullptr) {
  BitStream bits{m};
  Schema s = decode_schema(bits, 4, 0, 3);
  std::vector<bool> used(4, false);
  s.used_slots(used);
  params_out = (used[2] ? 1u : 0u) + (used[3] ? 1u : 0u);
  if (used_out) *used_out = used;
  return s;
}

Schema collection_schema(uint64_t m, unsigned& params_out, std::vector<bool>* used_out = nullptr) {
  BitStream bits{m};
  Schema s = decode_schema(bits, 5, 0, 3);
  if (!s.is_disjunction()) {
    // Force a disjunction so the inner existential quantifier over y stays
    // unbounded: replace theta by (y != y) \/ theta.
    Schema wrap;
    wrap.k = Schema::K::Or;
    Schema neq;
    neq.k = Schema::K::Prime;
    neq.rel = FKind::NotEq;
    neq.a = 1;  // y
    neq.b = 1;
    wrap.kids.push_back(neq);
    wrap.kids.push_back(std::move(s));
    s = std::move(wrap);
  }
  std::vector<bool> used(5, false);
  s.used_slots(used);
  params_out = (used[3] ? 1u : 0u) + (used[4] ? 1u : 0u);
  if (used_out) *used_out = used;
  return s;
}

// --- the five displayed axioms ----------------------------------------------

Formula equality_axiom() {
  // AxAx'AyAy'(((x != x' | y != y') | x !in y) | x' in y')
  Formula m = Formula::disj(
      Formula::disj(Formula::disj(Formula::not_eq_(V(3), V(2)), Formula::not_eq_(V(1), V(0))),
                    Formula::not_in(V(3), V(1))),
      Formula::in(V(2), V(0)));
  return Formula::all(Formula::all(Formula::all(Formula::all(m))));
}

Formula extensionality_axiom() {
  // AxAy((Ez in x: z !in y | Ez in y: z !in x) | x = y)
  Formula left = Formula::ex_in(V(1), Formula::not_in(V(0), V(1)));
  Formula right = Formula::ex_in(V(0), Formula::not_in(V(0), V(2)));
  Formula m = Formula::disj(Formula::disj(left, right), Formula::eq(V(1), V(0)));
  return Formula::all(Formula::all(m));
}

Formula pairing_axiom() {
  // AxAyEz(x in z & y in z)
  Formula m = Formula::conj(Formula::in(V(2), V(0)), Formula::in(V(1), V(0)));
  return Formula::all(Formula::all(Formula::ex(m)));
}

Formula union_axiom() {
  // AxEy Az in x: Az' in z: z' in y
  Formula inner = Formula::all_in(V(0), Formula::in(V(0), V(2)));
  Formula m = Formula::all_in(V(1), inner);
  return Formula::all(Formula::ex(m));
}

}  // namespace

Formula AxiomList::lim_body() {
  // x transitive, every element transitive, x nonempty, no maximum in x.
  auto trans_at = [&](uint32_t x) {
    return Formula::all_in(V(x), Formula::all_in(V(0), Formula::in(V(0), V(x + 2))));
  };
  Formula t1 = trans_at(0);
  Formula t2 = Formula::all_in(V(0), trans_at(0));
  Formula nonempty = Formula::ex_in(V(0), Formula::eq(V(0), V(0)));
  Formula unbounded = Formula::all_in(V(0), Formula::ex_in(V(1), Formula::in(V(1), V(0))));
  return Formula::conj(Formula::conj(Formula::conj(t1, t2), nonempty), unbounded);
}

Formula AxiomList::lim_at_omega() {
  return Formula::ex(lim_body()).instantiate(Param::of_omega());
}

AxiomList::AxiomList() {
  // "omega is a limit ordinal" holds by a meta-argument; the symbolic
  // witness cannot be enumerated by the Delta0 evaluator.
  Formula::register_known_truth(lim_at_omega(), true);
}

Formula AxiomList::axiom(unsigned k) const {
  switch (k) {
    case 0: return equality_axiom();
    case 1: return extensionality_axiom();
    case 2: return pairing_axiom();
    case 3: return union_axiom();
    case 4: return Formula::ex(lim_body());
    default: break;
  }
  unsigned j = k - 5;
  uint64_t m = j / 2;
  unsigned params = 0;
  if (j % 2 == 0) {
    // Separation: Av... Ax Ey (Az in y (z in x & th) & Az in x (~th | z in y))
    std::vector<bool> used;
    Schema sch = separation_schema(m, params, &used);
    // Slot indices at the matrix depth (under v..., x, y, z):
    // z = 0, y = 1, x = 2, then the used v's outermost-first.
    std::vector<uint32_t> slots(4, 0);
    slots[0] = 2;  // x
    slots[1] = 0;  // z
    slots[2] = 2 + params;                          // v1, when used it is outermost
    slots[3] = used[2] ? 2 + params - 1 : 2 + params;  // v2
    Formula theta = materialize(sch, slots, 0);
    Formula first = Formula::all_in(V(0), Formula::conj(Formula::in(V(0), V(2)), theta));
    Formula second =
        Formula::all_in(V(1), Formula::disj(theta.negate(), Formula::in(V(0), V(1))));
    Formula body = Formula::ex(Formula::conj(first, second));
    Formula out = Formula::all(body);
    for (unsigned i = 0; i < params; ++i) out = Formula::all(out);
    return out;
  }
  // Collection: Av... Aw (Ex in w Ay ~th | Ez Ax in w Ey in z th)
  std::vector<bool> used;
  Schema sch = collection_schema(m, params, &used);
  // Left disjunct: under v..., w, x, y: y=0, x=1, w=2, then the v's.
  std::vector<uint32_t> lslots(5, 0);
  lslots[0] = 1;               // x
  lslots[1] = 0;               // y
  lslots[2] = 2;               // w
  lslots[3] = 2 + params;      // v1
  lslots[4] = used[3] ? 2 + params - 1 : 2 + params;  // v2
  Formula theta_l = materialize(sch, lslots, 0);
  Formula left = Formula::ex_in(V(0), Formula::all(theta_l.negate()));
  // Right disjunct: under v..., w, z, x, y: y=0, x=1, z=2, w=3, v2=4, v1=5.
  std::vector<uint32_t> rslots(5, 0);
  rslots[0] = 1;               // x
  rslots[1] = 0;               // y
  rslots[2] = 3;               // w
  rslots[3] = 3 + params;      // v1
  rslots[4] = used[3] ? 3 + params - 1 : 3 + params;  // v2
  Formula theta_r = materialize(sch, rslots, 0);
  Formula right = Formula::ex(Formula::all_in(V(1), Formula::ex_in(V(1), theta_r)));
  Formula out = Formula::all(Formula::disj(left, right));
  for (unsigned i = 0; i < params; ++i) out = Formula::all(out);
  return out;
}

AxiomList::Info AxiomList::info(unsigned k) const {
  if (k <= 4) return {Scheme::Base, 0};
  unsigned j = k - 5;
  unsigned params = 0;
  if (j % 2 == 0) {
    separation_schema(j / 2, params);
    return {Scheme::Separation, params};
  }
  collection_schema(j / 2, params);
  return {Scheme::Collection, params};
}

}  // namespace bhcalc
