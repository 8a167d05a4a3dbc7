// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "bhcalc/hfset.hpp"

#include <algorithm>
#include <random>

#include "doctest.h"

using namespace bhcalc;

TEST_CASE("construction is canonical") {
  HFSet e = HFSet::empty();
  HFSet one = HFSet::singleton(e);
  CHECK(HFSet::make({one, e}) == HFSet::make({e, one, e}));
  CHECK(HFSet::make({e, e}) == HFSet::singleton(e));
  CHECK(e.vn_rank() == 0);
  CHECK(one.vn_rank() == 1);
}

TEST_CASE("numerals") {
  CHECK(HFSet::numeral(0) == HFSet::empty());
  CHECK(HFSet::numeral(2).size() == 2);
  CHECK(HFSet::numeral(3).is_transitive());
  CHECK(HFSet::numeral(3).is_von_neumann_numeral());
  CHECK(!HFSet::singleton(HFSet::numeral(1)).is_von_neumann_numeral());
}

TEST_CASE("code order is total and rank-first") {
  std::vector<HFSet> xs = {HFSet::empty(), HFSet::numeral(1), HFSet::numeral(2),
                           HFSet::singleton(HFSet::numeral(1)),
                           HFSet::pair(HFSet::empty(), HFSet::singleton(HFSet::numeral(1)))};
  for (HFSet a : xs)
    for (HFSet b : xs) {
      auto ab = HFSet::code_compare(a, b);
      if (a == b) CHECK(ab == std::strong_ordering::equal);
      if (a.vn_rank() < b.vn_rank()) CHECK(ab == std::strong_ordering::less);
      for (HFSet c : xs)
        if (HFSet::code_compare(a, b) == std::strong_ordering::less &&
            HFSet::code_compare(b, c) == std::strong_ordering::less)
          CHECK(HFSet::code_compare(a, c) == std::strong_ordering::less);
    }
}

TEST_CASE("transitive closure and union") {
  HFSet two = HFSet::numeral(2);
  HFSet s = HFSet::singleton(two);
  CHECK(!s.is_transitive());
  HFSet tc = s.transitive_closure();
  CHECK(tc.is_transitive());
  CHECK(tc.contains(two));
  CHECK(tc.contains(HFSet::empty()));
  CHECK(s.union_all() == two);
}

TEST_CASE("sexpr round trip") {
  std::mt19937_64 rng(5);
  // random small sets by repeated pairing/union
  std::vector<HFSet> pool = {HFSet::empty(), HFSet::numeral(1)};
  for (int i = 0; i < 50; ++i) {
    HFSet a = pool[rng() % pool.size()];
    HFSet b = pool[rng() % pool.size()];
    pool.push_back(rng() % 2 ? HFSet::pair(a, b) : a.with(b));
  }
  for (HFSet s : pool) CHECK(HFSet::from_sexpr(parse_sexpr(s.to_sexpr().str())) == s);
}
