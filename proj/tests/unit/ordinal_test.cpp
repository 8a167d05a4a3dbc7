// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "bhcalc/ordinal.hpp"

#include <random>
#include <vector>

#include "doctest.h"

using namespace bhcalc;

namespace {

// All CNF values built from exponents <= w, coefficients <= 3, length <= 3:
// the exhaustive lattice used as a brute-force order oracle.
std::vector<OrdCNF> small_lattice() {
  std::vector<OrdCNF> exps = {OrdCNF(0), OrdCNF(1), OrdCNF(2), OrdCNF::omega()};
  std::vector<OrdCNF> out = {OrdCNF(0)};
  std::vector<std::pair<OrdCNF, uint64_t>> parts;
  // enumerate strictly descending summand lists of length <= 3
  for (size_t i = 0; i < exps.size(); ++i)
    for (uint64_t ci = 1; ci <= 3; ++ci) {
      out.push_back(OrdCNF({{exps[i], ci}}));
      for (size_t j = 0; j < i; ++j)
        for (uint64_t cj = 1; cj <= 3; ++cj) {
          out.push_back(OrdCNF({{exps[i], ci}, {exps[j], cj}}));
          for (size_t k = 0; k < j; ++k)
            for (uint64_t ck = 1; ck <= 3; ++ck)
              out.push_back(OrdCNF({{exps[i], ci}, {exps[j], cj}, {exps[k], ck}}));
        }
    }
  return out;
}

// Transfinite-enumeration oracle for ordinals < w^2: the pair (a, b) with
// value w*a + b, enumerated in order.
struct BelowOmegaSq {
  uint64_t a, b;
  bool operator<(const BelowOmegaSq& o) const { return a < o.a || (a == o.a && b < o.b); }
  bool operator==(const BelowOmegaSq& o) const { return a == o.a && b == o.b; }
  BelowOmegaSq plus(const BelowOmegaSq& o) const {
    if (o.a > 0) return {a + o.a, o.b};
    return {a, b + o.b};
  }
  OrdCNF to_ord() const { return OrdCNF::omega_times(a) + OrdCNF(b); }
};

}  // namespace

TEST_CASE("comparison basics") {
  CHECK(OrdCNF(0) == OrdCNF(0));
  CHECK(OrdCNF(1) < OrdCNF::omega());
  OrdCNF w2_1 = OrdCNF::omega_times(2) + OrdCNF(1);
  OrdCNF w2 = OrdCNF::omega_times(2);
  CHECK(w2_1 > w2);
}

TEST_CASE("compare is a strict total order on the small lattice") {
  auto xs = small_lattice();
  for (const auto& a : xs) {
    CHECK(a.compare(a) == std::strong_ordering::equal);
    for (const auto& b : xs) {
      auto ab = a.compare(b);
      auto ba = b.compare(a);
      CHECK(ab == (ba == std::strong_ordering::less      ? std::strong_ordering::greater
                   : ba == std::strong_ordering::greater ? std::strong_ordering::less
                                                         : std::strong_ordering::equal));
      for (const auto& c : xs) {
        if (a < b && b < c) CHECK(a < c);
      }
    }
  }
}

TEST_CASE("addition agrees with the transfinite enumeration below w^2") {
  for (uint64_t a1 = 0; a1 < 4; ++a1)
    for (uint64_t b1 = 0; b1 < 4; ++b1)
      for (uint64_t a2 = 0; a2 < 4; ++a2)
        for (uint64_t b2 = 0; b2 < 4; ++b2) {
          BelowOmegaSq x{a1, b1}, y{a2, b2};
          CHECK(x.to_ord() + y.to_ord() == x.plus(y).to_ord());
        }
  // the spec'd instance: (w*2+3) + w = w*3
  CHECK(OrdCNF::omega_times(2) + OrdCNF(3) + OrdCNF::omega() == OrdCNF::omega_times(3));
}

TEST_CASE("addition laws") {
  CHECK(OrdCNF::omega() + OrdCNF(1) > OrdCNF::omega());
  CHECK(OrdCNF(1) + OrdCNF::omega() == OrdCNF::omega());  // absorption
  auto xs = small_lattice();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<size_t> pick(0, xs.size() - 1);
  for (int i = 0; i < 2000; ++i) {
    const OrdCNF &a = xs[pick(rng)], &b = xs[pick(rng)], &c = xs[pick(rng)];
    CHECK((a + b) + c == a + (b + c));
    if (b < c) {
      CHECK(a + b < a + c);        // strictly monotone on the right
      CHECK(b + a <= c + a);       // weakly monotone on the left
    }
  }
}

TEST_CASE("omega_pow") {
  CHECK(OrdCNF::omega_pow(OrdCNF(0)) == OrdCNF(1));
  CHECK(OrdCNF::omega_pow(OrdCNF(1)) == OrdCNF::omega());
  OrdCNF w_to_w = OrdCNF::omega_pow(OrdCNF::omega());
  for (uint64_t n = 0; n <= 5; ++n) CHECK(OrdCNF::omega_pow(OrdCNF(n)) < w_to_w);
}

TEST_CASE("star") {
  CHECK(OrdCNF(0).star() == OrdCNF(0));
  CHECK(OrdCNF::omega().star() == OrdCNF(1));
  OrdCNF x = OrdCNF::omega_pow(OrdCNF(2)) + OrdCNF::omega_pow(OrdCNF(2)) +
             OrdCNF::omega_pow(OrdCNF(2)) + OrdCNF::omega();  // w^2*3 + w
  CHECK(x.star() == OrdCNF(2));
  auto xs = small_lattice();
  for (const auto& a : xs) {
    if (a.is_zero()) continue;
    CHECK(OrdCNF::omega_pow(a.star()) <= a);
    CHECK(a < OrdCNF::omega_pow(a.star().succ()));
    for (const auto& b : xs)
      CHECK((a + b).star() <= OrdCNF::max(a.star(), b.star()));
  }
}

TEST_CASE("left subtraction") {
  auto xs = small_lattice();
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<size_t> pick(0, xs.size() - 1);
  for (int i = 0; i < 2000; ++i) {
    const OrdCNF &a = xs[pick(rng)], &b = xs[pick(rng)];
    auto r = (a + b).left_subtract(a);
    REQUIRE(r.has_value());
    CHECK(a + *r == a + b);
    if (b < a) CHECK(!b.left_subtract(a).has_value());
  }
}

TEST_CASE("text round trip") {
  auto xs = small_lattice();
  for (const auto& a : xs) CHECK(OrdCNF::parse(a.str()) == a);
  CHECK(OrdCNF::parse("0").is_zero());
  CHECK(OrdCNF::parse("w") == OrdCNF::omega());
  CHECK(OrdCNF::parse("w^(w)*2 + w*3 + 5").str() == "w^(w)*2+w*3+5");
}
