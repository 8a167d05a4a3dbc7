// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "bhcalc/epsterm.hpp"

#include <random>

#include "bhcalc/formula.hpp"
#include "bhcalc/symord.hpp"
#include "doctest.h"

using namespace bhcalc;

namespace {

SyntheticBase base6() {
  // six elements with ranks 0, 0, 1, 2, w, w*2
  return SyntheticBase({OrdCNF(0), OrdCNF(0), OrdCNF(1), OrdCNF(2), OrdCNF::omega(),
                        OrdCNF::omega_times(2)});
}

OrdCNF alpha3() { return OrdCNF(3); }

struct Gen {
  std::mt19937_64 rng;
  const SyntheticBase& base;
  OrdCNF alpha;

  OrdCNF coeff() {
    // positive ordinals < w^3
    uint64_t k = rng() % 4;
    OrdCNF r(rng() % 3);
    if (k >= 2) r = OrdCNF::omega_times(1 + rng() % 2) + r;
    if (k == 3) r = OrdCNF::omega_pow(OrdCNF(2)) + r;
    if (r.is_zero()) r = OrdCNF(1);
    return r;
  }

  EpsTerm term(int depth) {
    unsigned c = rng() % 10;
    if (c < 2) return EpsTerm::zero();
    if (c < 5) return EpsTerm::eps(static_cast<int>(rng() % base.size()));
    size_t len = 1 + rng() % 3;
    std::vector<EpsTerm::Summand> parts;
    for (size_t i = 0; i < len; ++i) {
      EpsTerm e = depth > 0 ? term(depth - 1) : (rng() % 2 ? EpsTerm::zero()
                                                           : EpsTerm::eps(static_cast<int>(rng() % base.size())));
      parts.push_back({e, coeff()});
    }
    // keep only a strictly descending subsequence
    std::sort(parts.begin(), parts.end(), [&](const auto& a, const auto& b) {
      return eps_compare(a.first, b.first, base) == std::strong_ordering::greater;
    });
    std::vector<EpsTerm::Summand> desc;
    for (auto& p : parts)
      if (desc.empty() ||
          eps_compare(p.first, desc.back().first, base) == std::strong_ordering::less)
        desc.push_back(std::move(p));
    return EpsTerm::sum(std::move(desc));
  }

  EpsTerm valid_term(int depth) {
    while (true) {
      EpsTerm t = term(depth);
      if (eps_validate(t, alpha, base)) return t;
    }
  }
};

}  // namespace

TEST_CASE("validation") {
  SyntheticBase base = base6();
  CHECK(eps_validate(EpsTerm::zero(), OrdCNF(0), base));
  // a lone W^(eps)*1 is normalized away by the constructor
  EpsTerm e2 = EpsTerm::eps(2);
  CHECK(EpsTerm::sum({{e2, OrdCNF(1)}}).is_eps());
  // ascending exponents rejected
  EpsTerm bad = EpsTerm::sum({{EpsTerm::zero(), OrdCNF(1)}, {e2, OrdCNF(1)}});
  CHECK(!eps_validate(bad, alpha3(), base));
  // rank gate: eps over a rank-w element needs w < w^alpha
  CHECK(!eps_validate(EpsTerm::eps(4), OrdCNF(1), base));
  CHECK(eps_validate(EpsTerm::eps(4), OrdCNF(2), base));
  // coefficient gate
  EpsTerm big = EpsTerm::sum({{EpsTerm::zero(), OrdCNF::omega()}});
  CHECK(!eps_validate(big, OrdCNF(1), base));
  CHECK(eps_validate(big, OrdCNF(2), base));
}

TEST_CASE("comparison clauses and the interpretation oracle") {
  SyntheticBase base = base6();
  OrdCNF alpha = alpha3();
  Gen gen{std::mt19937_64(2026), base, alpha};
  OrdInterpreter interp(base, [](int e) { return OrdCNF(static_cast<uint64_t>(e)); },
                        OrdCNF::omega_pow(OrdCNF(3)), alpha);

  CHECK(eps_compare(EpsTerm::zero(), EpsTerm::eps(0), base) == std::strong_ordering::less);
  CHECK(eps_compare(EpsTerm::eps(0), EpsTerm::eps(1), base) == std::strong_ordering::less);

  for (int i = 0; i < 1000; ++i) {
    EpsTerm s = gen.valid_term(2), t = gen.valid_term(2);
    auto c = eps_compare(s, t, base);
    auto oc = interp.interpret(s).compare(interp.interpret(t));
    CHECK(c == oc);
  }
}

TEST_CASE("comparison is a strict total order (random + exhaustive)") {
  SyntheticBase base = base6();
  Gen gen{std::mt19937_64(7), base, alpha3()};
  std::vector<EpsTerm> xs;
  for (int i = 0; i < 60; ++i) xs.push_back(gen.valid_term(2));
  for (const auto& a : xs) {
    CHECK(eps_compare(a, a, base) == std::strong_ordering::equal);
    for (const auto& b : xs) {
      auto ab = eps_compare(a, b, base);
      auto ba = eps_compare(b, a, base);
      CHECK((ab == std::strong_ordering::equal) == (ba == std::strong_ordering::equal));
      if (ab == std::strong_ordering::less) CHECK(ba == std::strong_ordering::greater);
      for (const auto& c : xs)
        if (eps_compare(a, b, base) == std::strong_ordering::less &&
            eps_compare(b, c, base) == std::strong_ordering::less)
          CHECK(eps_compare(a, c, base) == std::strong_ordering::less);
    }
  }

  // exhaustive over a 3-element base, all terms of length <= 6
  SyntheticBase small({OrdCNF(0), OrdCNF(1), OrdCNF(2)});
  std::vector<EpsTerm> all = {EpsTerm::zero(), EpsTerm::eps(0), EpsTerm::eps(1), EpsTerm::eps(2)};
  std::vector<EpsTerm> atoms = all;
  std::vector<OrdCNF> coeffs = {OrdCNF(1), OrdCNF(2)};
  size_t first_len = all.size();
  for (const auto& e0 : atoms)
    for (const auto& c0 : coeffs) {
      EpsTerm t1 = EpsTerm::sum({{e0, c0}});
      if (eps_validate(t1, OrdCNF(3), small)) all.push_back(t1);
      for (const auto& e1 : atoms)
        for (const auto& c1 : coeffs) {
          EpsTerm t2 = EpsTerm::sum({{e0, c0}, {e1, c1}});
          if (eps_validate(t2, OrdCNF(3), small)) all.push_back(t2);
        }
    }
  (void)first_len;
  for (const auto& a : all)
    for (const auto& b : all) {
      auto ab = eps_compare(a, b, small);
      if (eps_equal(a, b)) CHECK(ab == std::strong_ordering::equal);
      for (const auto& c : all)
        if (eps_compare(a, b, small) == std::strong_ordering::less &&
            eps_compare(b, c, small) == std::strong_ordering::less)
          CHECK(eps_compare(a, c, small) == std::strong_ordering::less);
    }
}

TEST_CASE("addition table and the lemma laws") {
  SyntheticBase base = base6();
  OrdCNF alpha = alpha3();
  Gen gen{std::mt19937_64(99), base, alpha};
  OrdInterpreter interp(base, [](int e) { return OrdCNF(static_cast<uint64_t>(e)); },
                        OrdCNF::omega_pow(OrdCNF(3)), alpha);

  EpsTerm e0 = EpsTerm::eps(0);
  // eps + same eps = W^(eps)*2
  EpsTerm twice = eps_add(e0, e0, alpha, base);
  CHECK(twice.is_sum());
  CHECK(twice.summands().size() == 1);
  CHECK(twice.summands()[0].second == OrdCNF(2));
  CHECK_THROWS_AS(eps_add(e0, e0, OrdCNF(0), base), Error);

  for (int i = 0; i < 500; ++i) {
    EpsTerm s = gen.valid_term(2), t = gen.valid_term(2), r = gen.valid_term(2);
    EpsTerm st = eps_add(s, t, alpha, base);
    CHECK(eps_validate(st, alpha, base));
    // o(s + t) = o(s) + o(t)
    CHECK(interp.interpret(st) == interp.interpret(s) + interp.interpret(t));
    // s <= W^s, monotone exponentiation
    CHECK(eps_compare(s, eps_omega_pow(s), base) != std::strong_ordering::greater);
    if (eps_compare(s, t, base) == std::strong_ordering::less)
      CHECK(eps_compare(eps_omega_pow(s), eps_omega_pow(t), base) == std::strong_ordering::less);
    // right-strict, left-weak monotonicity
    if (eps_compare(t, r, base) == std::strong_ordering::less) {
      CHECK(eps_compare(eps_add(s, t, alpha, base), eps_add(s, r, alpha, base), base) ==
            std::strong_ordering::less);
      CHECK(eps_compare(eps_add(t, s, alpha, base), eps_add(r, s, alpha, base), base) !=
            std::strong_ordering::greater);
    }
    // s < W^t implies s + W^t = W^t
    EpsTerm wt = eps_omega_pow(t);
    if (eps_compare(s, wt, base) == std::strong_ordering::less)
      CHECK(eps_equal(eps_add(s, wt, alpha, base), wt));
    // subtraction witness: s <= t gives r with s + r = t
    if (eps_compare(s, t, base) != std::strong_ordering::greater) {
      auto w = eps_subtract(s, t, alpha, base);
      REQUIRE(w.has_value());
      CHECK(eps_equal(eps_add(s, *w, alpha, base), t));
    }
    // associativity (the corrected reading of the paper's claim)
    CHECK(eps_equal(eps_add(s, eps_add(t, r, alpha, base), alpha, base),
                    eps_add(eps_add(s, t, alpha, base), r, alpha, base)));
  }
}

TEST_CASE("omega towers") {
  SyntheticBase base = base6();
  EpsTerm s = EpsTerm::eps(1);
  CHECK(eps_equal(eps_omega_pow(s), s));  // W^(eps) = eps
  CHECK(eps_equal(eps_tower(0, s), s));
  EpsTerm one = eps_omega_pow(EpsTerm::zero());
  CHECK(eps_equal(one, eps_one()));
  EpsTerm w1 = eps_tower(1, eps_one());
  CHECK(eps_equal(w1, eps_Omega()));
}

TEST_CASE("star") {
  SyntheticBase base = base6();
  OrdCNF alpha = alpha3();
  Gen gen{std::mt19937_64(3), base, alpha};
  CHECK(eps_star(eps_Omega(), base) == OrdCNF(0));
  CHECK(eps_star(EpsTerm::eps(4), base) == OrdCNF(1));  // rank w: w < w^2
  for (uint64_t b = 1; b < 30; ++b)
    CHECK(eps_star(EpsTerm::embed_ord(OrdCNF(b)), base) == OrdCNF(b).star());
  for (int i = 0; i < 500; ++i) {
    EpsTerm s = gen.valid_term(2), t = gen.valid_term(2);
    OrdCNF st = eps_star(eps_add(s, t, alpha, base), base);
    CHECK(st <= OrdCNF::max(eps_star(s, base), eps_star(t, base)));
    CHECK(eps_star(eps_omega_pow(s), base) <= eps_star(s, base));
    // validity at the star index
    CHECK(eps_validate(s, eps_star(s, base).succ(), base));
  }
}

TEST_CASE("embedding of ordinals") {
  SyntheticBase base = base6();
  CHECK(EpsTerm::embed_ord(OrdCNF(0)).is_zero());
  std::mt19937_64 rng(17);
  Gen gen{std::mt19937_64(23), base, alpha3()};
  for (int i = 0; i < 200; ++i) {
    OrdCNF a = gen.coeff(), b = gen.coeff();
    auto c = a.compare(b);
    CHECK(eps_compare(EpsTerm::embed_ord(a), EpsTerm::embed_ord(b), base) == c);
  }
  // every term below Omega is an embedded ordinal
  for (int i = 0; i < 300; ++i) {
    EpsTerm t = gen.valid_term(2);
    if (eps_compare(t, eps_Omega(), base) == std::strong_ordering::less)
      CHECK(t.as_ordinal().has_value());
  }
  (void)rng;
}

TEST_CASE("compatibility across indices") {
  SyntheticBase base = base6();
  Gen gen{std::mt19937_64(31), base, OrdCNF(2)};
  for (int i = 0; i < 300; ++i) {
    EpsTerm s = gen.valid_term(2), t = gen.valid_term(2);
    CHECK(eps_validate(s, OrdCNF(3), base));  // valid at 2 implies valid at 3
    auto c2 = eps_compare(s, t, base);
    auto c3 = eps_compare(s, t, base);
    CHECK(c2 == c3);
  }
}

TEST_CASE("interpretation rejects non-embeddings") {
  SyntheticBase base = base6();
  OrdInterpreter bad(base, [](int e) { return OrdCNF(static_cast<uint64_t>(5 - e)); },
                     OrdCNF::omega_pow(OrdCNF(3)), alpha3());
  CHECK_NOTHROW((void)bad.interpret(EpsTerm::eps(0)));
  CHECK_THROWS_AS((void)bad.interpret(EpsTerm::eps(1)), Error);
}

TEST_CASE("text and sexpr round trip") {
  SyntheticBase base = base6();
  Gen gen{std::mt19937_64(41), base, alpha3()};
  for (int i = 0; i < 200; ++i) {
    EpsTerm t = gen.valid_term(2);
    CHECK(eps_equal(EpsTerm::parse(t.str(base), base), t));
    CHECK(eps_equal(EpsTerm::from_sexpr(parse_sexpr(t.to_sexpr(base).str()), base), t));
  }
  CHECK(EpsTerm::parse("0", base).is_zero());
  CHECK(eps_equal(EpsTerm::parse("eps(3)", base), EpsTerm::eps(3)));
  CHECK(eps_equal(EpsTerm::parse("W^(eps(2))*2 + W^(0)*3", base),
                  EpsTerm::sum({{EpsTerm::eps(2), OrdCNF(2)}, {EpsTerm::zero(), OrdCNF(3)}})));
}
