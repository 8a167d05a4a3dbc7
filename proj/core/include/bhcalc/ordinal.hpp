// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef BHCALC_ORDINAL_HPP
#define BHCALC_ORDINAL_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bhcalc/sexpr.hpp"

namespace bhcalc {

// An ordinal below epsilon_0 in Cantor normal form,
//
//   w^(e_0)*c_0 + ... + w^(e_k)*c_k   with e_0 > e_1 > ... > e_k, c_i >= 1.
//
// The empty sum denotes 0. Non-canonical summand lists are normalized on
// construction and never stored. These ordinals serve as stage indices,
// ranks, coefficients of eps-terms and codomains of collapses.
class OrdCNF {
 public:
  using Summand = std::pair<OrdCNF, uint64_t>;  // (exponent, coefficient)

  OrdCNF() = default;          // zero
  OrdCNF(uint64_t n);          // finite ordinal, implicit on purpose
  explicit OrdCNF(std::vector<Summand> summands);  // normalizes

  static OrdCNF omega();                        // w
  static OrdCNF omega_pow(const OrdCNF& e);     // w^e
  static OrdCNF omega_times(uint64_t c);        // w*c

  bool is_zero() const { return sum_.empty(); }
  bool is_finite() const;
  // Value of a finite ordinal; callers must check is_finite().
  uint64_t nat() const;

  const std::vector<Summand>& summands() const { return sum_; }

  std::strong_ordering compare(const OrdCNF& o) const;
  bool operator==(const OrdCNF& o) const { return compare(o) == std::strong_ordering::equal; }
  bool operator<(const OrdCNF& o) const { return compare(o) == std::strong_ordering::less; }
  bool operator<=(const OrdCNF& o) const { return compare(o) != std::strong_ordering::greater; }
  bool operator>(const OrdCNF& o) const { return o < *this; }
  bool operator>=(const OrdCNF& o) const { return o <= *this; }

  // Ordinal sum; left summands below the leading exponent of `o` are absorbed.
  OrdCNF operator+(const OrdCNF& o) const;
  OrdCNF succ() const { return *this + OrdCNF(1); }

  // b* = min{g | b < w^(g+1)}; 0 for b = 0, else the leading exponent.
  // Satisfies w^(b*) <= b < w^(b*+1) for b > 0.
  OrdCNF star() const;

  // The unique r with a + r = *this, if *this >= a.
  std::optional<OrdCNF> left_subtract(const OrdCNF& a) const;

  static const OrdCNF& max(const OrdCNF& a, const OrdCNF& b) { return a < b ? b : a; }

  size_t hash() const;

  // Text syntax: `0`, `w`, `w^(<ord>)*<nat> + ...`; round-trip stable.
  std::string str() const;
  static OrdCNF parse(const std::string& text);
  Sexpr to_sexpr() const;  // (o (<exp> <coeff>) ...)
  static OrdCNF from_sexpr(const Sexpr& s);

 private:
  std::vector<Summand> sum_;
};

struct OrdHash {
  size_t operator()(const OrdCNF& o) const { return o.hash(); }
};

}  // namespace bhcalc

#endif  // BHCALC_ORDINAL_HPP
