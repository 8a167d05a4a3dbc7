// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef BHCALC_SYMORD_HPP
#define BHCALC_SYMORD_HPP

#include <functional>
#include <string>
#include <vector>

#include "bhcalc/epsterm.hpp"
#include "bhcalc/ordinal.hpp"

namespace bhcalc {

// A symbolic ordinal: a Cantor normal form to the base B = w^(1+alpha)
// extended by opaque epsilon-number atoms e_k (imagined as eps_{eta+1+k}).
// Atoms sit above all plain CNF values and are fixpoints of x -> B^x; they
// are ordered by their subscript and support no arithmetic beyond that.
// This is the interpretation target used as an order oracle for eps-terms.
class SymOrd {
 public:
  enum class Kind : uint8_t { Zero, Atom, Sum };
  using Summand = std::pair<SymOrd, OrdCNF>;

  SymOrd() : kind_(Kind::Zero) {}
  static SymOrd zero() { return SymOrd(); }
  static SymOrd atom(OrdCNF subscript);
  static SymOrd sum(std::vector<Summand> xs);  // normalizes B^(e)*1 -> e
  static SymOrd ordinal(const OrdCNF& b);      // plain value b = B^0 * b

  Kind kind() const { return kind_; }
  const OrdCNF& subscript() const { return sub_; }
  const std::vector<Summand>& summands() const { return sum_; }

  std::strong_ordering compare(const SymOrd& o) const;
  bool operator==(const SymOrd& o) const { return compare(o) == std::strong_ordering::equal; }
  bool operator<(const SymOrd& o) const { return compare(o) == std::strong_ordering::less; }

  // Base-B normal form addition (absorb smaller left summands, merge).
  SymOrd operator+(const SymOrd& o) const;

  std::string str() const;

 private:
  Kind kind_;
  OrdCNF sub_;
  std::vector<Summand> sum_;
};

// The interpretation o(.) of eps-terms: o(0) = 0, o(eps_x) = e_{eta+1+c(x)},
// o(W^(s0)*b0 + ...) = B^(o(s0))*b0 + ... . The map c must be an order
// embedding of the base elements actually used (checked; NotEmbedding).
class OrdInterpreter {
 public:
  OrdInterpreter(const RankedBase& base, std::function<OrdCNF(int)> c, OrdCNF eta, OrdCNF alpha)
      : base_(base), c_(std::move(c)), eta_(std::move(eta)), alpha_(std::move(alpha)) {}

  SymOrd interpret(const EpsTerm& s) const;

 private:
  const RankedBase& base_;
  std::function<OrdCNF(int)> c_;
  OrdCNF eta_;
  OrdCNF alpha_;
  mutable std::vector<std::pair<int, OrdCNF>> seen_;  // embedding check
};

}  // namespace bhcalc

#endif  // BHCALC_SYMORD_HPP
