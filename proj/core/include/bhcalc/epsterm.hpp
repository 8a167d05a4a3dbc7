// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef BHCALC_EPSTERM_HPP
#define BHCALC_EPSTERM_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bhcalc/ordinal.hpp"
#include "bhcalc/sexpr.hpp"

namespace bhcalc {

// An abstract ranked base order: elements carry a strict total order and an
// OrdCNF rank. The family T_alpha = { s | rank(s) < w^alpha } recovers the
// indexing by alpha. Elements are small integer handles owned by the base.
class RankedBase {
 public:
  virtual ~RankedBase() = default;
  virtual std::strong_ordering compare(int a, int b) const = 0;
  virtual OrdCNF rank(int e) const = 0;
  virtual std::string name(int e) const = 0;
  virtual int parse_elem(const std::string& name) const;
};

// A finite synthetic base: element i has the given rank; the order is the
// index order.
class SyntheticBase : public RankedBase {
 public:
  explicit SyntheticBase(std::vector<OrdCNF> ranks) : ranks_(std::move(ranks)) {}
  size_t size() const { return ranks_.size(); }
  std::strong_ordering compare(int a, int b) const override { return a <=> b; }
  OrdCNF rank(int e) const override { return ranks_.at(e); }
  std::string name(int e) const override { return std::to_string(e); }
  int parse_elem(const std::string& name) const override { return std::stoi(name); }

 private:
  std::vector<OrdCNF> ranks_;
};

// A term of eps(T): Zero, an eps-constant over a base element, or a
// descending sum W^(s_0)*b_0 + ... + W^(s_n)*b_n with ordinal coefficients
// 0 < b_i < w^alpha and s_{i+1} < s_i. The degenerate sum W^(eps_x)*1 alone
// is excluded (it denotes the same value as eps_x).
class EpsTerm {
 public:
  enum class Kind : uint8_t { Zero, Eps, Sum };
  using Summand = std::pair<EpsTerm, OrdCNF>;

  EpsTerm() : kind_(Kind::Zero) {}

  static EpsTerm zero() { return EpsTerm(); }
  static EpsTerm eps(int base_elem);
  // Builds a sum; normalizes the degenerate case back to an eps-constant.
  // The summand list must already be descending with positive coefficients.
  static EpsTerm sum(std::vector<Summand> summands);
  // The embedded ordinal beta-hat: 0 -> Zero, beta > 0 -> W^0 * beta.
  static EpsTerm embed_ord(const OrdCNF& beta);

  Kind kind() const { return kind_; }
  bool is_zero() const { return kind_ == Kind::Zero; }
  bool is_eps() const { return kind_ == Kind::Eps; }
  bool is_sum() const { return kind_ == Kind::Sum; }
  int eps_elem() const { return eps_; }
  const std::vector<Summand>& summands() const { return sum_; }

  // Inverse of embed_ord on terms below Omega.
  std::optional<OrdCNF> as_ordinal() const;

  size_t hash() const;
  std::string str(const RankedBase& base) const;
  Sexpr to_sexpr(const RankedBase& base) const;
  static EpsTerm from_sexpr(const Sexpr& s, const RankedBase& base);
  static EpsTerm parse(const std::string& text, const RankedBase& base);

 private:
  Kind kind_;
  int eps_ = -1;
  std::vector<Summand> sum_;
};

// Structural equality (used by the comparison clauses).
bool eps_equal(const EpsTerm& s, const EpsTerm& t);

// The term order: 0 least; eps-constants by base order; eps vs sum via the
// leading exponent; sums by proper-prefix or first-difference. Total.
std::strong_ordering eps_compare(const EpsTerm& s, const EpsTerm& t, const RankedBase& base);

// Validity at index alpha: all constants have rank < w^alpha and all
// coefficients are < w^alpha; exponents strictly descending.
bool eps_validate(const EpsTerm& s, const OrdCNF& alpha, const RankedBase& base);

// Addition per the case table; requires alpha > 0 (throws IndexZero).
EpsTerm eps_add(const EpsTerm& s, const EpsTerm& t, const OrdCNF& alpha, const RankedBase& base);

// W^s: s itself if s is an eps-constant, else the sum W^s * 1.
EpsTerm eps_omega_pow(const EpsTerm& s);
// Iterated exponentiation W_n^s.
EpsTerm eps_tower(unsigned n, const EpsTerm& s);

// s* = min{ a | s in eps(T at w^(a+1)) }: 0 for Zero; the ordinal star of
// rank(x) for eps_x; the max over exponent and coefficient stars for sums.
OrdCNF eps_star(const EpsTerm& s, const RankedBase& base);

// The witness r with s + r = t, for s <= t; verified before returning.
std::optional<EpsTerm> eps_subtract(const EpsTerm& s, const EpsTerm& t, const OrdCNF& alpha,
                                    const RankedBase& base);

// Convenience terms.
EpsTerm eps_one();
EpsTerm eps_Omega();

struct EpsTermHash {
  size_t operator()(const EpsTerm& t) const { return t.hash(); }
};

}  // namespace bhcalc

#endif  // BHCALC_EPSTERM_HPP
