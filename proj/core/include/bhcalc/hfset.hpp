// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef BHCALC_HFSET_HPP
#define BHCALC_HFSET_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bhcalc/sexpr.hpp"

namespace bhcalc {

// A hereditarily finite set, interned in a global registry. Element lists
// are kept canonically sorted (code order) and duplicate-free, so
// extensional equality coincides with handle equality.
class HFSet {
 public:
  HFSet() : id_(0) {}  // the empty set

  static HFSet empty() { return HFSet(); }
  static HFSet make(std::vector<HFSet> elements);
  static HFSet singleton(HFSet a) { return make({a}); }
  static HFSet pair(HFSet a, HFSet b) { return make({a, b}); }
  // Von Neumann numeral n = {0, ..., n-1}.
  static HFSet numeral(unsigned n);

  const std::vector<HFSet>& elements() const;
  size_t size() const { return elements().size(); }
  bool contains(HFSet x) const;
  bool subset_of(HFSet other) const;
  bool is_transitive() const;
  HFSet union_all() const;          // union of the elements
  HFSet with(HFSet extra) const;    // *this u {extra}
  HFSet transitive_closure() const;
  unsigned vn_rank() const;         // von Neumann rank
  bool is_von_neumann_numeral() const;

  // Fixed total code order: by von Neumann rank, then lexicographically on
  // the (already sorted) element lists.
  static std::strong_ordering code_compare(HFSet a, HFSet b);

  bool operator==(const HFSet& o) const { return id_ == o.id_; }
  bool operator!=(const HFSet& o) const { return id_ != o.id_; }

  uint32_t id() const { return id_; }
  static HFSet from_id(uint32_t id) { return HFSet(id); }

  Sexpr to_sexpr() const;
  static HFSet from_sexpr(const Sexpr& s);
  std::string str() const { return to_sexpr().str(); }
  // Compact display: {} , {{},{{}}} , ...
  std::string display() const;

 private:
  explicit HFSet(uint32_t id) : id_(id) {}
  uint32_t id_;
};

struct HFSetHash {
  size_t operator()(const HFSet& s) const { return s.id(); }
};

}  // namespace bhcalc

#endif  // BHCALC_HFSET_HPP
