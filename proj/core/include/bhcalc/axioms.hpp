// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef BHCALC_AXIOMS_HPP
#define BHCALC_AXIOMS_HPP

#include "bhcalc/formula.hpp"

namespace bhcalc {

// The enumeration theta_k of the Kripke-Platek axioms (with infinity,
// without foundation): theta_0..theta_4 are Equality, Extensionality,
// Pairing, Union and Infinity in display order; k >= 5 interleaves
// Delta0-separation and Delta0-collection instances by a fixed pairing of
// (scheme, matrix code). Matrices carry at most kParamBound parameters and
// collection matrices are disjunctions, which keeps the inner existential
// quantifier unbounded.
class AxiomList {
 public:
  enum class Scheme { Base, Separation, Collection };
  struct Info {
    Scheme scheme;
    unsigned params;  // number of universally quantified side parameters
  };

  static constexpr unsigned kParamBound = 2;  // C_0

  AxiomList();

  Formula axiom(unsigned k) const;
  Info info(unsigned k) const;

  // The Delta0 formula "Var 0 is a limit ordinal".
  static Formula lim_body();
  // Its instance at the symbolic omega witness (registered as true).
  static Formula lim_at_omega();

  // Upper bound on hth over all enumerated axioms (= kParamBound + 5).
  static unsigned hth_bound() { return kParamBound + 5; }
};

}  // namespace bhcalc

#endif  // BHCALC_AXIOMS_HPP
