// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "bhcalc/lhier.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace bhcalc {

namespace {

// Enumerates formulas phi(z, p...) of syntactic size <= bound over the
// finite structure (domain, in), where z is Var 0 and parameters range over
// the domain; returns the distinct subsets they define. Quantifier-free
// seeds are then closed under union, intersection and complement, each of
// which corresponds to a definable formula again.
std::set<uint64_t> definable_keys(const std::vector<HFSet>& domain, unsigned size_bound) {
  if (domain.size() > 20)
    throw Error(Err::SearchSpaceTooLarge,
                "stage too large to enumerate definable subsets (" +
                    std::to_string(domain.size()) + " elements)");
  const uint64_t full = domain.size() == 64 ? ~0ull : (1ull << domain.size()) - 1;

  // Seed round: subsets defined by small formulas phi(z, p) with one free
  // variable z and parameters p from the domain, evaluated pointwise.
  std::vector<uint64_t> seeds;
  auto eval_mask = [&](auto&& pred) {
    uint64_t m = 0;
    for (size_t i = 0; i < domain.size(); ++i)
      if (pred(domain[i])) m |= 1ull << i;
    return m;
  };
  for (const HFSet& p : domain) {
    seeds.push_back(eval_mask([&](HFSet z) { return p.contains(z); }));  // z in p
    seeds.push_back(eval_mask([&](HFSet z) { return z.contains(p); }));  // p in z
    seeds.push_back(eval_mask([&](HFSet z) { return z == p; }));         // z = p
  }
  seeds.push_back(eval_mask([&](HFSet) { return true; }));  // z = z
  if (size_bound >= 2) {
    for (const HFSet& p : domain) {
      seeds.push_back(eval_mask([&](HFSet z) {  // exists y in z: y in p
        for (HFSet y : z.elements())
          if (p.contains(y)) return true;
        return false;
      }));
    }
  }

  // Closure under negation and under union/intersection with a seed; every
  // closure element corresponds to a boolean combination of seed formulas,
  // which is again a defining formula. Iterate until nothing new appears.
  std::set<uint64_t> found(seeds.begin(), seeds.end());
  std::vector<uint64_t> frontier(found.begin(), found.end());
  while (!frontier.empty()) {
    std::vector<uint64_t> next;
    auto push = [&](uint64_t m) {
      if (found.insert(m).second) next.push_back(m);
    };
    for (uint64_t m : frontier) {
      push(~m & full);
      for (uint64_t s : seeds) {
        push(m | s);
        push(m & s);
      }
    }
    frontier = std::move(next);
  }
  return found;
}

}  // namespace

std::vector<HFSet> definable_subsets(const std::vector<HFSet>& domain, unsigned size_bound) {
  std::vector<HFSet> out;
  for (uint64_t key : definable_keys(domain, size_bound)) {
    std::vector<HFSet> elems;
    for (size_t i = 0; i < domain.size(); ++i)
      if (key & (1ull << i)) elems.push_back(domain[i]);
    out.push_back(HFSet::make(std::move(elems)));
  }
  std::sort(out.begin(), out.end(), [](HFSet a, HFSet b) {
    return HFSet::code_compare(a, b) == std::strong_ordering::less;
  });
  return out;
}

StageUniverse StageUniverse::build(std::vector<HFSet> u_enumeration, unsigned depth,
                                   unsigned formula_size_bound) {
  StageUniverse s;
  // u must be transitive and contain the markers 0 and 1.
  std::vector<HFSet> all = u_enumeration;
  HFSet u_set = HFSet::make(all);
  if (!u_set.is_transitive()) throw Error(Err::NotTransitive, "u is not transitive");
  if (!u_set.contains(HFSet::numeral(0)) || !u_set.contains(HFSet::numeral(1)))
    throw Error(Err::MissingMarkers, "u must contain 0 and 1");
  s.u_ = std::move(u_enumeration);

  std::vector<HFSet> cur = s.u_;
  std::sort(cur.begin(), cur.end(), [](HFSet a, HFSet b) {
    return HFSet::code_compare(a, b) == std::strong_ordering::less;
  });
  s.stages_.push_back(cur);
  for (unsigned m = 0; m < depth; ++m) {
    std::vector<HFSet> next = definable_subsets(s.stages_.back(), formula_size_bound);
    // Over a finite structure every subset is definable (via a disjunction
    // of equalities), so the closure must reach the full power set; verify.
    size_t expect = size_t{1} << s.stages_.back().size();
    if (next.size() != expect)
      throw Error(Err::BadInput,
                  "definability closure incomplete at stage " + std::to_string(m + 1) +
                      ": got " + std::to_string(next.size()) + ", expected " +
                      std::to_string(expect) + "; raise the formula size bound");
    s.stages_.push_back(std::move(next));
  }

  for (unsigned m = 0; m < s.stages_.size(); ++m)
    for (HFSet a : s.stages_[m])
      if (!s.rank_cache_.count(a.id())) s.rank_cache_[a.id()] = (m == 0 ? 0 : m - 1);
  return s;
}

const std::vector<HFSet>& StageUniverse::stage(unsigned m) const {
  if (m >= stages_.size()) throw Error(Err::StageUnavailable, "stage " + std::to_string(m));
  return stages_[m];
}

std::vector<RankedElem> StageUniverse::ranked_stage(unsigned m) const {
  std::vector<RankedElem> out;
  for (HFSet a : stage(m)) out.push_back(ranked(a));
  std::sort(out.begin(), out.end(), [&](const RankedElem& a, const RankedElem& b) {
    return stage_order_compare(a, b) == std::strong_ordering::less;
  });
  return out;
}

bool StageUniverse::in_stage(HFSet a, unsigned m) const {
  auto it = rank_cache_.find(a.id());
  if (it == rank_cache_.end()) return false;
  if (m == 0) return std::find(u_.begin(), u_.end(), a) != u_.end();
  return it->second < m;
}

OrdCNF StageUniverse::rank_of(HFSet a) const { return OrdCNF(rank_of_nat(a)); }

unsigned StageUniverse::rank_of_nat(HFSet a) const {
  auto it = rank_cache_.find(a.id());
  if (it == rank_cache_.end())
    throw Error(Err::NotInHierarchy, a.display() + " not in the built hierarchy");
  return it->second;
}

OrdCNF StageUniverse::rank_extended(HFSet a) const {
  auto it = rank_cache_.find(a.id());
  if (it != rank_cache_.end()) return OrdCNF(it->second);
  unsigned m = 0;  // minimal m with a subset of L_m
  for (HFSet z : a.elements()) {
    auto zi = rank_cache_.find(z.id());
    if (zi == rank_cache_.end())
      throw Error(Err::NotInHierarchy, "element " + z.display() + " not in built stages");
    bool in_u = std::find(u_.begin(), u_.end(), z) != u_.end();
    unsigned stage_z = in_u ? 0 : zi->second + 1;
    m = std::max(m, stage_z);
  }
  return OrdCNF(m);
}

std::optional<HFSet> StageUniverse::stage_as_set(const OrdCNF& beta) const {
  if (!beta.is_finite()) return std::nullopt;
  uint64_t b = beta.nat();
  if (b >= stages_.size()) return std::nullopt;
  return HFSet::make(stages_[static_cast<unsigned>(b)]);
}

Param StageUniverse::stage_param(const OrdCNF& beta) const {
  return Param::of_stage(beta, stage_as_set(beta));
}

std::strong_ordering StageUniverse::stage_order_compare(const RankedElem& a,
                                                        const RankedElem& b) const {
  auto c = a.stage.compare(b.stage);
  if (c != std::strong_ordering::equal) return c;
  auto ia = u_index(a.set), ib = u_index(b.set);
  if (ia.has_value() != ib.has_value()) return ib.has_value() <=> ia.has_value();
  if (ia && ib && *ia != *ib) return *ia <=> *ib;
  return HFSet::code_compare(a.set, b.set);
}

RankedElem StageUniverse::min_choice(const std::vector<RankedElem>& xs) const {
  if (xs.empty()) throw Error(Err::EmptySet, "min_choice of empty set");
  const RankedElem* best = &xs[0];
  for (const auto& x : xs)
    if (stage_order_compare(x, *best) == std::strong_ordering::less) best = &x;
  return *best;
}

RankedElem StageUniverse::marker(unsigned i) const {
  return {OrdCNF(0), HFSet::numeral(i)};
}

std::optional<unsigned> StageUniverse::u_index(HFSet a) const {
  for (unsigned i = 0; i < u_.size(); ++i)
    if (u_[i] == a) return i;
  return std::nullopt;
}

Sexpr StageUniverse::stage_dump(unsigned m) const {
  Sexpr s = Sexpr::make_list();
  s.add_atom("stage").add_atom(std::to_string(m));
  for (HFSet a : stage(m)) s.add(a.to_sexpr());
  return s;
}

std::vector<HFSet> mostowski_collapse(const std::vector<HFSet>& structure) {
  // pi(x) = { pi(y) | y in x, y in structure }; requires extensionality of
  // the induced membership relation.
  std::vector<HFSet> nodes = structure;
  std::sort(nodes.begin(), nodes.end(), [](HFSet a, HFSet b) { return a.vn_rank() < b.vn_rank(); });
  std::map<uint32_t, HFSet> pi;
  for (HFSet x : nodes) {
    std::vector<HFSet> img;
    for (HFSet y : x.elements()) {
      auto it = pi.find(y.id());
      if (it != pi.end()) img.push_back(it->second);
    }
    pi.emplace(x.id(), HFSet::make(std::move(img)));
  }
  // Extensionality: distinct members with the same collapsed image witness
  // equal structure-relative extensions.
  std::map<uint32_t, uint32_t> seen;
  for (HFSet x : nodes) {
    HFSet image = pi.at(x.id());
    auto [it, fresh] = seen.emplace(image.id(), x.id());
    if (!fresh && it->second != x.id())
      throw Error(Err::NotExtensional,
                  "structure not extensional: " + HFSet::from_id(it->second).display() +
                      " and " + x.display());
  }
  std::vector<HFSet> out;
  for (HFSet x : structure) out.push_back(pi.at(x.id()));
  return out;
}

}  // namespace bhcalc
