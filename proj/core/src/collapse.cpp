// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "bhcalc/collapse.hpp"

#include <algorithm>

#include "bhcalc/formula.hpp"  // Error

namespace bhcalc {

Sexpr FiniteWop::to_sexpr() const {
  Sexpr s = Sexpr::make_list();
  s.add_atom("wop");
  for (size_t i = 0; i < ranks.size(); ++i) {
    Sexpr e = Sexpr::make_list();
    e.add_atom(names.empty() ? "e" + std::to_string(i) : names[i]).add(ranks[i].to_sexpr());
    s.add(std::move(e));
  }
  return s;
}

FiniteWop FiniteWop::from_sexpr(const Sexpr& s) {
  if (s.head() != "wop") throw Error(Err::BadInput, "expected (wop ...)");
  FiniteWop T;
  for (size_t i = 1; i < s.size(); ++i) {
    T.names.push_back(s.at(i).at(0).atom);
    T.ranks.push_back(OrdCNF::from_sexpr(s.at(i).at(1)));
  }
  return T;
}

Sexpr WopCollapse::to_sexpr(const FiniteWop& T) const {
  Sexpr s = Sexpr::make_list();
  s.add_atom("theta");
  for (size_t i = 0; i < values.size(); ++i) {
    Sexpr e = Sexpr::make_list();
    e.add_atom(T.names.empty() ? "e" + std::to_string(i) : T.names[i]).add(values[i].to_sexpr());
    s.add(std::move(e));
  }
  return s;
}

WopCollapse WopCollapse::from_sexpr(const Sexpr& s, const FiniteWop& T) {
  if (s.head() != "theta") throw Error(Err::BadInput, "expected (theta ...)");
  WopCollapse th;
  th.values.assign(T.size(), OrdCNF());
  if (s.size() != T.size() + 1) throw Error(Err::DomainGap, "theta must cover all elements");
  for (size_t i = 1; i < s.size(); ++i) {
    const std::string& name = s.at(i).at(0).atom;
    auto it = std::find(T.names.begin(), T.names.end(), name);
    if (it == T.names.end()) throw Error(Err::DomainGap, "unknown element " + name);
    th.values[it - T.names.begin()] = OrdCNF::from_sexpr(s.at(i).at(1));
  }
  return th;
}

std::vector<BhViolation> check_bh(const FiniteWop& T, const WopCollapse& theta,
                                  const OrdCNF& alpha) {
  if (theta.values.size() != T.size())
    throw Error(Err::DomainGap, "theta undefined on some supplied element");
  std::vector<BhViolation> out;
  for (size_t i = 0; i < T.size(); ++i) {
    if (!(theta.values[i] < alpha))
      out.push_back({0, i, i, "value not below the codomain bound"});
    if (!(T.ranks[i] < theta.values[i]))
      out.push_back({1, i, i, "(BH1) rank not below value"});
  }
  for (size_t i = 0; i < T.size(); ++i)
    for (size_t j = i + 1; j < T.size(); ++j)
      if (T.ranks[i] < theta.values[j] && !(theta.values[i] < theta.values[j]))
        out.push_back({2, i, j, "(BH2) order not preserved under the rank side condition"});
  return out;
}

WopCollapse synthesize_collapse(const FiniteWop& T) {
  WopCollapse th;
  th.values.assign(T.size(), OrdCNF());
  for (size_t s = 0; s < T.size(); ++s) {
    OrdCNF a = T.ranks[s].succ();  // a(0) = |s| + 1
    OrdCNF best = a;
    for (size_t guard = 0; guard <= 2 * T.size() + 4; ++guard) {
      OrdCNF next;  // sup over an empty set is 0
      for (size_t t = 0; t < s; ++t)
        if (T.ranks[t] < a) next = OrdCNF::max(next, th.values[t].succ());
      best = OrdCNF::max(best, next);
      if (next == a) break;
      a = next;
    }
    th.values[s] = best;
  }
  return th;
}

WopCollapse synthesize_collapse_reference(const FiniteWop& T) {
  WopCollapse th;
  th.values.assign(T.size(), OrdCNF());
  for (size_t s = 0; s < T.size(); ++s) {
    // least fixpoint of x -> max(rank(s)+1, sup{theta(t)+1 | t<s, rank(t)<x})
    OrdCNF x = T.ranks[s].succ();
    while (true) {
      OrdCNF y = T.ranks[s].succ();
      for (size_t t = 0; t < s; ++t)
        if (T.ranks[t] < x) y = OrdCNF::max(y, th.values[t].succ());
      if (y == x) break;
      x = y;
    }
    th.values[s] = x;
  }
  return th;
}

std::optional<WopCollapse> brute_force_collapse_exists(const FiniteWop& T,
                                                       const OrdCNF& alpha_bound,
                                                       const std::vector<OrdCNF>& grid) {
  double space = 1;
  for (size_t i = 0; i < T.size(); ++i) space *= static_cast<double>(grid.size());
  if (space > 1e7)
    throw Error(Err::SearchSpaceTooLarge, "grid^|T| = " + std::to_string(space));
  WopCollapse th;
  th.values.assign(T.size(), OrdCNF());
  std::vector<size_t> pick(T.size(), 0);
  if (T.size() == 0) return th;
  while (true) {
    for (size_t i = 0; i < T.size(); ++i) th.values[i] = grid[pick[i]];
    if (check_bh(T, th, alpha_bound).empty()) return th;
    size_t i = 0;
    while (i < pick.size()) {
      if (++pick[i] < grid.size()) break;
      pick[i++] = 0;
    }
    if (i == pick.size()) return std::nullopt;
  }
}

// TermCollapse ---------------------------------------------------------------

void TermCollapse::insert(const EpsTerm& t, OrdCNF value) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), t,
                             [&](const auto& e, const EpsTerm& x) {
                               return eps_compare(e.first, x, *base_) == std::strong_ordering::less;
                             });
  if (it != entries_.end() && eps_equal(it->first, t)) {
    it->second = std::move(value);
    return;
  }
  entries_.insert(it, {t, std::move(value)});
}

std::optional<OrdCNF> TermCollapse::lookup(const EpsTerm& t) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), t,
                             [&](const auto& e, const EpsTerm& x) {
                               return eps_compare(e.first, x, *base_) == std::strong_ordering::less;
                             });
  if (it != entries_.end() && eps_equal(it->first, t)) return it->second;
  return std::nullopt;
}

std::vector<BhViolation> TermCollapse::check() const {
  std::vector<BhViolation> out;
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (!(eps_star(entries_[i].first, *base_) < entries_[i].second))
      out.push_back({1, i, i, "(BH1) star not below value"});
    for (size_t j = i + 1; j < entries_.size(); ++j)
      if (eps_star(entries_[i].first, *base_) < entries_[j].second &&
          !(entries_[i].second < entries_[j].second))
        out.push_back({2, i, j, "(BH2) order not preserved under the rank side condition"});
  }
  return out;
}

// C-sets ---------------------------------------------------------------------

CsetEngine::CsetEngine(const TermCollapse& theta, EpsTerm t, CsetSeed seed, uint64_t fuel)
    : theta_(theta), t_(std::move(t)), seed_below_(std::move(seed.below)) {
  established_.push_back(OrdCNF(0));
  for (auto& e : seed.elems) established_.push_back(std::move(e));
  for (const auto& e : established_)
    max_established_ = max_established_ ? OrdCNF::max(*max_established_, e) : e;
  saturate(fuel);
}

bool CsetEngine::member_ord(const OrdCNF& g) const {
  if (seed_below_ && g < *seed_below_) return true;
  if (max_established_ && g <= *max_established_) return true;
  if (g.is_zero()) return true;
  // the star clause: g joins when g* is a member (the chain descends to 0)
  return member_ord(g.star());
}

bool CsetEngine::member(const EpsTerm& s) const {
  if (auto g = s.as_ordinal()) return member_ord(*g);
  // Terms at or above Omega enter through the star clause only.
  return member_ord(eps_star(s, theta_.base()));
}

void CsetEngine::saturate(uint64_t fuel) {
  // Add theta-images of established members below t until stable. The
  // domain is finite, so at most |dom| productive rounds occur.
  uint64_t steps = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [d, v] : theta_.entries()) {
      if (++steps > fuel)
        throw Error(Err::FuelExhausted, "C-set saturation exceeded fuel");
      if (eps_compare(d, t_, theta_.base()) != std::strong_ordering::less) continue;
      if (!member(d)) continue;
      bool fresh = true;
      if (seed_below_ && v < *seed_below_) fresh = false;
      if (max_established_ && v <= *max_established_) fresh = false;
      for (const auto& e : established_)
        if (e == v) fresh = false;
      if (fresh) {
        established_.push_back(v);
        max_established_ = max_established_ ? OrdCNF::max(*max_established_, v) : v;
        changed = true;
      }
    }
  }
}

bool cset_member(const TermCollapse& theta, const EpsTerm& t, const CsetSeed& seed,
                 const EpsTerm& s, uint64_t fuel) {
  return CsetEngine(theta, t, seed, fuel).member(s);
}

CsetEngine h_operator(const TermCollapse& theta, const EpsTerm& t, std::vector<OrdCNF> params,
                      const OrdCNF& alpha, uint64_t fuel) {
  EpsTerm t1 = eps_add(t, eps_one(), alpha, theta.base());
  CsetSeed seed;
  seed.elems = std::move(params);
  return CsetEngine(theta, t1, std::move(seed), fuel);
}

bool h_member(const TermCollapse& theta, const EpsTerm& t, std::vector<OrdCNF> params,
              const OrdCNF& alpha, const EpsTerm& query, uint64_t fuel) {
  return h_operator(theta, t, std::move(params), alpha, fuel).member(query);
}

// Greedy oracle --------------------------------------------------------------

OrdCNF GreedyThetaOracle::theta(const EpsTerm& t) {
  if (auto v = map_.lookup(t)) return *v;
  if (recording_) {
    recorded_.push_back(t);
    // a placeholder far above every desk-scale rank; never stored
    return OrdCNF::omega_pow(OrdCNF::omega_pow(OrdCNF::omega()));
  }
  if (frozen_)
    throw Error(Err::OracleGap, "frozen oracle has no value for " + t.str(map_.base()));
  return assign(t);
}

void GreedyThetaOracle::start_recording() {
  recording_ = true;
  recorded_.clear();
}

std::vector<EpsTerm> GreedyThetaOracle::stop_recording() {
  recording_ = false;
  return std::move(recorded_);
}

OrdCNF GreedyThetaOracle::assign(const EpsTerm& t) {
  const RankedBase& base = map_.base();
  OrdCNF v = eps_star(t, base).succ();  // (BH1): least candidate
  // Upper bound from assigned bigger terms; forbidden intervals from
  // assigned smaller terms.
  std::optional<OrdCNF> upper;
  for (const auto& [d, val] : map_.entries()) {
    auto c = eps_compare(t, d, base);
    if (c == std::strong_ordering::less && eps_star(t, base) < val)
      upper = upper && *upper < val ? *upper : val;
  }
  bool bumped = true;
  while (bumped) {
    bumped = false;
    for (const auto& [d, val] : map_.entries()) {
      if (eps_compare(d, t, base) != std::strong_ordering::less) continue;
      // (BH2) for d < t: star(d) < v forces theta(d) < v.
      if (eps_star(d, base) < v && v <= val) {
        v = val.succ();
        bumped = true;
      }
    }
  }
  if (upper && !(v < *upper))
    throw Error(Err::InconsistentExtension,
                "no value in (" + eps_star(t, base).str() + ", " + upper->str() + ") for " +
                    t.str(base));
  map_.insert(t, v);
  return v;
}

void GreedyThetaOracle::assign_ascending(std::vector<EpsTerm> terms) {
  const RankedBase& base = map_.base();
  std::sort(terms.begin(), terms.end(), [&](const EpsTerm& a, const EpsTerm& b) {
    return eps_compare(a, b, base) == std::strong_ordering::less;
  });
  for (const auto& t : terms) {
    if (map_.lookup(t)) continue;
    assign(t);
  }
}

}  // namespace bhcalc
