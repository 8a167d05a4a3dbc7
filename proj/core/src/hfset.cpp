// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "bhcalc/hfset.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <stdexcept>

namespace bhcalc {

namespace {

struct Node {
  std::vector<HFSet> elems;  // sorted by code order, unique
  unsigned vn_rank = 0;
};

// The global registry. Id 0 is the empty set. Interning is guarded by a
// mutex; reads go through the stable deque-like storage.
struct Registry {
  std::mutex mu;
  std::deque<Node> nodes;
  std::map<std::vector<uint32_t>, uint32_t> index;

  Registry() {
    nodes.push_back({});            // empty set
    index.emplace(std::vector<uint32_t>{}, 0u);
  }

  static Registry& get() {
    static Registry* r = new Registry();
    return *r;
  }
};

}  // namespace

HFSet HFSet::make(std::vector<HFSet> elements) {
  std::sort(elements.begin(), elements.end(), [](HFSet a, HFSet b) {
    return code_compare(a, b) == std::strong_ordering::less;
  });
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  std::vector<uint32_t> key;
  key.reserve(elements.size());
  unsigned rank = 0;
  auto& reg = Registry::get();
  {
    std::lock_guard<std::mutex> lock(reg.mu);
    for (HFSet e : elements) {
      key.push_back(e.id());
      rank = std::max(rank, reg.nodes[e.id()].vn_rank + 1);
    }
    auto it = reg.index.find(key);
    if (it != reg.index.end()) return HFSet(it->second);
    uint32_t id = static_cast<uint32_t>(reg.nodes.size());
    reg.nodes.push_back({std::move(elements), rank});
    reg.index.emplace(std::move(key), id);
    return HFSet(id);
  }
}

HFSet HFSet::numeral(unsigned n) {
  HFSet cur = empty();
  std::vector<HFSet> below;
  for (unsigned i = 0; i < n; ++i) {
    below.push_back(cur);
    cur = make(below);
  }
  return cur;
}

const std::vector<HFSet>& HFSet::elements() const {
  return Registry::get().nodes[id_].elems;
}

bool HFSet::contains(HFSet x) const {
  const auto& es = elements();
  return std::find(es.begin(), es.end(), x) != es.end();
}

bool HFSet::subset_of(HFSet other) const {
  for (HFSet e : elements())
    if (!other.contains(e)) return false;
  return true;
}

bool HFSet::is_transitive() const {
  for (HFSet e : elements())
    if (!e.subset_of(*this)) return false;
  return true;
}

HFSet HFSet::union_all() const {
  std::vector<HFSet> out;
  for (HFSet e : elements())
    for (HFSet x : e.elements()) out.push_back(x);
  return make(std::move(out));
}

HFSet HFSet::with(HFSet extra) const {
  std::vector<HFSet> out = elements();
  out.push_back(extra);
  return make(std::move(out));
}

HFSet HFSet::transitive_closure() const {
  std::vector<HFSet> acc = elements();
  for (size_t i = 0; i < acc.size(); ++i)
    for (HFSet x : acc[i].elements())
      if (std::find(acc.begin(), acc.end(), x) == acc.end()) acc.push_back(x);
  return make(std::move(acc));
}

unsigned HFSet::vn_rank() const { return Registry::get().nodes[id_].vn_rank; }

bool HFSet::is_von_neumann_numeral() const {
  // n = {0,...,n-1}: transitive and linearly ordered by membership; for HF
  // sets it is enough that every element is the numeral of its position.
  HFSet cur = empty();
  std::vector<HFSet> below;
  const auto& es = elements();
  for (size_t i = 0; i < es.size(); ++i) {
    if (!(es[i] == cur)) {
      // elements are sorted by code order = rank-first, so numeral layers
      // must appear in order
      return false;
    }
    below.push_back(cur);
    cur = make(below);
  }
  return true;
}

std::strong_ordering HFSet::code_compare(HFSet a, HFSet b) {
  if (a == b) return std::strong_ordering::equal;
  if (a.vn_rank() != b.vn_rank()) return a.vn_rank() <=> b.vn_rank();
  const auto& ea = a.elements();
  const auto& eb = b.elements();
  size_t n = std::min(ea.size(), eb.size());
  for (size_t i = 0; i < n; ++i) {
    auto c = code_compare(ea[i], eb[i]);
    if (c != std::strong_ordering::equal) return c;
  }
  return ea.size() <=> eb.size();
}

Sexpr HFSet::to_sexpr() const {
  Sexpr s = Sexpr::make_list();
  s.add_atom("set");
  for (HFSet e : elements()) s.add(e.to_sexpr());
  return s;
}

HFSet HFSet::from_sexpr(const Sexpr& s) {
  if (s.is_atom || s.head() != "set")
    throw std::runtime_error("hfset: expected (set ...), got " + s.str());
  std::vector<HFSet> elems;
  for (size_t i = 1; i < s.size(); ++i) elems.push_back(from_sexpr(s.at(i)));
  return make(std::move(elems));
}

std::string HFSet::display() const {
  std::string out = "{";
  const auto& es = elements();
  for (size_t i = 0; i < es.size(); ++i) {
    if (i) out += ',';
    out += es[i].display();
  }
  out += '}';
  return out;
}

}  // namespace bhcalc
