// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "bhcalc/searchtree.hpp"

#include <algorithm>

namespace bhcalc {

std::string path_display(const Path& p) {
  std::string out = "[";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) out += ' ';
    out += p[i].set.display();
  }
  return out + "]";
}

Sexpr path_to_sexpr(const Path& p) {
  Sexpr s = Sexpr::make_list();
  s.add_atom("path");
  for (const auto& e : p) {
    Sexpr pe = Sexpr::make_list();
    pe.add(e.stage.to_sexpr()).add(e.set.to_sexpr());
    s.add(std::move(pe));
  }
  return s;
}

SearchTree::SearchTree(const StageUniverse& universe, unsigned alpha)
    : universe_(&universe), alpha_(alpha) {
  if (alpha > universe.depth())
    throw Error(Err::StageUnavailable, "alphabet stage exceeds built depth");
}

namespace {

bool is_prime(Formula f) {
  FKind k = f.kind();
  return k == FKind::In || k == FKind::NotIn || k == FKind::Eq || k == FKind::NotEq;
}

bool occurs(const std::vector<Formula>& label, Formula f) {
  return std::find(label.begin(), label.end(), f) != label.end();
}

}  // namespace

int SearchTree::intern_path(const Path& p) {
  std::vector<std::pair<uint64_t, uint32_t>> key;
  key.reserve(p.size());
  for (const auto& e : p) key.push_back({e.stage.hash(), e.set.id()});
  auto it = path_index_.find(key);
  if (it != path_index_.end()) return it->second;
  int id = static_cast<int>(paths_.size());
  paths_.push_back(p);
  nodes_.push_back(std::nullopt);
  path_index_.emplace(std::move(key), id);
  return id;
}

const SearchTree::Node& SearchTree::node(const Path& p) {
  int id = intern_path(p);
  if (!nodes_[static_cast<size_t>(id)]) {
    Node n = compute(p);
    nodes_[static_cast<size_t>(id)] = std::move(n);
  }
  return *nodes_[static_cast<size_t>(id)];
}

// Classifies a label into the construction table's row.
static void classify(SearchTree::Node& n, size_t path_len) {
  if (path_len % 2 == 0) {
    n.kind = SearchTree::NodeKind::Even;
    n.axiom_index = static_cast<unsigned>(path_len / 2);
    return;
  }
  for (Formula f : n.label)
    if (f.is_delta0() && f.eval_delta0()) {
      n.kind = SearchTree::NodeKind::Leaf;
      return;
    }
  int redex = -1;
  for (size_t i = 0; i < n.label.size(); ++i)
    if (!is_prime(n.label[i])) {
      redex = static_cast<int>(i);
      break;
    }
  if (redex < 0) {
    n.kind = SearchTree::NodeKind::Repetition;
    return;
  }
  n.redex = redex;
  switch (n.label[static_cast<size_t>(redex)].kind()) {
    case FKind::And: n.kind = SearchTree::NodeKind::RedexAnd; break;
    case FKind::Or: n.kind = SearchTree::NodeKind::RedexOr; break;
    case FKind::All: n.kind = SearchTree::NodeKind::RedexAll; break;
    case FKind::Ex: n.kind = SearchTree::NodeKind::RedexEx; break;
    default: break;
  }
}

SearchTree::Node SearchTree::compute(const Path& p) {
  Node out;
  if (p.empty()) {
    out.in_tree = true;
    classify(out, 0);
    return out;
  }
  Path prefix(p.begin(), p.end() - 1);
  Node parent = node(prefix);  // by value: recursion may grow the pools
  if (!parent.in_tree || !child_valid(prefix, p.back())) return out;  // not a node
  out.in_tree = true;
  out.label = child_label_for_parent(prefix, parent, p.back());
  classify(out, p.size());
  return out;
}

std::vector<RankedElem> SearchTree::ex_witness_list(const Path& p) const {
  // u_0, sigma_0, ..., u_{n-1}, sigma_{n-1}, u_n, u_{n+1}, ... truncated to
  // the finitely many candidates that exist at desk scale.
  std::vector<RankedElem> out;
  const auto& u = universe_->u();
  size_t n = std::max(u.size(), p.size());
  for (size_t i = 0; i < n; ++i) {
    if (i < u.size()) out.push_back(universe_->ranked(u[i]));
    if (i < p.size()) out.push_back(p[i]);
  }
  return out;
}

std::vector<Formula> SearchTree::child_label_for_parent(const Path& p, const Node& n,
                                                        const RankedElem& a) {
  const RankedElem m0 = universe_->marker(0);
  std::vector<Formula> out;
  auto redex_label = [&](Formula extra) {
    // Gamma, Gamma', phi, extra: the redex moves to the end, everything
    // right of it shifts one position to the left.
    Formula phi = n.label[static_cast<size_t>(n.redex)];
    for (size_t i = 0; i < n.label.size(); ++i)
      if (static_cast<int>(i) != n.redex) out.push_back(n.label[i]);
    out.push_back(phi);
    out.push_back(extra);
    return out;
  };
  switch (n.kind) {
    case NodeKind::Even: {
      out = n.label;
      out.push_back(axioms_.axiom(n.axiom_index).negate());
      return out;
    }
    case NodeKind::Leaf: throw Error(Err::NotANode, "leaf has no children");
    case NodeKind::Repetition: return n.label;
    case NodeKind::RedexAnd: {
      Formula phi = n.label[static_cast<size_t>(n.redex)];
      unsigned i = (a == m0) ? 0 : 1;
      return redex_label(i == 0 ? phi.child0() : phi.child1());
    }
    case NodeKind::RedexOr: {
      Formula phi = n.label[static_cast<size_t>(n.redex)];
      Formula pick = occurs(n.label, phi.child0()) ? phi.child1() : phi.child0();
      return redex_label(pick);
    }
    case NodeKind::RedexAll: {
      Formula phi = n.label[static_cast<size_t>(n.redex)];
      return redex_label(phi.instantiate(a.to_param()));
    }
    case NodeKind::RedexEx: {
      Formula phi = n.label[static_cast<size_t>(n.redex)];
      RankedElem b = ex_witness(p, n);
      return redex_label(phi.instantiate(b.to_param()));
    }
  }
  throw Error(Err::NotANode, "unreachable");
}

RankedElem SearchTree::ex_witness(const Path& p, const Node& n) {
  if (n.witness) return *n.witness;
  Formula phi = n.label[static_cast<size_t>(n.redex)];
  for (const RankedElem& b : ex_witness_list(p)) {
    if (!occurs(n.label, phi.instantiate(b.to_param()))) {
      // memoize on the stored node
      int id = intern_path(p);
      nodes_[static_cast<size_t>(id)]->witness = b;
      return b;
    }
  }
  throw Error(Err::WitnessExhausted,
              "no fresh instance in the finite witness list at " + path_display(p));
}

bool SearchTree::child_valid(const Path& p, const RankedElem& a) {
  const Node& n = node(p);
  if (!n.in_tree) throw Error(Err::NotANode, path_display(p));
  const RankedElem m0 = universe_->marker(0);
  const RankedElem m1 = universe_->marker(1);
  switch (n.kind) {
    case NodeKind::Even: return a == m0;
    case NodeKind::Leaf: return false;
    case NodeKind::Repetition: return a == m0;
    case NodeKind::RedexAnd: return a == m0 || a == m1;
    case NodeKind::RedexOr: return a == m0;
    case NodeKind::RedexAll: {
      if (!universe_->in_stage(a.set, alpha_)) return false;
      return a.stage == universe_->rank_of(a.set);
    }
    case NodeKind::RedexEx: return a == m0;
  }
  return false;
}

std::vector<std::pair<RankedElem, std::vector<Formula>>> SearchTree::expand(const Path& p) {
  Node n = node(p);
  if (!n.in_tree) throw Error(Err::NotANode, path_display(p));
  std::vector<std::pair<RankedElem, std::vector<Formula>>> out;
  const RankedElem m0 = universe_->marker(0);
  const RankedElem m1 = universe_->marker(1);
  switch (n.kind) {
    case NodeKind::Leaf: return out;
    case NodeKind::Even:
    case NodeKind::Repetition:
    case NodeKind::RedexOr:
    case NodeKind::RedexEx:
      out.push_back({m0, child_label_for_parent(p, n, m0)});
      return out;
    case NodeKind::RedexAnd:
      out.push_back({m0, child_label_for_parent(p, n, m0)});
      out.push_back({m1, child_label_for_parent(p, n, m1)});
      return out;
    case NodeKind::RedexAll:
      for (const RankedElem& a : universe_->ranked_stage(alpha_))
        out.push_back({a, child_label_for_parent(p, n, a)});
      return out;
  }
  return out;
}

std::strong_ordering SearchTree::kb_compare(const Path& a, const Path& b) const {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (!(a[i] == b[i]))
      return universe_->stage_order_compare(a[i], b[i]);
  }
  // equal up to min length: the proper extension is smaller
  if (a.size() == b.size()) return std::strong_ordering::equal;
  return a.size() > b.size() ? std::strong_ordering::less : std::strong_ordering::greater;
}

OrdCNF SearchTree::node_rank(const Path& p) const {
  OrdCNF r;
  for (const auto& e : p) r = OrdCNF::max(r, e.stage);
  return r;
}

Sexpr SearchTree::node_dump(const Path& p) {
  const Node& n = node(p);
  Sexpr s = Sexpr::make_list();
  s.add_atom("node").add(path_to_sexpr(p));
  if (!n.in_tree) {
    s.add_atom("out-of-tree");
    return s;
  }
  Sexpr lab = Sexpr::make_list();
  lab.add_atom("label");
  for (Formula f : n.label) lab.add(f.to_sexpr());
  s.add(std::move(lab));
  const char* kind = nullptr;
  switch (n.kind) {
    case NodeKind::Even: kind = "even"; break;
    case NodeKind::Leaf: kind = "leaf"; break;
    case NodeKind::Repetition: kind = "repetition"; break;
    case NodeKind::RedexAnd: kind = "redex-and"; break;
    case NodeKind::RedexOr: kind = "redex-or"; break;
    case NodeKind::RedexAll: kind = "redex-all"; break;
    case NodeKind::RedexEx: kind = "redex-ex"; break;
  }
  s.add_atom(kind);
  if (n.redex >= 0) {
    Sexpr r = Sexpr::make_list();
    r.add_atom("redex").add_atom(std::to_string(n.redex));
    s.add(std::move(r));
  }
  return s;
}

std::vector<BranchViolation> check_branch_properties(
    const StageUniverse& universe, const std::vector<std::vector<Formula>>& labels,
    const std::vector<RankedElem>& entries) {
  std::vector<BranchViolation> out;
  std::vector<Formula> occurring;
  for (const auto& lab : labels)
    for (Formula f : lab)
      if (std::find(occurring.begin(), occurring.end(), f) == occurring.end())
        occurring.push_back(f);

  std::vector<HFSet> range;
  for (const auto& e : entries) range.push_back(e.set);
  std::vector<HFSet> range_u = range;
  for (HFSet x : universe.u()) range_u.push_back(x);

  auto in_sets = [](const std::vector<HFSet>& xs, HFSet a) {
    return std::find(xs.begin(), xs.end(), a) != xs.end();
  };
  auto occurs_f = [&](Formula f) {
    return std::find(occurring.begin(), occurring.end(), f) != occurring.end();
  };

  for (Formula f : occurring) {
    // (a) parameters lie in rng(f) u u
    std::vector<Param> params;
    f.collect_params(params);
    for (const Param& p : params)
      if (p.kind == Param::Kind::Set && !in_sets(range_u, p.set))
        out.push_back({'a', "parameter " + p.set.display() + " outside rng(f) u u in " +
                                f.display()});
    switch (f.kind()) {
      case FKind::In:
      case FKind::NotIn:
      case FKind::Eq:
      case FKind::NotEq:
        // (b) prime formulas on a branch are false
        if (f.closed() && f.eval_delta0())
          out.push_back({'b', "true prime formula " + f.display()});
        break;
      case FKind::And:
        if (!occurs_f(f.child0()) && !occurs_f(f.child1()))
          out.push_back({'c', "no conjunct of " + f.display() + " occurs"});
        break;
      case FKind::Or:
        if (!occurs_f(f.child0()) || !occurs_f(f.child1()))
          out.push_back({'d', "a disjunct of " + f.display() + " is missing"});
        break;
      case FKind::All: {
        bool found = false;
        for (const auto& e : entries)
          if (occurs_f(f.instantiate(e.to_param()))) found = true;
        if (!found)
          out.push_back({'e', "no instance of " + f.display() + " from rng(f)"});
        break;
      }
      case FKind::Ex: {
        std::vector<Param> candidates;
        for (const auto& e : entries) candidates.push_back(e.to_param());
        for (HFSet x : universe.u()) candidates.push_back(universe.ranked(x).to_param());
        for (const Param& c : candidates)
          if (!occurs_f(f.instantiate(c)))
            out.push_back({'f', "missing instance of " + f.display() + " at " + c.display()});
        break;
      }
    }
  }
  return out;
}

}  // namespace bhcalc
