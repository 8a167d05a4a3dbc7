// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef BHCALC_SEARCHTREE_HPP
#define BHCALC_SEARCHTREE_HPP

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bhcalc/axioms.hpp"
#include "bhcalc/epsterm.hpp"
#include "bhcalc/lhier.hpp"

namespace bhcalc {

using Path = std::vector<RankedElem>;

std::string path_display(const Path& p);
Sexpr path_to_sexpr(const Path& p);

// The search tree S_alpha^u over the alphabet bold-L_alpha, lazily expanded
// with memoized labels. Sequents are ordered lists; "Gamma, phi" appends.
class SearchTree {
 public:
  enum class NodeKind { Even, Leaf, Repetition, RedexAnd, RedexOr, RedexAll, RedexEx };

  struct Node {
    bool in_tree = false;
    NodeKind kind = NodeKind::Leaf;
    std::vector<Formula> label;
    int redex = -1;                      // index of the leftmost non-prime formula
    std::optional<RankedElem> witness;   // RedexEx: the chosen instance
    unsigned axiom_index = 0;            // Even: k with |path| = 2k
  };

  SearchTree(const StageUniverse& universe, unsigned alpha);

  const StageUniverse& universe() const { return *universe_; }
  unsigned alpha() const { return alpha_; }
  const AxiomList& axioms() const { return axioms_; }

  // Node lookup; the returned node has in_tree=false for paths outside S.
  const Node& node(const Path& p);
  bool in_tree(const Path& p) { return node(p).in_tree; }

  // Children with labels, per the construction table. Throws NotANode.
  std::vector<std::pair<RankedElem, std::vector<Formula>>> expand(const Path& p);
  // Is p-cons-a a node of S (p assumed in S)?
  bool child_valid(const Path& p, const RankedElem& a);

  // Kleene-Brouwer: sigma < tau iff sigma properly extends tau, or the
  // first divergence is stage-order-smaller. The root is the maximum.
  std::strong_ordering kb_compare(const Path& a, const Path& b) const;

  // |p|_S = 0 for the root, else the maximum entry rank; equals
  // min{ m | p in S_{m+1} }.
  OrdCNF node_rank(const Path& p) const;

  // Path interning (handles for the eps-term base).
  int intern_path(const Path& p);
  const Path& path_of(int id) const { return paths_[static_cast<size_t>(id)]; }

  Sexpr node_dump(const Path& p);

 private:
  Node compute(const Path& p);
  std::vector<Formula> child_label_for_parent(const Path& p, const Node& n, const RankedElem& a);
  RankedElem ex_witness(const Path& p, const Node& n);
  std::vector<RankedElem> ex_witness_list(const Path& p) const;

  const StageUniverse* universe_;
  unsigned alpha_;
  AxiomList axioms_;
  // deques: references returned by node()/path_of() stay valid while the
  // pools grow during lazy expansion
  std::map<std::vector<std::pair<uint64_t, uint32_t>>, int> path_index_;
  std::deque<Path> paths_;
  std::deque<std::optional<Node>> nodes_;
};

// The KB-ordered node base for eps(S): elements are interned paths, the
// order is Kleene-Brouwer, the rank is the node rank.
class KbBase : public RankedBase {
 public:
  explicit KbBase(SearchTree& tree) : tree_(&tree) {}
  SearchTree& tree() const { return *tree_; }

  std::strong_ordering compare(int a, int b) const override {
    return tree_->kb_compare(tree_->path_of(a), tree_->path_of(b));
  }
  OrdCNF rank(int e) const override { return tree_->node_rank(tree_->path_of(e)); }
  std::string name(int e) const override { return path_display(tree_->path_of(e)); }

 private:
  SearchTree* tree_;
};

// Branch property report: violations of clauses (a)-(f) of the branch
// lemma, restricted to what is decidable inside the supplied fragment.
struct BranchViolation {
  char clause;  // 'a'..'f'
  std::string detail;
};

// The chain is a sequence of labels l(f[0]), ..., l(f[n]) together with the
// branch entries f(0), ..., f(n-1) between them.
std::vector<BranchViolation> check_branch_properties(const StageUniverse& universe,
                                                     const std::vector<std::vector<Formula>>& labels,
                                                     const std::vector<RankedElem>& entries);

}  // namespace bhcalc

#endif  // BHCALC_SEARCHTREE_HPP
