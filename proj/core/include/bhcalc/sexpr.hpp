// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef BHCALC_SEXPR_HPP
#define BHCALC_SEXPR_HPP

#include <memory>
#include <string>
#include <vector>

namespace bhcalc {

// Minimal S-expressions: atoms and lists. Atoms are bare tokens; anything
// with whitespace or parens must be produced via the printers below.
struct Sexpr {
  bool is_atom = false;
  std::string atom;
  std::vector<Sexpr> items;

  static Sexpr make_atom(std::string a) {
    Sexpr s;
    s.is_atom = true;
    s.atom = std::move(a);
    return s;
  }
  static Sexpr make_list(std::vector<Sexpr> xs = {}) {
    Sexpr s;
    s.items = std::move(xs);
    return s;
  }

  Sexpr& add(Sexpr x) {
    items.push_back(std::move(x));
    return *this;
  }
  Sexpr& add_atom(std::string a) { return add(make_atom(std::move(a))); }

  bool is_list() const { return !is_atom; }
  size_t size() const { return items.size(); }
  const Sexpr& at(size_t i) const;
  // Head atom of a list, or "" if not a tagged list.
  std::string head() const;

  std::string str() const;
};

Sexpr parse_sexpr(const std::string& text);
// Parses a file that holds a sequence of S-expressions.
std::vector<Sexpr> parse_sexpr_list(const std::string& text);

}  // namespace bhcalc

#endif  // BHCALC_SEXPR_HPP
