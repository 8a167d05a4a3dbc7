// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "bhcalc/sexpr.hpp"

#include <cctype>
#include <stdexcept>

namespace bhcalc {

const Sexpr& Sexpr::at(size_t i) const {
  if (is_atom || i >= items.size()) throw std::runtime_error("sexpr: index out of range");
  return items[i];
}

std::string Sexpr::head() const {
  if (is_atom || items.empty() || !items[0].is_atom) return "";
  return items[0].atom;
}

std::string Sexpr::str() const {
  if (is_atom) return atom;
  std::string out = "(";
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out += ' ';
    out += items[i].str();
  }
  out += ')';
  return out;
}

namespace {

struct Reader {
  const std::string& s;
  size_t pos = 0;

  void skip() {
    while (pos < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[pos]))) {
        ++pos;
      } else if (s[pos] == ';') {  // comment to end of line
        while (pos < s.size() && s[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  Sexpr next() {
    skip();
    if (pos >= s.size()) throw std::runtime_error("sexpr: unexpected end of input");
    if (s[pos] == '(') {
      ++pos;
      Sexpr list = Sexpr::make_list();
      while (true) {
        skip();
        if (pos >= s.size()) throw std::runtime_error("sexpr: missing ')'");
        if (s[pos] == ')') {
          ++pos;
          return list;
        }
        list.items.push_back(next());
      }
    }
    if (s[pos] == ')') throw std::runtime_error("sexpr: unexpected ')'");
    size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) && s[pos] != '(' &&
           s[pos] != ')' && s[pos] != ';')
      ++pos;
    return Sexpr::make_atom(s.substr(start, pos - start));
  }

  bool done() {
    skip();
    return pos >= s.size();
  }
};

}  // namespace

Sexpr parse_sexpr(const std::string& text) {
  Reader r{text};
  Sexpr e = r.next();
  if (!r.done()) throw std::runtime_error("sexpr: trailing input");
  return e;
}

std::vector<Sexpr> parse_sexpr_list(const std::string& text) {
  Reader r{text};
  std::vector<Sexpr> out;
  while (!r.done()) out.push_back(r.next());
  return out;
}

}  // namespace bhcalc
