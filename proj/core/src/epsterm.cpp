// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "bhcalc/epsterm.hpp"

#include <cctype>

#include "bhcalc/formula.hpp"  // Error

namespace bhcalc {

int RankedBase::parse_elem(const std::string&) const {
  throw Error(Err::BadInput, "this base does not parse element names");
}

EpsTerm EpsTerm::eps(int base_elem) {
  EpsTerm t;
  t.kind_ = Kind::Eps;
  t.eps_ = base_elem;
  return t;
}

EpsTerm EpsTerm::sum(std::vector<Summand> summands) {
  if (summands.empty()) return zero();
  if (summands.size() == 1 && summands[0].second == OrdCNF(1) && summands[0].first.is_eps())
    return summands[0].first;  // W^(eps_x)*1 denotes eps_x
  EpsTerm t;
  t.kind_ = Kind::Sum;
  t.sum_ = std::move(summands);
  return t;
}

EpsTerm EpsTerm::embed_ord(const OrdCNF& beta) {
  if (beta.is_zero()) return zero();
  return sum({{zero(), beta}});
}

std::optional<OrdCNF> EpsTerm::as_ordinal() const {
  if (is_zero()) return OrdCNF(0);
  if (is_sum() && sum_.size() == 1 && sum_[0].first.is_zero()) return sum_[0].second;
  return std::nullopt;
}

size_t EpsTerm::hash() const {
  size_t h = static_cast<size_t>(kind_) * 0x9e3779b97f4a7c15ull;
  if (kind_ == Kind::Eps) h ^= static_cast<size_t>(eps_) * 0x100000001b3ull;
  for (const auto& [e, c] : sum_) {
    h ^= e.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= c.hash() + (h << 6) + (h >> 2);
  }
  return h;
}

bool eps_equal(const EpsTerm& s, const EpsTerm& t) {
  if (s.kind() != t.kind()) return false;
  switch (s.kind()) {
    case EpsTerm::Kind::Zero: return true;
    case EpsTerm::Kind::Eps: return s.eps_elem() == t.eps_elem();
    case EpsTerm::Kind::Sum: {
      const auto& a = s.summands();
      const auto& b = t.summands();
      if (a.size() != b.size()) return false;
      for (size_t i = 0; i < a.size(); ++i)
        if (!(a[i].second == b[i].second) || !eps_equal(a[i].first, b[i].first)) return false;
      return true;
    }
  }
  return false;
}

std::strong_ordering eps_compare(const EpsTerm& s, const EpsTerm& t, const RankedBase& base) {
  using K = EpsTerm::Kind;
  if (s.kind() == K::Zero)
    return t.kind() == K::Zero ? std::strong_ordering::equal : std::strong_ordering::less;
  if (t.kind() == K::Zero) return std::strong_ordering::greater;

  if (s.kind() == K::Eps && t.kind() == K::Eps) return base.compare(s.eps_elem(), t.eps_elem());

  if (s.kind() == K::Eps) {  // t is a sum: s < t iff s < t_0 or s = t_0
    auto c = eps_compare(s, t.summands()[0].first, base);
    return c == std::strong_ordering::greater ? std::strong_ordering::greater
                                              : std::strong_ordering::less;
  }
  if (t.kind() == K::Eps) {  // s is a sum: s < t iff s_0 < t
    auto c = eps_compare(s.summands()[0].first, t, base);
    return c == std::strong_ordering::less ? std::strong_ordering::less
                                           : std::strong_ordering::greater;
  }

  // Sum vs sum: first difference decides; a proper prefix is smaller.
  const auto& a = s.summands();
  const auto& b = t.summands();
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    auto c = eps_compare(a[i].first, b[i].first, base);
    if (c != std::strong_ordering::equal) return c;
    auto cc = a[i].second.compare(b[i].second);
    if (cc != std::strong_ordering::equal) return cc;
  }
  return a.size() <=> b.size();
}

bool eps_validate(const EpsTerm& s, const OrdCNF& alpha, const RankedBase& base) {
  const OrdCNF bound = OrdCNF::omega_pow(alpha);
  switch (s.kind()) {
    case EpsTerm::Kind::Zero: return true;
    case EpsTerm::Kind::Eps: return base.rank(s.eps_elem()) < bound;
    case EpsTerm::Kind::Sum: {
      const auto& xs = s.summands();
      if (xs.empty()) return false;
      if (xs.size() == 1 && xs[0].second == OrdCNF(1) && xs[0].first.is_eps())
        return false;  // must have been normalized to the eps-constant
      for (size_t i = 0; i < xs.size(); ++i) {
        if (xs[i].second.is_zero() || !(xs[i].second < bound)) return false;
        if (!eps_validate(xs[i].first, alpha, base)) return false;
        if (i + 1 < xs.size() &&
            eps_compare(xs[i + 1].first, xs[i].first, base) != std::strong_ordering::less)
          return false;
      }
      return true;
    }
  }
  return false;
}

namespace {

using Summand = EpsTerm::Summand;

std::vector<Summand> view(const EpsTerm& t) {
  switch (t.kind()) {
    case EpsTerm::Kind::Zero: return {};
    case EpsTerm::Kind::Eps: return {{t, OrdCNF(1)}};
    case EpsTerm::Kind::Sum: return t.summands();
  }
  return {};
}

}  // namespace

EpsTerm eps_add(const EpsTerm& s, const EpsTerm& t, const OrdCNF& alpha, const RankedBase& base) {
  if (alpha.is_zero()) throw Error(Err::IndexZero, "eps_add needs alpha > 0");
  if (s.is_zero()) return t;
  if (t.is_zero()) return s;

  // The displayed case table collapses to Cantor normal form addition once
  // an eps-constant eps_x is read as the one-summand sum W^(eps_x)*1:
  // absorb left summands below the right lead, merge at equal exponents.
  std::vector<Summand> a = view(s), b = view(t);
  const EpsTerm& lead = b[0].first;
  std::vector<Summand> out;
  for (size_t i = 0; i < a.size(); ++i) {
    auto c = eps_compare(a[i].first, lead, base);
    if (c == std::strong_ordering::less) break;  // absorbed by b's lead
    if (c == std::strong_ordering::equal) {
      out.push_back({a[i].first, a[i].second + b[0].second});
      out.insert(out.end(), b.begin() + 1, b.end());
      return EpsTerm::sum(std::move(out));
    }
    out.push_back(a[i]);
  }
  out.insert(out.end(), b.begin(), b.end());
  return EpsTerm::sum(std::move(out));
}

EpsTerm eps_omega_pow(const EpsTerm& s) {
  if (s.is_eps()) return s;
  return EpsTerm::sum({{s, OrdCNF(1)}});
}

EpsTerm eps_tower(unsigned n, const EpsTerm& s) {
  EpsTerm t = s;
  for (unsigned i = 0; i < n; ++i) t = eps_omega_pow(t);
  return t;
}

OrdCNF eps_star(const EpsTerm& s, const RankedBase& base) {
  switch (s.kind()) {
    case EpsTerm::Kind::Zero: return OrdCNF(0);
    case EpsTerm::Kind::Eps: return base.rank(s.eps_elem()).star();
    case EpsTerm::Kind::Sum: {
      OrdCNF r;
      for (const auto& [e, c] : s.summands()) {
        r = OrdCNF::max(r, eps_star(e, base));
        r = OrdCNF::max(r, c.star());
      }
      return r;
    }
  }
  return OrdCNF(0);
}

std::optional<EpsTerm> eps_subtract(const EpsTerm& s, const EpsTerm& t, const OrdCNF& alpha,
                                    const RankedBase& base) {
  auto cmp = eps_compare(s, t, base);
  if (cmp == std::strong_ordering::greater) return std::nullopt;
  if (cmp == std::strong_ordering::equal) return EpsTerm::zero();
  if (s.is_zero()) return t;

  // Mirror the addition table: find the first summand where s and t differ.
  std::vector<Summand> a = view(s), b = view(t);
  size_t i = 0;
  while (i < a.size() && i < b.size() &&
         eps_compare(a[i].first, b[i].first, base) == std::strong_ordering::equal &&
         a[i].second == b[i].second)
    ++i;
  std::vector<Summand> rest;
  if (i == a.size()) {
    rest.assign(b.begin() + i, b.end());
  } else if (i < b.size() &&
             eps_compare(a[i].first, b[i].first, base) == std::strong_ordering::equal &&
             a[i].second < b[i].second) {
    auto dc = b[i].second.left_subtract(a[i].second);
    if (!dc) return std::nullopt;
    rest.push_back({b[i].first, *dc});
    rest.insert(rest.end(), b.begin() + i + 1, b.end());
  } else {
    rest.assign(b.begin() + i, b.end());
  }
  EpsTerm r = EpsTerm::sum(std::move(rest));
  if (!eps_equal(eps_add(s, r, alpha, base), t)) return std::nullopt;  // report, never guess
  return r;
}

EpsTerm eps_one() { return EpsTerm::embed_ord(OrdCNF(1)); }
EpsTerm eps_Omega() { return EpsTerm::sum({{eps_one(), OrdCNF(1)}}); }

namespace {

// ordinals with several summands are wrapped so that their '+' does not
// split the enclosing term
std::string ord_token(const OrdCNF& c) {
  std::string s = c.str();
  if (s.find('+') != std::string::npos) return "(" + s + ")";
  return s;
}

}  // namespace

std::string EpsTerm::str(const RankedBase& base) const {
  switch (kind_) {
    case Kind::Zero: return "0";
    case Kind::Eps: return "eps(" + base.name(eps_) + ")";
    case Kind::Sum: {
      std::string out;
      for (size_t i = 0; i < sum_.size(); ++i) {
        if (i) out += " + ";
        if (sum_[i].first.is_zero()) {  // embedded ordinal part
          out += ord_token(sum_[i].second);
          continue;
        }
        out += "W^(" + sum_[i].first.str(base) + ")";
        if (!(sum_[i].second == OrdCNF(1))) out += "*" + ord_token(sum_[i].second);
      }
      return out;
    }
  }
  return "?";
}

Sexpr EpsTerm::to_sexpr(const RankedBase& base) const {
  Sexpr s = Sexpr::make_list();
  switch (kind_) {
    case Kind::Zero: s.add_atom("zero"); break;
    case Kind::Eps: s.add_atom("eps").add_atom(base.name(eps_)); break;
    case Kind::Sum:
      s.add_atom("sum");
      for (const auto& [e, c] : sum_) {
        Sexpr part = Sexpr::make_list();
        part.add(e.to_sexpr(base)).add(c.to_sexpr());
        s.add(std::move(part));
      }
      break;
  }
  return s;
}

EpsTerm EpsTerm::from_sexpr(const Sexpr& s, const RankedBase& base) {
  const std::string h = s.head();
  if (h == "zero") return zero();
  if (h == "eps") return eps(base.parse_elem(s.at(1).atom));
  if (h == "sum") {
    std::vector<Summand> xs;
    for (size_t i = 1; i < s.size(); ++i)
      xs.push_back({from_sexpr(s.at(i).at(0), base), OrdCNF::from_sexpr(s.at(i).at(1))});
    return sum(std::move(xs));
  }
  throw Error(Err::BadInput, "not an eps-term: " + s.str());
}

namespace {

// Text grammar: `0` | `<ord>` | `eps(<elem>)` | summands `W^(<term>)[*<ord>]`
// joined by `+`; a trailing bare ordinal abbreviates `W^(0)*<ord>`.
struct TermParser {
  std::string s;
  const RankedBase& base;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool peek(char c) {
    skip();
    return pos < s.size() && s[pos] == c;
  }

  std::string balanced_parens() {
    // assumes the opening '(' was consumed
    size_t start = pos;
    int depth = 1;
    while (pos < s.size() && depth > 0) {
      if (s[pos] == '(') ++depth;
      if (s[pos] == ')') --depth;
      ++pos;
    }
    if (depth != 0) throw Error(Err::BadInput, "eps-term parse: missing ')'");
    return s.substr(start, pos - 1 - start);
  }

  EpsTerm parse_all() {
    skip();
    if (s.compare(pos, 4, "eps(") == 0) {
      pos += 4;
      std::string name = balanced_parens();
      skip();
      if (pos != s.size()) throw Error(Err::BadInput, "eps-term parse: trailing input");
      return EpsTerm::eps(base.parse_elem(name));
    }
    std::vector<EpsTerm::Summand> xs;
    while (true) {
      skip();
      if (peek('W')) {
        ++pos;
        if (!eat('^') || !eat('(')) throw Error(Err::BadInput, "eps-term parse: 'W^(' expected");
        TermParser inner{balanced_parens(), base};
        EpsTerm e = inner.parse_all();
        OrdCNF c(1);
        if (eat('*')) c = OrdCNF::parse(chunk_until_plus());
        xs.push_back({e, c});
      } else {
        // bare ordinal literal: W^(0)*<ord>
        OrdCNF c = OrdCNF::parse(chunk_until_plus());
        if (!c.is_zero()) xs.push_back({EpsTerm::zero(), c});
      }
      if (!eat('+')) break;
    }
    skip();
    if (pos != s.size()) throw Error(Err::BadInput, "eps-term parse: trailing input");
    return EpsTerm::sum(std::move(xs));
  }

  std::string chunk_until_plus() {
    skip();
    if (peek('(')) {  // parenthesized composite ordinal
      ++pos;
      return balanced_parens();
    }
    size_t start = pos;
    int depth = 0;
    while (pos < s.size()) {
      if (s[pos] == '(') ++depth;
      if (s[pos] == ')') --depth;
      if (s[pos] == '+' && depth == 0) break;
      ++pos;
    }
    std::string out = s.substr(start, pos - start);
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
    return out;
  }
};

}  // namespace

EpsTerm EpsTerm::parse(const std::string& text, const RankedBase& base) {
  TermParser p{text, base};
  return p.parse_all();
}

}  // namespace bhcalc
