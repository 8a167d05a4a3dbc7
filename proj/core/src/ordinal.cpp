// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "bhcalc/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace bhcalc {

OrdCNF::OrdCNF(uint64_t n) {
  if (n > 0) sum_.push_back({OrdCNF(), n});
}

OrdCNF::OrdCNF(std::vector<Summand> summands) {
  // Interpret the list as a left-to-right ordinal sum; smaller leading
  // summands are absorbed, equal exponents merge. The result is canonical.
  OrdCNF acc;
  for (auto& s : summands) {
    if (s.second == 0) continue;
    OrdCNF part;
    part.sum_.push_back(std::move(s));
    acc = acc + part;
  }
  sum_ = std::move(acc.sum_);
}

OrdCNF OrdCNF::omega() {
  OrdCNF r;
  r.sum_.push_back({OrdCNF(1), 1});
  return r;
}

OrdCNF OrdCNF::omega_pow(const OrdCNF& e) {
  OrdCNF r;
  r.sum_.push_back({e, 1});
  return r;
}

OrdCNF OrdCNF::omega_times(uint64_t c) {
  OrdCNF r;
  if (c > 0) r.sum_.push_back({OrdCNF(1), c});
  return r;
}

bool OrdCNF::is_finite() const {
  return sum_.empty() || (sum_.size() == 1 && sum_[0].first.is_zero());
}

uint64_t OrdCNF::nat() const {
  if (sum_.empty()) return 0;
  if (!is_finite()) throw std::logic_error("OrdCNF::nat on infinite ordinal");
  return sum_[0].second;
}

std::strong_ordering OrdCNF::compare(const OrdCNF& o) const {
  size_t n = std::min(sum_.size(), o.sum_.size());
  for (size_t i = 0; i < n; ++i) {
    auto c = sum_[i].first.compare(o.sum_[i].first);
    if (c != std::strong_ordering::equal) return c;
    if (sum_[i].second != o.sum_[i].second)
      return sum_[i].second <=> o.sum_[i].second;
  }
  return sum_.size() <=> o.sum_.size();
}

OrdCNF OrdCNF::operator+(const OrdCNF& o) const {
  if (o.is_zero()) return *this;
  OrdCNF r;
  const OrdCNF& lead = o.sum_[0].first;
  for (const auto& s : sum_) {
    auto c = s.first.compare(lead);
    if (c == std::strong_ordering::less) break;  // absorbed
    if (c == std::strong_ordering::equal) {
      r.sum_.push_back({s.first, s.second + o.sum_[0].second});
      r.sum_.insert(r.sum_.end(), o.sum_.begin() + 1, o.sum_.end());
      return r;
    }
    r.sum_.push_back(s);
  }
  r.sum_.insert(r.sum_.end(), o.sum_.begin(), o.sum_.end());
  return r;
}

OrdCNF OrdCNF::star() const {
  if (is_zero()) return OrdCNF();
  return sum_[0].first;
}

std::optional<OrdCNF> OrdCNF::left_subtract(const OrdCNF& a) const {
  if (a.compare(*this) == std::strong_ordering::greater) return std::nullopt;
  // Find the first summand where a and *this differ.
  size_t i = 0;
  while (i < a.sum_.size() && i < sum_.size() && a.sum_[i].first == sum_[i].first &&
         a.sum_[i].second == sum_[i].second)
    ++i;
  OrdCNF r;
  if (i == a.sum_.size()) {
    r.sum_.assign(sum_.begin() + i, sum_.end());
    return r;
  }
  // a.sum_[i] differs; since a <= *this the exponents agree and the
  // coefficient of a is smaller, or a's exponent is smaller (fully absorbed).
  if (a.sum_[i].first == sum_[i].first && a.sum_[i].second < sum_[i].second) {
    r.sum_.push_back({sum_[i].first, sum_[i].second - a.sum_[i].second});
    r.sum_.insert(r.sum_.end(), sum_.begin() + i + 1, sum_.end());
  } else {
    r.sum_.assign(sum_.begin() + i, sum_.end());
  }
  return r;
}

size_t OrdCNF::hash() const {
  size_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& s : sum_) {
    h ^= s.first.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= s.second + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::string OrdCNF::str() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& s : sum_) {
    if (!first) out += "+";
    first = false;
    if (s.first.is_zero()) {
      out += std::to_string(s.second);
    } else {
      if (s.first == OrdCNF(1))
        out += "w";
      else
        out += "w^(" + s.first.str() + ")";
      if (s.second != 1) out += "*" + std::to_string(s.second);
    }
  }
  return out;
}

namespace {

struct OrdParser {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  uint64_t number() {
    skip_ws();
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      throw std::runtime_error("ordinal parse error: number expected at " + std::to_string(pos));
    uint64_t n = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      n = n * 10 + (s[pos++] - '0');
    return n;
  }

  OrdCNF ordinal() {
    std::vector<OrdCNF::Summand> parts;
    while (true) {
      parts.push_back(summand());
      skip_ws();
      if (!eat('+')) break;
    }
    return OrdCNF(std::move(parts));
  }

  OrdCNF::Summand summand() {
    skip_ws();
    if (pos < s.size() && s[pos] == 'w') {
      ++pos;
      OrdCNF exp(1);
      if (eat('^')) {
        if (!eat('(')) throw std::runtime_error("ordinal parse error: '(' expected");
        exp = ordinal();
        if (!eat(')')) throw std::runtime_error("ordinal parse error: ')' expected");
      }
      uint64_t c = 1;
      if (eat('*')) c = number();
      return {exp, c};
    }
    uint64_t n = number();
    return {OrdCNF(), n};
  }
};

}  // namespace

Sexpr OrdCNF::to_sexpr() const {
  Sexpr s = Sexpr::make_list();
  s.add_atom("o");
  for (const auto& [e, c] : sum_) {
    Sexpr part = Sexpr::make_list();
    part.add(e.to_sexpr()).add_atom(std::to_string(c));
    s.add(std::move(part));
  }
  return s;
}

OrdCNF OrdCNF::from_sexpr(const Sexpr& s) {
  if (s.head() != "o") throw std::runtime_error("expected (o ...), got " + s.str());
  std::vector<Summand> parts;
  for (size_t i = 1; i < s.size(); ++i)
    parts.push_back({from_sexpr(s.at(i).at(0)), std::stoull(s.at(i).at(1).atom)});
  return OrdCNF(std::move(parts));
}

OrdCNF OrdCNF::parse(const std::string& text) {
  OrdParser p{text};
  OrdCNF r = p.ordinal();
  p.skip_ws();
  if (p.pos != text.size())
    throw std::runtime_error("ordinal parse error: trailing input in '" + text + "'");
  return r;
}

}  // namespace bhcalc
