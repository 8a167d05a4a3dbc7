// Copyright (c) 2026 The bhcalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include "bhcalc/symord.hpp"

#include "bhcalc/formula.hpp"  // Error

namespace bhcalc {

SymOrd SymOrd::atom(OrdCNF subscript) {
  SymOrd s;
  s.kind_ = Kind::Atom;
  s.sub_ = std::move(subscript);
  return s;
}

SymOrd SymOrd::sum(std::vector<Summand> xs) {
  if (xs.empty()) return zero();
  if (xs.size() == 1 && xs[0].second == OrdCNF(1) && xs[0].first.kind() == Kind::Atom)
    return xs[0].first;  // B^(e)*1 = e for epsilon atoms
  SymOrd s;
  s.kind_ = Kind::Sum;
  s.sum_ = std::move(xs);
  return s;
}

SymOrd SymOrd::ordinal(const OrdCNF& b) {
  if (b.is_zero()) return zero();
  return sum({{zero(), b}});
}

std::strong_ordering SymOrd::compare(const SymOrd& o) const {
  if (kind_ == Kind::Zero)
    return o.kind_ == Kind::Zero ? std::strong_ordering::equal : std::strong_ordering::less;
  if (o.kind_ == Kind::Zero) return std::strong_ordering::greater;

  if (kind_ == Kind::Atom && o.kind_ == Kind::Atom) return sub_.compare(o.sub_);
  if (kind_ == Kind::Atom) {  // atom e = B^e vs sum: compare with lead
    auto c = compare(o.sum_[0].first);
    return c == std::strong_ordering::greater ? std::strong_ordering::greater
                                              : std::strong_ordering::less;
  }
  if (o.kind_ == Kind::Atom) {
    auto c = sum_[0].first.compare(o);
    return c == std::strong_ordering::less ? std::strong_ordering::less
                                           : std::strong_ordering::greater;
  }

  size_t n = std::min(sum_.size(), o.sum_.size());
  for (size_t i = 0; i < n; ++i) {
    auto c = sum_[i].first.compare(o.sum_[i].first);
    if (c != std::strong_ordering::equal) return c;
    auto cc = sum_[i].second.compare(o.sum_[i].second);
    if (cc != std::strong_ordering::equal) return cc;
  }
  return sum_.size() <=> o.sum_.size();
}

namespace {

std::vector<SymOrd::Summand> view(const SymOrd& s) {
  switch (s.kind()) {
    case SymOrd::Kind::Zero: return {};
    case SymOrd::Kind::Atom: return {{s, OrdCNF(1)}};
    case SymOrd::Kind::Sum: return s.summands();
  }
  return {};
}

}  // namespace

SymOrd SymOrd::operator+(const SymOrd& o) const {
  if (kind_ == Kind::Zero) return o;
  if (o.kind_ == Kind::Zero) return *this;
  std::vector<Summand> a = view(*this), b = view(o);
  std::vector<Summand> out;
  for (size_t i = 0; i < a.size(); ++i) {
    auto c = a[i].first.compare(b[0].first);
    if (c == std::strong_ordering::less) break;
    if (c == std::strong_ordering::equal) {
      out.push_back({a[i].first, a[i].second + b[0].second});
      out.insert(out.end(), b.begin() + 1, b.end());
      return sum(std::move(out));
    }
    out.push_back(a[i]);
  }
  out.insert(out.end(), b.begin(), b.end());
  return sum(std::move(out));
}

std::string SymOrd::str() const {
  switch (kind_) {
    case Kind::Zero: return "0";
    case Kind::Atom: return "e[" + sub_.str() + "]";
    case Kind::Sum: {
      std::string out;
      for (size_t i = 0; i < sum_.size(); ++i) {
        if (i) out += " + ";
        if (sum_[i].first.kind() == Kind::Zero) {
          out += sum_[i].second.str();
          continue;
        }
        out += "B^(" + sum_[i].first.str() + ")";
        if (!(sum_[i].second == OrdCNF(1))) out += "*" + sum_[i].second.str();
      }
      return out;
    }
  }
  return "?";
}

SymOrd OrdInterpreter::interpret(const EpsTerm& s) const {
  switch (s.kind()) {
    case EpsTerm::Kind::Zero: return SymOrd::zero();
    case EpsTerm::Kind::Eps: {
      OrdCNF img = c_(s.eps_elem());
      for (const auto& [e, v] : seen_) {
        auto ce = base_.compare(e, s.eps_elem());
        auto cv = v.compare(img);
        if (ce != cv)
          throw Error(Err::NotEmbedding, "c is not an order embedding at element " +
                                             base_.name(s.eps_elem()));
      }
      seen_.push_back({s.eps_elem(), img});
      return SymOrd::atom(eta_ + OrdCNF(1) + img);
    }
    case EpsTerm::Kind::Sum: {
      std::vector<SymOrd::Summand> xs;
      for (const auto& [e, c] : s.summands()) xs.push_back({interpret(e), c});
      return SymOrd::sum(std::move(xs));
    }
  }
  return SymOrd::zero();
}

}  // namespace bhcalc
