#include "qhring/novikov.hpp"

#include <algorithm>

namespace qh {

NovikovSeries NovikovSeries::monomial(const GammaElement& g, ExtRat cutoff) {
  NovikovSeries s(g.group(), cutoff);
  if (ExtRat(g.omega()) > cutoff)
    throw std::invalid_argument("NovikovSeries: term above cutoff");
  s.terms_.push_back(g);
  return s;
}

bool NovikovSeries::contains(const GammaElement& g) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), g, GammaElement::energyLess);
  return it != terms_.end() && it->coords() == g.coords();
}

void NovikovSeries::toggle(const GammaElement& g) {
  if (!sameGroup(group_, g.group())) throw GroupMismatch();
  if (ExtRat(g.omega()) > cutoff_) return;  // silently above the validity bound
  auto it = std::lower_bound(terms_.begin(), terms_.end(), g, GammaElement::energyLess);
  if (it != terms_.end() && it->coords() == g.coords())
    terms_.erase(it);
  else
    terms_.insert(it, g);
}

NovikovSeries NovikovSeries::truncated(const ExtRat& bound) const {
  NovikovSeries r(group_, ExtRat::min(cutoff_, bound));
  for (const auto& t : terms_)
    if (ExtRat(t.omega()) <= r.cutoff_) r.terms_.push_back(t);
  return r;
}

NovikovSeries NovikovSeries::withCutoff(const ExtRat& c) const {
  NovikovSeries r = *this;
  r.cutoff_ = c;
  r.terms_.clear();
  for (const auto& t : terms_)
    if (ExtRat(t.omega()) <= c) r.terms_.push_back(t);
  return r;
}

NovikovSeries NovikovSeries::shifted(const GammaElement& g) const {
  NovikovSeries r(group_, cutoff_ + g.omega());
  for (const auto& t : terms_) r.terms_.push_back(t + g);
  return r;
}

NovikovSeries novAdd(const NovikovSeries& x, const NovikovSeries& y) {
  if (!sameGroup(x.group(), y.group())) throw GroupMismatch();
  NovikovSeries r(x.group(), ExtRat::min(x.cutoff(), y.cutoff()));
  const auto& a = x.terms();
  const auto& b = y.terms();
  size_t i = 0, j = 0;
  auto push = [&](const GammaElement& t) {
    if (ExtRat(t.omega()) <= r.cutoff()) r.terms_.push_back(t);
  };
  while (i < a.size() && j < b.size()) {
    if (a[i].coords() == b[j].coords()) {
      ++i;
      ++j;  // cancels mod 2
    } else if (GammaElement::energyLess(a[i], b[j])) {
      push(a[i++]);
    } else {
      push(b[j++]);
    }
  }
  while (i < a.size()) push(a[i++]);
  while (j < b.size()) push(b[j++]);
  return r;
}

NovikovSeries novMul(const NovikovSeries& x, const NovikovSeries& y) {
  if (!sameGroup(x.group(), y.group())) throw GroupMismatch();
  // Unknown terms of one factor can first meet the other factor at its
  // valuation; when both known parts are empty they can only meet each other
  // at the sum of the cutoffs.
  ExtRat c = ExtRat::min(ExtRat::min(x.cutoff() + novValuation(y), y.cutoff() + novValuation(x)),
                         x.cutoff() + y.cutoff());
  NovikovSeries r(x.group(), c);
  for (const auto& a : x.terms())
    for (const auto& b : y.terms()) {
      GammaElement t = a + b;
      if (ExtRat(t.omega()) <= c) r.toggle(t);
    }
  return r;
}

ExtRat novValuation(const NovikovSeries& x) {
  if (x.empty()) return ExtRat::infinity();
  return ExtRat(x.terms().front().omega());
}

std::map<Int, NovikovSeries> novGrade(const NovikovSeries& x) {
  std::map<Int, NovikovSeries> parts;
  for (const auto& t : x.terms()) {
    Int k = -2 * t.chern();
    auto it = parts.find(k);
    if (it == parts.end())
      it = parts.emplace(k, NovikovSeries(x.group(), x.cutoff())).first;
    it->second.toggle(t);
  }
  return parts;
}

NovikovSeries novGeomInverse(const NovikovSeries& u, const Rational& bound) {
  GammaElement zero = u.group()->zero();
  if (!u.contains(zero)) throw NotUnital("missing <0> term");
  NovikovSeries n = novAdd(u, NovikovSeries::monomial(zero, u.cutoff()));
  if (!n.empty() && novValuation(n) <= ExtRat(Rational(0)))
    throw NotUnital("non-unit part has nonpositive valuation");
  ExtRat cut = ExtRat::min(ExtRat(bound), u.cutoff());
  NovikovSeries acc = NovikovSeries::monomial(zero, cut);
  NovikovSeries pow = acc;
  n = n.truncated(cut);
  while (true) {
    pow = novMul(pow, n).truncated(cut).withCutoff(cut);
    if (pow.empty()) break;
    acc = novAdd(acc, pow);
  }
  return acc.withCutoff(cut);
}

std::string renderGammaElement(const GammaElement& g) {
  std::string s = "<";
  const IVec& c = g.coords();
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  s += ">";
  return s;
}

std::string renderSeries(const NovikovSeries& x) {
  std::string s;
  if (x.empty()) {
    s = "0";
  } else {
    for (size_t i = 0; i < x.terms().size(); ++i) {
      if (i) s += " + ";
      s += renderGammaElement(x.terms()[i]);
    }
  }
  if (!x.cutoff().isInf()) s += " @E=" + x.cutoff().finite().str();
  return s;
}

}  // namespace qh
