#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "qhring/gamma.hpp"

namespace qh {

struct NotUnital : std::runtime_error {
  explicit NotUnital(const std::string& why)
      : std::runtime_error("series is not of the form <0> + (positive-energy part): " + why) {}
};

// A Z/2 Novikov-ring element known exactly up to an energy bound. The support
// is a finite set of group elements (presence = coefficient 1), every one of
// energy <= cutoff; the series asserts nothing about terms above the cutoff.
// The canonical zero carries cutoff +inf; sums that cancel keep the cutoff
// they were computed at.
class NovikovSeries {
public:
  NovikovSeries() = default;
  explicit NovikovSeries(GammaPtr group, ExtRat cutoff = ExtRat::infinity())
      : group_(std::move(group)), cutoff_(cutoff) {}

  static NovikovSeries zero(GammaPtr group) { return NovikovSeries(std::move(group)); }
  static NovikovSeries monomial(const GammaElement& g, ExtRat cutoff = ExtRat::infinity());

  const GammaPtr& group() const { return group_; }
  const ExtRat& cutoff() const { return cutoff_; }
  const std::vector<GammaElement>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  bool contains(const GammaElement& g) const;

  // Flips the coefficient of g; keeps the term list ordered by energy.
  void toggle(const GammaElement& g);
  // Drops terms above the bound and lowers the cutoff to it.
  NovikovSeries truncated(const ExtRat& bound) const;
  NovikovSeries withCutoff(const ExtRat& c) const;
  NovikovSeries shifted(const GammaElement& g) const;  // multiply by <g>

  bool operator==(const NovikovSeries& o) const {
    return terms_ == o.terms_ && cutoff_ == o.cutoff_;
  }
  bool operator!=(const NovikovSeries& o) const { return !(*this == o); }
  // Support comparison only, ignoring cutoffs.
  bool sameSupport(const NovikovSeries& o) const { return terms_ == o.terms_; }

private:
  GammaPtr group_;
  std::vector<GammaElement> terms_;  // ordered by (energy, lex coords)
  ExtRat cutoff_ = ExtRat::infinity();
  friend NovikovSeries novAdd(const NovikovSeries&, const NovikovSeries&);
};

// Z/2 sum: symmetric difference of supports at the smaller cutoff.
NovikovSeries novAdd(const NovikovSeries& x, const NovikovSeries& y);

// Convolution product <g><g'> = <g+g'> with valuation-based cutoff
// propagation: cutoff = min(x.cutoff + val(y), y.cutoff + val(x)).
NovikovSeries novMul(const NovikovSeries& x, const NovikovSeries& y);

// Least energy in the support; +inf for the empty series.
ExtRat novValuation(const NovikovSeries& x);

// Splits by the grading k = -2 chern(gamma); parts inherit the cutoff.
std::map<Int, NovikovSeries> novGrade(const NovikovSeries& x);

// Inverse of <0> + n with val(n) > 0 as the geometric series sum_k n^k,
// truncated at energy bound. Throws NotUnital when the shape is wrong.
NovikovSeries novGeomInverse(const NovikovSeries& u, const Rational& bound);

// Rendering grammar: terms "<c1,c2>" joined by " + " in (energy, lex) order,
// "0" when empty, followed by "@E=<rational>" for finite cutoffs.
std::string renderSeries(const NovikovSeries& x);
std::string renderGammaElement(const GammaElement& g);

}  // namespace qh
