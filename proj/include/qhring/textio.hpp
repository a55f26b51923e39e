#pragma once

#include <string>

#include "qhring/quantum.hpp"

namespace qh {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// "<1,-1>" -> element of g. The empty bracket "<>" is the zero of a rank-0
// group.
GammaElement parseGammaElement(const GammaPtr& g, const std::string& text);

// Series literal over a group: "<0,0> + <1,-1>" or "0", optionally followed
// by "@E=p/q".
NovikovSeries parseSeries(const GammaPtr& g, const std::string& text);

// Element literal: terms "name<coords>" joined by " + ", or "0"; an optional
// "(x)" between name and coords is accepted; "@E=p/q" sets the cutoff.
// Outputs of renderQh parse back to equal elements.
QhElement parseQh(const SpecPtr& s, const std::string& text);

}  // namespace qh
