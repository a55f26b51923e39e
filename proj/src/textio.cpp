#include "qhring/textio.hpp"

#include <algorithm>

namespace qh {

namespace {

std::string stripped(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

// splits off a trailing "@E=..." cutoff marker
std::pair<std::string, ExtRat> splitCutoff(const std::string& text) {
  size_t at = text.rfind("@E=");
  if (at == std::string::npos) return {stripped(text), ExtRat::infinity()};
  std::string val = stripped(text.substr(at + 3));
  try {
    return {stripped(text.substr(0, at)), ExtRat(Rational::parse(val))};
  } catch (const std::invalid_argument&) {
    throw ParseError("bad cutoff value '" + val + "'");
  }
}

IVec parseCoords(const std::string& inside, const std::string& context) {
  IVec coords;
  std::string cur;
  auto flush = [&] {
    std::string t = stripped(cur);
    cur.clear();
    if (t.empty()) throw ParseError("empty coordinate in '" + context + "'");
    try {
      Rational r = Rational::parse(t);
      if (!r.isInteger()) throw std::invalid_argument("");
      coords.push_back(r.num());
    } catch (const std::invalid_argument&) {
      throw ParseError("bad coordinate '" + t + "' in '" + context + "'");
    }
  };
  for (char c : inside) {
    if (c == ',')
      flush();
    else
      cur += c;
  }
  if (!stripped(cur).empty()) flush();
  return coords;
}

std::vector<std::string> splitTerms(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '+' && i > 0 && text[i - 1] == ' ' && i + 1 < text.size() &&
        text[i + 1] == ' ') {
      parts.push_back(stripped(cur));
      cur.clear();
      ++i;  // skip the space after '+'
    } else {
      cur += text[i];
    }
  }
  parts.push_back(stripped(cur));
  return parts;
}

}  // namespace

GammaElement parseGammaElement(const GammaPtr& g, const std::string& text) {
  std::string t = stripped(text);
  if (t.size() < 2 || t.front() != '<' || t.back() != '>')
    throw ParseError("gamma literal must look like <c1,c2>: '" + text + "'");
  IVec coords = parseCoords(t.substr(1, t.size() - 2), t);
  if ((int)coords.size() != g->canonicalRank())
    throw ParseError("gamma literal '" + t + "' has " + std::to_string(coords.size()) +
                     " coordinates, group has rank " + std::to_string(g->canonicalRank()));
  return g->element(std::move(coords));
}

NovikovSeries parseSeries(const GammaPtr& g, const std::string& text) {
  auto [body, cutoff] = splitCutoff(text);
  NovikovSeries out(g, cutoff);
  if (body == "0" || body.empty()) return out;
  for (const std::string& term : splitTerms(body)) out.toggle(parseGammaElement(g, term));
  return out;
}

QhElement parseQh(const SpecPtr& s, const std::string& text) {
  auto [body, cutoff] = splitCutoff(text);
  QhElement out = QhElement::zero(s).withCutoff(cutoff);
  if (body == "0" || body.empty()) return out;
  for (const std::string& term : splitTerms(body)) {
    size_t lt = term.find('<');
    if (lt == std::string::npos || term.back() != '>')
      throw ParseError("term must look like name<coords>: '" + term + "'");
    std::string name = stripped(term.substr(0, lt));
    // tensor marker between class name and coordinates
    if (name.size() >= 3 && name.compare(name.size() - 3, 3, "(x)") == 0)
      name = stripped(name.substr(0, name.size() - 3));
    int idx = s->classIndex(name);
    if (idx < 0) throw ParseError("unknown basis class '" + name + "'");
    GammaElement g = parseGammaElement(s->gamma, term.substr(lt));
    if (ExtRat(g.omega()) > cutoff)
      throw ParseError("term '" + term + "' lies above the cutoff");
    out.toggle(idx, g);
  }
  return out;
}

}  // namespace qh
