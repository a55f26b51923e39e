#include "qhring/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace qh {

const LoopElement& CatalogEntry::loop(const std::string& name) const {
  for (const auto& l : loops)
    if (l.name == name) return l;
  throw std::invalid_argument("no loop named '" + name + "' in spec '" + spec->name + "'");
}

namespace {

SpecPtr finishSpec(RingSpec s) {
  auto sp = std::make_shared<const RingSpec>(std::move(s));
  ValidationReport rep = validateSpec(*sp);
  if (!rep.ok()) throw ValidationError(std::move(rep));
  return sp;
}

void checkLoops(const CatalogEntry& e) {
  for (const auto& l : e.loops)
    if (!loopDegreeOk(l))
      throw ValidationError(ValidationReport{
          {"loop '" + l.name + "': q has degree incompatible with 2n-2I"}});
}

int idx(const RingSpec& s, const char* name) { return s.classIndex(name); }

CatalogEntry makeCp1() {
  RingSpec s;
  s.name = "cp1";
  s.n = 1;
  s.gamma = GammaGroup::build({1, {Rational(1)}, {2}});
  s.basis.classes = {{"[M]", 2}, {"pt", 0}};
  s.basis.fundamentalIndex = 0;
  s.table.setClassical(0, 0, 0b01);
  s.table.setClassical(0, 1, 0b10);
  GammaElement L = s.gamma->element({1});
  s.table.quantum.push_back({L, 1, 1, 0b01});
  CatalogEntry e;
  e.spec = finishSpec(std::move(s));
  e.loops.push_back({"rotation", e.spec,
                     QhElement::monomial(e.spec, idx(*e.spec, "pt"), e.spec->gamma->zero()), 1});
  checkLoops(e);
  return e;
}

CatalogEntry makeCp2() {
  RingSpec s;
  s.name = "cp2";
  s.n = 2;
  s.gamma = GammaGroup::build({1, {Rational(1)}, {3}});
  s.basis.classes = {{"[M]", 4}, {"line", 2}, {"pt", 0}};
  s.basis.fundamentalIndex = 0;
  for (int j = 0; j < 3; ++j) s.table.setClassical(0, j, ClassMask(1) << j);
  s.table.setClassical(1, 1, 0b100);  // line.line = pt
  GammaElement L = s.gamma->element({1});
  s.table.quantum.push_back({L, 1, 2, 0b001});  // line * pt -> [M]
  s.table.quantum.push_back({L, 2, 2, 0b010});  // pt * pt -> line
  CatalogEntry e;
  e.spec = finishSpec(std::move(s));
  e.loops.push_back({"rotation", e.spec,
                     QhElement::monomial(e.spec, idx(*e.spec, "line"), e.spec->gamma->zero()),
                     1});
  checkLoops(e);
  return e;
}

CatalogEntry makeProduct(const std::string& name, const Rational& lambda) {
  if (!(lambda > Rational(1)))
    throw std::invalid_argument(name + ": lambda must be a rational > 1, got " + lambda.str());
  RingSpec s;
  s.name = name;
  s.n = 2;
  s.gamma = GammaGroup::build({2, {lambda, Rational(1)}, {2, 2}});
  s.basis.classes = {{"[M]", 4}, {"a", 2}, {"b", 2}, {"pt", 0}};
  s.basis.fundamentalIndex = 0;
  for (int j = 0; j < 4; ++j) s.table.setClassical(0, j, ClassMask(1) << j);
  s.table.setClassical(1, 2, 0b1000);  // a.b = pt
  GammaElement A = s.gamma->element({1, 0});
  GammaElement B = s.gamma->element({0, 1});
  s.table.quantum.push_back({B, 1, 1, 0b0001});  // a*a  at b -> [M]
  s.table.quantum.push_back({A, 2, 2, 0b0001});  // b*b  at a -> [M]
  s.table.quantum.push_back({B, 1, 3, 0b0100});  // a*pt at b -> b
  s.table.quantum.push_back({A, 2, 3, 0b0010});  // b*pt at a -> a
  s.table.quantum.push_back({A + B, 3, 3, 0b0001});  // pt*pt at a+b -> [M]
  CatalogEntry e;
  e.spec = finishSpec(std::move(s));
  QhElement xplus = QhElement::zero(e.spec);
  xplus.toggle(1, e.spec->gamma->zero());
  xplus.toggle(2, e.spec->gamma->zero());
  e.loops.push_back({"circle-action", e.spec, xplus, 1});
  checkLoops(e);
  return e;
}

}  // namespace

std::vector<std::string> builtinNames() {
  return {"cp1", "cp2", "cp1xcp1", "f2-as-s2xs2"};
}

CatalogEntry builtinSpec(const std::string& name, const Rational& lambda) {
  if (name == "cp1") return makeCp1();
  if (name == "cp2") return makeCp2();
  if (name == "cp1xcp1" || name == "f2-as-s2xs2") return makeProduct(name, lambda);
  throw std::invalid_argument("unknown builtin spec '" + name + "'");
}

// --------------------------------------------------------------------------
// Serialization

namespace {

std::string maskToNames(const RingSpec& s, ClassMask v) {
  if (!v) return "0";
  std::string out;
  for (int k = 0; k < s.classCount(); ++k)
    if (v >> k & 1) {
      if (!out.empty()) out += " + ";
      out += s.basis.classes[k].name;
    }
  return out;
}

std::string gammaToBrackets(const GammaElement& g) {
  std::string out = "[";
  for (size_t i = 0; i < g.coords().size(); ++i) {
    if (i) out += ",";
    out += std::to_string(g.coords()[i]);
  }
  return out + "]";
}

}  // namespace

std::string serializeSpec(const CatalogEntry& e) {
  const RingSpec& s = *e.spec;
  std::ostringstream out;
  out << "name = " << s.name << "\n";
  out << "n = " << s.n << "\n";
  const auto& lat = s.gamma->source();
  out << "lattice_rank = " << lat.rank << "\n";
  out << "lattice_omega =";
  for (int i = 0; i < lat.rank; ++i) out << (i ? "," : "") << " " << lat.omega[i].str();
  out << "\n";
  out << "lattice_chern =";
  for (int i = 0; i < lat.rank; ++i) out << (i ? "," : "") << " " << lat.chern[i];
  out << "\n";
  for (const auto& c : s.basis.classes)
    out << "basis_class = " << c.name << " " << c.degree << "\n";
  out << "fundamental_class = " << s.basis.classes[s.fundamental()].name << "\n";
  for (const auto& [key, v] : s.table.classical)
    out << "classical_entry = " << s.basis.classes[key.first].name << " * "
        << s.basis.classes[key.second].name << " -> " << maskToNames(s, v) << "\n";
  std::vector<const QuantumEntry*> qs;
  for (const auto& q : s.table.quantum) qs.push_back(&q);
  std::stable_sort(qs.begin(), qs.end(), [](const QuantumEntry* a, const QuantumEntry* b) {
    if (a->gamma.omega() != b->gamma.omega()) return a->gamma.omega() < b->gamma.omega();
    if (a->gamma.coords() != b->gamma.coords()) return a->gamma.coords() < b->gamma.coords();
    return std::tie(a->i, a->j) < std::tie(b->i, b->j);
  });
  for (const QuantumEntry* q : qs)
    out << "quantum_entry = " << s.basis.classes[q->i].name << " * "
        << s.basis.classes[q->j].name << " @ " << gammaToBrackets(q->gamma) << " -> "
        << maskToNames(s, q->value) << "\n";
  for (const auto& l : e.loops) {
    QhElement q = l.q;
    out << "loop = " << l.name << " I=" << l.maslov << " q=" << renderQh(q) << "\n";
  }
  return out.str();
}

// --------------------------------------------------------------------------
// Parsing

namespace {

struct LineError {
  int line;
  std::string msg;
};

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> splitList(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  std::string last = strip(cur);
  if (!last.empty() || !out.empty()) out.push_back(last);
  return out;
}

struct PendingClassical {
  std::string lhs, rhs, value;
  int line;
};
struct PendingQuantum {
  std::string lhs, rhs, gamma, value;
  int line;
};
struct PendingLoop {
  std::string name, maslov, q;
  int line;
};

}  // namespace

CatalogEntry parseSpecText(const std::string& text) {
  auto fail = [](int line, const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ": " + msg);
  };

  std::string name;
  std::optional<int> n;
  std::optional<int> rank;
  std::optional<std::string> omegaList, chernList;
  std::vector<std::pair<std::string, int>> classes;
  std::string fundamental;
  std::vector<PendingClassical> classicalLines;
  std::vector<PendingQuantum> quantumLines;
  std::vector<PendingLoop> loopLines;

  std::istringstream in(text);
  std::string raw;
  int lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    std::string line = strip(raw);
    if (line.empty() || line[0] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) fail(lineNo, "expected 'key = value'");
    std::string key = strip(line.substr(0, eq));
    std::string value = strip(line.substr(eq + 1));
    if (key == "name") {
      name = value;
    } else if (key == "n") {
      try {
        n = (int)Rational::parse(value).num();
      } catch (...) {
        fail(lineNo, "bad n");
      }
    } else if (key == "lattice_rank") {
      try {
        rank = (int)Rational::parse(value).num();
      } catch (...) {
        fail(lineNo, "bad lattice_rank");
      }
    } else if (key == "lattice_omega") {
      omegaList = value;
    } else if (key == "lattice_chern") {
      chernList = value;
    } else if (key == "basis_class") {
      size_t sp = value.find_last_of(' ');
      if (sp == std::string::npos) fail(lineNo, "basis_class needs 'name degree'");
      std::string nm = strip(value.substr(0, sp));
      int deg = 0;
      try {
        Rational d = Rational::parse(strip(value.substr(sp + 1)));
        if (!d.isInteger()) throw std::invalid_argument("");
        deg = (int)d.num();
      } catch (...) {
        fail(lineNo, "bad basis_class degree");
      }
      classes.emplace_back(nm, deg);
    } else if (key == "fundamental_class") {
      fundamental = value;
    } else if (key == "classical_entry" || key == "quantum_entry") {
      size_t star = value.find('*');
      if (star == std::string::npos) fail(lineNo, key + " needs 'x * y'");
      size_t arrow = value.find("->");
      if (arrow == std::string::npos) fail(lineNo, key + " needs '-> result'");
      std::string lhs = strip(value.substr(0, star));
      std::string mid = strip(value.substr(star + 1, arrow - star - 1));
      std::string res = strip(value.substr(arrow + 2));
      if (key == "classical_entry") {
        classicalLines.push_back({lhs, mid, res, lineNo});
      } else {
        size_t at = mid.find('@');
        if (at == std::string::npos) fail(lineNo, "quantum_entry needs '@ [gamma]'");
        std::string rhs = strip(mid.substr(0, at));
        std::string gam = strip(mid.substr(at + 1));
        quantumLines.push_back({lhs, rhs, gam, res, lineNo});
      }
    } else if (key == "loop") {
      size_t ipos = value.find(" I=");
      size_t qpos = value.find(" q=");
      if (ipos == std::string::npos || qpos == std::string::npos || qpos < ipos)
        fail(lineNo, "loop needs 'name I=<int> q=<element>'");
      loopLines.push_back({strip(value.substr(0, ipos)),
                           strip(value.substr(ipos + 3, qpos - ipos - 3)),
                           strip(value.substr(qpos + 3)), lineNo});
    } else {
      fail(lineNo, "unknown key '" + key + "'");
    }
  }

  if (name.empty()) throw ParseError("missing 'name'");
  if (!n) throw ParseError("missing 'n'");
  if (!rank) throw ParseError("missing 'lattice_rank'");
  if (!omegaList || !chernList) throw ParseError("missing lattice functionals");

  SphereClassLattice lat;
  lat.rank = *rank;
  try {
    for (const std::string& t : splitList(*omegaList, ','))
      if (!t.empty()) lat.omega.push_back(Rational::parse(t));
    for (const std::string& t : splitList(*chernList, ','))
      if (!t.empty()) {
        Rational r = Rational::parse(t);
        if (!r.isInteger()) throw ParseError("lattice_chern entries must be integers");
        lat.chern.push_back(r.num());
      }
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("bad lattice functional: ") + e.what());
  }
  if ((int)lat.omega.size() != lat.rank || (int)lat.chern.size() != lat.rank)
    throw ParseError("lattice functional lists do not match lattice_rank");

  RingSpec s;
  s.name = name;
  s.n = *n;
  s.gamma = GammaGroup::build(lat);
  for (auto& [nm, deg] : classes) s.basis.classes.push_back({nm, deg});
  int f = -1;
  for (int i = 0; i < (int)s.basis.classes.size(); ++i)
    if (s.basis.classes[i].name == fundamental) f = i;
  if (f < 0) throw ParseError("fundamental_class '" + fundamental + "' not among basis classes");
  s.basis.fundamentalIndex = f;

  auto classOf = [&](const std::string& nm, int line) {
    int i = s.classIndex(nm);
    if (i < 0) fail(line, "unknown basis class '" + nm + "'");
    return i;
  };
  auto maskOf = [&](const std::string& sum, int line) -> ClassMask {
    if (strip(sum) == "0") return 0;
    ClassMask v = 0;
    for (const std::string& t : splitList(sum, '+')) v ^= ClassMask(1) << classOf(t, line);
    return v;
  };
  for (const auto& pc : classicalLines) {
    int i = classOf(pc.lhs, pc.line), j = classOf(pc.rhs, pc.line);
    auto key = std::minmax(i, j);
    if (s.table.classical.count(key))
      fail(pc.line, "duplicate classical entry " + pc.lhs + " * " + pc.rhs);
    s.table.setClassical(i, j, maskOf(pc.value, pc.line));
  }
  for (const auto& pq : quantumLines) {
    int i = classOf(pq.lhs, pq.line), j = classOf(pq.rhs, pq.line);
    std::string g = pq.gamma;
    if (g.size() < 2 || g.front() != '[' || g.back() != ']')
      fail(pq.line, "gamma must be a bracketed integer list");
    IVec coords;
    for (const std::string& t : splitList(g.substr(1, g.size() - 2), ','))
      if (!t.empty()) {
        try {
          Rational r = Rational::parse(t);
          if (!r.isInteger()) throw std::invalid_argument("not an integer");
          coords.push_back(r.num());
        } catch (const std::invalid_argument&) {
          fail(pq.line, "gamma coordinates must be integers");
        }
      }
    if ((int)coords.size() != s.gamma->canonicalRank())
      fail(pq.line, "gamma coordinate count does not match the group rank");
    auto [lo, hi] = std::minmax(i, j);
    s.table.quantum.push_back({s.gamma->element(coords), lo, hi, maskOf(pq.value, pq.line)});
  }

  CatalogEntry e;
  e.spec = finishSpec(std::move(s));
  for (const auto& pl : loopLines) {
    try {
      Rational m = Rational::parse(pl.maslov);
      if (!m.isInteger()) throw std::invalid_argument("not an integer");
      LoopElement l{pl.name, e.spec, parseQh(e.spec, pl.q), m.num()};
      e.loops.push_back(std::move(l));
    } catch (const ValidationError&) {
      throw;
    } catch (const std::invalid_argument& ex) {
      fail(pl.line, std::string("bad loop: ") + ex.what());
    }
  }
  checkLoops(e);
  return e;
}

CatalogEntry loadSpecFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open spec file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseSpecText(buf.str());
}

CatalogEntry resolveSpec(const std::string& ref) {
  size_t colon = ref.find(':');
  std::string head = colon == std::string::npos ? ref : ref.substr(0, colon);
  auto names = builtinNames();
  if (std::find(names.begin(), names.end(), head) != names.end()) {
    Rational lambda(2);
    if (colon != std::string::npos) lambda = Rational::parse(ref.substr(colon + 1));
    return builtinSpec(head, lambda);
  }
  bool pathLike = ref.find('/') != std::string::npos ||
                  ref.find(".qhspec") != std::string::npos;
  if (!pathLike) {
    std::ifstream probe(ref);
    pathLike = probe.good();
  }
  if (pathLike) return loadSpecFile(ref);
  return builtinSpec(ref);  // reports the unknown-name error
}

}  // namespace qh
