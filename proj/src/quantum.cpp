#include "qhring/quantum.hpp"

#include <algorithm>
#include <set>

namespace qh {

int RingSpec::classIndex(const std::string& nm) const {
  for (int i = 0; i < classCount(); ++i)
    if (basis.classes[i].name == nm) return i;
  return -1;
}

std::string ValidationReport::str() const {
  std::string s;
  for (const auto& v : violations) s += v + "\n";
  return s;
}

ValidationReport validateSpec(const RingSpec& s) {
  ValidationReport rep;
  auto fail = [&](const std::string& msg) { rep.violations.push_back(msg); };
  int nc = s.classCount();
  if (nc == 0) {
    fail("basis: empty");
    return rep;
  }
  if (nc > 64) {
    fail("basis: more than 64 classes unsupported");
    return rep;
  }
  if (s.n <= 0) fail("n: must be positive");
  if (!s.gamma) {
    fail("gamma: missing group");
    return rep;
  }
  std::set<std::string> names;
  for (int i = 0; i < nc; ++i) {
    const auto& c = s.basis.classes[i];
    if (c.name.empty()) fail("basis class " + std::to_string(i) + ": empty name");
    // names appear in element literals and table lines, so the grammar's
    // metacharacters are off limits
    if (c.name.find_first_of("<>+@*,= \t#") != std::string::npos)
      fail("basis class '" + c.name + "': name contains grammar characters");
    if (!names.insert(c.name).second) fail("basis: duplicate name '" + c.name + "'");
    if (c.degree < 0 || c.degree > 2 * s.n)
      fail("basis class '" + c.name + "': degree outside [0, 2n]");
  }
  int f = s.basis.fundamentalIndex;
  if (f < 0 || f >= nc) {
    fail("fundamental index out of range");
    return rep;
  }
  if (s.degreeOf(f) != 2 * s.n) fail("fundamental class must have degree 2n");
  if (s.basis.classes[f].name != "[M]") fail("fundamental class must be named '[M]'");
  for (int i = 0; i < nc; ++i)
    if (i != f && s.degreeOf(i) == 2 * s.n)
      fail("basis class '" + s.basis.classes[i].name + "': second class of degree 2n");

  auto maskDegreeCheck = [&](int i, int j, ClassMask v, Int chernShift,
                             const std::string& where) {
    int want = s.degreeOf(i) + s.degreeOf(j) - 2 * s.n + (int)(2 * chernShift);
    for (int k = 0; k < nc; ++k)
      if (v >> k & 1)
        if (s.degreeOf(k) != want)
          fail(where + ": component '" + s.basis.classes[k].name + "' has degree " +
               std::to_string(s.degreeOf(k)) + ", degree law requires " + std::to_string(want));
  };

  for (const auto& [key, v] : s.table.classical) {
    auto [i, j] = key;
    std::string where = "classical " + s.basis.classes[i].name + "*" + s.basis.classes[j].name;
    if (i > j) fail(where + ": key not normalized");
    maskDegreeCheck(i, j, v, 0, where);
  }
  // unit row of the classical part
  for (int j = 0; j < nc; ++j)
    if (s.table.classicalAt(f, j) != (ClassMask(1) << j))
      fail("unit row: [M]*" + s.basis.classes[j].name + " must equal " + s.basis.classes[j].name);

  std::set<std::tuple<IVec, int, int>> seen;
  for (const auto& q : s.table.quantum) {
    std::string where = "quantum " + s.basis.classes[q.i].name + "*" + s.basis.classes[q.j].name +
                        " at " + renderGammaElement(q.gamma);
    if (q.i > q.j) fail(where + ": key not normalized");
    if (!sameGroup(q.gamma.group(), s.gamma)) {
      fail(where + ": gamma from a different group");
      continue;
    }
    if (!(q.gamma.omega() > Rational(0)))
      fail(where + ": energy " + q.gamma.omega().str() + " violates positivity");
    if (!seen.insert({q.gamma.coords(), q.i, q.j}).second) fail(where + ": duplicate entry");
    maskDegreeCheck(q.i, q.j, q.value, q.gamma.chern(), where);
    if ((q.i == f || q.j == f) && q.value)
      fail(where + ": unit row admits no quantum corrections");
  }
  return rep;
}

QhElement QhElement::zero(SpecPtr s) {
  QhElement x;
  x.spec_ = std::move(s);
  x.comps_.assign(x.spec_->classCount(), NovikovSeries(x.spec_->gamma));
  return x;
}

QhElement QhElement::unit(SpecPtr s) {
  int f = s->fundamental();
  QhElement x = zero(std::move(s));
  x.toggle(f, x.spec_->gamma->zero());
  return x;
}

QhElement QhElement::monomial(SpecPtr s, int classIdx, const GammaElement& g, ExtRat cutoff) {
  if (ExtRat(g.omega()) > cutoff)
    throw std::invalid_argument("QhElement: monomial above its cutoff");
  QhElement x = zero(std::move(s));
  x = x.withCutoff(cutoff);
  x.toggle(classIdx, g);
  return x;
}

bool QhElement::empty() const {
  return std::all_of(comps_.begin(), comps_.end(),
                     [](const NovikovSeries& c) { return c.empty(); });
}

size_t QhElement::termCount() const {
  size_t n = 0;
  for (const auto& c : comps_) n += c.size();
  return n;
}

void QhElement::toggle(int classIdx, const GammaElement& g) {
  if (classIdx < 0 || classIdx >= classCount())
    throw std::invalid_argument("QhElement: class index out of range");
  comps_[classIdx].toggle(g);
}

QhElement QhElement::truncated(const ExtRat& bound) const {
  QhElement r = *this;
  r.cutoff_ = ExtRat::min(cutoff_, bound);
  for (auto& c : r.comps_) c = c.truncated(r.cutoff_);
  return r;
}

QhElement QhElement::withCutoff(const ExtRat& c) const {
  QhElement r = *this;
  r.cutoff_ = c;
  for (auto& comp : r.comps_) comp = comp.withCutoff(c);
  return r;
}

ExtRat QhElement::valuation() const {
  ExtRat v = ExtRat::infinity();
  for (const auto& c : comps_) v = ExtRat::min(v, novValuation(c));
  return v;
}

bool QhElement::operator==(const QhElement& o) const {
  if (!sameSpec(spec_, o.spec_)) throw SpecMismatch();
  return cutoff_ == o.cutoff_ && sameSupport(o);
}

bool QhElement::sameSupport(const QhElement& o) const {
  for (int i = 0; i < classCount(); ++i)
    if (!comps_[i].sameSupport(o.comps_[i])) return false;
  return true;
}

bool sameSpec(const SpecPtr& a, const SpecPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->name != b->name || a->n != b->n || !sameGroup(a->gamma, b->gamma)) return false;
  if (a->basis.fundamentalIndex != b->basis.fundamentalIndex) return false;
  if (a->classCount() != b->classCount()) return false;
  for (int i = 0; i < a->classCount(); ++i)
    if (a->basis.classes[i].name != b->basis.classes[i].name ||
        a->basis.classes[i].degree != b->basis.classes[i].degree)
      return false;
  if (a->table.classical != b->table.classical) return false;
  if (a->table.quantum.size() != b->table.quantum.size()) return false;
  using Key = std::tuple<IVec, int, int, ClassMask>;
  auto keysOf = [](const RingSpec& s) {
    std::vector<Key> keys;
    for (const auto& q : s.table.quantum) keys.emplace_back(q.gamma.coords(), q.i, q.j, q.value);
    std::sort(keys.begin(), keys.end());
    return keys;
  };
  return keysOf(*a) == keysOf(*b);
}

QhElement qhAdd(const QhElement& x, const QhElement& y) {
  if (!sameSpec(x.spec(), y.spec())) throw SpecMismatch();
  QhElement r = QhElement::zero(x.spec()).withCutoff(ExtRat::min(x.cutoff(), y.cutoff()));
  for (int i = 0; i < x.classCount(); ++i) {
    for (const auto& t : x.comp(i).terms()) r.toggle(i, t);
    for (const auto& t : y.comp(i).terms()) r.toggle(i, t);
  }
  return r;
}

QhElement qhScale(const QhElement& x, const NovikovSeries& s) {
  ExtRat cut = ExtRat::min(ExtRat::min(x.cutoff() + novValuation(s), s.cutoff() + x.valuation()),
                           x.cutoff() + s.cutoff());
  QhElement r = QhElement::zero(x.spec()).withCutoff(cut);
  for (int i = 0; i < x.classCount(); ++i)
    for (const auto& t : x.comp(i).terms())
      for (const auto& u : s.terms()) r.toggle(i, t + u);
  return r;
}

QhElement qhScale(const QhElement& x, const GammaElement& g) {
  return qhScale(x, NovikovSeries::monomial(g));
}

QhElement qhProduct(const QhElement& x, const QhElement& y) {
  if (!sameSpec(x.spec(), y.spec())) throw SpecMismatch();
  const RingSpec& s = *x.spec();
  ExtRat cut = ExtRat::min(ExtRat::min(x.cutoff() + y.valuation(), y.cutoff() + x.valuation()),
                           x.cutoff() + y.cutoff());
  QhElement r = QhElement::zero(x.spec()).withCutoff(cut);
  int nc = s.classCount();
  for (int i = 0; i < nc; ++i) {
    if (x.comp(i).empty()) continue;
    for (int j = 0; j < nc; ++j) {
      if (y.comp(j).empty()) continue;
      ClassMask cl = s.table.classicalAt(i, j);
      for (const auto& a : x.comp(i).terms())
        for (const auto& b : y.comp(j).terms()) {
          GammaElement base = a + b;
          if (cl && ExtRat(base.omega()) <= cut)
            for (int k = 0; k < nc; ++k)
              if (cl >> k & 1) r.toggle(k, base);
        }
      for (const auto& q : s.table.quantum) {
        if (!(std::minmax(i, j) == std::minmax(q.i, q.j)) || !q.value) continue;
        for (const auto& a : x.comp(i).terms())
          for (const auto& b : y.comp(j).terms()) {
            GammaElement t = a + b + q.gamma;
            if (ExtRat(t.omega()) <= cut)
              for (int k = 0; k < nc; ++k)
                if (q.value >> k & 1) r.toggle(k, t);
          }
      }
    }
  }
  return r;
}

DegreeInfo qhDegree(const QhElement& x) {
  DegreeInfo d;
  const RingSpec& s = *x.spec();
  bool first = true;
  for (int i = 0; i < x.classCount(); ++i)
    for (const auto& t : x.comp(i).terms()) {
      Int k = s.degreeOf(i) - 2 * t.chern();
      if (first) {
        d.kind = DegreeInfo::Homogeneous;
        d.k = k;
        first = false;
      } else if (k != d.k) {
        d.kind = DegreeInfo::Mixed;
        return d;
      }
    }
  return d;
}

namespace {

// Intersection pairing u . v: the degree-0 coefficient of the classical
// product, 0 when the basis has no point class.
bool pairMasks(const RingSpec& s, ClassMask u, ClassMask v) {
  int pt = -1;
  for (int k = 0; k < s.classCount(); ++k)
    if (s.degreeOf(k) == 0) pt = k;
  if (pt < 0) return false;
  bool acc = false;
  for (int i = 0; i < s.classCount(); ++i)
    if (u >> i & 1)
      for (int j = 0; j < s.classCount(); ++j)
        if (v >> j & 1) acc ^= (s.table.classicalAt(i, j) >> pt) & 1;
  return acc;
}

ClassMask starGamma(const RingSpec& s, int i, int j, const GammaElement& gamma) {
  if (gamma.isZero()) return s.table.classicalAt(i, j);
  ClassMask v = 0;
  for (const auto& q : s.table.quantum)
    if (std::minmax(i, j) == std::minmax(q.i, q.j) && q.gamma.coords() == gamma.coords())
      v ^= q.value;
  return v;
}

}  // namespace

bool tildePhi(const RingSpec& s, int i, int j, int k, const GammaElement& gamma) {
  return pairMasks(s, starGamma(s, i, j, gamma), ClassMask(1) << k);
}

bool qPlusClosed(const RingSpec& s) {
  int f = s.fundamental();
  for (const auto& [key, v] : s.table.classical) {
    auto [i, j] = key;
    if (i == f || j == f) continue;
    if (v >> f & 1) return false;
  }
  for (const auto& q : s.table.quantum) {
    if (q.i == f || q.j == f) continue;
    if (q.value >> f & 1) return false;
  }
  return true;
}

GammaElement randomGamma(const GammaPtr& g, SplitMix64& rng, Int coordBound,
                         const Rational& maxEnergy) {
  int rc = g->canonicalRank();
  for (int tries = 0; tries < 256; ++tries) {
    IVec c(rc);
    for (int i = 0; i < rc; ++i) c[i] = rng.range(-coordBound, coordBound);
    GammaElement e = g->element(std::move(c));
    if (e.omega() <= maxEnergy) return e;
  }
  return g->zero();
}

QhElement randomQhElement(const SpecPtr& s, SplitMix64& rng, int maxTerms,
                          const Rational& maxEnergy) {
  QhElement x = QhElement::zero(s);
  int terms = (int)rng.below((uint64_t)maxTerms + 1);
  for (int t = 0; t < terms; ++t)
    x.toggle((int)rng.below((uint64_t)s->classCount()), randomGamma(s->gamma, rng, 3, maxEnergy));
  return x;
}

QhElement randomHomogeneousQhElement(const SpecPtr& s, SplitMix64& rng, int maxTerms,
                                     const Rational& maxEnergy) {
  QhElement x = QhElement::zero(s);
  int anchor = (int)rng.below((uint64_t)s->classCount());
  GammaElement g0 = randomGamma(s->gamma, rng, 2, maxEnergy);
  Int k = s->degreeOf(anchor) - 2 * g0.chern();
  x.toggle(anchor, g0);
  int extra = (int)rng.below((uint64_t)maxTerms);
  for (int t = 0; t < extra; ++t) {
    int i = (int)rng.below((uint64_t)s->classCount());
    GammaElement g = randomGamma(s->gamma, rng, 3, maxEnergy);
    if (s->degreeOf(i) - 2 * g.chern() == k) x.toggle(i, g);
  }
  return x;
}

AxiomReport axiomSuite(const SpecPtr& s, size_t samples, const Rational& maxEnergy,
                       uint64_t seed) {
  AxiomReport rep;
  rep.samples = samples;
  SplitMix64 rng(seed);
  QhElement e = QhElement::unit(s);
  for (size_t it = 0; it < samples; ++it) {
    QhElement x = randomQhElement(s, rng, 4, maxEnergy);
    QhElement y = randomQhElement(s, rng, 4, maxEnergy);
    QhElement z = randomQhElement(s, rng, 4, maxEnergy);
    std::string tag = "sample " + std::to_string(it);
    if (qhProduct(e, x) != x) rep.failures.push_back(tag + ": e*x differs from x");
    QhElement xy = qhProduct(x, y);
    if (!xy.sameSupport(qhProduct(y, x))) rep.failures.push_back(tag + ": x*y differs from y*x");
    QhElement l = qhProduct(xy, z);
    QhElement r = qhProduct(x, qhProduct(y, z));
    ExtRat common = ExtRat::min(l.cutoff(), r.cutoff());
    if (!l.truncated(common).sameSupport(r.truncated(common)))
      rep.failures.push_back(tag + ": associativity fails at cutoff " + common.str());
    QhElement hx = randomHomogeneousQhElement(s, rng, 3, maxEnergy);
    QhElement hy = randomHomogeneousQhElement(s, rng, 3, maxEnergy);
    QhElement p = qhProduct(hx, hy);
    DegreeInfo di = qhDegree(p);
    if (!p.empty() && !hx.empty() && !hy.empty()) {
      Int want = qhDegree(hx).k + qhDegree(hy).k - 2 * s->n;
      if (di.kind != DegreeInfo::Homogeneous || di.k != want)
        rep.failures.push_back(tag + ": degree law fails");
    }
  }
  return rep;
}

std::string renderQh(const QhElement& x) {
  std::string s;
  bool any = false;
  for (int i = 0; i < x.classCount(); ++i)
    for (const auto& t : x.comp(i).terms()) {
      if (any) s += " + ";
      s += x.spec()->basis.classes[i].name + renderGammaElement(t);
      any = true;
    }
  if (!any) s = "0";
  if (!x.cutoff().isInf()) s += " @E=" + x.cutoff().finite().str();
  return s;
}

}  // namespace qh
