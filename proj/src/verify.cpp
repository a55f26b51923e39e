#include "qhring/verify.hpp"

#include <algorithm>
#include <functional>

namespace qh {

namespace {

QhElement xplusElement(const SpecPtr& s) {
  QhElement x = QhElement::zero(s);
  x.toggle(s->classIndex("a"), s->gamma->zero());
  x.toggle(s->classIndex("b"), s->gamma->zero());
  return x;
}

// binomial parity by Lucas, independent of the series arithmetic under test
bool binomOdd(Int m, Int j) { return (m & j) == j; }

// [M] (x) <m b> (<0>+<x->)^m on even powers p=2m, the same shifted to the
// section class on odd powers p=2m+1.
QhElement expectedCirclePower(const SpecPtr& s, int p, const Rational& bound) {
  Int m = p / 2;
  bool even = p % 2 == 0;
  QhElement out = QhElement::zero(s);
  for (Int j = 0; j <= m; ++j) {
    if (!binomOdd(m, j)) continue;
    GammaElement g = s->gamma->element({j, m - j});  // m*b + j*(a-b)
    if (even) {
      out.toggle(s->fundamental(), g);
    } else {
      out.toggle(s->classIndex("a"), g);
      out.toggle(s->classIndex("b"), g);
    }
  }
  return out.truncated(ExtRat(bound));
}

SpecPtr classicalOnlySpec() {
  RingSpec s;
  s.name = "classical4";
  s.n = 2;
  s.gamma = GammaGroup::build({1, {Rational(1)}, {0}});
  s.basis.classes = {{"[M]", 4}, {"c1", 2}, {"c2", 2}, {"pt", 0}};
  s.basis.fundamentalIndex = 0;
  for (int j = 0; j < 4; ++j) s.table.setClassical(0, j, ClassMask(1) << j);
  s.table.setClassical(1, 2, 0b1000);  // c1.c2 = pt
  auto sp = std::make_shared<const RingSpec>(std::move(s));
  if (!validateSpec(*sp).ok()) throw std::logic_error("classical4 fixture invalid");
  return sp;
}

SuiteResult suiteQuantumRelation(uint64_t) {
  SuiteResult r("quantum-relation");
  CatalogEntry cat = builtinSpec("cp1xcp1", Rational(2));
  QhElement x = xplusElement(cat.spec);
  QhElement sq = qhProduct(x, x);
  QhElement expect = QhElement::zero(cat.spec);
  expect.toggle(cat.spec->fundamental(), cat.spec->gamma->element({0, 1}));
  expect.toggle(cat.spec->fundamental(), cat.spec->gamma->element({1, 0}));
  ExtRat e10 = ExtRat(Rational(10));
  r.check(sq.truncated(e10).sameSupport(expect.truncated(e10)),
          "(x+ (x) <0,0>)^2 = [M]<0,1> + [M]<1,0> at cutoff 10; got " + renderQh(sq));
  return r;
}

SuiteResult suiteQPowers(uint64_t) {
  SuiteResult r("q-powers");
  CatalogEntry cat = builtinSpec("cp1xcp1", Rational(2));
  const LoopElement& loop = cat.loop("circle-action");
  Rational bound(12);
  for (int p = 1; p <= 6; ++p) {
    LoopElement lp = loopPower(loop, p, bound);
    QhElement expect = expectedCirclePower(cat.spec, p, bound);
    bool ok = lp.q.truncated(ExtRat(bound)).sameSupport(expect) && lp.maslov == p;
    r.check(ok, "circle-action power " + std::to_string(p) + " matches the closed form; got " +
                    renderQh(lp.q));
  }
  return r;
}

SuiteResult suiteInverseSeries(uint64_t) {
  SuiteResult r("inverse-series");
  CatalogEntry cat = builtinSpec("cp1xcp1", Rational(2));
  QhElement x = xplusElement(cat.spec);
  Rational bound(9, 2);
  InvertResult inv = invertElement(x, bound);
  r.check(inv.kind == InvertResult::Inverse, "invert(x+ (x) <0,0>, E=9/2) succeeds");
  if (inv.kind != InvertResult::Inverse) return r;
  QhElement expect = QhElement::zero(cat.spec);
  for (Int k = 0; k <= 4; ++k) {
    GammaElement g = cat.spec->gamma->element({k, -k - 1});  // k x- - b
    expect.toggle(cat.spec->classIndex("a"), g);
    expect.toggle(cat.spec->classIndex("b"), g);
  }
  r.check(inv.inverse.sameSupport(expect),
          "inverse is x+ (x) <-b>(<0>+...+<4x->); got " + renderQh(inv.inverse));
  QhElement lifted = inv.inverse.withCutoff(ExtRat::infinity());
  QhElement prod = qhProduct(x, lifted).truncated(ExtRat(bound));
  r.check(prod.sameSupport(QhElement::unit(cat.spec).truncated(ExtRat(bound))),
          "round-trip product equals e below 9/2");
  return r;
}

SuiteResult suiteGrassmannian(uint64_t) {
  SuiteResult r("grassmannian-relations");
  {
    CatalogEntry cat = builtinSpec("cp1");
    QhElement q = QhElement::monomial(cat.spec, cat.spec->classIndex("pt"),
                                      cat.spec->gamma->zero());
    QhElement sq = qhProduct(q, q);
    QhElement want = tauElement(cat.spec, cat.spec->gamma->element({1}));
    r.check(sq.sameSupport(want), "cp1: (pt (x) <0>)^2 = tau(<1>); got " + renderQh(sq));
  }
  {
    CatalogEntry cat = builtinSpec("cp2");
    QhElement q = QhElement::monomial(cat.spec, cat.spec->classIndex("line"),
                                      cat.spec->gamma->zero());
    QhElement cube = qhProduct(qhProduct(q, q), q);
    QhElement want = tauElement(cat.spec, cat.spec->gamma->element({1}));
    r.check(cube.sameSupport(want), "cp2: (line (x) <0>)^3 = tau(<1>); got " + renderQh(cube));
  }
  return r;
}

SuiteResult suiteOrderBounds(uint64_t) {
  SuiteResult r("order-bounds");
  {
    CatalogEntry cat = builtinSpec("cp1xcp1", Rational(2));
    OrderBoundResult ob = orderLowerBound(cat.loop("circle-action"), 20, Rational(25));
    r.check(ob.kind == OrderBoundResult::NoneUpTo && ob.k == 20,
            "cp1xcp1(2) circle-action: no tau power up to 20 at cutoff 25");
  }
  {
    CatalogEntry cat = builtinSpec("cp1");
    OrderBoundResult ob = orderLowerBound(cat.loop("rotation"), 5, Rational(6));
    bool ok = ob.kind == OrderBoundResult::FirstTauPower && ob.k == 2 && ob.gamma &&
              ob.gamma->coords() == IVec{1};
    r.check(ok, "cp1 rotation: first tau power at k=2 with gamma=<1>");
  }
  return r;
}

SuiteResult suiteGrading(uint64_t seed) {
  SuiteResult r("grading");
  std::vector<CatalogEntry> cats;
  cats.push_back(builtinSpec("cp1"));
  cats.push_back(builtinSpec("cp2"));
  cats.push_back(builtinSpec("cp1xcp1", Rational(2)));
  cats.push_back(builtinSpec("f2-as-s2xs2", Rational(2)));
  for (const auto& cat : cats)
    for (const auto& l : cat.loops)
      r.check(loopDegreeOk(l), cat.spec->name + " loop '" + l.name + "': deg q = 2n - 2I");
  SplitMix64 rng(seed ^ 0x67ad61u);
  size_t bad = 0;
  for (int it = 0; it < 100; ++it) {
    const CatalogEntry& cat = cats[rng.below(cats.size())];
    std::vector<LoopElement> pool = cat.loops;
    for (int t = 0; t < 2; ++t) {
      GammaElement g = randomGamma(cat.spec->gamma, rng, 2, Rational(6));
      pool.push_back({"id", cat.spec, tauElement(cat.spec, g), g.chern()});
    }
    const LoopElement& l1 = pool[rng.below(pool.size())];
    const LoopElement& l2 = pool[rng.below(pool.size())];
    try {
      LoopElement c = composeLoops(l1, l2);
      if (!loopDegreeOk(c)) ++bad;
    } catch (const std::exception&) {
      ++bad;
    }
  }
  r.check(bad == 0, "100 random compositions preserve deg q = 2n - 2I");
  return r;
}

SuiteResult suiteIdentityLoop(uint64_t seed) {
  SuiteResult r("identity-loop");
  SplitMix64 rng(seed ^ 0x1d5a7u);
  std::vector<CatalogEntry> cats;
  cats.push_back(builtinSpec("cp1"));
  cats.push_back(builtinSpec("cp1xcp1", Rational(2)));
  size_t badLoop = 0, badMul = 0, badHom = 0;
  for (int it = 0; it < 50; ++it) {
    const CatalogEntry& cat = cats[it % 2];
    GammaElement g = randomGamma(cat.spec->gamma, rng, 3, Rational(8));
    LoopElement idg{"id", cat.spec, tauElement(cat.spec, g), g.chern()};
    if (!loopDegreeOk(idg)) ++badLoop;
    QhElement b = randomQhElement(cat.spec, rng, 3, Rational(4));
    if (!seidelApply(idg, b).sameSupport(qhScale(b, g))) ++badMul;
  }
  r.check(badLoop == 0, "50 identity loops: q(Id,gamma)=tau(gamma) has degree 2n-2c1(gamma)");
  r.check(badMul == 0, "identity loops act as multiplication by <gamma>");
  for (int it = 0; it < 100; ++it) {
    const CatalogEntry& cat = cats[it % 2];
    GammaElement g1 = randomGamma(cat.spec->gamma, rng, 3, Rational(8));
    GammaElement g2 = randomGamma(cat.spec->gamma, rng, 3, Rational(8));
    QhElement lhs = qhProduct(tauElement(cat.spec, g1), tauElement(cat.spec, g2));
    if (!lhs.sameSupport(tauElement(cat.spec, g1 + g2))) ++badHom;
  }
  r.check(badHom == 0, "100 random pairs: tau(g)*tau(g') = tau(g+g')");
  return r;
}

SuiteResult suiteObstruction(uint64_t seed) {
  SuiteResult r("obstruction");
  SpecPtr s = classicalOnlySpec();
  r.check(qPlusClosed(*s), "classical4: positive part closed under the product");
  SplitMix64 rng(seed ^ 0x0b57ul);
  size_t badObs = 0, badInv = 0;
  for (int it = 0; it < 50; ++it) {
    // homogeneous of degree 2 or 0 (never 2n = 4, so always obstructed)
    int deg = rng.flip() ? 2 : 0;
    QhElement x = QhElement::zero(s);
    int terms = 1 + (int)rng.below(3);
    for (int t = 0; t < terms; ++t) {
      int cls = deg == 2 ? (rng.flip() ? 1 : 2) : 3;
      x.toggle(cls, randomGamma(s->gamma, rng, 3, Rational(5)));
    }
    if (x.empty()) x.toggle(deg == 2 ? 1 : 3, s->gamma->zero());
    if (!degreeObstructed(x)) ++badObs;
    InvertResult inv = invertElement(x, Rational(3));
    if (inv.kind != InvertResult::NotInvertible || inv.witnessLevel != ExtRat(Rational(0)))
      ++badInv;
  }
  r.check(badObs == 0, "50 random homogeneous elements of obstructed degree are flagged");
  r.check(badInv == 0, "each is NotInvertible with a level-0 witness");
  return r;
}

SuiteResult suiteAxioms(uint64_t seed) {
  SuiteResult r("axioms");
  std::vector<CatalogEntry> cats;
  cats.push_back(builtinSpec("cp1"));
  cats.push_back(builtinSpec("cp2"));
  cats.push_back(builtinSpec("cp1xcp1", Rational(3, 2)));
  cats.push_back(builtinSpec("cp1xcp1", Rational(2)));
  cats.push_back(builtinSpec("cp1xcp1", Rational(5)));
  cats.push_back(builtinSpec("f2-as-s2xs2", Rational(2)));
  std::vector<std::string> tags = {"cp1",        "cp2",        "cp1xcp1:3/2",
                                   "cp1xcp1:2",  "cp1xcp1:5",  "f2-as-s2xs2:2"};
  for (size_t i = 0; i < cats.size(); ++i) {
    AxiomReport rep = axiomSuite(cats[i].spec, 200, Rational(6), seed);
    std::string what = tags[i] + ": unit, commutativity, associativity, degree law over " +
                       std::to_string(rep.samples) + " samples";
    if (!rep.pass()) what += "; first failure: " + rep.failures.front();
    r.check(rep.pass(), what);
  }
  return r;
}

SuiteResult suiteLatticeOracle(uint64_t seed) {
  SuiteResult r("lattice-oracle");
  SplitMix64 rng(seed ^ 0x1a77ce);
  size_t bad = 0, badFun = 0;
  for (int it = 0; it < 100; ++it) {
    int rank = (int)rng.below(5);
    SphereClassLattice lat;
    lat.rank = rank;
    for (int i = 0; i < rank; ++i) {
      lat.omega.push_back(Rational(rng.range(-1, 1)));
      lat.chern.push_back(rng.range(-1, 1));
    }
    GammaPtr g = GammaGroup::build(lat);
    // brute-force kernel vectors with coordinates in [-3,3], then saturate
    IMat found;
    IVec v(rank, -3);
    bool done = rank == 0;
    auto inKernel = [&](const IVec& w) {
      Rational om(0);
      Int ch = 0;
      for (int i = 0; i < rank; ++i) {
        om += lat.omega[i] * Rational(w[i]);
        ch += lat.chern[i] * w[i];
      }
      return om.isZero() && ch == 0;
    };
    while (!done) {
      if (std::any_of(v.begin(), v.end(), [](Int x) { return x != 0; }) && inKernel(v))
        found.push_back(v);
      int i = 0;
      while (i < rank && v[i] == 3) v[i++] = -3;
      if (i == rank)
        done = true;
      else
        ++v[i];
    }
    IMat expected;
    if (!found.empty()) {
      IMat ann = kernelBasis(found);  // forms vanishing on the found vectors
      expected = ann.empty() ? identityMatrix(rank) : kernelBasis(ann);
    }
    if (rowHermite(expected) != g->kernelBasisRows()) ++bad;
    for (int probe = 0; probe < 5 && rank > 0; ++probe) {
      IVec raw(rank);
      for (int i = 0; i < rank; ++i) raw[i] = rng.range(-4, 4);
      GammaElement e = g->project(raw);
      Rational om(0);
      Int ch = 0;
      for (int i = 0; i < rank; ++i) {
        om += lat.omega[i] * Rational(raw[i]);
        ch += lat.chern[i] * raw[i];
      }
      if (e.omega() != om || e.chern() != ch) ++badFun;
    }
  }
  r.check(bad == 0, "100 random lattices: kernel matches brute-force enumeration + saturation");
  r.check(badFun == 0, "projection preserves both functionals");
  return r;
}

SuiteResult suiteTruncation(uint64_t seed) {
  SuiteResult r("truncation");
  CatalogEntry cat = builtinSpec("cp1xcp1", Rational(2));
  GammaPtr g = cat.spec->gamma;
  SplitMix64 rng(seed ^ 0x7241c);
  auto randomSeries = [&](int maxTerms) {
    NovikovSeries s = NovikovSeries::zero(g);
    int terms = (int)rng.below((uint64_t)maxTerms + 1);
    for (int t = 0; t < terms; ++t) {
      IVec c{rng.range(-3, 3), rng.range(-3, 3)};
      GammaElement e = g->element(c);
      if (e.omega() >= Rational(-3) && e.omega() <= Rational(3)) s.toggle(e);
    }
    return s;
  };
  size_t bad = 0;
  for (int it = 0; it < 500; ++it) {
    NovikovSeries x = randomSeries(6);
    NovikovSeries y = randomSeries(6);
    ExtRat ex = ExtRat(Rational(rng.range(-2, 6), 2));
    ExtRat ey = ExtRat(Rational(rng.range(-2, 6), 2));
    NovikovSeries z = novMul(x, y);
    NovikovSeries zt = novMul(x.truncated(ex), y.truncated(ey));
    ExtRat c = zt.cutoff();
    if (!z.truncated(c).sameSupport(zt.truncated(c))) ++bad;
  }
  r.check(bad == 0, "500 random multiplications agree below the propagated cutoff");
  return r;
}

SuiteResult suiteRoundTrip(uint64_t) {
  SuiteResult r("round-trip");
  std::vector<CatalogEntry> cats;
  cats.push_back(builtinSpec("cp1"));
  cats.push_back(builtinSpec("cp2"));
  cats.push_back(builtinSpec("cp1xcp1", Rational(3, 2)));
  cats.push_back(builtinSpec("cp1xcp1", Rational(2)));
  cats.push_back(builtinSpec("cp1xcp1", Rational(5)));
  cats.push_back(builtinSpec("f2-as-s2xs2", Rational(2)));
  for (const auto& cat : cats) {
    std::string s1 = serializeSpec(cat);
    CatalogEntry back = parseSpecText(s1);
    std::string s2 = serializeSpec(back);
    bool ok = s1 == s2 && sameSpec(cat.spec, back.spec) && cat.loops.size() == back.loops.size();
    for (size_t i = 0; ok && i < cat.loops.size(); ++i)
      ok = cat.loops[i].name == back.loops[i].name &&
           cat.loops[i].maslov == back.loops[i].maslov &&
           cat.loops[i].q.sameSupport(back.loops[i].q);
    std::string omegaTag = cat.spec->gamma->canonicalRank() > 0
                               ? cat.spec->gamma->omegaCanonical()[0].str()
                               : "-";
    r.check(ok, cat.spec->name + " (omega = " + omegaTag +
                    "): serialize-parse-serialize is byte-identical");
  }
  return r;
}

using SuiteFn = SuiteResult (*)(uint64_t);
const std::vector<std::pair<std::string, SuiteFn>>& suiteTable() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"quantum-relation", suiteQuantumRelation},
      {"q-powers", suiteQPowers},
      {"inverse-series", suiteInverseSeries},
      {"grassmannian-relations", suiteGrassmannian},
      {"order-bounds", suiteOrderBounds},
      {"grading", suiteGrading},
      {"identity-loop", suiteIdentityLoop},
      {"obstruction", suiteObstruction},
      {"axioms", suiteAxioms},
      {"lattice-oracle", suiteLatticeOracle},
      {"truncation", suiteTruncation},
      {"round-trip", suiteRoundTrip},
  };
  return table;
}

}  // namespace

std::vector<std::string> verifySuiteNames() {
  std::vector<std::string> names;
  for (const auto& [n, f] : suiteTable()) names.push_back(n);
  return names;
}

SuiteResult runVerifySuite(const std::string& name, uint64_t seed) {
  for (const auto& [n, f] : suiteTable())
    if (n == name) return f(seed);
  throw std::invalid_argument("unknown verify suite '" + name + "'");
}

std::vector<SuiteResult> runAllVerifySuites(uint64_t seed) {
  std::vector<SuiteResult> out;
  for (const auto& [n, f] : suiteTable()) out.push_back(f(seed));
  return out;
}

}  // namespace qh
