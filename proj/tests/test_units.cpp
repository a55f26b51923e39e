#include <doctest.h>

#include "qhring/catalog.hpp"

using namespace qh;

namespace {

QhElement mono(const SpecPtr& s, const char* name, IVec coords) {
  return QhElement::monomial(s, s->classIndex(name), s->gamma->element(std::move(coords)));
}

QhElement xplus(const SpecPtr& s) {
  QhElement x = QhElement::zero(s);
  x.toggle(s->classIndex("a"), s->gamma->zero());
  x.toggle(s->classIndex("b"), s->gamma->zero());
  return x;
}

SpecPtr classicalOnly() {
  RingSpec s;
  s.name = "classical4";
  s.n = 2;
  s.gamma = GammaGroup::build({1, {Rational(1)}, {0}});
  s.basis.classes = {{"[M]", 4}, {"c1", 2}, {"c2", 2}, {"pt", 0}};
  s.basis.fundamentalIndex = 0;
  for (int j = 0; j < 4; ++j) s.table.setClassical(0, j, ClassMask(1) << j);
  s.table.setClassical(1, 2, 0b1000);
  auto sp = std::make_shared<const RingSpec>(std::move(s));
  REQUIRE(validateSpec(*sp).ok());
  return sp;
}

}  // namespace

TEST_CASE("classical inverses come from the finite Neumann series") {
  CatalogEntry cat = builtinSpec("cp1xcp1", Rational(2));
  const RingSpec& s = *cat.spec;
  ClassMask M = ClassMask(1) << s.fundamental();
  ClassMask a = ClassMask(1) << s.classIndex("a");
  SUBCASE("the unit is its own inverse") { CHECK(classicalInverse(s, M) == M); }
  SUBCASE("[M] + a inverts to itself since a.a = 0") {
    CHECK(classicalInverse(s, M | a) == (M | a));
  }
  SUBCASE("no fundamental component, no inverse") {
    CHECK(!classicalInverse(s, a).has_value());
  }
  SUBCASE("inverses multiply back to the unit") {
    ClassMask pt = ClassMask(1) << s.classIndex("pt");
    ClassMask h = M | a | pt;
    auto inv = classicalInverse(s, h);
    REQUIRE(inv);
    // multiply h * inv classically
    ClassMask prod = 0;
    for (int i = 0; i < s.classCount(); ++i)
      if (h >> i & 1)
        for (int j = 0; j < s.classCount(); ++j)
          if (*inv >> j & 1) prod ^= s.table.classicalAt(i, j);
    CHECK(prod == M);
  }
}

TEST_CASE("invert handles the unit and monomials") {
  CatalogEntry cat = builtinSpec("cp1");
  SUBCASE("unit inverts to itself") {
    InvertResult r = invertElement(QhElement::unit(cat.spec), Rational(5));
    REQUIRE(r.kind == InvertResult::Inverse);
    CHECK(r.inverse.sameSupport(QhElement::unit(cat.spec)));
  }
  SUBCASE("the point class inverts with a negative shift") {
    InvertResult r = invertElement(mono(cat.spec, "pt", {0}), Rational(2));
    REQUIRE(r.kind == InvertResult::Inverse);
    CHECK(renderQh(r.inverse) == "pt<-1> @E=2");
    QhElement probe =
        qhProduct(mono(cat.spec, "pt", {0}), r.inverse.withCutoff(ExtRat::infinity()));
    CHECK(probe.truncated(ExtRat(Rational(2)))
              .sameSupport(QhElement::unit(cat.spec).truncated(ExtRat(Rational(2)))));
  }
  SUBCASE("tau monomials invert to the opposite shift") {
    CatalogEntry prod = builtinSpec("cp1xcp1", Rational(2));
    GammaElement g = prod.spec->gamma->element({2, -1});
    InvertResult r = invertElement(tauElement(prod.spec, g), Rational(6));
    REQUIRE(r.kind == InvertResult::Inverse);
    CHECK(r.inverse.sameSupport(tauElement(prod.spec, -g)));
  }
}

TEST_CASE("invert computes the geometric inverse series of the section class") {
  CatalogEntry cat = builtinSpec("cp1xcp1", Rational(2));
  QhElement x = xplus(cat.spec);
  InvertResult r = invertElement(x, Rational(9, 2));
  REQUIRE(r.kind == InvertResult::Inverse);
  QhElement expect = QhElement::zero(cat.spec);
  for (Int k = 0; k <= 4; ++k) {
    GammaElement g = cat.spec->gamma->element({k, -k - 1});
    expect.toggle(cat.spec->classIndex("a"), g);
    expect.toggle(cat.spec->classIndex("b"), g);
  }
  CHECK(r.inverse.sameSupport(expect));
  CHECK(r.certified == ExtRat(Rational(9, 2)));
}

TEST_CASE("invert rejects bad inputs and reports truncation honestly") {
  CatalogEntry cat = builtinSpec("cp1xcp1", Rational(2));
  SUBCASE("inhomogeneous elements are rejected") {
    QhElement mixed = qhAdd(QhElement::unit(cat.spec), mono(cat.spec, "a", {0, 0}));
    CHECK_THROWS_AS(invertElement(mixed, Rational(3)), NotHomogeneous);
  }
  SUBCASE("the zero element is rejected") {
    CHECK_THROWS_AS(invertElement(QhElement::zero(cat.spec), Rational(3)),
                    std::invalid_argument);
  }
  SUBCASE("insufficient input cutoff yields Undetermined") {
    QhElement e = QhElement::unit(cat.spec).truncated(ExtRat(Rational(2)));
    InvertResult r = invertElement(e, Rational(10));
    CHECK(r.kind == InvertResult::Undetermined);
    CHECK(r.exhausted == Rational(10));
  }
  SUBCASE("a sufficiently known truncation still inverts") {
    QhElement e = QhElement::unit(cat.spec).truncated(ExtRat(Rational(2)));
    InvertResult r = invertElement(e, Rational(3, 2));
    CHECK(r.kind == InvertResult::Inverse);
  }
  SUBCASE("the certification boundary is sharp") {
    // x+ needs its inverse down to energy -1, so a cutoff-C input certifies
    // exactly up to C - 1
    QhElement x = qhAdd(mono(cat.spec, "a", {0, 0}), mono(cat.spec, "b", {0, 0}))
                      .truncated(ExtRat(Rational(5)));
    CHECK(invertElement(x, Rational(4)).kind == InvertResult::Inverse);
    CHECK(invertElement(x, Rational(9, 2)).kind == InvertResult::Undetermined);
  }
}

TEST_CASE("invert certifies non-invertibility on obstructed elements") {
  SpecPtr s = classicalOnly();
  QhElement x = mono(s, "c1", {0});
  InvertResult r = invertElement(x, Rational(3));
  REQUIRE(r.kind == InvertResult::NotInvertible);
  CHECK(r.witnessLevel == ExtRat(Rational(0)));
  CHECK(r.witness.find("[M]") != std::string::npos);
}

TEST_CASE("tau is an injective homomorphism into the units") {
  CatalogEntry cat = builtinSpec("cp1xcp1", Rational(2));
  const SpecPtr& s = cat.spec;
  CHECK(tauElement(s, s->gamma->zero()) == QhElement::unit(s));
  SplitMix64 rng(61);
  for (int it = 0; it < 50; ++it) {
    GammaElement g1 = randomGamma(s->gamma, rng, 3, Rational(9));
    GammaElement g2 = randomGamma(s->gamma, rng, 3, Rational(9));
    CHECK(qhProduct(tauElement(s, g1), tauElement(s, g2)).sameSupport(tauElement(s, g1 + g2)));
    if (!(g1 == g2)) CHECK(!tauElement(s, g1).sameSupport(tauElement(s, g2)));
  }
}

TEST_CASE("tau-image membership is decisive exactly when it can be") {
  CatalogEntry cat = builtinSpec("cp1xcp1", Rational(2));
  const SpecPtr& s = cat.spec;
  SUBCASE("the unit is tau(0)") {
    TauMembership t = inTauImage(QhElement::unit(s));
    REQUIRE(t.verdict == TauMembership::Yes);
    CHECK(t.gamma->isZero());
  }
  SUBCASE("two fundamental monomials are conclusive No") {
    QhElement x = tauElement(s, s->gamma->element({0, 1}));
    x.toggle(s->fundamental(), s->gamma->element({1, 0}));
    CHECK(inTauImage(x).verdict == TauMembership::No);
  }
  SUBCASE("a non-fundamental component is conclusive No") {
    CHECK(inTauImage(mono(s, "a", {0, 0})).verdict == TauMembership::No);
  }
  SUBCASE("the squared circle action is No") {
    QhElement q2 = qhProduct(xplus(s), xplus(s));
    CHECK(inTauImage(q2).verdict == TauMembership::No);
  }
  SUBCASE("exact zero is No, empty truncation is Undetermined") {
    CHECK(inTauImage(QhElement::zero(s)).verdict == TauMembership::No);
    CHECK(inTauImage(QhElement::zero(s).withCutoff(ExtRat(Rational(2)))).verdict ==
          TauMembership::Undetermined);
  }
  SUBCASE("No never flips to Yes at larger cutoffs") {
    QhElement q = xplus(s);
    for (int k = 2; k <= 8; k += 2) {
      q = qhProduct(q, xplus(s));
      QhElement at5 = q.truncated(ExtRat(Rational(5)));
      QhElement at25 = q.truncated(ExtRat(Rational(25)));
      if (inTauImage(at5).verdict == TauMembership::No)
        CHECK(inTauImage(at25).verdict == TauMembership::No);
    }
  }
}

TEST_CASE("the Seidel operator is multiplication by q") {
  CatalogEntry cat = builtinSpec("f2-as-s2xs2", Rational(2));
  const SpecPtr& s = cat.spec;
  const LoopElement& loop = cat.loop("circle-action");
  SUBCASE("identity loop acts as identity") {
    LoopElement id{"id", s, QhElement::unit(s), 0};
    SplitMix64 rng(71);
    for (int it = 0; it < 20; ++it) {
      QhElement b = randomQhElement(s, rng, 4, Rational(4));
      CHECK(seidelApply(id, b) == b);
    }
  }
  SUBCASE("lifted identity loops multiply by the covering monomial") {
    SplitMix64 rng(73);
    for (int it = 0; it < 20; ++it) {
      GammaElement g = randomGamma(s->gamma, rng, 3, Rational(6));
      LoopElement idg{"id", s, tauElement(s, g), g.chern()};
      QhElement b = randomQhElement(s, rng, 4, Rational(4));
      CHECK(seidelApply(idg, b).sameSupport(qhScale(b, g)));
    }
  }
  SUBCASE("the circle action sends e to the section class") {
    CHECK(seidelApply(loop, QhElement::unit(s)).sameSupport(xplus(s)));
  }
  SUBCASE("the operator is Lambda-linear") {
    SplitMix64 rng(79);
    for (int it = 0; it < 30; ++it) {
      QhElement b = randomQhElement(s, rng, 4, Rational(4));
      GammaElement g = randomGamma(s->gamma, rng, 2, Rational(4));
      QhElement lhs = seidelApply(loop, qhScale(b, g));
      QhElement rhs = qhScale(seidelApply(loop, b), g);
      ExtRat c = ExtRat::min(lhs.cutoff(), rhs.cutoff());
      CHECK(lhs.truncated(c).sameSupport(rhs.truncated(c)));
    }
  }
}

TEST_CASE("loop composition multiplies Seidel elements and adds Maslov indices") {
  CatalogEntry cat = builtinSpec("cp1xcp1", Rational(2));
  const SpecPtr& s = cat.spec;
  const LoopElement& loop = cat.loop("circle-action");
  SUBCASE("composing with the identity changes nothing") {
    LoopElement id{"id", s, QhElement::unit(s), 0};
    LoopElement c = composeLoops(id, loop);
    CHECK(c.q.sameSupport(loop.q));
    CHECK(c.maslov == 1);
  }
  SUBCASE("the squared circle action matches the closed form") {
    LoopElement c = composeLoops(loop, loop);
    CHECK(c.maslov == 2);
    // [M] (x) <b>(<0>+<x->) = [M]<0,1> + [M]<1,0>
    QhElement expect = tauElement(s, s->gamma->element({0, 1}));
    expect.toggle(s->fundamental(), s->gamma->element({1, 0}));
    CHECK(c.q.sameSupport(expect));
  }
  SUBCASE("composition with a lifted identity shifts by tau") {
    CatalogEntry cp2 = builtinSpec("cp2");
    const LoopElement& rot = cp2.loop("rotation");
    GammaElement g = cp2.spec->gamma->element({1});
    LoopElement idg{"id", cp2.spec, tauElement(cp2.spec, g), g.chern()};
    LoopElement c = composeLoops(rot, idg);
    CHECK(c.maslov == 1 + 3);
    CHECK(c.q.sameSupport(mono(cp2.spec, "line", {1})));
  }
  SUBCASE("inconsistent catalog data is refused") {
    LoopElement wrong{"broken", s, loop.q, 7};
    CHECK_THROWS_WITH_AS(composeLoops(wrong, wrong),
                         doctest::Contains("degree"), std::runtime_error);
  }
}

TEST_CASE("loop powers follow the closed forms") {
  CatalogEntry cat = builtinSpec("cp1xcp1", Rational(2));
  const LoopElement& loop = cat.loop("circle-action");
  SUBCASE("first power is the loop itself") {
    LoopElement p = loopPower(loop, 1, Rational(10));
    CHECK(p.q == loop.q);
    CHECK(p.maslov == 1);
  }
  SUBCASE("fourth power loses the middle binomial term mod 2") {
    LoopElement p = loopPower(loop, 4, Rational(10));
    CHECK(p.maslov == 4);
    QhElement expect = QhElement::zero(cat.spec);
    expect.toggle(cat.spec->fundamental(), cat.spec->gamma->element({0, 2}));
    expect.toggle(cat.spec->fundamental(), cat.spec->gamma->element({2, 0}));
    CHECK(p.q.sameSupport(expect));
  }
  SUBCASE("the cp1 rotation squares to tau(L)") {
    CatalogEntry cp1 = builtinSpec("cp1");
    LoopElement p = loopPower(cp1.loop("rotation"), 2, Rational(10));
    CHECK(p.q.sameSupport(tauElement(cp1.spec, cp1.spec->gamma->element({1}))));
    CHECK(p.maslov == 2);
  }
}

TEST_CASE("order lower bounds") {
  SUBCASE("the cp1 rotation meets tau at its known trivial power") {
    CatalogEntry cp1 = builtinSpec("cp1");
    OrderBoundResult r = orderLowerBound(cp1.loop("rotation"), 5, Rational(6));
    REQUIRE(r.kind == OrderBoundResult::FirstTauPower);
    CHECK(r.k == 2);
    CHECK(r.gamma->coords() == IVec{1});
  }
  SUBCASE("the product circle action has no tau power in range") {
    CatalogEntry cat = builtinSpec("cp1xcp1", Rational(2));
    OrderBoundResult r = orderLowerBound(cat.loop("circle-action"), 6, Rational(10));
    CHECK(r.kind == OrderBoundResult::NoneUpTo);
    CHECK(r.k == 6);
  }
  SUBCASE("a lifted identity loop is tau immediately") {
    CatalogEntry cat = builtinSpec("cp1xcp1", Rational(2));
    GammaElement g = cat.spec->gamma->element({1, 1});
    LoopElement idg{"id", cat.spec, tauElement(cat.spec, g), g.chern()};
    OrderBoundResult r = orderLowerBound(idg, 3, Rational(10));
    REQUIRE(r.kind == OrderBoundResult::FirstTauPower);
    CHECK(r.k == 1);
    CHECK(r.gamma->coords() == g.coords());
  }
  SUBCASE("an insufficient cutoff aborts instead of guessing") {
    CatalogEntry cat = builtinSpec("cp1xcp1", Rational(2));
    // q = a (x) <b> has positive valuation, so high powers escape any finite
    // window: q^2 = [M] (x) <3b> is empty below cutoff 2
    LoopElement drift{"drift", cat.spec, mono(cat.spec, "a", {0, 1}), 3};
    REQUIRE(loopDegreeOk(drift));
    CHECK_THROWS_AS(orderLowerBound(drift, 5, Rational(2)), CutoffTooSmall);
  }
}

TEST_CASE("degree obstruction under a closed positive part") {
  SpecPtr s = classicalOnly();
  SUBCASE("off degrees are obstructed and not invertible") {
    QhElement x = mono(s, "c1", {2});
    CHECK(degreeObstructed(x));
    CHECK(invertElement(x, Rational(2)).kind == InvertResult::NotInvertible);
  }
  SUBCASE("the unit degree is not obstructed") {
    CHECK(!degreeObstructed(QhElement::unit(s)));
    CHECK(!degreeObstructed(tauElement(s, s->gamma->element({3}))));
  }
  SUBCASE("the precondition is enforced") {
    CatalogEntry cp1 = builtinSpec("cp1");
    CHECK_THROWS_AS(degreeObstructed(QhElement::unit(cp1.spec)), std::invalid_argument);
  }
  SUBCASE("with positive minimal Chern number the obstruction is mod 2N") {
    RingSpec r;
    r.name = "cpn-like";
    r.n = 2;
    r.gamma = GammaGroup::build({1, {Rational(1)}, {5}});  // N = 5 > n+... Q+ closed
    r.basis.classes = {{"[M]", 4}, {"h", 2}, {"pt", 0}};
    r.basis.fundamentalIndex = 0;
    for (int j = 0; j < 3; ++j) r.table.setClassical(0, j, ClassMask(1) << j);
    r.table.setClassical(1, 1, 0b100);
    auto sp = std::make_shared<const RingSpec>(std::move(r));
    REQUIRE(validateSpec(*sp).ok());
    // deg(h (x) <0>) = 2: 2 - 4 = -2 is not a multiple of 2N = 10
    CHECK(degreeObstructed(QhElement::monomial(sp, 1, sp->gamma->zero())));
    // deg([M] (x) <-1>) = 4 + 10 = 14 = 2n + 2N: allowed
    CHECK(!degreeObstructed(QhElement::monomial(sp, 0, sp->gamma->element({-1}))));
  }
}

TEST_CASE("property: whenever invert succeeds the product really is e") {
  CatalogEntry cat = builtinSpec("cp1xcp1", Rational(2));
  SplitMix64 rng(83);
  int successes = 0;
  for (int it = 0; it < 40; ++it) {
    QhElement x = randomHomogeneousQhElement(cat.spec, rng, 3, Rational(4));
    if (x.empty()) continue;
    Rational bound(4);
    InvertResult r = invertElement(x, bound);
    if (r.kind != InvertResult::Inverse) continue;
    ++successes;
    QhElement lifted = r.inverse.withCutoff(ExtRat::infinity());
    QhElement probe = qhProduct(x, lifted).truncated(ExtRat(bound));
    CHECK(probe.sameSupport(QhElement::unit(cat.spec).truncated(ExtRat(bound))));
    QhElement probe2 = qhProduct(lifted, x).truncated(ExtRat(bound));
    CHECK(probe2.sameSupport(QhElement::unit(cat.spec).truncated(ExtRat(bound))));
  }
  CHECK(successes > 5);
}
