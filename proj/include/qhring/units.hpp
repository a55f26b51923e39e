#pragma once

#include <optional>

#include "qhring/quantum.hpp"

namespace qh {

struct NotHomogeneous : std::runtime_error {
  NotHomogeneous() : std::runtime_error("element is not homogeneous") {}
};

struct CutoffTooSmall : std::runtime_error {
  explicit CutoffTooSmall(const std::string& what) : std::runtime_error(what) {}
};

// A named Hamiltonian loop datum: its Seidel element and Maslov index.
struct LoopElement {
  std::string name;
  SpecPtr spec;
  QhElement q;
  Int maslov = 0;
};

// deg q = 2n - 2I; holds for every valid loop and is preserved by
// composition.
bool loopDegreeOk(const LoopElement& l);

// Inverse in the classical intersection ring, by the finite Neumann series of
// the nilpotent part; exists iff the fundamental component is present.
std::optional<ClassMask> classicalInverse(const RingSpec& s, ClassMask h);

struct InvertResult {
  enum Kind { Inverse, NotInvertible, Undetermined } kind = Undetermined;
  QhElement inverse;      // Inverse: q(x, inverse) = e at all energies <= certified
  ExtRat certified;       // Inverse: the certified product cutoff (the requested E)
  ExtRat witnessLevel;    // NotInvertible: first unsolvable energy level, +inf
                          // when only the determinant certificate applies
  std::string witness;    // NotInvertible: description of the failure
  Rational exhausted;     // Undetermined: the requested bound
};

// Filtered inversion of a homogeneous nonzero element. The multiplication
// matrix over the Novikov ring certifies the outcome: a visibly nonzero
// determinant yields an inverse found by ascending-energy GF(2) elimination,
// an exactly zero determinant certifies non-invertibility, and anything
// hidden by truncation is Undetermined.
InvertResult invertElement(const QhElement& x, const Rational& bound);

// tau(gamma) = [M] (x) <gamma>, an invertible monomial.
QhElement tauElement(const SpecPtr& s, const GammaElement& g);

struct TauMembership {
  enum Verdict { Yes, No, Undetermined } verdict = Undetermined;
  std::optional<GammaElement> gamma;  // set on Yes
  std::string reason;
};

// Whether x is tau(gamma) for some gamma, as far as the cutoff can tell.
// No is conclusive regardless of truncation.
TauMembership inTauImage(const QhElement& x);

// The loop's action on quantum homology: multiplication by its Seidel
// element.
QhElement seidelApply(const LoopElement& l, const QhElement& b);

// Loop composition: Seidel elements multiply, Maslov indices add.
LoopElement composeLoops(const LoopElement& a, const LoopElement& b);
LoopElement loopPower(const LoopElement& l, int m, const Rational& bound);

struct OrderBoundResult {
  enum Kind { FirstTauPower, NoneUpTo } kind = NoneUpTo;
  int k = 0;                          // first tau power, or the exhausted K
  std::optional<GammaElement> gamma;  // set on FirstTauPower
};

// Scans q^k for k = 1..K at the given cutoff. NoneUpTo(K) certifies that the
// loop class has no trivial power up to K; FirstTauPower only says the
// obstruction vanishes there. Throws CutoffTooSmall on an Undetermined power.
OrderBoundResult orderLowerBound(const LoopElement& l, int K, const Rational& bound);

// Degree obstruction to invertibility when the positive-codimension part is
// closed under the product: invertible degrees are 2n + 2iN.
bool degreeObstructed(const QhElement& x);

}  // namespace qh
