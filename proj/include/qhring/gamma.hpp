#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qhring/intlinalg.hpp"
#include "qhring/rational.hpp"

namespace qh {

// Generators of the sphere-class lattice with their symplectic areas and
// first Chern numbers.
struct SphereClassLattice {
  int rank = 0;
  std::vector<Rational> omega;
  IVec chern;
};

class GammaGroup;
using GammaPtr = std::shared_ptr<const GammaGroup>;

struct GroupMismatch : std::runtime_error {
  GroupMismatch() : std::runtime_error("elements belong to different groups") {}
};

// Element of a GammaGroup in canonical coordinates.
class GammaElement {
public:
  GammaElement() = default;
  GammaElement(GammaPtr group, IVec coords);

  const IVec& coords() const { return coords_; }
  const GammaPtr& group() const { return group_; }
  Rational omega() const;
  Int chern() const;
  bool isZero() const;

  GammaElement operator+(const GammaElement& o) const;
  GammaElement operator-() const;
  GammaElement operator-(const GammaElement& o) const;
  GammaElement scaled(Int k) const;
  bool operator==(const GammaElement& o) const;
  bool operator!=(const GammaElement& o) const { return !(*this == o); }

  // Orders by energy, ties broken lexicographically on coordinates.
  static bool energyLess(const GammaElement& a, const GammaElement& b);

private:
  GammaPtr group_;
  IVec coords_;
};

// The quotient of the sphere-class lattice by the joint kernel of (omega,
// chern), in canonical coordinates on which the pair is injective. Immutable
// after construction.
class GammaGroup : public std::enable_shared_from_this<GammaGroup> {
public:
  static GammaPtr build(SphereClassLattice lat);

  const SphereClassLattice& source() const { return source_; }
  const IMat& kernelBasisRows() const { return kernel_basis_; }
  int canonicalRank() const { return canonical_rank_; }
  const IMat& projection() const { return projection_; }  // rank x canonicalRank
  const std::vector<Rational>& omegaCanonical() const { return omega_can_; }
  const IVec& chernCanonical() const { return chern_can_; }

  GammaElement element(IVec canonicalCoords) const;
  GammaElement zero() const;
  // Image of a raw lattice vector under the quotient projection.
  GammaElement project(const IVec& raw) const;

  Rational omegaOf(const IVec& coords) const;
  Int chernOf(const IVec& coords) const;

  // The unique element with the given functional values, if any.
  std::optional<GammaElement> solveFunctionals(const Rational& omega, Int chern) const;

  bool operator==(const GammaGroup& o) const;

private:
  GammaGroup() = default;
  SphereClassLattice source_;
  IMat kernel_basis_;
  int canonical_rank_ = 0;
  IMat projection_;
  IMat representatives_;  // canonicalRank x rank, sections of the projection
  std::vector<Rational> omega_can_;
  IVec chern_can_;
};

bool sameGroup(const GammaPtr& a, const GammaPtr& b);

// A point of the Gamma-torsor of section classes: pairs (area, chern) that
// differ from each other by elements of Gamma.
struct SectionClass {
  GammaPtr group;
  Rational area;
  Int chern = 0;
};

// Unique gamma with omega(gamma) = s1.area - s0.area and chern likewise;
// nullopt when the difference is not realized in the group.
std::optional<GammaElement> sectionDiff(const SectionClass& s1, const SectionClass& s0);
SectionClass sectionTranslate(const SectionClass& s0, const GammaElement& g);
inline Int maslovFromSection(const SectionClass& s) { return -s.chern; }

// gcd of the Chern functional's image; 0 when chern vanishes identically.
Int minimalChern(const GammaGroup& g);

enum class WPlus { HoldsByA, HoldsByB, HoldsByC, Fails };
std::string wplusName(WPlus w);

// Semipositivity check for a 2n-dimensional manifold: (a) omega proportional
// to chern with a nonnegative factor, (b) chern identically zero, (c) minimal
// Chern number at least n-1. First condition that holds wins.
WPlus checkWPlus(const GammaGroup& g, int n);

}  // namespace qh
