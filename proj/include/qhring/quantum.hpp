#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qhring/novikov.hpp"
#include "qhring/prng.hpp"

namespace qh {

struct SpecMismatch : std::runtime_error {
  SpecMismatch() : std::runtime_error("elements belong to different ring specs") {}
};

struct BasisClass {
  std::string name;
  int degree = 0;
};

// Z/2 homology basis; at most 64 classes so a coefficient vector fits a mask.
struct HomologyBasis {
  std::vector<BasisClass> classes;
  int fundamentalIndex = 0;
};

using ClassMask = uint64_t;

struct QuantumEntry {
  GammaElement gamma;  // omega(gamma) > 0
  int i = 0, j = 0;    // normalized i <= j
  ClassMask value = 0;
};

// Structure constants of the intersection product and its quantum
// corrections, symmetric by construction (entries keyed with i <= j).
struct GwTable {
  std::map<std::pair<int, int>, ClassMask> classical;
  std::vector<QuantumEntry> quantum;

  ClassMask classicalAt(int i, int j) const {
    auto it = classical.find(std::minmax(i, j));
    return it == classical.end() ? 0 : it->second;
  }
  void setClassical(int i, int j, ClassMask v) {
    if (v)
      classical[std::minmax(i, j)] = v;
    else
      classical.erase(std::minmax(i, j));
  }
};

struct RingSpec {
  std::string name;
  int n = 1;  // half the dimension
  GammaPtr gamma;
  HomologyBasis basis;
  GwTable table;

  int classCount() const { return (int)basis.classes.size(); }
  int degreeOf(int i) const { return basis.classes[i].degree; }
  int fundamental() const { return basis.fundamentalIndex; }
  int classIndex(const std::string& name) const;  // -1 when absent
};

using SpecPtr = std::shared_ptr<const RingSpec>;

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string str() const;
};

// Checks every table invariant: basis shape, degree law, unit row, quantum
// energy positivity, duplicate entries. Reports violations with locations.
ValidationReport validateSpec(const RingSpec& s);

// Element of QH: a Z/2 combination of (basis class x Novikov term), with one
// shared energy cutoff.
class QhElement {
public:
  QhElement() = default;
  static QhElement zero(SpecPtr s);
  static QhElement unit(SpecPtr s);
  static QhElement monomial(SpecPtr s, int classIdx, const GammaElement& g,
                            ExtRat cutoff = ExtRat::infinity());

  const SpecPtr& spec() const { return spec_; }
  const ExtRat& cutoff() const { return cutoff_; }
  const NovikovSeries& comp(int i) const { return comps_[i]; }
  int classCount() const { return (int)comps_.size(); }
  bool empty() const;
  size_t termCount() const;

  void toggle(int classIdx, const GammaElement& g);  // ignores terms above cutoff
  QhElement truncated(const ExtRat& bound) const;
  QhElement withCutoff(const ExtRat& c) const;  // validity override, use with care

  ExtRat valuation() const;  // min term energy, +inf when empty

  bool operator==(const QhElement& o) const;
  bool operator!=(const QhElement& o) const { return !(*this == o); }
  bool sameSupport(const QhElement& o) const;

private:
  SpecPtr spec_;
  std::vector<NovikovSeries> comps_;
  ExtRat cutoff_ = ExtRat::infinity();
};

bool sameSpec(const SpecPtr& a, const SpecPtr& b);

QhElement qhAdd(const QhElement& x, const QhElement& y);
// Module action of a Novikov series.
QhElement qhScale(const QhElement& x, const NovikovSeries& s);
QhElement qhScale(const QhElement& x, const GammaElement& g);

// The quantum intersection product: bilinear extension of the table with
// valuation-based cutoff propagation.
QhElement qhProduct(const QhElement& x, const QhElement& y);

struct DegreeInfo {
  enum Kind { Zero, Homogeneous, Mixed } kind = Zero;
  Int k = 0;  // meaningful for Homogeneous
  bool homogeneous() const { return kind != Mixed; }
};
// Grading deg(class) - 2 chern(gamma), constant across all terms or Mixed.
DegreeInfo qhDegree(const QhElement& x);

// Gromov-Witten number (a_i *_gamma a_j) . a_k via the intersection pairing.
bool tildePhi(const RingSpec& s, int i, int j, int k, const GammaElement& gamma);

// Whether the span of classes of degree < 2n is closed under the product;
// finite table-level check.
bool qPlusClosed(const RingSpec& s);

struct AxiomReport {
  size_t samples = 0;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};

// Seeded randomized check of unit, commutativity, associativity-at-cutoff and
// the degree law on elements with small supports and energies below maxEnergy.
AxiomReport axiomSuite(const SpecPtr& s, size_t samples, const Rational& maxEnergy,
                       uint64_t seed);

// Random data helpers shared by the randomized suites.
GammaElement randomGamma(const GammaPtr& g, SplitMix64& rng, Int coordBound,
                         const Rational& maxEnergy);
QhElement randomQhElement(const SpecPtr& s, SplitMix64& rng, int maxTerms,
                          const Rational& maxEnergy);
QhElement randomHomogeneousQhElement(const SpecPtr& s, SplitMix64& rng, int maxTerms,
                                     const Rational& maxEnergy);

std::string renderQh(const QhElement& x);

}  // namespace qh
