#include "qhring/units.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>

namespace qh {

bool loopDegreeOk(const LoopElement& l) {
  DegreeInfo d = qhDegree(l.q);
  if (d.kind == DegreeInfo::Mixed) return false;
  if (d.kind == DegreeInfo::Zero) return true;  // nothing visible to contradict
  return d.k == 2 * l.spec->n - 2 * l.maslov;
}

namespace {

ClassMask classicalMulMask(const RingSpec& s, ClassMask u, ClassMask v) {
  ClassMask out = 0;
  for (int i = 0; i < s.classCount(); ++i)
    if (u >> i & 1)
      for (int j = 0; j < s.classCount(); ++j)
        if (v >> j & 1) out ^= s.table.classicalAt(i, j);
  return out;
}

}  // namespace

std::optional<ClassMask> classicalInverse(const RingSpec& s, ClassMask h) {
  int f = s.fundamental();
  if (!(h >> f & 1)) return std::nullopt;
  ClassMask nil = h ^ (ClassMask(1) << f);
  ClassMask acc = ClassMask(1) << f;
  ClassMask pow = ClassMask(1) << f;
  // Classical products of positive-codimension classes strictly drop degree,
  // so the series terminates within 2n steps.
  for (int guard = 0; guard <= 2 * s.n + 1 && pow; ++guard) {
    pow = classicalMulMask(s, pow, nil);
    acc ^= pow;
  }
  assert(pow == 0 && "nilpotent part did not terminate");
  return acc;
}

QhElement tauElement(const SpecPtr& s, const GammaElement& g) {
  return QhElement::monomial(s, s->fundamental(), g);
}

TauMembership inTauImage(const QhElement& x) {
  TauMembership r;
  const RingSpec& s = *x.spec();
  int f = s.fundamental();
  size_t total = x.termCount();
  for (int i = 0; i < x.classCount(); ++i) {
    if (i == f || x.comp(i).empty()) continue;
    r.verdict = TauMembership::No;
    r.reason = "component on '" + s.basis.classes[i].name + "'";
    return r;
  }
  if (total >= 2) {
    r.verdict = TauMembership::No;
    r.reason = "more than one monomial visible";
    return r;
  }
  if (total == 0) {
    if (x.cutoff().isInf()) {
      r.verdict = TauMembership::No;
      r.reason = "zero element";
    } else {
      r.verdict = TauMembership::Undetermined;
      r.reason = "empty below cutoff " + x.cutoff().str();
    }
    return r;
  }
  const GammaElement& g = x.comp(f).terms().front();
  if (ExtRat(g.omega()) < x.cutoff()) {
    r.verdict = TauMembership::Yes;
    r.gamma = g;
  } else {
    r.verdict = TauMembership::Undetermined;
    r.reason = "single monomial at the validity boundary";
  }
  return r;
}

QhElement seidelApply(const LoopElement& l, const QhElement& b) {
  return qhProduct(l.q, b);
}

LoopElement composeLoops(const LoopElement& a, const LoopElement& b) {
  if (!sameSpec(a.spec, b.spec)) throw SpecMismatch();
  LoopElement c;
  c.name = a.name + "*" + b.name;
  c.spec = a.spec;
  c.q = qhProduct(a.q, b.q);
  c.maslov = a.maslov + b.maslov;
  if (!loopDegreeOk(c))
    throw std::runtime_error("composeLoops: degree 2n-2I violated, inconsistent loop data");
  return c;
}

LoopElement loopPower(const LoopElement& l, int m, const Rational& bound) {
  if (m < 1) throw std::invalid_argument("loopPower: exponent must be positive");
  if (m == 1) return l;
  LoopElement r;
  r.spec = l.spec;
  r.name = l.name + "^" + std::to_string(m);
  QhElement acc = l.q.truncated(ExtRat(bound));
  for (int k = 1; k < m; ++k) acc = qhProduct(acc, l.q).truncated(ExtRat(bound));
  r.q = acc;
  r.maslov = (Int)m * l.maslov;
  if (!loopDegreeOk(r))
    throw std::runtime_error("loopPower: degree 2n-2I violated, inconsistent loop data");
  return r;
}

OrderBoundResult orderLowerBound(const LoopElement& l, int K, const Rational& bound) {
  QhElement q = QhElement::unit(l.spec);
  for (int k = 1; k <= K; ++k) {
    q = qhProduct(q, l.q).truncated(ExtRat(bound));
    TauMembership t = inTauImage(q);
    if (t.verdict == TauMembership::Yes) {
      OrderBoundResult r;
      r.kind = OrderBoundResult::FirstTauPower;
      r.k = k;
      r.gamma = t.gamma;
      return r;
    }
    if (t.verdict == TauMembership::Undetermined)
      throw CutoffTooSmall("order bound: q^" + std::to_string(k) +
                           " undetermined at cutoff " + bound.str() + " (" + t.reason + ")");
  }
  OrderBoundResult r;
  r.kind = OrderBoundResult::NoneUpTo;
  r.k = K;
  return r;
}

bool degreeObstructed(const QhElement& x) {
  const RingSpec& s = *x.spec();
  if (!qPlusClosed(s))
    throw std::invalid_argument("degreeObstructed: positive part is not closed");
  DegreeInfo d = qhDegree(x);
  if (d.kind == DegreeInfo::Mixed) throw NotHomogeneous();
  if (d.kind == DegreeInfo::Zero) return false;
  Int n2 = 2 * s.n;
  Int N = minimalChern(*s.gamma);
  if (N == 0) return d.k != n2;
  Int r = (d.k - n2) % (2 * N);
  return r != 0;
}

// ---------------------------------------------------------------------------
// Inversion

namespace {

// Determinant of a matrix of Novikov series by minor expansion memoized on
// (row set, column set); Z/2 makes signs irrelevant.
class MinorDet {
public:
  explicit MinorDet(const std::vector<std::vector<NovikovSeries>>& m, GammaPtr group)
      : m_(m), group_(std::move(group)) {}

  NovikovSeries det(uint64_t rowMask, uint64_t colMask) {
    if (rowMask == 0) return NovikovSeries::monomial(group_->zero());
    auto key = std::make_pair(rowMask, colMask);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    int r = __builtin_ctzll(rowMask);
    uint64_t rest = rowMask & ~(uint64_t(1) << r);
    NovikovSeries acc = NovikovSeries::zero(group_);
    for (int c = 0; c < 64; ++c) {
      if (!(colMask >> c & 1)) continue;
      // Cutoff must propagate even through empty entries.
      NovikovSeries sub = det(rest, colMask & ~(uint64_t(1) << c));
      acc = novAdd(acc, novMul(m_[r][c], sub));
    }
    memo_.emplace(key, acc);
    return acc;
  }

private:
  const std::vector<std::vector<NovikovSeries>>& m_;
  GammaPtr group_;
  std::map<std::pair<uint64_t, uint64_t>, NovikovSeries> memo_;
};

struct Candidate {
  int classIdx;
  GammaElement gamma;
  Rational energy;
};

// Particular integer solution of chern_can . v = c, if any.
std::optional<IVec> solveChern(const IVec& chern, Int c) {
  int n = (int)chern.size();
  IVec sol(n, 0);
  Int g = 0;
  // running Bezout combination over the coordinates
  IVec bez(n, 0);
  for (int i = 0; i < n; ++i) {
    if (chern[i] == 0) continue;
    if (g == 0) {
      g = std::abs(chern[i]);
      bez.assign(n, 0);
      bez[i] = chern[i] > 0 ? 1 : -1;
    } else {
      Int a = g, b = chern[i];
      // extended gcd of (a, b)
      Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
      while (b != 0) {
        Int qq = a / b;
        std::tie(a, b) = std::make_tuple(b, a - qq * b);
        std::tie(x0, x1) = std::make_tuple(x1, x0 - qq * x1);
        std::tie(y0, y1) = std::make_tuple(y1, y0 - qq * y1);
      }
      if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
      }
      for (int k = 0; k < n; ++k) bez[k] *= x0;
      bez[i] += y0;
      g = a;
    }
  }
  if (g == 0) {
    if (c != 0) return std::nullopt;
    return sol;
  }
  if (c % g != 0) return std::nullopt;
  for (int k = 0; k < n; ++k) sol[k] = bez[k] * (c / g);
  return sol;
}

// One output coordinate (class, gamma) of x*y restricted to the candidate
// unknowns, packed as bits plus the right-hand side from e.
struct Equation {
  Rational energy;
  int classIdx;
  IVec gammaCoords;
  std::vector<uint64_t> bits;
  bool rhs = false;
};

}  // namespace

InvertResult invertElement(const QhElement& x, const Rational& bound) {
  const SpecPtr& sp = x.spec();
  const RingSpec& s = *sp;
  if (bound < Rational(0)) throw std::invalid_argument("invert: negative energy bound");
  DegreeInfo deg = qhDegree(x);
  if (deg.kind == DegreeInfo::Mixed) throw NotHomogeneous();
  if (deg.kind == DegreeInfo::Zero) throw std::invalid_argument("invert: zero element");
  int nc = s.classCount();
  if (nc > 16) throw std::invalid_argument("invert: bases beyond 16 classes unsupported");
  int f = s.fundamental();
  const GammaPtr& G = s.gamma;

  // Multiplication matrix: column j holds the Lambda-coefficients of
  // x * basis_j.
  std::vector<std::vector<NovikovSeries>> m(nc, std::vector<NovikovSeries>(nc));
  for (int j = 0; j < nc; ++j) {
    QhElement col = qhProduct(x, QhElement::monomial(sp, j, G->zero()));
    for (int i = 0; i < nc; ++i) m[i][j] = col.comp(i);
  }

  MinorDet minors(m, G);
  uint64_t fullMask = (uint64_t(1) << nc) - 1;
  NovikovSeries det = minors.det(fullMask, fullMask);

  InvertResult out;
  if (det.empty()) {
    if (!det.cutoff().isInf()) {
      out.kind = InvertResult::Undetermined;
      out.exhausted = bound;
      return out;
    }
    out.kind = InvertResult::NotInvertible;
    out.witness = "det of the multiplication matrix vanishes identically";
    out.witnessLevel = ExtRat::infinity();
    // fall through to the level scan below for a concrete witness
  }

  // Degree of the sought inverse.
  Int kPrime = 4 * (Int)s.n - deg.k;
  ExtRat vx = x.valuation();

  // Candidate terms: for each class, the unique gamma at each admissible
  // energy; energies form an arithmetic progression along ker(chern).
  Rational floor0(0);
  if (out.kind != InvertResult::NotInvertible) {
    const GammaElement& lt = det.terms().front();
    // Cofactors against the unit column pin a valuation floor for the
    // inverse: val(y_i) >= val(cof_i) - val(lt(det)).
    ExtRat minCof = ExtRat::infinity();
    uint64_t rowsNoF = fullMask & ~(uint64_t(1) << f);
    for (int i = 0; i < nc; ++i) {
      NovikovSeries cof = minors.det(rowsNoF, fullMask & ~(uint64_t(1) << i));
      minCof = ExtRat::min(minCof, novValuation(cof));
    }
    if (minCof.isInf()) {
      // at full precision some cofactor against the unit row is nonzero;
      // seeing none means truncation hid it
      if (x.cutoff().isInf())
        throw std::logic_error("invert: unit column has no cofactor despite det != 0");
      out.kind = InvertResult::Undetermined;
      out.exhausted = bound;
      return out;
    }
    floor0 = minCof.finite() - lt.omega();
    // The equations can only be trusted where the matrix entries are exact.
    ExtRat certifiedPossible = ExtRat::infinity();
    for (int i = 0; i < nc; ++i)
      for (int j = 0; j < nc; ++j)
        certifiedPossible = ExtRat::min(certifiedPossible, m[i][j].cutoff() + floor0);
    if (certifiedPossible < ExtRat(bound)) {
      out.kind = InvertResult::Undetermined;
      out.exhausted = bound;
      return out;
    }
  } else {
    // Witness scan floor: a candidate below -maxUp cannot reach level 0.
    Rational maxUp(0);
    for (int i = 0; i < nc; ++i)
      for (int j = 0; j < nc; ++j)
        for (const auto& t : m[i][j].terms())
          if (t.omega() > maxUp) maxUp = t.omega();
    floor0 = -maxUp - Rational(1);
  }

  // ker(chern) on canonical coordinates: rank <= 1 because (omega, chern) is
  // injective.
  IMat kerC;
  {
    IMat cm(1, IVec(G->canonicalRank()));
    for (int i = 0; i < G->canonicalRank(); ++i) cm[0][i] = G->chernCanonical()[i];
    kerC = kernelBasis(cm);
  }
  if (kerC.size() > 1) throw std::logic_error("invert: chern kernel rank exceeds 1");

  Rational eMax = bound - (vx.isInf() ? Rational(0) : vx.finite());
  std::vector<Candidate> cands;
  for (int j = 0; j < nc; ++j) {
    Int num = s.degreeOf(j) - kPrime;
    if (num % 2 != 0) continue;
    std::optional<IVec> part = solveChern(G->chernCanonical(), num / 2);
    if (!part) continue;
    GammaElement g0 = G->element(*part);
    if (kerC.empty()) {
      if (g0.omega() >= floor0 && g0.omega() <= eMax)
        cands.push_back({j, g0, g0.omega()});
      continue;
    }
    GammaElement kappa = G->element(kerC[0]);
    if (kappa.omega() < Rational(0)) kappa = -kappa;
    Rational step = kappa.omega();
    if (step.isZero()) throw std::logic_error("invert: kernel direction with zero energy");
    // t in [ (floor0 - w0)/step , (eMax - w0)/step ]
    Rational lo = (floor0 - g0.omega()) / step;
    Rational hi = (eMax - g0.omega()) / step;
    auto ceilOf = [](const Rational& r) -> Int {
      Int q = r.num() / r.den();
      if (r.num() % r.den() != 0 && r.num() > 0) ++q;
      return q;
    };
    auto floorOf = [](const Rational& r) -> Int {
      Int q = r.num() / r.den();
      if (r.num() % r.den() != 0 && r.num() < 0) --q;
      return q;
    };
    for (Int t = ceilOf(lo); t <= floorOf(hi); ++t) {
      GammaElement g = g0 + kappa.scaled(t);
      cands.push_back({j, g, g.omega()});
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    if (a.classIdx != b.classIdx) return a.classIdx < b.classIdx;
    return a.gamma.coords() < b.gamma.coords();
  });

  // Assemble equations over the touched coordinates.
  int nu = (int)cands.size();
  int words = (nu + 63) / 64;
  std::map<std::pair<IVec, int>, Equation> eqMap;  // (gamma, class) -> eq
  auto eqFor = [&](int classIdx, const GammaElement& g) -> Equation& {
    auto key = std::make_pair(g.coords(), classIdx);
    auto it = eqMap.find(key);
    if (it == eqMap.end()) {
      Equation eq;
      eq.energy = g.omega();
      eq.classIdx = classIdx;
      eq.gammaCoords = g.coords();
      eq.bits.assign(words, 0);
      it = eqMap.emplace(key, std::move(eq)).first;
    }
    return it->second;
  };
  for (int c = 0; c < nu; ++c) {
    const Candidate& cd = cands[c];
    for (int i = 0; i < nc; ++i) {
      for (const auto& t : m[i][cd.classIdx].terms()) {
        GammaElement g = t + cd.gamma;
        if (g.omega() > bound) continue;
        eqFor(i, g).bits[c / 64] ^= uint64_t(1) << (c % 64);
      }
    }
  }
  eqFor(f, G->zero()).rhs = true;

  std::vector<Equation*> eqs;
  for (auto& [k, eq] : eqMap) eqs.push_back(&eq);
  std::sort(eqs.begin(), eqs.end(),
            [](const Equation* a, const Equation* b) {
              if (a->energy != b->energy) return a->energy < b->energy;
              if (a->classIdx != b->classIdx) return a->classIdx < b->classIdx;
              return a->gammaCoords < b->gammaCoords;
            });

  // Ascending-energy GF(2) elimination.
  std::vector<int> pivotOfEq;       // pivot unknown per stored pivot row
  std::vector<std::vector<uint64_t>> pivRows;
  std::vector<bool> pivRhs;
  std::vector<int> pivotRowOfUnknown(nu, -1);
  auto lowestBit = [&](const std::vector<uint64_t>& bits) -> int {
    for (int w = 0; w < words; ++w)
      if (bits[w]) return w * 64 + __builtin_ctzll(bits[w]);
    return -1;
  };
  for (Equation* eq : eqs) {
    std::vector<uint64_t> row = eq->bits;
    bool rhs = eq->rhs;
    int lb;
    while ((lb = lowestBit(row)) >= 0 && pivotRowOfUnknown[lb] >= 0) {
      int pr = pivotRowOfUnknown[lb];
      for (int w = 0; w < words; ++w) row[w] ^= pivRows[pr][w];
      rhs ^= pivRhs[pr];
    }
    if (lb < 0) {
      if (rhs) {
        // Inconsistent at this coordinate.
        if (out.kind != InvertResult::NotInvertible) {
          // a visible nonzero det promises a solution; with truncated input
          // the candidate window may have been clipped, which is not a proof
          // of anything
          if (x.cutoff().isInf())
            throw std::logic_error("invert: inconsistent system despite nonzero det");
          out.kind = InvertResult::Undetermined;
          out.exhausted = bound;
          return out;
        }
        out.witnessLevel = ExtRat(eq->energy);
        std::string cn = s.basis.classes[eq->classIdx].name;
        out.witness = "level " + eq->energy.str() + ": coordinate " + cn +
                      renderGammaElement(G->element(eq->gammaCoords)) +
                      " unreachable by any candidate support";
        return out;
      }
      continue;
    }
    pivotRowOfUnknown[lb] = (int)pivRows.size();
    pivRows.push_back(row);
    pivRhs.push_back(rhs);
    pivotOfEq.push_back(lb);
  }
  if (out.kind == InvertResult::NotInvertible) return out;  // det certificate only

  // Back-substitution in descending unknown order; free unknowns stay zero.
  std::vector<uint8_t> value(nu, 0);
  for (int u = nu - 1; u >= 0; --u) {
    int pr = pivotRowOfUnknown[u];
    if (pr < 0) continue;
    bool v = pivRhs[pr];
    for (int c = u + 1; c < nu; ++c)
      if (pivRows[pr][c / 64] >> (c % 64) & 1) v ^= value[c];
    value[u] = v;
  }

  // The candidate's support is exact data, so lift its validity marker before
  // probing: the propagated cutoff must not hide junk below the bound.
  auto probeOk = [&](const QhElement& cand) {
    QhElement lifted = cand.withCutoff(ExtRat::infinity());
    QhElement probe = qhProduct(x, lifted).truncated(ExtRat(bound));
    return probe.sameSupport(QhElement::unit(sp).truncated(ExtRat(bound)));
  };

  QhElement yFull = QhElement::zero(sp).withCutoff(ExtRat(eMax));
  for (int c = 0; c < nu; ++c)
    if (value[c]) yFull.toggle(cands[c].classIdx, cands[c].gamma);
  if (!probeOk(yFull)) throw std::logic_error("invert: verification failed");

  // Below the lowest free unknown the truncated system pins the inverse
  // uniquely; restrict the element's own validity claim to that range when
  // the restriction still certifies the product.
  QhElement y = yFull;
  for (int c = 0; c < nu; ++c) {
    if (pivotRowOfUnknown[c] >= 0) continue;
    Rational freeE = cands[c].energy;  // lowest free unknown: cands are sorted
    Rational best = floor0 - Rational(1);
    for (const Candidate& cd : cands)
      if (cd.energy < freeE && cd.energy > best) best = cd.energy;
    QhElement trunc = yFull.withCutoff(ExtRat(best));
    if (probeOk(trunc)) y = trunc;
    break;
  }

  out.kind = InvertResult::Inverse;
  out.inverse = y;
  out.certified = ExtRat(bound);
  return out;
}

}  // namespace qh
