#include "qhring/gamma.hpp"

#include <algorithm>
#include <numeric>

namespace qh {

GammaElement::GammaElement(GammaPtr group, IVec coords)
    : group_(std::move(group)), coords_(std::move(coords)) {
  if ((int)coords_.size() != group_->canonicalRank())
    throw std::invalid_argument("GammaElement: coordinate length mismatch");
}

Rational GammaElement::omega() const { return group_->omegaOf(coords_); }
Int GammaElement::chern() const { return group_->chernOf(coords_); }

bool GammaElement::isZero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](Int x) { return x == 0; });
}

GammaElement GammaElement::operator+(const GammaElement& o) const {
  if (!sameGroup(group_, o.group_)) throw GroupMismatch();
  IVec c(coords_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] + o.coords_[i];
  return GammaElement(group_, std::move(c));
}

GammaElement GammaElement::operator-() const {
  IVec c(coords_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
  return GammaElement(group_, std::move(c));
}

GammaElement GammaElement::operator-(const GammaElement& o) const { return *this + (-o); }

GammaElement GammaElement::scaled(Int k) const {
  IVec c(coords_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] * k;
  return GammaElement(group_, std::move(c));
}

bool GammaElement::operator==(const GammaElement& o) const {
  if (!sameGroup(group_, o.group_)) throw GroupMismatch();
  return coords_ == o.coords_;
}

bool GammaElement::energyLess(const GammaElement& a, const GammaElement& b) {
  Rational wa = a.omega(), wb = b.omega();
  if (wa != wb) return wa < wb;
  return a.coords() < b.coords();
}

GammaPtr GammaGroup::build(SphereClassLattice lat) {
  if ((int)lat.omega.size() != lat.rank || (int)lat.chern.size() != lat.rank)
    throw std::invalid_argument("SphereClassLattice: functional length mismatch");
  auto g = std::shared_ptr<GammaGroup>(new GammaGroup());
  g->source_ = std::move(lat);
  const auto& src = g->source_;
  int r = src.rank;

  // Integer matrix with rows (cleared omega, chern); its kernel is the
  // subgroup annihilated by both functionals.
  Int lcm = 1;
  for (const Rational& w : src.omega) lcm = std::lcm(lcm, w.den());
  IMat a(2, IVec(r, 0));
  for (int j = 0; j < r; ++j) {
    a[0][j] = src.omega[j].num() * (lcm / src.omega[j].den());
    a[1][j] = src.chern[j];
  }
  g->kernel_basis_ = r == 0 ? IMat{} : kernelBasis(a);
  int rk = (int)g->kernel_basis_.size();
  g->canonical_rank_ = r - rk;
  int rc = g->canonical_rank_;

  // Unimodular T with K*T = [I | 0]; the projection is the last rc columns
  // of T and canonical representatives are the last rc rows of T^{-1}.
  IMat t;
  if (rk == 0) {
    t = identityMatrix(r);
  } else {
    ColumnHnf ch = columnHermite(g->kernel_basis_);
    for (int i = 0; i < rk; ++i)
      for (int j = 0; j < rk; ++j)
        if (ch.h[i][j] != (i == j ? 1 : 0))
          throw std::logic_error("GammaGroup: kernel basis not saturated");
    t = std::move(ch.v);
  }
  g->projection_.assign(r, IVec(rc));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < rc; ++j) g->projection_[i][j] = t[i][rk + j];
  IMat s = r == 0 ? IMat{} : unimodularInverse(t);
  g->representatives_.assign(rc, IVec(r));
  for (int i = 0; i < rc; ++i) g->representatives_[i] = s[rk + i];

  g->omega_can_.resize(rc);
  g->chern_can_.assign(rc, 0);
  for (int i = 0; i < rc; ++i) {
    Rational w(0);
    Int c = 0;
    for (int j = 0; j < r; ++j) {
      w += src.omega[j] * Rational(g->representatives_[i][j]);
      c += src.chern[j] * g->representatives_[i][j];
    }
    g->omega_can_[i] = w;
    g->chern_can_[i] = c;
  }

  // Injectivity of (omega, chern) on canonical coordinates: the residual
  // kernel must be trivial since it was quotiented out.
  Int clcm = 1;
  for (const Rational& w : g->omega_can_) clcm = std::lcm(clcm, w.den());
  IMat fc(2, IVec(rc, 0));
  for (int j = 0; j < rc; ++j) {
    fc[0][j] = g->omega_can_[j].num() * (clcm / g->omega_can_[j].den());
    fc[1][j] = g->chern_can_[j];
  }
  if (rc > 0 && !kernelBasis(fc).empty())
    throw std::logic_error("GammaGroup: functionals not injective on quotient");
  return g;
}

GammaElement GammaGroup::element(IVec canonicalCoords) const {
  return GammaElement(shared_from_this(), std::move(canonicalCoords));
}

GammaElement GammaGroup::zero() const { return element(IVec(canonical_rank_, 0)); }

GammaElement GammaGroup::project(const IVec& raw) const {
  if ((int)raw.size() != source_.rank)
    throw std::invalid_argument("GammaGroup::project: length mismatch");
  return element(vecMatMul(raw, projection_));
}

Rational GammaGroup::omegaOf(const IVec& coords) const {
  Rational w(0);
  for (int j = 0; j < canonical_rank_; ++j) w += omega_can_[j] * Rational(coords[j]);
  return w;
}

Int GammaGroup::chernOf(const IVec& coords) const {
  Int c = 0;
  for (int j = 0; j < canonical_rank_; ++j) c += chern_can_[j] * coords[j];
  return c;
}

std::optional<GammaElement> GammaGroup::solveFunctionals(const Rational& omega, Int chern) const {
  // Exact rational solve of the 2 x rc system; the solution is unique when it
  // exists because the functional pair is injective (so rc <= 2).
  int rc = canonical_rank_;
  std::vector<std::vector<Rational>> m(2, std::vector<Rational>(rc + 1));
  for (int j = 0; j < rc; ++j) {
    m[0][j] = omega_can_[j];
    m[1][j] = Rational(chern_can_[j]);
  }
  m[0][rc] = omega;
  m[1][rc] = Rational(chern);
  int row = 0;
  std::vector<int> pivCol;
  for (int c = 0; c < rc && row < 2; ++c) {
    int p = -1;
    for (int i = row; i < 2; ++i)
      if (!m[i][c].isZero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[row], m[p]);
    Rational inv = Rational(1) / m[row][c];
    for (int j = c; j <= rc; ++j) m[row][j] *= inv;
    for (int i = 0; i < 2; ++i) {
      if (i == row || m[i][c].isZero()) continue;
      Rational f = m[i][c];
      for (int j = c; j <= rc; ++j) m[i][j] -= f * m[row][j];
    }
    pivCol.push_back(c);
    ++row;
  }
  for (int i = row; i < 2; ++i)
    if (!m[i][rc].isZero()) return std::nullopt;  // inconsistent
  IVec coords(rc, 0);
  for (int i = 0; i < row; ++i) {
    if (!m[i][rc].isInteger()) return std::nullopt;
    coords[pivCol[i]] = m[i][rc].num();
  }
  // Non-pivot coordinates stay zero; injectivity makes them forced, but
  // verify to be safe.
  GammaElement g = element(std::move(coords));
  if (g.omega() != omega || g.chern() != chern) return std::nullopt;
  return g;
}

bool GammaGroup::operator==(const GammaGroup& o) const {
  return source_.rank == o.source_.rank && source_.omega == o.source_.omega &&
         source_.chern == o.source_.chern && kernel_basis_ == o.kernel_basis_ &&
         projection_ == o.projection_;
}

bool sameGroup(const GammaPtr& a, const GammaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

std::optional<GammaElement> sectionDiff(const SectionClass& s1, const SectionClass& s0) {
  if (!sameGroup(s1.group, s0.group)) throw GroupMismatch();
  return s1.group->solveFunctionals(s1.area - s0.area, s1.chern - s0.chern);
}

SectionClass sectionTranslate(const SectionClass& s0, const GammaElement& g) {
  if (!sameGroup(s0.group, g.group())) throw GroupMismatch();
  return SectionClass{s0.group, s0.area + g.omega(), s0.chern + g.chern()};
}

Int minimalChern(const GammaGroup& g) {
  Int n = 0;
  for (Int c : g.chernCanonical()) n = std::gcd(n, c);
  return n;
}

std::string wplusName(WPlus w) {
  switch (w) {
    case WPlus::HoldsByA: return "HoldsByA";
    case WPlus::HoldsByB: return "HoldsByB";
    case WPlus::HoldsByC: return "HoldsByC";
    default: return "Fails";
  }
}

WPlus checkWPlus(const GammaGroup& g, int n) {
  const auto& w = g.omegaCanonical();
  const auto& c = g.chernCanonical();
  int rc = g.canonicalRank();
  // (a): omega = lambda * chern for a single rational lambda >= 0
  bool haveLambda = false;
  Rational lambda(0);
  bool a = true;
  for (int j = 0; j < rc && a; ++j) {
    if (c[j] == 0) {
      if (!w[j].isZero()) a = false;
    } else {
      Rational l = w[j] / Rational(c[j]);
      if (haveLambda && l != lambda) a = false;
      lambda = l;
      haveLambda = true;
    }
  }
  if (a && (!haveLambda || lambda.isNonNegative())) return WPlus::HoldsByA;
  if (std::all_of(c.begin(), c.end(), [](Int x) { return x == 0; })) return WPlus::HoldsByB;
  if (minimalChern(g) >= n - 1) return WPlus::HoldsByC;
  return WPlus::Fails;
}

}  // namespace qh
