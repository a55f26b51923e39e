#include <doctest.h>

#include "qhring/intlinalg.hpp"
#include "qhring/prng.hpp"

using namespace qh;

TEST_CASE("column hermite produces a unimodular transform with trailing zeros") {
  IMat a = {{2, 4, 4}, {-6, 6, 12}};
  ColumnHnf ch = columnHermite(a);
  CHECK(ch.rank == 2);
  IMat av = matMul(a, ch.v);
  for (int i = 0; i < 2; ++i)
    for (int j = ch.rank; j < 3; ++j) CHECK(av[i][j] == 0);
  // transform is invertible over the integers
  IMat inv = unimodularInverse(ch.v);
  CHECK(matMul(ch.v, inv) == identityMatrix(3));
}

TEST_CASE("row hermite is canonical") {
  IMat b = {{0, 2, 4}, {3, 1, 5}};
  IMat h = rowHermite(b);
  REQUIRE(h.size() == 2);
  CHECK(h[0][0] == 3);
  CHECK(h[1][0] == 0);
  CHECK(h[1][1] == 2);
  // rows of b lie in the span of h
  for (const IVec& row : b) CHECK(latticeContains(h, row));
  // scaled generators give the same lattice only after saturation, so direct
  // HNF of doubled rows differs
  IMat doubled = {{0, 4, 8}, {6, 2, 10}};
  CHECK(rowHermite(doubled) != h);
}

TEST_CASE("kernel basis annihilates and is saturated") {
  SplitMix64 rng(42);
  for (int it = 0; it < 200; ++it) {
    int r = 1 + (int)rng.below(4);
    IMat a(2, IVec(r));
    for (auto& row : a)
      for (auto& x : row) x = rng.range(-3, 3);
    IMat k = kernelBasis(a);
    for (const IVec& v : k) {
      for (int i = 0; i < 2; ++i) {
        Int dot = 0;
        for (int j = 0; j < r; ++j) dot += a[i][j] * v[j];
        CHECK(dot == 0);
      }
    }
    // saturation: the doubled kernel vectors still lie inside
    for (const IVec& v : k) {
      IVec half = v;  // membership of any integer multiple
      for (auto& x : half) x *= 3;
      CHECK(latticeContains(k, half));
    }
  }
}

TEST_CASE("lattice membership distinguishes index") {
  IMat h = rowHermite({{2, 1}});
  CHECK(latticeContains(h, {2, 1}));
  CHECK(latticeContains(h, {-4, -2}));
  CHECK(!latticeContains(h, {1, 1}));
  CHECK(!latticeContains(h, {0, 1}));
}
