#pragma once

#include <string>
#include <vector>

#include "qhring/catalog.hpp"

namespace qh {

struct SuiteResult {
  std::string name;
  bool pass = true;
  std::vector<std::string> lines;

  SuiteResult() = default;
  explicit SuiteResult(std::string n) : name(std::move(n)) {}

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

// Named verification suites; each reproduces one algebraic identity family
// or property contract and is deterministic given the seed.
std::vector<std::string> verifySuiteNames();
SuiteResult runVerifySuite(const std::string& name, uint64_t seed);
std::vector<SuiteResult> runAllVerifySuites(uint64_t seed);

}  // namespace qh
