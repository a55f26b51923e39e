#pragma once

#include <string>
#include <vector>

#include "qhring/textio.hpp"
#include "qhring/units.hpp"

namespace qh {

struct ValidationError : std::runtime_error {
  ValidationReport report;
  explicit ValidationError(ValidationReport r)
      : std::runtime_error("spec validation failed:\n" + r.str()), report(std::move(r)) {}
};

struct CatalogEntry {
  SpecPtr spec;
  std::vector<LoopElement> loops;

  const LoopElement& loop(const std::string& name) const;
};

std::vector<std::string> builtinNames();

// Built-in rings: "cp1", "cp2", and the product family "cp1xcp1" /
// "f2-as-s2xs2" parameterized by a rational area ratio lambda > 1.
CatalogEntry builtinSpec(const std::string& name, const Rational& lambda = Rational(2));

// Deterministic single-document serialization; serialize-parse-serialize is
// byte-identical.
std::string serializeSpec(const CatalogEntry& e);

// Parses and validates a spec document. Throws ParseError with a line number
// on syntax problems and ValidationError with the full report on invariant
// violations.
CatalogEntry parseSpecText(const std::string& text);
CatalogEntry loadSpecFile(const std::string& path);

// "cp1", "cp1xcp1:5/2", or a path to a spec file (anything containing '/',
// '.', or naming an existing file).
CatalogEntry resolveSpec(const std::string& ref);

}  // namespace qh
