#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qhring/verify.hpp"

namespace {

using namespace qh;

struct Options {
  uint64_t seed = 0;
  std::string format = "text";
  bool machine() const { return format == "machine-readable-lines"; }
};

std::string extStr(const ExtRat& e) { return e.str(); }

int cmdInfo(const Options& opt) {
  if (opt.machine()) {
    for (const auto& n : builtinNames()) std::cout << "builtin=" << n << "\n";
    for (const auto& n : verifySuiteNames()) std::cout << "suite=" << n << "\n";
    return 0;
  }
  std::cout << "qhring: exact quantum-homology kernel over Z/2 Novikov rings\n\n";
  std::cout << "builtin specs (pass as <spec>, product family takes ':lambda'):\n";
  for (const auto& n : builtinNames()) std::cout << "  " << n << "\n";
  std::cout << "\nverify suites:\n";
  for (const auto& n : verifySuiteNames()) std::cout << "  " << n << "\n";
  std::cout << "  all\n";
  return 0;
}

int cmdCheck(const Options& opt, const std::string& specRef) {
  CatalogEntry cat;
  try {
    cat = resolveSpec(specRef);
  } catch (const ValidationError& e) {
    if (opt.machine()) {
      std::cout << "status=invalid\n";
      for (const auto& v : e.report.violations) std::cout << "violation=" << v << "\n";
    } else {
      std::cout << "spec '" << specRef << "' is invalid:\n" << e.report.str();
    }
    return 1;
  }
  ValidationReport rep = validateSpec(*cat.spec);
  if (!rep.ok()) {
    if (opt.machine()) {
      std::cout << "status=invalid\n";
      for (const auto& v : rep.violations) std::cout << "violation=" << v << "\n";
    } else {
      std::cout << "spec '" << specRef << "' is invalid:\n" << rep.str();
    }
    return 1;
  }
  if (opt.machine()) {
    std::cout << "status=ok\n";
    std::cout << "name=" << cat.spec->name << "\n";
    std::cout << "classes=" << cat.spec->classCount() << "\n";
    std::cout << "quantum_entries=" << cat.spec->table.quantum.size() << "\n";
    std::cout << "loops=" << cat.loops.size() << "\n";
    std::cout << "q_plus_closed=" << (qPlusClosed(*cat.spec) ? "true" : "false") << "\n";
    std::cout << "wplus=" << wplusName(checkWPlus(*cat.spec->gamma, cat.spec->n)) << "\n";
    std::cout << "minimal_chern=" << minimalChern(*cat.spec->gamma) << "\n";
  } else {
    std::cout << "spec '" << cat.spec->name << "' ok: " << cat.spec->classCount()
              << " classes, " << cat.spec->table.quantum.size() << " quantum entries, "
              << cat.loops.size() << " loops\n";
    std::cout << "  semipositivity: " << wplusName(checkWPlus(*cat.spec->gamma, cat.spec->n))
              << ", minimal Chern number " << minimalChern(*cat.spec->gamma)
              << ", Q+ closed: " << (qPlusClosed(*cat.spec) ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmdProduct(const Options& opt, const std::string& specRef, const std::string& xs,
               const std::string& ys) {
  CatalogEntry cat = resolveSpec(specRef);
  QhElement x = parseQh(cat.spec, xs);
  QhElement y = parseQh(cat.spec, ys);
  QhElement p = qhProduct(x, y);
  std::cout << (opt.machine() ? "result=" : "") << renderQh(p) << "\n";
  return 0;
}

int cmdInvert(const Options& opt, const std::string& specRef, const std::string& xs,
              const std::string& cutoff) {
  CatalogEntry cat = resolveSpec(specRef);
  QhElement x = parseQh(cat.spec, xs);
  InvertResult r = invertElement(x, Rational::parse(cutoff));
  if (opt.machine()) {
    switch (r.kind) {
      case InvertResult::Inverse:
        std::cout << "status=inverse\n"
                  << "inverse=" << renderQh(r.inverse) << "\n"
                  << "certified=" << extStr(r.certified) << "\n";
        break;
      case InvertResult::NotInvertible:
        std::cout << "status=not-invertible\n"
                  << "witness_level=" << extStr(r.witnessLevel) << "\n"
                  << "witness=" << r.witness << "\n";
        break;
      default:
        std::cout << "status=undetermined\n"
                  << "exhausted=" << r.exhausted.str() << "\n";
    }
    return 0;
  }
  switch (r.kind) {
    case InvertResult::Inverse:
      std::cout << "inverse: " << renderQh(r.inverse) << "\n"
                << "product certified equal to e at energies <= " << extStr(r.certified)
                << "\n";
      break;
    case InvertResult::NotInvertible:
      std::cout << "not invertible (" << r.witness << ")\n";
      break;
    default:
      std::cout << "undetermined up to the requested cutoff " << r.exhausted.str() << "\n";
  }
  return 0;
}

int cmdPower(const Options& opt, const std::string& specRef, const std::string& loopName,
             int m, const std::string& cutoff) {
  CatalogEntry cat = resolveSpec(specRef);
  LoopElement lp = loopPower(cat.loop(loopName), m, Rational::parse(cutoff));
  if (opt.machine())
    std::cout << "q=" << renderQh(lp.q) << "\nmaslov=" << lp.maslov << "\n";
  else
    std::cout << "q = " << renderQh(lp.q) << "\nI = " << lp.maslov << "\n";
  return 0;
}

int cmdOrderBound(const Options& opt, const std::string& specRef, const std::string& loopName,
                  int maxK, const std::string& cutoff) {
  CatalogEntry cat = resolveSpec(specRef);
  OrderBoundResult r = orderLowerBound(cat.loop(loopName), maxK, Rational::parse(cutoff));
  if (opt.machine()) {
    if (r.kind == OrderBoundResult::FirstTauPower)
      std::cout << "status=first-tau-power\nk=" << r.k
                << "\ngamma=" << renderGammaElement(*r.gamma) << "\n";
    else
      std::cout << "status=none-up-to\nk=" << r.k << "\n";
    return 0;
  }
  if (r.kind == OrderBoundResult::FirstTauPower)
    std::cout << "first tau power at k = " << r.k << " with gamma = "
              << renderGammaElement(*r.gamma)
              << " (consistent with order " << r.k << ", not a proof of it)\n";
  else
    std::cout << "no power up to " << r.k
              << " lies in tau(Gamma); the loop class has order > " << r.k << "\n";
  return 0;
}

int cmdTau(const Options& opt, const std::string& specRef, const std::string& gammaLit) {
  CatalogEntry cat = resolveSpec(specRef);
  GammaElement g = parseGammaElement(cat.spec->gamma, gammaLit);
  std::cout << (opt.machine() ? "result=" : "") << renderQh(tauElement(cat.spec, g)) << "\n";
  return 0;
}

int cmdVerify(const Options& opt, const std::string& suite) {
  std::vector<SuiteResult> results;
  if (suite == "all")
    results = runAllVerifySuites(opt.seed);
  else
    results.push_back(runVerifySuite(suite, opt.seed));
  bool pass = true;
  for (const auto& r : results) {
    if (opt.machine()) {
      std::cout << "suite=" << r.name << "\n";
      for (const auto& l : r.lines) std::cout << "check=" << l << "\n";
      std::cout << "status=" << (r.pass ? "ok" : "fail") << "\n";
    } else {
      std::cout << "[" << (r.pass ? "PASS" : "FAIL") << "] " << r.name << "\n";
      for (const auto& l : r.lines) std::cout << "  " << l << "\n";
    }
    if (!r.pass) {
      pass = false;
      break;  // first-failure report
    }
  }
  if (!opt.machine()) std::cout << (pass ? "verified\n" : "verification failed\n");
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"exact computer-algebra kernel for quantum homology over Z/2 Novikov rings"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.add_option("--seed", opt.seed, "seed for the randomized verify suites");
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "machine-readable-lines"}));

  auto* info = app.add_subcommand("info", "list builtin specs and verify suites");

  std::string specRef, xs, ys, cutoff = "10", gammaLit, loopName, suite;
  int m = 1, maxK = 10;

  auto* check = app.add_subcommand("check", "validate a builtin or spec file");
  check->add_option("spec", specRef)->required();

  auto* product = app.add_subcommand("product", "quantum intersection product of two elements");
  product->add_option("spec", specRef)->required();
  product->add_option("x", xs)->required();
  product->add_option("y", ys)->required();

  auto* invert = app.add_subcommand("invert", "invert a homogeneous element");
  invert->add_option("spec", specRef)->required();
  invert->add_option("x", xs)->required();
  invert->add_option("--cutoff", cutoff, "energy bound")->required();

  auto* power = app.add_subcommand("power", "power of a catalog loop");
  power->add_option("spec", specRef)->required();
  power->add_option("loop", loopName)->required();
  power->add_option("m", m)->required();
  power->add_option("--cutoff", cutoff, "energy bound")->required();

  auto* order = app.add_subcommand("order-bound", "lower bound for the loop order");
  order->add_option("spec", specRef)->required();
  order->add_option("loop", loopName)->required();
  order->add_option("--max", maxK, "largest power to scan")->required();
  order->add_option("--cutoff", cutoff, "energy bound")->required();

  auto* tau = app.add_subcommand("tau", "the unit [M] (x) <gamma>");
  tau->add_option("spec", specRef)->required();
  tau->add_option("gamma", gammaLit)->required();

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (info->parsed()) return cmdInfo(opt);
    if (check->parsed()) return cmdCheck(opt, specRef);
    if (product->parsed()) return cmdProduct(opt, specRef, xs, ys);
    if (invert->parsed()) return cmdInvert(opt, specRef, xs, cutoff);
    if (power->parsed()) return cmdPower(opt, specRef, loopName, m, cutoff);
    if (order->parsed()) return cmdOrderBound(opt, specRef, loopName, maxK, cutoff);
    if (tau->parsed()) return cmdTau(opt, specRef, gammaLit);
    if (verify->parsed()) return cmdVerify(opt, suite);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what();
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotHomogeneous& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
