// Exercises the installed CLI binary end to end: exit codes, byte
// determinism, and the documented output grammar. The binary path arrives as
// argv[1] from ctest.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

namespace {

struct RunResult {
  int exitCode;
  std::string out;
};

std::string shellQuote(const std::string& s) {
  std::string q = "'";
  for (char c : s)
    if (c == '\'')
      q += "'\\''";
    else
      q += c;
  return q + "'";
}

RunResult run(const std::string& bin, const std::string& args) {
  std::string cmd = bin + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {127, ""};
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int status = pclose(p);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : 128;
  return {code, out};
}

int failures = 0;

void expect(bool ok, const std::string& what) {
  std::cout << (ok ? "ok   " : "FAIL ") << what << "\n";
  if (!ok) ++failures;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_tests <path-to-qhring>\n";
    return 2;
  }
  std::string bin = shellQuote(argv[1]);

  RunResult r = run(bin, "product cp1xcp1:2 'a<0,0>' 'a<0,0>'");
  expect(r.exitCode == 0 && r.out == "[M]<0,1>\n", "product prints [M]<0,1>");

  // outputs parse back as inputs
  r = run(bin, "product cp1xcp1:2 '[M]<0,1>' 'a<0,0>'");
  expect(r.exitCode == 0 && r.out == "a<0,1>\n", "product output round-trips as input");

  r = run(bin, "tau cp1 '<1>'");
  expect(r.exitCode == 0 && r.out == "[M]<1>\n", "tau renders the unit monomial");

  r = run(bin, "invert cp1 'pt<0>' --cutoff 2");
  expect(r.exitCode == 0 && r.out.find("pt<-1>") != std::string::npos,
         "invert prints the shifted point class");

  r = run(bin, "--format machine-readable-lines order-bound cp1 rotation --max 5 --cutoff 6");
  expect(r.exitCode == 0 && r.out == "status=first-tau-power\nk=2\ngamma=<1>\n",
         "order-bound machine format is stable");

  r = run(bin, "power cp1xcp1:2 circle-action 4 --cutoff 10");
  expect(r.exitCode == 0 && r.out.find("[M]<0,2> + [M]<2,0>") != std::string::npos &&
             r.out.find("I = 4") != std::string::npos,
         "power prints the closed form and the Maslov index");

  r = run(bin, "check cp1");
  expect(r.exitCode == 0 && r.out.find("ok") != std::string::npos, "check accepts cp1");

  r = run(bin, "verify identity-loop");
  expect(r.exitCode == 0, "verify identity-loop exits 0");

  // determinism: two runs of the full suite are byte-identical
  RunResult a = run(bin, "verify all --seed 7");
  RunResult b = run(bin, "verify all --seed 7");
  expect(a.exitCode == 0 && a.out == b.out, "verify all is byte-deterministic");

  RunResult m1 = run(bin, "--format machine-readable-lines verify axioms");
  RunResult m2 = run(bin, "--format machine-readable-lines verify axioms");
  expect(m1.exitCode == 0 && m1.out == m2.out, "machine format is byte-deterministic");

  // exit code 2 on usage problems
  expect(run(bin, "").exitCode == 2, "no subcommand exits 2");
  expect(run(bin, "frobnicate").exitCode == 2, "unknown subcommand exits 2");
  expect(run(bin, "product cp1").exitCode == 2, "missing arguments exit 2");
  expect(run(bin, "product cp1 'pt<0' 'pt<0>'").exitCode == 2, "bad literal exits 2");
  expect(run(bin, "tau nope '<0>'").exitCode == 2, "unknown spec exits 2");
  expect(run(bin, "invert cp1 'pt<0> + [M]<0>' --cutoff 2").exitCode == 2,
         "inhomogeneous invert input is a usage error");

  // exit code 1 when check finds an invalid file
  {
    std::ofstream bad("cli_bad_spec.qhspec", std::ios::binary);
    bad << "name = broken\nn = 1\nlattice_rank = 1\nlattice_omega = 1\n"
        << "lattice_chern = 2\nbasis_class = [M] 2\nbasis_class = pt 0\n"
        << "fundamental_class = [M]\nclassical_entry = [M] * [M] -> [M]\n"
        << "classical_entry = [M] * pt -> pt\nquantum_entry = pt * pt @ [0] -> [M]\n";
  }
  r = run(bin, "check ./cli_bad_spec.qhspec");
  expect(r.exitCode == 1 && r.out.find("positivity") != std::string::npos,
         "check reports the violation and exits 1");
  std::remove("cli_bad_spec.qhspec");

  std::cout << (failures ? "CLI TESTS FAILED\n" : "cli tests passed\n");
  return failures ? 1 : 0;
}
