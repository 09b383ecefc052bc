#include <iostream>

#include "CLI11.hpp"
#include "oddclif/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact verifier for odd symplectic Clifford algebras, Kolyvagin trace "
               "sequences, L-factor central derivatives, and the flag commutator constant"};
  app.require_subcommand(1);

  std::string scenarioPath, format = "json", outPath;
  auto* verify = app.add_subcommand("verify", "Run a scenario file and emit a report");
  verify->add_option("scenario", scenarioPath, "Scenario JSON file")->required();
  verify->add_option("--format", format, "Report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--out", outPath, "Write the report here instead of stdout");

  int kappaN = 2;
  bool kappaFull = false;
  auto* kappa = app.add_subcommand("kappa", "Compute the commutator constant for GL_n x GL_{n-1}");
  kappa->add_option("--n", kappaN, "Rank n (>= 2)")->required();
  kappa->add_flag("--full-basis", kappaFull, "Also check the identity on the whole monomial basis");

  std::string selmerSpec;
  auto* selmer = app.add_subcommand("selmer", "Check order(z) = dim M^{F=1} for engineered F");
  selmer->add_option("--spec", selmerSpec, "Scenario JSON file (kind selmer-order)")->required();

  std::uint64_t fuzzSeed = 0;
  int fuzzIters = 10;
  auto* fuzz = app.add_subcommand("fuzz", "Randomized convention-stability checks");
  fuzz->add_option("--seed", fuzzSeed, "RNG seed")->required();
  fuzz->add_option("--iters", fuzzIters, "Number of iterations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return oddclif::runScenarioFile(scenarioPath, format, outPath);
    if (selmer->parsed()) return oddclif::runScenarioFile(selmerSpec, "json", "");
    nlohmann::json sc;
    if (kappa->parsed()) {
      sc = {{"kind", "kappa"}, {"n", kappaN}, {"full_basis", kappaFull}};
    } else {
      sc = {{"kind", "conventions-fuzz"}, {"seed", fuzzSeed}, {"iters", fuzzIters}};
    }
    auto rep = oddclif::runScenario(sc);
    std::cout << oddclif::emitReport(rep, "json");
    return rep.pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
