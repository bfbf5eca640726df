// acbm: classify almost contact B-metric Lie algebras and check their
// closed-form group exponentials.

#include <iostream>

#include "CLI11.hpp"
#include "acbm/cli/commands.hpp"

using namespace acbm::cli;

int main(int argc, char** argv) {
  CLI::App app{"Almost contact B-metric Lie algebras: classification and group exponentials"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "acbm 0.1.0");

  ClassifyOptions classify;
  auto* c = app.add_subcommand("classify", "classify the algebra in a JSON file");
  c->add_option("--in", classify.in, "algebra file")->required();
  c->add_option("--tol", classify.tol, "membership tolerance (relative)")->capture_default_str();
  c->add_flag("--json", classify.json, "machine-readable output");

  CanonicalOptions canonical;
  auto* k = app.add_subcommand("canonical", "write the canonical algebra of a basic class");
  k->add_option("--class", canonical.cls, "F1, F4, F5, F8, F9, F10 or F11")->required();
  k->add_option("--alpha", canonical.alpha)->capture_default_str();
  k->add_option("--beta", canonical.beta, "F1 and F11 only")->capture_default_str();
  k->add_option("--out", canonical.out, "output path, - for stdout")->capture_default_str();

  ExpOptions exp;
  auto* e = app.add_subcommand("exp", "closed-form group element of a tabulated matrix");
  e->add_option("--class", exp.cls)->required();
  e->add_option("--alpha", exp.alpha)->capture_default_str();
  e->add_option("--beta", exp.beta)->capture_default_str();
  e->add_option("--coords", exp.coords, "a,b,c (use --coords=-1,0,0 for a leading minus)")->capture_default_str();
  e->add_option("--mode", exp.mode, "printed or corrected")->capture_default_str();

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "seeded sweep of every class and branch");
  v->add_option("--samples", verify.samples, "samples per cell")->capture_default_str();
  v->add_option("--seed", verify.seed)->capture_default_str();
  v->add_option("--tol", verify.tol)->capture_default_str();
  v->add_option("--report", verify.report, "report path (default: stdout)");
  v->add_option("--workers", verify.workers, "0: ACBM_WORKERS or all cores")->capture_default_str();

  FixturesOptions fixtures;
  auto* f = app.add_subcommand("fixtures", "check the example groups");
  f->add_option("--name", fixtures.name, "GI, GII, GIII or SO3");
  f->add_option("--variant", fixtures.variant, "GIII: ker-eta or span-xi");
  f->add_option("--export", fixtures.export_path, "write the named fixture as an algebra file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (*c) return cmd_classify(classify, std::cout, std::cerr);
  if (*k) return cmd_canonical(canonical, std::cout, std::cerr);
  if (*e) return cmd_exp(exp, std::cout, std::cerr);
  if (*v) return cmd_verify(verify, std::cout, std::cerr);
  return cmd_fixtures(fixtures, std::cout, std::cerr);
}
