#include "convexlab/runner.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  CLI::App app{"convexlab: counterexample pairs for sections, projections and slabs of convex bodies"};
  app.require_subcommand(1);

  convexlab::RunConfig config;

  auto* construct = app.add_subcommand("construct", "Write the body specs of a pair");
  construct->add_option("--pair", config.pair, "smooth or polytope")
      ->check(CLI::IsMember({"smooth", "polytope"}));
  std::vector<std::string> construct_out;
  construct->add_option("--out", construct_out, "Spec files for K and L")->expected(2)->required();
  construct->add_option("--n", config.n, "Dimension (smooth pair)");

  auto* verify = app.add_subcommand("verify", "Run an experiment and write reports");
  std::string which;
  verify->add_option("experiment", which, "lemma1 | sections | slabs | projections | convergence | certify | all")
      ->required()
      ->check(CLI::IsMember({"lemma1", "sections", "slabs", "projections", "convergence", "certify", "all"}));
  verify->add_option("--pair", config.pair, "Fixture pair")
      ->check(CLI::IsMember({"smooth", "polytope", "control-rotated", "control-shifted"}));
  std::string body_k, body_l;
  verify->add_option("--body-k", body_k, "Spec file for K (with --body-l)");
  verify->add_option("--body-l", body_l, "Spec file for L (with --body-k)");
  verify->add_option("--n", config.n, "Ambient dimension");
  verify->add_option("--k", config.k, "Subspace dimension");
  verify->add_option("--i", config.i, "Intrinsic volume index");
  verify->add_option("--t", config.t, "Slab half-width (first t for convergence)");
  verify->add_option("--samples", config.samples, "Sample count");
  verify->add_option("--seed", config.seed, "Random seed");
  verify->add_option("--tol", config.tol, "Tolerance");
  std::string out_dir = "out";
  verify->add_option("--out", out_dir, "Output directory");
  verify->add_flag("--svg", config.svg, "Also write SVG plots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : convexlab::kExitError;
  }

  if (construct->parsed()) {
    config.command = "construct";
    for (const auto& p : construct_out) config.construct_out.emplace_back(p);
  } else {
    config.command = which;
    config.out_dir = out_dir;
    if (!body_k.empty()) config.body_k = body_k;
    if (!body_l.empty()) config.body_l = body_l;
  }
  return convexlab::run(config, std::cout);
}
