#include <iostream>

#include <CLI11.hpp>

#include "nevlab/commands.hpp"
#include "nevlab/error.hpp"

namespace {

using nevlab::RunConfig;

void common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--out", cfg.out, "CSV output path (stdout when omitted)");
  sub->add_option("--threads", cfg.threads, "worker threads (default: NEVLAB_THREADS, then all cores)")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--seed", cfg.seed, "master seed, echoed in the header");
  sub->add_flag("--deterministic", cfg.deterministic, "omit the timestamp line");
}

void curve_options(CLI::App* sub, RunConfig& cfg, std::string& radii) {
  sub->add_option("--in", cfg.input, "curve / hyperplane JSON")->required();
  sub->add_option("--surface", cfg.surface, "plane or disc");
  sub->add_option("--radii", radii, "geodesic radii start:stop:step");
  sub->add_option("--nodes", cfg.nodes, "circle nodes");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Value-distribution laboratory on the plane and the Poincare disc"};
  app.set_version_flag("--version", NEVLAB_VERSION);
  app.require_subcommand(1);

  RunConfig cfg;
  std::string radii = "2:40:1";

  auto* fmt = app.add_subcommand("fmt", "First Main Theorem residual m + N - T per hyperplane");
  curve_options(fmt, cfg, radii);
  common(fmt, cfg);

  auto* ldl = app.add_subcommand("ldl", "logarithmic derivative bound m(r, X^k psi / psi) vs (3k/2) log T");
  ldl->add_option("--in", cfg.input, "psi JSON: expression or {\"psi\":{\"numerator\":..,\"denominator\":..}}")->required();
  ldl->add_option("--surface", cfg.surface, "plane or disc");
  ldl->add_option("--radii", radii, "geodesic radii start:stop:step");
  ldl->add_option("--nodes", cfg.nodes, "circle nodes");
  ldl->add_option("--order", cfg.order, "derivative order k");
  ldl->add_option("--c1", cfg.c1, "allowed constant in the excess");
  common(ldl, cfg);

  auto* smt = app.add_subcommand("smt", "Second Main Theorem margin, fit and defects");
  curve_options(smt, cfg, radii);
  smt->add_option("--fit-tolerance", cfg.fit_tolerance, "largest allowed fit excess");
  smt->add_option("--defect-slack", cfg.defect_slack, "slack over the defect budget 2N - n + 1");
  common(smt, cfg);

  auto* nochka = app.add_subcommand("nochka", "Nochka weights as exact fractions");
  nochka->add_option("--in", cfg.input, "hyperplane JSON")->required();
  common(nochka, cfg);

  auto* bm = app.add_subcommand("bm", "Brownian exit-time statistics");
  bm->add_option("--surface", cfg.surface, "plane or disc");
  bm->add_option("--radius", cfg.radius, "geodesic radius");
  bm->add_option("--dt", cfg.dt, "time step");
  bm->add_option("--paths", cfg.paths, "number of paths");
  common(bm, cfg);

  auto* ode = app.add_subcommand("ode", "Jacobi equation G'' + kappa G = 0 and its comparison bounds");
  ode->add_option("--kappa", cfg.kappa, "kappa JSON text or file");
  ode->add_option("--rmax", cfg.r_max, "integration end");
  ode->add_option("--step", cfg.step, "RK4 step");
  common(ode, cfg);

  auto* verify = app.add_subcommand("verify", "acceptance suite");
  verify->add_option("--suite", cfg.suite, "all, a criterion name, or ids like 1,2,9");
  common(verify, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return nevlab::kExitInputError;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  try {
    cfg.radii = nevlab::RadiiGrid::parse(radii);
  } catch (const nevlab::Error& e) {
    std::cerr << "nevlab " << cfg.subcommand << ": " << e.what() << "\n";
    return nevlab::kExitInputError;
  }
  return nevlab::run(cfg, std::cout, std::cerr);
}
