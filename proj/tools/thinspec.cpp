#include <CLI11.hpp>

#include <iostream>

#include "thinspec/cli.hpp"
#include "thinspec/errors.hpp"

using namespace thinspec;

int main(int argc, char** argv) {
  CLI::App app{"Band structure, density of states and thin-spectrum constructions for periodic Jacobi matrices"};
  app.require_subcommand(1);

  JobConfig cfg;
  std::string mode = "offdiag";
  long cap = 0;

  auto common = [&](CLI::App* sub, bool coefficients = true) {
    if (coefficients) {
      sub->add_option("--a", cfg.a, "off-diagonal period a_1..a_p")->delimiter(',');
      sub->add_option("--b", cfg.b, "diagonal period b_1..b_p")->delimiter(',');
      sub->add_option("--input,-i", cfg.input_path, "coefficient CSV (columns a[,b])");
    }
    sub->add_option("--output,-o", cfg.output_path, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "json or csv");
    sub->add_option("--manifest", cfg.manifest_path, "manifest path");
  };

  auto* bands = app.add_subcommand("bands", "bands, gaps and measure");
  common(bands);

  auto* ids = app.add_subcommand("ids", "integrated density of states");
  common(ids);
  ids->add_option("--at", cfg.at, "energy");
  ids->add_option("--grid", cfg.grid, "number of grid energies");

  auto* lyap = app.add_subcommand("lyapunov", "Lyapunov exponent");
  common(lyap);
  lyap->add_option("--at", cfg.at, "energy");
  lyap->add_option("--grid", cfg.grid, "number of grid energies");

  auto* thin = app.add_subcommand("thin", "thin-spectrum construction");
  common(thin);
  thin->add_option("--eps", cfg.eps, "sup-norm budget")->required();
  thin->add_option("--N", cfg.N, "period multiplier")->required();
  thin->add_option("--mode", mode, "offdiag or diag");
  thin->add_option("--period-cap", cap, "largest admissible period");

  auto* chain = app.add_subcommand("chain", "limit-periodic approximant chain");
  common(chain);
  chain->add_option("--eps", cfg.eps, "sup-norm budget")->required();
  chain->add_option("--stages", cfg.stages, "number of stages")->required();
  chain->add_option("--period-cap", cap, "largest admissible period");
  chain->add_option("--mode", mode, "offdiag or diag");

  auto* gordon = app.add_subcommand("gordon", "Gordon condition on the periodic extension");
  common(gordon);
  gordon->add_option("--p", cfg.gordon_p, "window period")->required();
  gordon->add_option("--k", cfg.gordon_k, "threshold base, tested against k^-p")->required();

  auto* lap = app.add_subcommand("laplacian", "spectrum of the separable lattice Laplacian");
  common(lap);
  lap->add_option("--d", cfg.d, "lattice dimension")->required();
  lap->add_option("--spectrum", cfg.spectrum_path, "bands or interval JSON for the 1D spectrum");
  lap->add_option("--torus-side", cfg.torus_side, "also dump L_w on this torus");
  lap->add_option("--coo", cfg.coo_path, "path of the torus matrix dump");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    cfg.command = command_from_string(app.get_subcommands().front()->get_name());
    cfg.mode = thin_mode_from_string(mode);
    if (cap != 0) {
      if (cap < 0) throw DomainError("--period-cap must be positive");
      cfg.period_cap = static_cast<std::size_t>(cap);
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return run(cfg, std::cout, std::cerr);
}
