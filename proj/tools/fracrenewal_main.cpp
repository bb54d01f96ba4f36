#include <fracrenewal/cli.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  using fracrenewal::cli::RunConfig;
  RunConfig cfg;
  std::string out_path;

  CLI::App app{"Renewal processes of Poisson, Mittag-Leffler and Wright type"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--process", cfg.process, "poisson | ml | wright");
    sub->add_option("--beta", cfg.betas, "order parameter in (0, 1] (repeatable)");
    sub->add_option("--lambda", cfg.lambda, "Poisson rate");
    sub->add_option("--t-min", cfg.t_grid.min);
    sub->add_option("--t-max", cfg.t_grid.max);
    sub->add_option("--t-count", cfg.t_grid.count);
    sub->add_option("--t-scale", cfg.t_grid.scale, "lin | log");
    sub->add_option("--t", cfg.times, "explicit time (repeatable)");
    sub->add_option("--x-min", cfg.x_grid.min);
    sub->add_option("--x-max", cfg.x_grid.max);
    sub->add_option("--x-count", cfg.x_grid.count);
    sub->add_option("--tail-tol", cfg.tail_tol);
    sub->add_option("--k-max", cfg.k_max);
    sub->add_option("--seed", cfg.seed);
    sub->add_option("--walkers", cfg.walkers);
    sub->add_option("--out", out_path, "output file (default stdout)");
    sub->add_flag("--full", cfg.full, "full precision in tables");
  };
  auto* curves = app.add_subcommand("curves", "survival and density curves");
  auto* tables = app.add_subcommand("tables", "survival and density tables at beta = 1/2");
  auto* compound = app.add_subcommand("compound", "compound process cdf vs diffusion limit");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo walkers");
  for (auto* s : {curves, tables, compound, simulate}) add_common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fracrenewal::cli::kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (out_path.empty()) return fracrenewal::cli::run(command, cfg, std::cout, std::cerr);
  std::ofstream file(out_path);
  if (!file) {
    std::cerr << "error: cannot open " << out_path << "\n";
    return fracrenewal::cli::kUsage;
  }
  return fracrenewal::cli::run(command, cfg, file, std::cerr);
}
