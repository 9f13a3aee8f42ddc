#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pooling/io.hpp"

namespace pooling {

int cli_main(int argc, char** argv) {
  CLI::App app{"Exact solver for the one-pool pooling problem"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  std::string solve_mode = "exact";
  auto* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("path", solve_args.path, "instance JSON file")->required();
  solve->add_option("--mode", solve_mode, "exact|float")
      ->check(CLI::IsMember({"exact", "float"}));
  solve->add_option("--report", solve_args.report_path, "write a JSON report");
  solve->add_option("--max-inputs", solve_args.max_inputs, "input-count ceiling");

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand(
      "oracle", "cross-check the solver against subset enumeration");
  oracle->add_option("path", oracle_args.path, "instance JSON file")->required();
  oracle->add_option("--grid", oracle_args.grid, "fixed-ratio grid resolution");
  oracle->add_option("--max-inputs", oracle_args.max_inputs, "input-count ceiling");

  CellsArgs cells_args;
  auto* cells = app.add_subcommand("cells", "enumerate arrangement cells");
  cells->add_option("path", cells_args.path, "instance JSON file")->required();
  cells->add_flag("--unrestricted", cells_args.unrestricted,
                  "enumerate over the whole ratio space, not just the simplex");
  cells->add_flag("--check-bounds", cells_args.check_bounds,
                  "fail when the cell-count bounds are violated");
  cells->add_flag("--check-gp", cells_args.check_gp,
                  "fail unless the system is in general position");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "generate a seeded random instance");
  gen->add_option("--m", gen_args.params.m, "inputs")->required();
  gen->add_option("--n", gen_args.params.n, "outputs")->required();
  gen->add_option("--q", gen_args.params.q, "qualities")->required();
  gen->add_option("--seed", gen_args.params.seed, "RNG seed");
  gen->add_flag("--general-position", gen_args.params.general_position,
                "retry seeds until the hyperplanes are in general position");
  gen->add_option("--out", gen_args.out_path, "output file (default stdout)");

  BenchArgs bench_args;
  std::string bench_mode = "exact";
  auto* bench = app.add_subcommand("bench", "time the solver over a size grid");
  bench->add_option("--grid-of-sizes", bench_args.sizes,
                    "semicolon-separated m,n,q tuples");
  bench->add_option("--csv", bench_args.csv_path, "CSV output file (default stdout)");
  bench->add_option("--mode", bench_mode, "exact|float")
      ->check(CLI::IsMember({"exact", "float"}));
  bench->add_option("--seed", bench_args.seed, "base RNG seed");
  bench->add_option("--max-inputs", bench_args.max_inputs, "input-count ceiling");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInvalid;
  }

  if (solve->parsed()) {
    solve_args.mode = solve_mode == "float" ? Mode::Float : Mode::Exact;
    return run_solve(solve_args, std::cout, std::cerr);
  }
  if (oracle->parsed()) return run_oracle(oracle_args, std::cout, std::cerr);
  if (cells->parsed()) return run_cells(cells_args, std::cout, std::cerr);
  if (gen->parsed()) return run_gen(gen_args, std::cout, std::cerr);
  if (bench->parsed()) {
    bench_args.mode = bench_mode == "float" ? Mode::Float : Mode::Exact;
    return run_bench(bench_args, std::cout, std::cerr);
  }
  return kExitInvalid;
}

}  // namespace pooling
