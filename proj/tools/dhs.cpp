// dhs: maintain and check spectral sparsifiers of directed hypergraphs.
//
//   dhs gen     write a random instance to a .dhg file
//   dhs run     replay a .dhu update stream against a dynamic sparsifier
//   dhs verify  sparsify a .dhg instance and check the approximation
//   dhs bench   amortized update-cost table over instance sizes
//
// All randomness is counter-based: a fixed --seed fixes every output
// bit.  Streams are derived per purpose ("rebuild", "probe", "edge",
// "bench-ops", ...) so commands never share raw state.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <dhsparse/cli.hpp>

namespace {

using namespace dhsparse;

struct CommonSparsify {
  double eps = 0.1;
  std::uint64_t seed = 0;
  double c_lambda = 1.0;
  double c = 3.0;
  std::int64_t lambda_override = -1;
  std::int64_t mstar_override = -1;

  void attach(CLI::App& app) {
    app.add_option("--eps", eps, "target approximation error in (0,1)");
    app.add_option("--seed", seed, "root seed for all derived randomness");
    app.add_option("--c-lambda", c_lambda, "per-pair retention constant");
    app.add_option("--c", c, "recursion floor constant");
    app.add_option("--lambda-override", lambda_override,
                   "fix the per-pair retention count (negative = formula)");
    app.add_option("--mstar-override", mstar_override,
                   "fix the recursion floor (negative = formula)");
  }
  std::optional<std::int64_t> lambda() const {
    return lambda_override < 0 ? std::nullopt : std::optional<std::int64_t>(lambda_override);
  }
  std::optional<std::int64_t> mstar() const {
    return mstar_override < 0 ? std::nullopt : std::optional<std::int64_t>(mstar_override);
  }
};

int run_main(int argc, char** argv) {
  CLI::App app{"directed hypergraph spectral sparsification"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  GenOptions gen_opt;
  std::string gen_dist = "uniform";
  gen->add_option("-n,--vertices", gen_opt.params.n, "vertex count")->required();
  gen->add_option("-m,--edges", gen_opt.params.m, "edge count")->required();
  gen->add_option("-r,--rank", gen_opt.params.r, "max vertices per edge (default 2)");
  gen->add_option("--dist", gen_dist, "weight distribution: uniform | pareto | constant");
  gen->add_option("--pareto-alpha", gen_opt.params.pareto_alpha, "pareto shape");
  gen->add_option("--const-weight", gen_opt.params.const_weight, "constant weight value");
  gen->add_option("--seed", gen_opt.params.seed, "generator seed");
  gen->add_flag("--allow-self", gen_opt.params.allow_self,
                "permit rank-1 edges (tail == head == one vertex)");
  gen->add_option("-o,--out", gen_opt.out_path, "output .dhg path")->required();

  // run
  auto* run = app.add_subcommand("run", "replay an update stream");
  RunOptions run_opt;
  CommonSparsify run_common;
  std::int64_t run_empty_n = -1;
  std::string run_sched = "seq";
  std::int64_t run_max_m = -1;
  run->add_option("graph", run_opt.graph_path, "initial .dhg instance (optional)");
  run->add_option("--empty-n", run_empty_n, "start from an empty graph on this many vertices");
  run->add_option("-u,--updates", run_opt.stream_path, "update stream (.dhu)")->required();
  run_common.attach(*run);
  run->add_option("--max-m", run_max_m,
                  "capacity (live-edge bound); default = initial edges + stream adds");
  run->add_option("--scheduler", run_sched, "seq | par");
  run->add_option("--batch-size", run_opt.batch_size,
                  "regroup the stream into batches of this size (0 = as written)");
  run->add_option("--out-json", run_opt.out_json_path, "write metrics JSON here");
  run->add_option("--dump-sparsifier", run_opt.dump_sparsifier_path,
                  "write the final sparsifier as .dhg");

  // verify
  auto* verify = app.add_subcommand("verify", "sparsify and check approximation quality");
  VerifyOptions verify_opt;
  CommonSparsify verify_common;
  verify->add_option("graph", verify_opt.graph_path, "input .dhg instance")->required();
  verify_common.attach(*verify);
  verify->add_option("--mode", verify_opt.mode, "cuts | random | both (default both)");
  verify->add_option("--trials", verify_opt.trials, "random probe count");
  verify->add_flag("--test-corrupt", verify_opt.test_corrupt,
                   "deliberately mis-scale the sparsifier; the check must then fail");

  // bench
  auto* bench = app.add_subcommand("bench", "amortized update cost over instance sizes");
  BenchOptions bench_opt;
  std::vector<std::string> bench_cells;
  std::string bench_sched = "seq";
  bench->add_option("--cell", bench_cells, "instance as n:m[:r], repeatable")->required();
  bench->add_option("--eps", bench_opt.eps, "target approximation error");
  bench->add_option("--seed", bench_opt.seed, "root seed");
  bench->add_option("--scheduler", bench_sched, "seq | par");
  bench->add_option("--batch-size", bench_opt.batch_size, "group updates into batches");
  bench->add_option("--updates", bench_opt.updates, "mixed updates per cell (0 = m)");
  bench->add_flag("--json", bench_opt.json, "emit JSON rows instead of CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage message
    return 2;
  }

  if (gen->parsed()) {
    if (gen_dist == "uniform") gen_opt.params.dist = WeightDist::Uniform;
    else if (gen_dist == "pareto") gen_opt.params.dist = WeightDist::Pareto;
    else if (gen_dist == "constant") gen_opt.params.dist = WeightDist::Constant;
    else throw std::invalid_argument("unknown --dist '" + gen_dist + "'");
    return cmd_gen(gen_opt, std::cout);
  }
  if (run->parsed()) {
    if (run_empty_n >= 0) run_opt.empty_n = static_cast<std::uint32_t>(run_empty_n);
    if (run_max_m >= 0) run_opt.max_m = static_cast<std::uint64_t>(run_max_m);
    run_opt.eps = run_common.eps;
    run_opt.seed = run_common.seed;
    run_opt.c_lambda = run_common.c_lambda;
    run_opt.c = run_common.c;
    run_opt.lambda_override = run_common.lambda();
    run_opt.mstar_override = run_common.mstar();
    run_opt.scheduler = parse_scheduler(run_sched);
    return cmd_run(run_opt, std::cout);
  }
  if (verify->parsed()) {
    verify_opt.eps = verify_common.eps;
    verify_opt.seed = verify_common.seed;
    verify_opt.c_lambda = verify_common.c_lambda;
    verify_opt.c = verify_common.c;
    verify_opt.lambda_override = verify_common.lambda();
    verify_opt.mstar_override = verify_common.mstar();
    return cmd_verify(verify_opt, std::cout);
  }
  if (bench->parsed()) {
    for (const std::string& cell : bench_cells) {
      BenchCell bc;
      auto p1 = cell.find(':');
      if (p1 == std::string::npos) throw std::invalid_argument("cell must be n:m[:r]");
      auto p2 = cell.find(':', p1 + 1);
      bc.n = static_cast<std::uint32_t>(std::stoul(cell.substr(0, p1)));
      bc.m = std::stoull(cell.substr(p1 + 1, p2 == std::string::npos ? p2 : p2 - p1 - 1));
      if (p2 != std::string::npos)
        bc.r = static_cast<std::uint32_t>(std::stoul(cell.substr(p2 + 1)));
      bench_opt.cells.push_back(bc);
    }
    bench_opt.scheduler = parse_scheduler(bench_sched);
    return cmd_bench(bench_opt, std::cout);
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_main(argc, argv);
  } catch (const dhsparse::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
