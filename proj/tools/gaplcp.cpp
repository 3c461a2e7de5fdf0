// Command-line front end: solve, verify, enumerate, gen, bench.

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "gaplcp/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace gaplcp::cli;

  CLI::App app{"Solvers and certification tools for two-sided contact LCPs"};
  app.require_subcommand(1);

  SolveArgs solve;
  std::string solve_output;
  auto* s = app.add_subcommand("solve", "Solve a problem file and write a JSON report");
  s->add_option("--input", solve.input, "Problem file")->required();
  s->add_option("--solver", solve.solver, "lemke | pgs | cascade")->capture_default_str();
  s->add_option("--tol", solve.tol, "Validation tolerance")->capture_default_str();
  s->add_option("--output", solve_output, "Report path (stdout when omitted)");
  s->add_flag("--certify", solve.certify, "Attach the enumeration oracle's uniqueness verdict");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check a candidate solution against a problem file");
  v->add_option("--input", verify.input, "Problem file")->required();
  v->add_option("--solution", verify.solution, "Solution or report file with a \"z\" array")
      ->required();
  v->add_option("--tol", verify.tol, "Validation tolerance")->capture_default_str();

  EnumerateArgs enumerate;
  std::string enumerate_output;
  auto* e = app.add_subcommand("enumerate", "Enumerate every complementary support");
  e->add_option("--input", enumerate.input, "Problem file")->required();
  e->add_option("--tol", enumerate.tol, "Validation and deduplication tolerance")
      ->capture_default_str();
  e->add_option("--cap", enumerate.cap, "Largest dimension accepted")->capture_default_str();
  e->add_option("--output", enumerate_output, "Report path (stdout when omitted)");

  GenArgs gen;
  std::string gen_output;
  auto* g = app.add_subcommand("gen", "Generate a pseudo-random problem file");
  g->add_option("--kind", gen.kind, "general | contact | cascade | beam")->capture_default_str();
  g->add_option("--n", gen.n, "Dimension (largest block size for cascades)")->capture_default_str();
  g->add_option("--t", gen.t, "Number of cascade blocks")->capture_default_str();
  g->add_option("--seed", gen.seed, "64-bit seed")->capture_default_str();
  g->add_option("--output", gen_output, "Problem path (stdout when omitted)");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Time the solvers on generated contact problems (CSV)");
  b->add_option("--sizes", bench.sizes, "Problem sizes")->delimiter(',')->capture_default_str();
  b->add_option("--reps", bench.repetitions, "Repetitions per size")->capture_default_str();
  b->add_option("--seed", bench.seed, "Base seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return exit_code::kUsage;
  }

  if (!solve_output.empty()) solve.output = solve_output;
  if (!enumerate_output.empty()) enumerate.output = enumerate_output;
  if (!gen_output.empty()) gen.output = gen_output;

  if (s->parsed()) return cmd_solve(solve, std::cout, std::cerr);
  if (v->parsed()) return cmd_verify(verify, std::cout, std::cerr);
  if (e->parsed()) return cmd_enumerate(enumerate, std::cout, std::cerr);
  if (g->parsed()) return cmd_gen(gen, std::cout, std::cerr);
  if (b->parsed()) return cmd_bench(bench, std::cout, std::cerr);
  return exit_code::kUsage;
}
