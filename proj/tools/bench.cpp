// bench: run the saddle-point experiments, verify spectral claims on small
// instances, and export generated systems.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "saddle/bench.hpp"
#include "saddle/system_io.hpp"

namespace {

using namespace saddle;

const std::map<std::string, ProblemKind> kProblems = {
    {"example1", ProblemKind::Example1}, {"example2", ProblemKind::Example2},
    {"random", ProblemKind::Random}};

void add_problem_options(CLI::App* cmd, ProblemSpec& spec) {
  cmd->add_option("--problem", spec.kind, "example1 | example2 | random")
      ->transform(CLI::CheckedTransformer(kProblems, CLI::ignore_case));
  cmd->add_option("--p", spec.p, "grid parameter of example1/example2");
  cmd->add_option("--n", spec.n, "random: size of the first block");
  cmd->add_option("--m", spec.m, "random: size of the second block");
  cmd->add_option("--l", spec.l, "random: size of the third block");
  cmd->add_option("--seed", spec.seed, "random: generator seed");
}

int exit_code(const std::vector<TableRow>& rows) {
  bool dnc = false;
  for (const auto& r : rows) {
    if (r.failed()) return 2;
    if (!r.converged()) dnc = true;
  }
  return dnc ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block saddle-point preconditioner benchmarks"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run one experiment or a suite file");
  std::string config;
  ExperimentSpec exp;
  std::string precond = "identity", solver = "fgmres", inner;
  std::optional<double> alpha, beta;
  double budget = 1000.0;
  std::string csv_out, md_out;
  bool parallel = false;
  run->add_option("--config", config, "suite file (key = value, [experiment] sections)")
      ->check(CLI::ExistingFile);
  add_problem_options(run, exp.problem);
  run->add_option("--precond", precond, "identity | m | bd1 | bd2 | p1 | p2 | p3");
  run->add_option("--alpha", alpha, "M parameter alpha");
  run->add_option("--beta", beta, "M parameter beta");
  run->add_option("--solver", solver, "gmres | fgmres");
  run->add_option("--inner", inner, "cg | cholesky (default: cg for fgmres, cholesky for gmres)");
  run->add_option("--tol", exp.tol, "relative residual target");
  run->add_option("--maxit", exp.maxit, "iteration cap");
  run->add_option("--time-budget", budget, "wall-clock cap per solve in seconds");
  run->add_option("--csv", csv_out, "also write the table as CSV");
  run->add_option("--markdown", md_out, "also write the table as Markdown");
  run->add_flag("--parallel", parallel,
                "run suite experiments on separate threads (CPU columns become unreliable)");

  // verify
  auto* verify = app.add_subcommand("verify", "check the eigen-structure of M^{-1}A (order <= 600)");
  VerifySpec vspec;
  vspec.problem.p = 2;
  std::string choice = "manual";
  std::optional<double> valpha, vbeta;
  std::string verify_out;
  add_problem_options(verify, vspec.problem);
  verify->add_option("--params", choice, "manual | case1 | case2 (parameter choice)");
  verify->add_option("--alpha", valpha, "alpha for manual parameters");
  verify->add_option("--beta", vbeta, "beta for manual parameters");
  verify->add_option("--samples", vspec.samples, "random y samples for p + q");
  verify->add_option("--tol", vspec.tol, "eigenvalue-1 tolerance");
  verify->add_option("--out", verify_out, "write the JSON report here instead of stdout");

  // export
  auto* exp_cmd = app.add_subcommand("export", "write a generated system in Matrix Market form");
  ProblemSpec xspec;
  xspec.p = 4;
  std::string out_dir;
  add_problem_options(exp_cmd, xspec);
  exp_cmd->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      std::vector<ExperimentSpec> specs;
      if (!config.empty()) {
        std::ifstream in(config);
        specs = parse_suite(in);
      } else {
        exp.precond = PreconditionerKind::Identity;
        std::istringstream one("[experiment]\nprecond = " + precond + "\nsolver = " + solver +
                               (inner.empty() ? "" : "\ninner = " + inner) + "\n");
        ExperimentSpec parsed = parse_suite(one).at(0);
        exp.precond = parsed.precond;
        exp.solver = parsed.solver;
        exp.inner = parsed.inner;
        if (alpha || beta) {
          PreconditionerParams p = default_params(exp.problem.kind);
          if (alpha) p.alpha = *alpha;
          if (beta) p.beta = *beta;
          exp.params = p;
        }
        exp.time_budget_seconds = budget;
        specs.push_back(exp);
      }
      if (parallel) std::cerr << "warning: parallel run, CPU columns are not comparable\n";
      std::vector<TableRow> rows = run_suite(specs, parallel);
      write_markdown(std::cout, rows);
      if (!csv_out.empty()) {
        std::ofstream f(csv_out);
        write_csv(f, rows);
      }
      if (!md_out.empty()) {
        std::ofstream f(md_out);
        write_markdown(f, rows);
      }
      for (const auto& r : rows) {
        if (r.failed()) std::cerr << r.label << ": " << r.status << '\n';
      }
      return exit_code(rows);
    }

    if (*verify) {
      if (choice == "manual") {
        vspec.choice = ParamChoice::Manual;
        if (valpha || vbeta) {
          PreconditionerParams p = default_params(vspec.problem.kind);
          if (valpha) p.alpha = *valpha;
          if (vbeta) p.beta = *vbeta;
          vspec.params = p;
        }
      } else if (choice == "case1") {
        vspec.choice = ParamChoice::CaseI;
      } else if (choice == "case2") {
        vspec.choice = ParamChoice::CaseII;
      } else {
        std::cerr << "unknown --params value: " << choice << '\n';
        return 2;
      }
      nlohmann::json report = run_verify(vspec);
      if (verify_out.empty()) {
        std::cout << report.dump(2) << '\n';
      } else {
        std::ofstream(verify_out) << report.dump(2) << '\n';
      }
      return report["all_ok"].get<bool>() ? 0 : 1;
    }

    if (*exp_cmd) {
      write_system(out_dir, build_problem(xspec));
      std::cout << "wrote " << describe(xspec) << " to " << out_dir << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
