#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "saddle/krylov.hpp"
#include "saddle/polynomial.hpp"
#include "saddle/preconditioners.hpp"
#include "saddle/system.hpp"

namespace saddle {

enum class ProblemKind { Example1, Example2, Random };
enum class SolverKind { Gmres, Fgmres };

struct ProblemSpec {
  ProblemKind kind = ProblemKind::Example1;
  int p = 16;
  Index n = 6, m = 3, l = 2;  // Random only
  std::uint64_t seed = 1;     // Random only
};

SaddlePointSystem build_problem(const ProblemSpec& spec);
std::string describe(const ProblemSpec& spec);

/// alpha = 1e-3 for example1, 0.1 for example2, 1 otherwise; beta = 1.
PreconditionerParams default_params(ProblemKind kind);

struct ExperimentSpec {
  std::string label;  ///< empty: generated from the other fields
  ProblemSpec problem;
  SolverKind solver = SolverKind::Fgmres;
  PreconditionerKind precond = PreconditionerKind::Identity;
  std::optional<PreconditionerParams> params;  ///< NewM only; default_params when absent
  std::optional<InnerMode> inner;  ///< default: CG for FGMRES, Cholesky for GMRES
  double tol = 1e-6;
  int maxit = 1000;
  std::optional<double> time_budget_seconds = 1000.0;
};

std::string default_label(const ExperimentSpec& spec);

struct TableRow {
  std::string label;
  int iters = 0;
  /// Iteration count, or a marker when the run did not converge:
  /// "‡" iteration cap, "†" time budget, otherwise the status name.
  std::string iters_text;
  double prec_cpu = 0.0;
  double cpu = 0.0;
  double total_cpu = 0.0;
  double r_k = 0.0;
  double e_k = 0.0;
  std::string status;  ///< to_string(SolveStatus) or "error: ..."
  bool converged() const { return status == "converged"; }
  bool failed() const { return status.rfind("error", 0) == 0; }
};

struct ExperimentOutcome {
  TableRow row;
  SolveReport report;
  long inner_iterations = 0;
};

/// Builds the problem and preconditioner, solves from a zero guess and
/// measures R_k and E_k against the all-ones solution. Exceptions become an
/// "error: ..." status.
ExperimentOutcome run_experiment(const ExperimentSpec& spec);

/// Flat key = value suite format; see README. Throws std::invalid_argument
/// with the offending line number.
std::vector<ExperimentSpec> parse_suite(std::istream& in);

/// Runs experiments in order. With parallel = true each experiment runs on its
/// own thread (timings then contend for cores).
std::vector<TableRow> run_suite(const std::vector<ExperimentSpec>& specs, bool parallel = false);

void write_csv(std::ostream& out, const std::vector<TableRow>& rows);
void write_markdown(std::ostream& out, const std::vector<TableRow>& rows);

enum class ParamChoice { Manual, CaseI, CaseII };

struct VerifySpec {
  ProblemSpec problem;
  ParamChoice choice = ParamChoice::Manual;
  std::optional<PreconditionerParams> params;  ///< Manual; default_params when absent
  int samples = 500;
  std::uint64_t sample_seed = 7;
  double tol = 1e-6;
};

/// Eigen-structure report for M^{-1}A plus sampled p + q against the interval.
/// Problems above order 600 are rejected.
nlohmann::json run_verify(const VerifySpec& spec);

}  // namespace saddle
