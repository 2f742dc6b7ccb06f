#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "oracles.hpp"
#include "saddle/bench.hpp"
#include "saddle/problems.hpp"

using namespace saddle;

TEST(ParseSuite, EmptyConfig) {
  std::istringstream in("# nothing here\n\n");
  EXPECT_TRUE(parse_suite(in).empty());
  std::ostringstream csv;
  write_csv(csv, {});
  EXPECT_EQ(csv.str(), "label,iters,prec_cpu,cpu,total_cpu,r_k,e_k,status\n");
}

TEST(ParseSuite, DefaultsAndOverrides) {
  std::istringstream in(
      "problem = example2\n"
      "p = 4\n"
      "tol = 1e-8\n"
      "[experiment]\n"
      "label = first\n"
      "precond = m\n"
      "alpha = 0.5   # trailing comment\n"
      "[experiment]\n"
      "solver = gmres\n"
      "precond = bd2\n"
      "inner = cholesky\n"
      "time_budget = none\n");
  auto specs = parse_suite(in);
  ASSERT_EQ(specs.size(), 2u);
  EXPECT_EQ(specs[0].label, "first");
  EXPECT_EQ(specs[0].problem.kind, ProblemKind::Example2);
  EXPECT_EQ(specs[0].problem.p, 4);
  EXPECT_EQ(specs[0].tol, 1e-8);
  EXPECT_EQ(specs[0].precond, PreconditionerKind::NewM);
  ASSERT_TRUE(specs[0].params.has_value());
  EXPECT_EQ(specs[0].params->alpha, 0.5);
  EXPECT_EQ(specs[0].params->beta, 1.0);
  EXPECT_EQ(specs[1].solver, SolverKind::Gmres);
  EXPECT_EQ(specs[1].precond, PreconditionerKind::BD2);
  EXPECT_EQ(specs[1].inner, InnerMode::ExactCholesky);
  EXPECT_FALSE(specs[1].time_budget_seconds.has_value());
  EXPECT_EQ(specs[1].problem.p, 4);
  EXPECT_TRUE(specs[1].label.empty());
}

TEST(ParseSuite, ErrorsCarryLineNumbers) {
  std::istringstream unknown("[experiment]\ncolour = blue\n");
  try {
    parse_suite(unknown);
    FAIL() << "expected invalid_argument";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  std::istringstream no_eq("[experiment]\nprecond m\n");
  EXPECT_THROW(parse_suite(no_eq), std::invalid_argument);
  std::istringstream bad_int("p = 4x\n");
  EXPECT_THROW(parse_suite(bad_int), std::invalid_argument);
  std::istringstream bad_kind("precond = p4\n");
  EXPECT_THROW(parse_suite(bad_kind), std::invalid_argument);
}

TEST(RunExperiment, RandomExactMMatchesDenseSolve) {
  ExperimentSpec spec;
  spec.problem.kind = ProblemKind::Random;
  spec.problem.n = 6, spec.problem.m = 3, spec.problem.l = 2, spec.problem.seed = 42;
  spec.solver = SolverKind::Gmres;
  spec.precond = PreconditionerKind::NewM;
  spec.tol = 1e-10;
  ExperimentOutcome out = run_experiment(spec);
  ASSERT_TRUE(out.row.converged()) << out.row.status;
  EXPECT_LE(out.row.r_k, 1e-10);
  // The dense solution is the all-ones vector by construction.
  SaddlePointSystem s = build_problem(spec.problem);
  BlockVector b = s.rhs();
  auto u = oracle::lu_solve(assemble_monolithic(s).to_dense(),
                            std::vector<double>(b.flat().begin(), b.flat().end()));
  for (double v : u) EXPECT_NEAR(v, 1.0, 1e-12);
  EXPECT_LE(out.row.e_k, 1e-8);
  EXPECT_EQ(out.row.iters_text, std::to_string(out.row.iters));
  EXPECT_DOUBLE_EQ(out.row.total_cpu, out.row.prec_cpu + out.row.cpu);
}

TEST(RunExperiment, MarkersForUnconvergedRuns) {
  ExperimentSpec spec;
  spec.problem.p = 6;
  spec.maxit = 3;
  ExperimentOutcome capped = run_experiment(spec);
  EXPECT_EQ(capped.row.iters_text, "‡");
  EXPECT_FALSE(capped.row.converged());
  EXPECT_FALSE(capped.row.failed());

  spec.maxit = 1000;
  spec.time_budget_seconds = 0.0;
  EXPECT_EQ(run_experiment(spec).row.iters_text, "†");
}

TEST(RunExperiment, ErrorsBecomeRows) {
  ExperimentSpec spec;
  spec.problem.p = 3;
  spec.precond = PreconditionerKind::BD1;
  spec.inner = InnerMode::InexactCG;
  ExperimentOutcome out = run_experiment(spec);
  EXPECT_TRUE(out.row.failed());
  EXPECT_NE(out.row.status.find("exact"), std::string::npos);
}

TEST(RunSuite, StableOrderAndTables) {
  std::istringstream in(
      "problem = example1\n"
      "p = 4\n"
      "[experiment]\n"
      "label = plain\n"
      "[experiment]\n"
      "label = with-m\n"
      "precond = m\n");
  auto specs = parse_suite(in);
  for (bool parallel : {false, true}) {
    auto rows = run_suite(specs, parallel);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].label, "plain");
    EXPECT_EQ(rows[1].label, "with-m");
    EXPECT_TRUE(rows[0].converged());
    EXPECT_TRUE(rows[1].converged());
    EXPECT_LT(rows[1].iters, rows[0].iters);

    std::ostringstream csv, md;
    write_csv(csv, rows);
    write_markdown(md, rows);
    const std::string text = csv.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
    EXPECT_EQ(md.str().rfind("| Experiment | Iters |", 0), 0u);
    EXPECT_NE(md.str().find("| with-m |"), std::string::npos);
  }
}

TEST(DefaultLabel, DescribesTheRun) {
  ExperimentSpec spec;
  spec.problem.p = 8;
  spec.precond = PreconditionerKind::NewM;
  std::string label = default_label(spec);
  EXPECT_NE(label.find("example1 p=8"), std::string::npos);
  EXPECT_NE(label.find("fgmres"), std::string::npos);
  EXPECT_NE(label.find("cg"), std::string::npos);
}

TEST(RunVerify, Example1UnitCount) {
  VerifySpec v;
  v.problem.p = 2;
  v.samples = 50;
  nlohmann::json r = run_verify(v);
  EXPECT_EQ(r["unit_eigenvalue_count"], 4);
  EXPECT_TRUE(r["unit_count_ok"].get<bool>());
  EXPECT_TRUE(r["all_ok"].get<bool>());
  EXPECT_EQ(r["eigenpairs"].size(), 16u);
}

TEST(RunVerify, RandomBoundsFlags) {
  VerifySpec v;
  v.problem.kind = ProblemKind::Random;
  v.problem.n = 6, v.problem.m = 3, v.problem.l = 2, v.problem.seed = 42;
  nlohmann::json r = run_verify(v);
  EXPECT_TRUE(r["cubic_ok"].get<bool>());
  EXPECT_TRUE(r["bounds_ok"].get<bool>());
  for (const auto& pair : r["eigenpairs"])
    if (pair.contains("in_bounds")) EXPECT_TRUE(pair["in_bounds"].get<bool>());
}

TEST(RunVerify, CaseTwoParametersKeepPqAtMostOne) {
  VerifySpec v;
  v.problem.p = 3;
  v.choice = ParamChoice::CaseII;
  nlohmann::json r = run_verify(v);
  EXPECT_EQ(r["parameter_case"], "II");
  EXPECT_TRUE(r["case_condition_ok"].get<bool>());
  EXPECT_LE(r["sampled_pq"]["max"].get<double>(), 1.0);
  EXPECT_TRUE(r["sampled_pq"]["within_interval"].get<bool>());
}

TEST(RunVerify, RejectsLargeProblems) {
  VerifySpec v;
  v.problem.p = 16;
  EXPECT_THROW(run_verify(v), std::invalid_argument);
}
