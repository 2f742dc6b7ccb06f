#include "saddle/bench.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "saddle/dense.hpp"
#include "saddle/errors.hpp"
#include "saddle/problems.hpp"
#include "saddle/spectral.hpp"
#include "saddle/theorem2.hpp"

namespace saddle {

namespace {

constexpr Index kVerifyMaxOrder = 600;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

double parse_double(const std::string& v) {
  std::size_t used = 0;
  double d = std::stod(v, &used);
  if (used != v.size()) throw std::invalid_argument("not a number: " + v);
  return d;
}

long long parse_int(const std::string& v) {
  std::size_t used = 0;
  long long x = std::stoll(v, &used);
  if (used != v.size()) throw std::invalid_argument("not an integer: " + v);
  return x;
}

ProblemKind parse_problem(const std::string& v) {
  if (v == "example1") return ProblemKind::Example1;
  if (v == "example2") return ProblemKind::Example2;
  if (v == "random") return ProblemKind::Random;
  throw std::invalid_argument("unknown problem: " + v);
}

SolverKind parse_solver(const std::string& v) {
  if (v == "gmres") return SolverKind::Gmres;
  if (v == "fgmres") return SolverKind::Fgmres;
  throw std::invalid_argument("unknown solver: " + v);
}

PreconditionerKind parse_precond(const std::string& v) {
  for (auto k : {PreconditionerKind::Identity, PreconditionerKind::NewM, PreconditionerKind::BD1,
                 PreconditionerKind::BD2, PreconditionerKind::P1, PreconditionerKind::P2,
                 PreconditionerKind::P3}) {
    if (v == to_string(k)) return k;
  }
  if (v == "none") return PreconditionerKind::Identity;
  throw std::invalid_argument("unknown preconditioner: " + v);
}

InnerMode parse_inner(const std::string& v) {
  if (v == "cg") return InnerMode::InexactCG;
  if (v == "cholesky" || v == "exact") return InnerMode::ExactCholesky;
  throw std::invalid_argument("unknown inner mode: " + v);
}

void apply_key(ExperimentSpec& e, const std::string& key, const std::string& value) {
  if (key == "label") {
    e.label = value;
  } else if (key == "problem") {
    e.problem.kind = parse_problem(value);
  } else if (key == "p") {
    e.problem.p = static_cast<int>(parse_int(value));
  } else if (key == "n") {
    e.problem.n = static_cast<Index>(parse_int(value));
  } else if (key == "m") {
    e.problem.m = static_cast<Index>(parse_int(value));
  } else if (key == "l") {
    e.problem.l = static_cast<Index>(parse_int(value));
  } else if (key == "seed") {
    e.problem.seed = static_cast<std::uint64_t>(parse_int(value));
  } else if (key == "solver") {
    e.solver = parse_solver(value);
  } else if (key == "precond") {
    e.precond = parse_precond(value);
  } else if (key == "alpha") {
    PreconditionerParams p = e.params.value_or(default_params(e.problem.kind));
    p.alpha = parse_double(value);
    e.params = p;
  } else if (key == "beta") {
    PreconditionerParams p = e.params.value_or(default_params(e.problem.kind));
    p.beta = parse_double(value);
    e.params = p;
  } else if (key == "inner") {
    e.inner = parse_inner(value);
  } else if (key == "tol") {
    e.tol = parse_double(value);
  } else if (key == "maxit") {
    e.maxit = static_cast<int>(parse_int(value));
  } else if (key == "time_budget") {
    if (value == "none") {
      e.time_budget_seconds.reset();
    } else {
      e.time_budget_seconds = parse_double(value);
    }
  } else {
    throw std::invalid_argument("unknown key: " + key);
  }
}

std::vector<double> random_unit_vector(std::size_t size, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  std::vector<double> v(size);
  double nv = 0.0;
  while (nv == 0.0) {
    for (double& x : v) x = dist(rng);
    nv = norm2(v);
  }
  for (double& x : v) x /= nv;
  return v;
}

}  // namespace

SaddlePointSystem build_problem(const ProblemSpec& spec) {
  switch (spec.kind) {
    case ProblemKind::Example1: return gen_example1(spec.p);
    case ProblemKind::Example2: return gen_example2(spec.p);
    case ProblemKind::Random: return gen_random_small(spec.n, spec.m, spec.l, spec.seed);
  }
  throw std::invalid_argument("build_problem: unknown problem");
}

std::string describe(const ProblemSpec& spec) {
  switch (spec.kind) {
    case ProblemKind::Example1: return "example1 p=" + std::to_string(spec.p);
    case ProblemKind::Example2: return "example2 p=" + std::to_string(spec.p);
    case ProblemKind::Random:
      return "random (" + std::to_string(spec.n) + "," + std::to_string(spec.m) + "," +
             std::to_string(spec.l) + ") seed=" + std::to_string(spec.seed);
  }
  return "unknown";
}

PreconditionerParams default_params(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Example1: return {1e-3, 1.0};
    case ProblemKind::Example2: return {0.1, 1.0};
    case ProblemKind::Random: return {1.0, 1.0};
  }
  return {1.0, 1.0};
}

std::string default_label(const ExperimentSpec& spec) {
  std::string out = describe(spec.problem) + " " +
                    (spec.solver == SolverKind::Gmres ? "gmres" : "fgmres") + " " +
                    std::string(to_string(spec.precond));
  if (spec.precond == PreconditionerKind::NewM) {
    PreconditionerParams p = spec.params.value_or(default_params(spec.problem.kind));
    out += "(" + sci(p.alpha) + "," + sci(p.beta) + ")";
  }
  if (spec.precond != PreconditionerKind::Identity) {
    InnerMode mode = spec.inner.value_or(spec.solver == SolverKind::Fgmres ? InnerMode::InexactCG
                                                                           : InnerMode::ExactCholesky);
    out += " " + std::string(to_string(mode));
  }
  return out;
}

ExperimentOutcome run_experiment(const ExperimentSpec& spec) {
  ExperimentOutcome out;
  TableRow& row = out.row;
  row.label = spec.label.empty() ? default_label(spec) : spec.label;
  try {
    const SaddlePointSystem s = build_problem(spec.problem);
    const InnerMode mode = spec.inner.value_or(
        spec.solver == SolverKind::Fgmres ? InnerMode::InexactCG : InnerMode::ExactCholesky);
    std::optional<PreconditionerParams> params;
    if (spec.precond == PreconditionerKind::NewM) {
      params = spec.params.value_or(default_params(spec.problem.kind));
    }
    const PreconditionerInstance prec = build_preconditioner(s, spec.precond, params, mode);
    const LinearOperator op = [&s](std::span<const double> in, std::span<double> o) {
      apply_operator(s, in, o);
    };
    const LinearOperator m_inv = prec.as_operator();
    const LinearOperator* pm = spec.precond == PreconditionerKind::Identity ? nullptr : &m_inv;

    IterationConfig cfg;
    cfg.tol = spec.tol;
    cfg.maxit = spec.maxit;
    cfg.time_budget_seconds = spec.time_budget_seconds;
    const BlockVector b = s.rhs();
    SolveResult res = spec.solver == SolverKind::Gmres ? gmres_solve(op, b.flat(), pm, cfg)
                                                       : fgmres_solve(op, b.flat(), pm, cfg);
    res.report.setup_seconds = prec.setup_seconds();

    BlockVector u(s.n(), s.m(), s.l());
    std::copy(res.x.begin(), res.x.end(), u.flat().begin());
    const BlockVector u_star = ones_solution(s);
    const SolveMetrics metrics = residual_metrics(s, u, &u_star);
    res.report.relative_error = metrics.relative_error;

    row.iters = res.report.iterations;
    row.prec_cpu = res.report.setup_seconds;
    row.cpu = res.report.solve_seconds;
    row.total_cpu = row.prec_cpu + row.cpu;
    row.r_k = metrics.relative_residual;
    row.e_k = metrics.relative_error.value_or(0.0);
    row.status = std::string(to_string(res.report.status));
    switch (res.report.status) {
      case SolveStatus::Converged: row.iters_text = std::to_string(row.iters); break;
      case SolveStatus::MaxIterations: row.iters_text = "‡"; break;
      case SolveStatus::TimeLimit: row.iters_text = "†"; break;
      default: row.iters_text = row.status; break;
    }
    out.inner_iterations = prec.inner_iterations();
    out.report = std::move(res.report);
  } catch (const std::exception& e) {
    row.status = std::string("error: ") + e.what();
    row.iters_text = "-";
  }
  return out;
}

std::vector<ExperimentSpec> parse_suite(std::istream& in) {
  std::vector<ExperimentSpec> out;
  ExperimentSpec defaults;
  ExperimentSpec* current = nullptr;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line == "[experiment]") {
      out.push_back(defaults);
      current = &out.back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("suite line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      apply_key(current != nullptr ? *current : defaults, key, value);
    } catch (const std::exception& e) {
      throw std::invalid_argument("suite line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<TableRow> run_suite(const std::vector<ExperimentSpec>& specs, bool parallel) {
  std::vector<TableRow> rows;
  rows.reserve(specs.size());
  if (!parallel) {
    for (const auto& spec : specs) rows.push_back(run_experiment(spec).row);
    return rows;
  }
  std::vector<std::future<ExperimentOutcome>> jobs;
  for (const auto& spec : specs) {
    jobs.push_back(std::async(std::launch::async, [&spec] { return run_experiment(spec); }));
  }
  for (auto& j : jobs) rows.push_back(j.get().row);
  return rows;
}

void write_csv(std::ostream& out, const std::vector<TableRow>& rows) {
  out << "label,iters,prec_cpu,cpu,total_cpu,r_k,e_k,status\n";
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  for (const auto& r : rows) {
    out << quote(r.label) << ',' << quote(r.iters_text) << ',' << r.prec_cpu << ',' << r.cpu << ','
        << r.total_cpu << ',' << r.r_k << ',' << r.e_k << ',' << quote(r.status) << '\n';
  }
}

void write_markdown(std::ostream& out, const std::vector<TableRow>& rows) {
  out << "| Experiment | Iters | Prec.CPU | CPU | Total.CPU | R_k | E_k | Status |\n"
      << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    if (r.failed()) {
      out << "| " << r.label << " | - | - | - | - | - | - | " << r.status << " |\n";
      continue;
    }
    out << "| " << r.label << " | " << r.iters_text << " | " << fixed2(r.prec_cpu) << " | "
        << fixed2(r.cpu) << " | " << fixed2(r.total_cpu) << " | " << sci(r.r_k) << " | "
        << sci(r.e_k) << " | " << r.status << " |\n";
  }
}

nlohmann::json run_verify(const VerifySpec& spec) {
  const SaddlePointSystem s = build_problem(spec.problem);
  if (s.order() > kVerifyMaxOrder) {
    throw DimensionError("verify: order " + std::to_string(s.order()) + " exceeds " +
                         std::to_string(kVerifyMaxOrder));
  }
  const ExtremeSpectra spectra = estimate_spectra(s);
  PreconditionerParams params;
  switch (spec.choice) {
    case ParamChoice::Manual: params = spec.params.value_or(default_params(spec.problem.kind)); break;
    case ParamChoice::CaseI: params = suggest_parameters(spectra, ClusterCase::I); break;
    case ParamChoice::CaseII: params = suggest_parameters(spectra, ClusterCase::II); break;
  }

  const Theorem2Report t2 = verify_theorem2(s, params, spec.tol);
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& c : t2.pairs) {
    nlohmann::json j = {{"re", c.lambda.real()}, {"im", c.lambda.imag()}, {"y_norm", c.y_norm}};
    if (c.checked) {
      j["p"] = c.p;
      j["q"] = c.q;
      j["cubic_residual"] = c.cubic_residual;
      j["cubic_ok"] = c.cubic_ok;
      j["distance_to_one"] = c.distance_to_one;
      j["bound_lower"] = c.bounds.lower;
      j["bound_upper"] = c.bounds.upper;
      j["case"] = c.bounds.which == ClusterCase::I ? "I" : "II";
      j["in_bounds"] = c.in_bounds;
    }
    pairs.push_back(std::move(j));
  }

  const PqInterval interval = pq_sum_interval(spectra, params);
  const double widen = 1e-6 * std::max(std::abs(interval.lo), std::abs(interval.hi));
  PqEvaluator pq(s, params);
  std::mt19937_64 rng(spec.sample_seed);
  double smin = INFINITY, smax = -INFINITY;
  for (int k = 0; k < spec.samples; ++k) {
    std::vector<double> y = random_unit_vector(static_cast<std::size_t>(s.m()), rng);
    auto [p, q] = pq(y);
    smin = std::min(smin, p + q);
    smax = std::max(smax, p + q);
  }
  const bool within = spec.samples == 0 ||
                      (smin >= interval.lo - widen && smax <= interval.hi + widen);

  nlohmann::json report = {
      {"problem", describe(spec.problem)},
      {"n", s.n()},
      {"m", s.m()},
      {"l", s.l()},
      {"alpha", params.alpha},
      {"beta", params.beta},
      {"unit_eigenvalue_count", t2.eigen.unit_eigenvalue_count},
      {"expected_unit_count", t2.expected_unit_count},
      {"unit_count_ok", t2.unit_count_ok},
      {"null_space_dimension", t2.null_space_dimension},
      {"max_null_residual", t2.max_null_residual},
      {"null_vectors_ok", t2.null_vectors_ok},
      {"cubic_ok", t2.cubic_ok},
      {"bounds_ok", t2.bounds_ok},
      {"eigenpairs", pairs},
      {"pq_interval", {{"lo", interval.lo}, {"hi", interval.hi}}},
      {"sampled_pq", {{"samples", spec.samples}, {"min", smin}, {"max", smax}, {"within_interval", within}}},
  };
  bool ok = t2.all_ok() && within;
  if (spec.choice != ParamChoice::Manual) {
    const bool case_ok = spec.choice == ParamChoice::CaseI ? smin > 1.0 : smax <= 1.0;
    report["parameter_case"] = spec.choice == ParamChoice::CaseI ? "I" : "II";
    report["case_condition_ok"] = case_ok;
    ok = ok && case_ok;
  }
  report["all_ok"] = ok;
  return report;
}

}  // namespace saddle
