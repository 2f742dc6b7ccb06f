#include "saddle/preconditioners.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <string>

#include "saddle/cholesky.hpp"
#include "saddle/dense.hpp"
#include "saddle/errors.hpp"

namespace saddle {

std::string_view to_string(PreconditionerKind kind) {
  switch (kind) {
    case PreconditionerKind::Identity: return "identity";
    case PreconditionerKind::NewM: return "m";
    case PreconditionerKind::BD1: return "bd1";
    case PreconditionerKind::BD2: return "bd2";
    case PreconditionerKind::P1: return "p1";
    case PreconditionerKind::P2: return "p2";
    case PreconditionerKind::P3: return "p3";
  }
  return "unknown";
}

std::string_view to_string(InnerMode mode) {
  return mode == InnerMode::ExactCholesky ? "cholesky" : "cg";
}

namespace {

using Clock = std::chrono::steady_clock;

// Largest third block that is formed densely in exact mode.
constexpr Index kDenseComplementLimit = CholeskyFactor::kDenseThreshold;
// Tolerance used when an "exact" solve has to go through CG.
constexpr double kExactCgTol = 1e-10;

// Solves with one SPD diagonal block of a preconditioner.
class BlockSolver {
 public:
  virtual ~BlockSolver() = default;
  virtual void solve(std::span<const double> r, std::span<double> z,
                     std::atomic<long>& inner_iters) const = 0;
};

class CholeskySolver final : public BlockSolver {
 public:
  explicit CholeskySolver(const CsrMatrix& m) : factor_(m) {}
  explicit CholeskySolver(const DenseMatrix& m) : factor_(CsrMatrix::from_dense(m)) {}
  void solve(std::span<const double> r, std::span<double> z, std::atomic<long>&) const override {
    std::copy(r.begin(), r.end(), z.begin());
    factor_.solve_in_place(z);
  }
  const CholeskyFactor& factor() const { return factor_; }

 private:
  CholeskyFactor factor_;
};

class DiagonalSolver final : public BlockSolver {
 public:
  explicit DiagonalSolver(std::vector<double> d) : d_(std::move(d)) {
    for (double v : d_) {
      if (!(v > 0.0)) throw NotPositiveDefiniteError("diagonal block has a nonpositive entry");
    }
  }
  void solve(std::span<const double> r, std::span<double> z, std::atomic<long>&) const override {
    for (std::size_t i = 0; i < d_.size(); ++i) z[i] = r[i] / d_[i];
  }

 private:
  std::vector<double> d_;
};

// CG on an SPD operator; a breakdown or non-finite output is an inner failure.
class CgSolver final : public BlockSolver {
 public:
  CgSolver(LinearOperator op, double tol, int maxit) : op_(std::move(op)) {
    cfg_.tol = tol;
    cfg_.maxit = maxit;
    cfg_.record_history = false;
  }
  void solve(std::span<const double> r, std::span<double> z,
             std::atomic<long>& inner_iters) const override {
    SolveResult res = cg_solve(op_, r, cfg_);
    inner_iters += res.report.iterations;
    if (res.report.status == SolveStatus::Breakdown) {
      throw InnerSolveError("inner CG broke down (operator not positive definite)");
    }
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (!std::isfinite(res.x[i])) throw InnerSolveError("inner CG produced non-finite values");
      z[i] = res.x[i];
    }
  }

 private:
  LinearOperator op_;
  IterationConfig cfg_;
};

LinearOperator csr_operator(std::shared_ptr<const CsrMatrix> m) {
  return [m](std::span<const double> in, std::span<double> out) { m->multiply(in, out); };
}

std::unique_ptr<BlockSolver> make_spd_solver(CsrMatrix m, InnerMode mode, InnerSolveRule rule) {
  if (mode == InnerMode::ExactCholesky) return std::make_unique<CholeskySolver>(m);
  if (!m.is_symmetric(1e-12)) throw NotSymmetricError("inner CG block is not symmetric");
  auto shared = std::make_shared<const CsrMatrix>(std::move(m));
  return std::make_unique<CgSolver>(csr_operator(shared), rule.tol, rule.maxit);
}

// Columns of K^{-1} W^T for a sparse W, assembled as the dense product W K^{-1} W^T.
DenseMatrix dense_congruence(const CsrMatrix& w, const CholeskyFactor& k) {
  const auto rows = static_cast<std::size_t>(w.rows());
  const auto inner = static_cast<std::size_t>(w.cols());
  DenseMatrix out(rows, rows);
  auto off = w.row_offsets();
  auto col = w.col_indices();
  auto val = w.values();
  std::vector<double> t(inner), prod(rows);
  for (std::size_t j = 0; j < rows; ++j) {
    std::fill(t.begin(), t.end(), 0.0);
    for (Index p = off[j]; p < off[j + 1]; ++p) t[col[p]] = val[p];
    k.solve_in_place(t);
    w.multiply(t, prod);
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = prod[i];
  }
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = i + 1; j < rows; ++j) {
      double avg = 0.5 * (out(i, j) + out(j, i));
      out(i, j) = avg;
      out(j, i) = avg;
    }
  }
  return out;
}

// Solver for X = C S~^{-1} C^T where S~ has Cholesky factor `inner`.
std::unique_ptr<BlockSolver> make_complement_solver(const CsrMatrix& c,
                                                   std::shared_ptr<const CholeskySolver> inner,
                                                   InnerMode mode, InnerSolveRule rule) {
  if (mode == InnerMode::ExactCholesky && c.rows() <= kDenseComplementLimit) {
    return std::make_unique<CholeskySolver>(dense_congruence(c, inner->factor()));
  }
  auto cm = std::make_shared<const CsrMatrix>(c);
  LinearOperator op = [cm, inner](std::span<const double> in, std::span<double> out) {
    std::vector<double> t(static_cast<std::size_t>(cm->cols()), 0.0);
    cm->multiply_transpose_add(in, t);
    inner->factor().solve_in_place(t);
    cm->multiply(t, out);
  };
  if (mode == InnerMode::ExactCholesky) {
    return std::make_unique<CgSolver>(std::move(op), kExactCgTol, std::max<int>(10 * c.rows(), 1000));
  }
  return std::make_unique<CgSolver>(std::move(op), rule.tol, rule.maxit);
}

// S^ = B diag(A)^{-1} B^T
CsrMatrix approximate_schur(const SaddlePointSystem& s) {
  std::vector<double> inv = s.a().diagonal();
  for (double& v : inv) {
    if (!(v > 0.0)) throw NotPositiveDefiniteError("diag(A) has a nonpositive entry");
    v = 1.0 / v;
  }
  return multiply(scale_columns(s.b(), inv), transpose(s.b()));
}

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

struct PreconditionerInstance::Impl {
  PreconditionerKind kind = PreconditionerKind::Identity;
  InnerMode mode = InnerMode::ExactCholesky;
  std::optional<PreconditionerParams> params;
  double setup_seconds = 0.0;
  mutable std::atomic<long> inner_iters{0};
  Index n = 0, m = 0, l = 0;
  // Kept for the coupling terms of P1-P3.
  CsrMatrix b, c;
  std::shared_ptr<const BlockSolver> block1, block2, block3;

  void apply(std::span<const double> r, std::span<double> z) const;
};

void PreconditionerInstance::Impl::apply(std::span<const double> r, std::span<double> z) const {
  const auto nn = static_cast<std::size_t>(n);
  const auto mm = static_cast<std::size_t>(m);
  const auto ll = static_cast<std::size_t>(l);
  if (r.size() != nn + mm + ll || z.size() != r.size()) {
    throw DimensionError("preconditioner: vector does not conform to the system");
  }
  if (kind == PreconditionerKind::Identity) {
    std::copy(r.begin(), r.end(), z.begin());
    return;
  }
  auto r1 = r.subspan(0, nn), r2 = r.subspan(nn, mm), r3 = r.subspan(nn + mm, ll);
  auto z1 = z.subspan(0, nn), z2 = z.subspan(nn, mm), z3 = z.subspan(nn + mm, ll);

  switch (kind) {
    case PreconditionerKind::NewM:
    case PreconditionerKind::BD1:
    case PreconditionerKind::BD2:
      block1->solve(r1, z1, inner_iters);
      block2->solve(r2, z2, inner_iters);
      block3->solve(r3, z3, inner_iters);
      return;
    case PreconditionerKind::P1:
    case PreconditionerKind::P2: {
      block1->solve(r1, z1, inner_iters);
      block3->solve(r3, z3, inner_iters);
      if (kind == PreconditionerKind::P1) {
        for (auto& v : z3) v = -v;
      }
      // -S^ z2 = r2 - B z1 - C^T z3
      std::vector<double> t(mm);
      b.multiply(z1, t);
      c.multiply_transpose_add(z3, t);
      for (std::size_t i = 0; i < mm; ++i) t[i] -= r2[i];
      block2->solve(t, z2, inner_iters);
      return;
    }
    case PreconditionerKind::P3: {
      block3->solve(r3, z3, inner_iters);
      for (auto& v : z3) v = -v;
      // Leading block [A B^T; B -S^] by elimination with B A^{-1} B^T ~ S^:
      // z2 = -1/2 S^{-1} (r2 - C^T z3 - B A^{-1} r1), z1 = A^{-1}(r1 - B^T z2).
      std::vector<double> w(nn), t(mm);
      block1->solve(r1, w, inner_iters);
      b.multiply(w, t);
      for (std::size_t i = 0; i < mm; ++i) t[i] = -0.5 * (r2[i] - t[i]);
      c.multiply_transpose_add(z3, t, 0.5);
      block2->solve(t, z2, inner_iters);
      std::vector<double> u(r1.begin(), r1.end());
      b.multiply_transpose_add(z2, u, -1.0);
      block1->solve(u, z1, inner_iters);
      return;
    }
    case PreconditionerKind::Identity:
      break;
  }
}

PreconditionerKind PreconditionerInstance::kind() const { return impl_->kind; }
InnerMode PreconditionerInstance::inner_mode() const { return impl_->mode; }
const std::optional<PreconditionerParams>& PreconditionerInstance::params() const {
  return impl_->params;
}
double PreconditionerInstance::setup_seconds() const { return impl_->setup_seconds; }
long PreconditionerInstance::inner_iterations() const { return impl_->inner_iters.load(); }

void PreconditionerInstance::apply(std::span<const double> r, std::span<double> z) const {
  impl_->apply(r, z);
}

BlockVector PreconditionerInstance::apply(const BlockVector& r) const {
  if (r.n() != impl_->n || r.m() != impl_->m || r.l() != impl_->l) {
    throw DimensionError("preconditioner: block vector does not conform to the system");
  }
  BlockVector z(r.n(), r.m(), r.l());
  impl_->apply(r.flat(), z.flat());
  return z;
}

LinearOperator PreconditionerInstance::as_operator() const {
  std::shared_ptr<const Impl> impl = impl_;
  return [impl](std::span<const double> in, std::span<double> out) { impl->apply(in, out); };
}

namespace {

std::shared_ptr<PreconditionerInstance::Impl> new_impl(const SaddlePointSystem& s,
                                                       PreconditionerKind kind, InnerMode mode) {
  auto impl = std::make_shared<PreconditionerInstance::Impl>();
  impl->kind = kind;
  impl->mode = mode;
  impl->n = s.n();
  impl->m = s.m();
  impl->l = s.l();
  return impl;
}

}  // namespace

PreconditionerInstance build_identity(const SaddlePointSystem& s) {
  return PreconditionerInstance(new_impl(s, PreconditionerKind::Identity, InnerMode::ExactCholesky));
}

PreconditionerInstance build_m(const SaddlePointSystem& s, PreconditionerParams params,
                               InnerMode mode, InnerSolveRule rule) {
  if (!(params.alpha > 0.0) || !(params.beta > 0.0) || !std::isfinite(params.alpha) ||
      !std::isfinite(params.beta)) {
    throw std::invalid_argument("build_m: alpha and beta must be positive");
  }
  const auto t0 = Clock::now();
  auto impl = new_impl(s, PreconditionerKind::NewM, mode);
  impl->params = params;
  impl->block1 = make_spd_solver(s.a(), mode, rule);
  impl->block2 = make_spd_solver(shift(gram_rows(s.b()), params.alpha, params.beta), mode, rule);
  impl->block3 = make_spd_solver(shift(gram_rows(s.c()), params.alpha, params.beta), mode, rule);
  impl->setup_seconds = elapsed(t0);
  return PreconditionerInstance(impl);
}

PreconditionerInstance build_bd(const SaddlePointSystem& s, PreconditionerKind variant,
                                InnerMode mode, InnerSolveRule rule) {
  if (variant != PreconditionerKind::BD1 && variant != PreconditionerKind::BD2) {
    throw std::invalid_argument("build_bd: variant must be BD1 or BD2");
  }
  const auto t0 = Clock::now();
  auto impl = new_impl(s, variant, mode);
  if (variant == PreconditionerKind::BD1) {
    if (mode != InnerMode::ExactCholesky) {
      throw UnsupportedModeError("BD1 is only defined with exact inner solves");
    }
    if (s.m() > kDenseComplementLimit) {
      throw UnsupportedModeError("BD1 forms S densely; m = " + std::to_string(s.m()) +
                                 " exceeds " + std::to_string(kDenseComplementLimit));
    }
    auto a = std::make_shared<const CholeskySolver>(s.a());
    auto schur = std::make_shared<const CholeskySolver>(dense_congruence(s.b(), a->factor()));
    impl->block1 = a;
    impl->block2 = schur;
    impl->block3 = make_complement_solver(s.c(), schur, mode, rule);
  } else {
    impl->block1 = std::make_unique<DiagonalSolver>(s.a().diagonal());
    CsrMatrix s_hat = approximate_schur(s);
    auto s_hat_factor = std::make_shared<const CholeskySolver>(s_hat);
    impl->block3 = make_complement_solver(s.c(), s_hat_factor, mode, rule);
    if (mode == InnerMode::ExactCholesky) {
      impl->block2 = s_hat_factor;
    } else {
      impl->block2 = make_spd_solver(std::move(s_hat), mode, rule);
    }
  }
  impl->setup_seconds = elapsed(t0);
  return PreconditionerInstance(impl);
}

PreconditionerInstance build_p123(const SaddlePointSystem& s, PreconditionerKind variant,
                                  InnerMode mode, InnerSolveRule rule) {
  if (variant != PreconditionerKind::P1 && variant != PreconditionerKind::P2 &&
      variant != PreconditionerKind::P3) {
    throw std::invalid_argument("build_p123: variant must be P1, P2 or P3");
  }
  const auto t0 = Clock::now();
  auto impl = new_impl(s, variant, mode);
  impl->b = s.b();
  impl->c = s.c();
  impl->block1 = make_spd_solver(s.a(), mode, rule);
  CsrMatrix s_hat = approximate_schur(s);
  auto s_hat_factor = std::make_shared<const CholeskySolver>(s_hat);
  impl->block3 = make_complement_solver(s.c(), s_hat_factor, mode, rule);
  if (mode == InnerMode::ExactCholesky) {
    impl->block2 = s_hat_factor;
  } else {
    impl->block2 = make_spd_solver(std::move(s_hat), mode, rule);
  }
  impl->setup_seconds = elapsed(t0);
  return PreconditionerInstance(impl);
}

PreconditionerInstance build_preconditioner(const SaddlePointSystem& s, PreconditionerKind kind,
                                            std::optional<PreconditionerParams> params,
                                            InnerMode mode, InnerSolveRule rule) {
  switch (kind) {
    case PreconditionerKind::Identity: return build_identity(s);
    case PreconditionerKind::NewM:
      if (!params) throw std::invalid_argument("build_preconditioner: M needs alpha and beta");
      return build_m(s, *params, mode, rule);
    case PreconditionerKind::BD1:
    case PreconditionerKind::BD2: return build_bd(s, kind, mode, rule);
    case PreconditionerKind::P1:
    case PreconditionerKind::P2:
    case PreconditionerKind::P3: return build_p123(s, kind, mode, rule);
  }
  throw std::invalid_argument("build_preconditioner: unknown kind");
}

BlockVector apply_preconditioner(const PreconditionerInstance& inst, const BlockVector& r) {
  return inst.apply(r);
}

BlockVector apply_m(const PreconditionerInstance& inst, const BlockVector& r) {
  if (inst.kind() != PreconditionerKind::NewM) {
    throw std::invalid_argument("apply_m: instance is not the M preconditioner");
  }
  return inst.apply(r);
}

}  // namespace saddle
