#include "aot/sinkhorn.hpp"

#include <cmath>

#include "aot/kernels.hpp"

namespace aot {

namespace {

void check_inputs(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                  const CostMatrix& C, double epsilon) {
  if (C.rows() != mu.size() || C.cols() != nu.size())
    fail(ErrorCode::ShapeMismatch, "cost matrix shape does not match measures");
  if (!(epsilon > 0.0))
    fail(ErrorCode::EpsilonNonPositive, "epsilon must be positive");
}

}  // namespace

SinkhornResult sinkhorn_solve(const DiscreteMeasure& mu,
                              const DiscreteMeasure& nu, const CostMatrix& C,
                              const SinkhornConfig& cfg) {
  check_inputs(mu, nu, C, cfg.epsilon);
  if (cfg.max_iters < 1 || !(cfg.marginal_tol > 0.0))
    fail(ErrorCode::InvalidSpec, "max_iters >= 1 and marginal_tol > 0 required");

  const Vector log_alpha = mu.weights().array().log();
  const Vector log_beta = nu.weights().array().log();

  Vector f = Vector::Zero(mu.size());
  Vector g(nu.size());
  RowMatrix P;
  Vector row_sums, col_sums;

  int it = 0;
  double err = std::numeric_limits<double>::infinity();
  bool converged = false;
  while (it < cfg.max_iters) {
    ++it;
    kernels::soft_g_from_f(C.values, f, log_beta, cfg.epsilon, g);
    kernels::soft_f_from_g(C.values, g, log_alpha, cfg.epsilon, f);
    kernels::coupling_from_potentials(C.values, f, g, cfg.epsilon, P);
    kernels::plan_marginals(P, row_sums, col_sums);
    const double row_err = (row_sums - mu.weights()).lpNorm<1>();
    const double col_err = (col_sums - nu.weights()).lpNorm<1>();
    err = std::max(row_err, col_err);
    if (err <= cfg.marginal_tol) {
      converged = true;
      break;
    }
  }

  SinkhornResult result;
  result.potentials = Potentials{f, g, cfg.epsilon};
  result.plan = TransportPlan::dense(std::move(P), cfg.epsilon);
  result.iterations_used = it;
  result.final_marginal_error = err;
  result.converged = converged;
  return result;
}

double dual_objective(const Vector& f, const Vector& g,
                      const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                      const CostMatrix& C, double epsilon) {
  check_inputs(mu, nu, C, epsilon);
  if (f.size() != C.rows() || g.size() != C.cols())
    fail(ErrorCode::ShapeMismatch, "potential sizes do not match cost matrix");
  return kernels::dual_objective_value(C.values, f, g, mu.weights(),
                                       nu.weights(), epsilon);
}

Vector g_from_f(const Vector& f, const DiscreteMeasure& mu,
                const DiscreteMeasure& nu, const CostMatrix& C,
                double epsilon) {
  check_inputs(mu, nu, C, epsilon);
  if (f.size() != C.rows())
    fail(ErrorCode::ShapeMismatch, "f size does not match cost matrix");
  const Vector log_beta = nu.weights().array().log();
  Vector g;
  kernels::soft_g_from_f(C.values, f, log_beta, epsilon, g);
  return g;
}

Vector dual_objective_grad_f(const Vector& f, const DiscreteMeasure& mu,
                             const DiscreteMeasure& nu, const CostMatrix& C,
                             double epsilon) {
  check_inputs(mu, nu, C, epsilon);
  if (f.size() != C.rows())
    fail(ErrorCode::ShapeMismatch, "f size does not match cost matrix");
  Vector g, row_sums;
  RowMatrix scratch;
  kernels::semi_dual_at(C.values, f, mu.weights(), nu.weights(), epsilon, g,
                        row_sums, scratch);
  return mu.weights() - row_sums;
}

}  // namespace aot
