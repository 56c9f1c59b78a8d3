#pragma once

#include "aot/measures.hpp"

namespace aot {

struct SinkhornConfig {
  double epsilon = 0.1;
  int max_iters = 10000;
  double marginal_tol = 1e-9;  // L1, enforced on both marginals
};

struct SinkhornResult {
  Potentials potentials;
  TransportPlan plan;
  int iterations_used = 0;
  double final_marginal_error = 0.0;
  bool converged = false;
};

// Log-domain Sinkhorn. Alternates the soft updates
//   g_j = eps log beta_j - eps logsumexp_i((f_i - C_ij)/eps)
//   f_i = eps log alpha_i - eps logsumexp_j((g_j - C_ij)/eps)
// and stops once both L1 marginal errors of the induced plan fall below
// cfg.marginal_tol. Non-convergence is reported via converged = false, never
// thrown.
SinkhornResult sinkhorn_solve(const DiscreteMeasure& mu,
                              const DiscreteMeasure& nu, const CostMatrix& C,
                              const SinkhornConfig& cfg);

// <f,alpha> + <g,beta> - eps sum_ij exp((f_i + g_j - C_ij)/eps)
double dual_objective(const Vector& f, const Vector& g,
                      const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                      const CostMatrix& C, double epsilon);

// Soft response; the induced plan has column sums exactly beta.
Vector g_from_f(const Vector& f, const DiscreteMeasure& mu,
                const DiscreteMeasure& nu, const CostMatrix& C,
                double epsilon);

// Gradient of the semi-dual J(f) = dual_objective(f, g_from_f(f)):
// alpha_i - sum_j P_ij. The term through g vanishes at the soft response.
Vector dual_objective_grad_f(const Vector& f, const DiscreteMeasure& mu,
                             const DiscreteMeasure& nu, const CostMatrix& C,
                             double epsilon);

}  // namespace aot
