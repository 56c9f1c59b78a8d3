#pragma once

#include "aot/measures.hpp"

// OpenMP-parallel inner kernels. Every output element is produced by exactly
// one thread with a fixed serial reduction order, so results are identical for
// any thread count. aot::ref holds plain serial transcriptions of the same
// formulas, kept for correctness tests and the kernel benchmark.

namespace aot::kernels {

void cost_table(const RowMatrix& xs, const RowMatrix& ys, CostFamily family,
                RowMatrix& out);

// g_j = eps * (log_beta_j - logsumexp_i((f_i - C_ij)/eps))
void soft_g_from_f(const RowMatrix& C, const Vector& f, const Vector& log_beta,
                   double eps, Vector& g);
// f_i = eps * (log_alpha_i - logsumexp_j((g_j - C_ij)/eps))
void soft_f_from_g(const RowMatrix& C, const Vector& g,
                   const Vector& log_alpha, double eps, Vector& f);

// P_ij = exp((f_i + g_j - C_ij)/eps)
void coupling_from_potentials(const RowMatrix& C, const Vector& f,
                              const Vector& g, double eps, RowMatrix& P);

void plan_marginals(const RowMatrix& P, Vector& row_sums, Vector& col_sums);

// <f,alpha> + <g,beta> - eps * sum_ij exp((f_i + g_j - C_ij)/eps), with the
// exponential sum stabilized by the global max exponent.
double dual_objective_value(const RowMatrix& C, const Vector& f,
                            const Vector& g, const Vector& alpha,
                            const Vector& beta, double eps);

// Fused semi-dual evaluation at f: fills g with the soft response g(f) and
// row_sums with the row marginals of the induced plan (columns sum to beta by
// construction), and returns the dual objective at (f, g(f)). One exp pass
// over the cost table; scratch is resized to n x m.
double semi_dual_at(const RowMatrix& C, const Vector& f, const Vector& alpha,
                    const Vector& beta, double eps, Vector& g,
                    Vector& row_sums, RowMatrix& scratch);

}  // namespace aot::kernels

namespace aot::ref {

void cost_table(const RowMatrix& xs, const RowMatrix& ys, CostFamily family,
                RowMatrix& out);
void soft_g_from_f(const RowMatrix& C, const Vector& f, const Vector& log_beta,
                   double eps, Vector& g);
void soft_f_from_g(const RowMatrix& C, const Vector& g,
                   const Vector& log_alpha, double eps, Vector& f);
void coupling_from_potentials(const RowMatrix& C, const Vector& f,
                              const Vector& g, double eps, RowMatrix& P);
void plan_marginals(const RowMatrix& P, Vector& row_sums, Vector& col_sums);
double dual_objective_value(const RowMatrix& C, const Vector& f,
                            const Vector& g, const Vector& alpha,
                            const Vector& beta, double eps);
double semi_dual_at(const RowMatrix& C, const Vector& f, const Vector& alpha,
                    const Vector& beta, double eps, Vector& g,
                    Vector& row_sums);

}  // namespace aot::ref
