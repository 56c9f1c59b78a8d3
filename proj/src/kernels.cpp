#include "aot/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aot/threads.hpp"

namespace aot::kernels {

namespace {

double pair_cost(const double* x, const double* y, Eigen::Index d,
                 CostFamily family) {
  double acc = 0.0;
  switch (family) {
    case CostFamily::SqEuclidean:
    case CostFamily::Euclidean: {
      for (Eigen::Index k = 0; k < d; ++k) {
        const double diff = x[k] - y[k];
        acc += diff * diff;
      }
      return family == CostFamily::SqEuclidean ? acc : std::sqrt(acc);
    }
    case CostFamily::SphericalGeodesic: {
      for (Eigen::Index k = 0; k < d; ++k) acc += x[k] * y[k];
      // rounding can push |<x,y>| past 1 at coincident or antipodal atoms
      return std::acos(std::clamp(acc, -1.0, 1.0));
    }
  }
  return 0.0;
}

}  // namespace

void cost_table(const RowMatrix& xs, const RowMatrix& ys, CostFamily family,
                RowMatrix& out) {
  const Eigen::Index n = xs.rows(), m = ys.rows(), d = xs.cols();
  out.resize(n, m);
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (Eigen::Index i = 0; i < n; ++i) {
    const double* x = xs.row(i).data();
    double* row = out.row(i).data();
    for (Eigen::Index j = 0; j < m; ++j)
      row[j] = pair_cost(x, ys.row(j).data(), d, family);
  }
}

void soft_g_from_f(const RowMatrix& C, const Vector& f, const Vector& log_beta,
                   double eps, Vector& g) {
  const Eigen::Index n = C.rows(), m = C.cols();
  const double inv = 1.0 / eps;
  g.resize(m);
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (Eigen::Index j = 0; j < m; ++j) {
    double mx = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i)
      mx = std::max(mx, (f[i] - C(i, j)) * inv);
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      s += std::exp((f[i] - C(i, j)) * inv - mx);
    g[j] = eps * (log_beta[j] - (mx + std::log(s)));
  }
}

void soft_f_from_g(const RowMatrix& C, const Vector& g,
                   const Vector& log_alpha, double eps, Vector& f) {
  const Eigen::Index n = C.rows(), m = C.cols();
  const double inv = 1.0 / eps;
  f.resize(n);
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (Eigen::Index i = 0; i < n; ++i) {
    const double* crow = C.row(i).data();
    double mx = -std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < m; ++j)
      mx = std::max(mx, (g[j] - crow[j]) * inv);
    double s = 0.0;
    for (Eigen::Index j = 0; j < m; ++j)
      s += std::exp((g[j] - crow[j]) * inv - mx);
    f[i] = eps * (log_alpha[i] - (mx + std::log(s)));
  }
}

void coupling_from_potentials(const RowMatrix& C, const Vector& f,
                              const Vector& g, double eps, RowMatrix& P) {
  const Eigen::Index n = C.rows(), m = C.cols();
  const double inv = 1.0 / eps;
  P.resize(n, m);
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (Eigen::Index i = 0; i < n; ++i) {
    const double* crow = C.row(i).data();
    double* prow = P.row(i).data();
    const double fi = f[i];
    for (Eigen::Index j = 0; j < m; ++j)
      prow[j] = std::exp((fi + g[j] - crow[j]) * inv);
  }
}

void plan_marginals(const RowMatrix& P, Vector& row_sums, Vector& col_sums) {
  const Eigen::Index n = P.rows(), m = P.cols();
  row_sums.resize(n);
  col_sums.resize(m);
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (Eigen::Index i = 0; i < n; ++i) {
    const double* prow = P.row(i).data();
    double s = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) s += prow[j];
    row_sums[i] = s;
  }
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (Eigen::Index j = 0; j < m; ++j) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) s += P(i, j);
    col_sums[j] = s;
  }
}

double dual_objective_value(const RowMatrix& C, const Vector& f,
                            const Vector& g, const Vector& alpha,
                            const Vector& beta, double eps) {
  const Eigen::Index n = C.rows(), m = C.cols();
  const double inv = 1.0 / eps;
  Vector row_max(n), row_sum(n);
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (Eigen::Index i = 0; i < n; ++i) {
    const double* crow = C.row(i).data();
    const double fi = f[i];
    double mx = -std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < m; ++j)
      mx = std::max(mx, (fi + g[j] - crow[j]) * inv);
    row_max[i] = mx;
  }
  const double mx = row_max.maxCoeff();
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (Eigen::Index i = 0; i < n; ++i) {
    const double* crow = C.row(i).data();
    const double fi = f[i];
    double s = 0.0;
    for (Eigen::Index j = 0; j < m; ++j)
      s += std::exp((fi + g[j] - crow[j]) * inv - mx);
    row_sum[i] = s;
  }
  double total = 0.0;  // fixed row order keeps the reduction deterministic
  for (Eigen::Index i = 0; i < n; ++i) total += row_sum[i];
  return f.dot(alpha) + g.dot(beta) - eps * std::exp(mx + std::log(total));
}

double semi_dual_at(const RowMatrix& C, const Vector& f, const Vector& alpha,
                    const Vector& beta, double eps, Vector& g,
                    Vector& row_sums, RowMatrix& scratch) {
  const Eigen::Index n = C.rows(), m = C.cols();
  const double inv = 1.0 / eps;
  scratch.resize(n, m);
  g.resize(m);
  row_sums.resize(n);

  Vector col_max(m), col_sum(m);
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (Eigen::Index j = 0; j < m; ++j) {
    double mx = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i)
      mx = std::max(mx, (f[i] - C(i, j)) * inv);
    col_max[j] = mx;
  }
  // scratch(i,j) = exp((f_i - C_ij)/eps - col_max_j), written in row order
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (Eigen::Index i = 0; i < n; ++i) {
    const double* crow = C.row(i).data();
    double* srow = scratch.row(i).data();
    const double fi = f[i];
    for (Eigen::Index j = 0; j < m; ++j)
      srow[j] = std::exp((fi - crow[j]) * inv - col_max[j]);
  }
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (Eigen::Index j = 0; j < m; ++j) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) s += scratch(i, j);
    col_sum[j] = s;
    g[j] = eps * (std::log(beta[j]) - (col_max[j] + std::log(s)));
  }
  // P_ij = scratch(i,j) * beta_j / col_sum_j; columns sum to beta exactly
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (Eigen::Index i = 0; i < n; ++i) {
    const double* srow = scratch.row(i).data();
    double s = 0.0;
    for (Eigen::Index j = 0; j < m; ++j)
      s += srow[j] * (beta[j] / col_sum[j]);
    row_sums[i] = s;
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) total += row_sums[i];
  return f.dot(alpha) + g.dot(beta) - eps * total;
}

}  // namespace aot::kernels
