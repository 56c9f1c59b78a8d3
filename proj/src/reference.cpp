#include <algorithm>
#include <cmath>
#include <limits>

#include "aot/kernels.hpp"

// Serial reference implementations: direct transcriptions of the formulas,
// used by tests to cross-check the parallel kernels and by the kernel
// benchmark as the baseline.

namespace aot::ref {

void cost_table(const RowMatrix& xs, const RowMatrix& ys, CostFamily family,
                RowMatrix& out) {
  const Eigen::Index n = xs.rows(), m = ys.rows();
  out.resize(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      switch (family) {
        case CostFamily::SqEuclidean:
          out(i, j) = (xs.row(i) - ys.row(j)).squaredNorm();
          break;
        case CostFamily::Euclidean:
          out(i, j) = (xs.row(i) - ys.row(j)).norm();
          break;
        case CostFamily::SphericalGeodesic:
          out(i, j) = std::acos(std::clamp(xs.row(i).dot(ys.row(j)), -1.0, 1.0));
          break;
      }
    }
  }
}

namespace {

double logsumexp(const Vector& v) {
  const double mx = v.maxCoeff();
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::exp(v[i] - mx);
  return mx + std::log(s);
}

}  // namespace

void soft_g_from_f(const RowMatrix& C, const Vector& f, const Vector& log_beta,
                   double eps, Vector& g) {
  const Eigen::Index n = C.rows(), m = C.cols();
  g.resize(m);
  Vector col(n);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) col[i] = (f[i] - C(i, j)) / eps;
    g[j] = eps * (log_beta[j] - logsumexp(col));
  }
}

void soft_f_from_g(const RowMatrix& C, const Vector& g,
                   const Vector& log_alpha, double eps, Vector& f) {
  const Eigen::Index n = C.rows(), m = C.cols();
  f.resize(n);
  Vector row(m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) row[j] = (g[j] - C(i, j)) / eps;
    f[i] = eps * (log_alpha[i] - logsumexp(row));
  }
}

void coupling_from_potentials(const RowMatrix& C, const Vector& f,
                              const Vector& g, double eps, RowMatrix& P) {
  const Eigen::Index n = C.rows(), m = C.cols();
  P.resize(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      P(i, j) = std::exp((f[i] + g[j] - C(i, j)) / eps);
}

void plan_marginals(const RowMatrix& P, Vector& row_sums, Vector& col_sums) {
  row_sums = Vector::Zero(P.rows());
  col_sums = Vector::Zero(P.cols());
  for (Eigen::Index i = 0; i < P.rows(); ++i)
    for (Eigen::Index j = 0; j < P.cols(); ++j) {
      row_sums[i] += P(i, j);
      col_sums[j] += P(i, j);
    }
}

double dual_objective_value(const RowMatrix& C, const Vector& f,
                            const Vector& g, const Vector& alpha,
                            const Vector& beta, double eps) {
  const Eigen::Index n = C.rows(), m = C.cols();
  double mx = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      mx = std::max(mx, (f[i] + g[j] - C(i, j)) / eps);
  double s = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      s += std::exp((f[i] + g[j] - C(i, j)) / eps - mx);
  return f.dot(alpha) + g.dot(beta) - eps * std::exp(mx + std::log(s));
}

double semi_dual_at(const RowMatrix& C, const Vector& f, const Vector& alpha,
                    const Vector& beta, double eps, Vector& g,
                    Vector& row_sums) {
  const Eigen::Index n = C.rows(), m = C.cols();
  Vector log_beta(m);
  for (Eigen::Index j = 0; j < m; ++j) log_beta[j] = std::log(beta[j]);
  soft_g_from_f(C, f, log_beta, eps, g);
  RowMatrix P;
  coupling_from_potentials(C, f, g, eps, P);
  Vector col_sums;
  plan_marginals(P, row_sums, col_sums);
  return f.dot(alpha) + g.dot(beta) - eps * P.sum();
}

}  // namespace aot::ref
