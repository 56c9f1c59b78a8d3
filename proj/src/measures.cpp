#include "aot/measures.hpp"

#include <algorithm>
#include <cmath>

#include "aot/kernels.hpp"

namespace aot {

DiscreteMeasure::DiscreteMeasure(RowMatrix atoms, Vector weights, Domain domain)
    : atoms_(std::move(atoms)), weights_(std::move(weights)), domain_(domain) {
  const Eigen::Index n = atoms_.rows();
  if (n == 0) fail(ErrorCode::EmptyMeasure, "measure has no atoms");
  if (weights_.size() != n)
    fail(ErrorCode::ShapeMismatch, "weights size does not match atom count");
  if (!atoms_.allFinite())
    fail(ErrorCode::NonFinite, "atom coordinates must be finite");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i]))
      fail(ErrorCode::PositivityViolation,
           "weights must be strictly positive and finite");
  }
  weights_ /= weights_.sum();
  if (domain_ == Domain::UnitSphere) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(atoms_.row(i).norm() - 1.0) > 1e-9)
        fail(ErrorCode::DomainMismatch,
             "UnitSphere atoms must have unit norm within 1e-9");
    }
  }
}

TransportPlan TransportPlan::dense(RowMatrix values, double epsilon) {
  TransportPlan p;
  p.rep_ = Rep::Dense;
  p.n_ = values.rows();
  p.m_ = values.cols();
  p.epsilon_ = epsilon;
  if (p.n_ == 0 || p.m_ == 0)
    fail(ErrorCode::ShapeMismatch, "plan must be nonempty");
  if (!values.allFinite() || values.minCoeff() < 0.0)
    fail(ErrorCode::NonFinite, "plan entries must be finite and nonnegative");
  p.dense_ = std::move(values);
  return p;
}

TransportPlan TransportPlan::sparse_chain(std::vector<PlanEntry> entries,
                                          Eigen::Index n, Eigen::Index m,
                                          double epsilon) {
  TransportPlan p;
  p.rep_ = Rep::SparseChain;
  p.n_ = n;
  p.m_ = m;
  p.epsilon_ = epsilon;
  if (n <= 0 || m <= 0) fail(ErrorCode::ShapeMismatch, "plan must be nonempty");
  if (Eigen::Index(entries.size()) > n + m - 1)
    fail(ErrorCode::ShapeMismatch, "sparse chain longer than n + m - 1");
  for (const auto& e : entries) {
    if (e.row < 0 || e.row >= n || e.col < 0 || e.col >= m)
      fail(ErrorCode::ShapeMismatch, "sparse chain index out of range");
    if (!(e.mass >= 0.0) || !std::isfinite(e.mass))
      fail(ErrorCode::NonFinite, "plan entries must be finite and nonnegative");
  }
  std::sort(entries.begin(), entries.end(),
            [](const PlanEntry& a, const PlanEntry& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  p.entries_ = std::move(entries);
  return p;
}

const RowMatrix& TransportPlan::dense_values() const {
  if (rep_ != Rep::Dense)
    fail(ErrorCode::ShapeMismatch, "plan is not in dense representation");
  return dense_;
}

const std::vector<PlanEntry>& TransportPlan::entries() const {
  if (rep_ != Rep::SparseChain)
    fail(ErrorCode::ShapeMismatch, "plan is not in sparse representation");
  return entries_;
}

RowMatrix TransportPlan::to_dense_values() const {
  if (rep_ == Rep::Dense) return dense_;
  RowMatrix out = RowMatrix::Zero(n_, m_);
  for (const auto& e : entries_) out(e.row, e.col) += e.mass;
  return out;
}

TransportPlan TransportPlan::to_dense() const {
  if (rep_ == Rep::Dense) return *this;
  return dense(to_dense_values(), epsilon_);
}

TransportPlan TransportPlan::to_sparse_chain() const {
  if (rep_ == Rep::SparseChain) return *this;
  std::vector<PlanEntry> entries;
  for (Eigen::Index i = 0; i < n_; ++i)
    for (Eigen::Index j = 0; j < m_; ++j)
      if (dense_(i, j) > 0.0) entries.push_back({i, j, dense_(i, j)});
  return sparse_chain(std::move(entries), n_, m_, epsilon_);
}

double TransportPlan::total_mass() const {
  if (rep_ == Rep::Dense) return dense_.sum();
  double s = 0.0;
  for (const auto& e : entries_) s += e.mass;
  return s;
}

void TransportPlan::require_normalized(double tol) const {
  const double mass = total_mass();
  if (std::abs(mass - 1.0) > tol)
    fail(ErrorCode::MassMismatch, "plan total mass deviates from 1 by " +
                                      std::to_string(std::abs(mass - 1.0)));
}

CostMatrix build_cost_matrix(const DiscreteMeasure& mu,
                             const DiscreteMeasure& nu, const CostSpec& cost) {
  if (mu.dim() != nu.dim())
    fail(ErrorCode::DimensionMismatch, "atom dimensions differ");
  if (cost.family == CostFamily::SphericalGeodesic &&
      (mu.domain() != Domain::UnitSphere || nu.domain() != Domain::UnitSphere))
    fail(ErrorCode::DomainMismatch,
         "geodesic cost requires UnitSphere measures");
  CostMatrix C;
  kernels::cost_table(mu.atoms(), nu.atoms(), cost.family, C.values);
  return C;
}

TransportPlan plan_from_potentials(const Potentials& pot, const CostMatrix& C) {
  if (!(pot.epsilon > 0.0))
    fail(ErrorCode::EpsilonNonPositive, "plan recovery requires epsilon > 0");
  if (pot.f.size() != C.rows() || pot.g.size() != C.cols())
    fail(ErrorCode::ShapeMismatch, "potential sizes do not match cost matrix");
  RowMatrix P;
  kernels::coupling_from_potentials(C.values, pot.f, pot.g, pot.epsilon, P);
  return TransportPlan::dense(std::move(P), pot.epsilon);
}

std::pair<double, double> marginal_errors(const TransportPlan& plan,
                                          const DiscreteMeasure& mu,
                                          const DiscreteMeasure& nu) {
  if (plan.rows() != mu.size() || plan.cols() != nu.size())
    fail(ErrorCode::ShapeMismatch, "plan shape does not match measures");
  Vector rows, cols;
  if (plan.rep() == TransportPlan::Rep::Dense) {
    kernels::plan_marginals(plan.dense_values(), rows, cols);
  } else {
    rows = Vector::Zero(plan.rows());
    cols = Vector::Zero(plan.cols());
    for (const auto& e : plan.entries()) {
      rows[e.row] += e.mass;
      cols[e.col] += e.mass;
    }
  }
  return {(rows - mu.weights()).lpNorm<1>(), (cols - nu.weights()).lpNorm<1>()};
}

}  // namespace aot
