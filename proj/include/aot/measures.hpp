#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "aot/errors.hpp"

namespace aot {

using Vector = Eigen::VectorXd;
// Dense payloads (plans, cost tables, atom blocks) are stored row-major so the
// in-memory layout matches the binary file formats.
using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class Domain : std::uint8_t { Euclidean = 0, UnitSphere = 1 };

// Weighted point cloud. Weights are strictly positive and normalized to total
// mass 1 at construction; UnitSphere atoms must have unit Euclidean norm.
class DiscreteMeasure {
 public:
  DiscreteMeasure(RowMatrix atoms, Vector weights,
                  Domain domain = Domain::Euclidean);

  Eigen::Index size() const { return atoms_.rows(); }
  Eigen::Index dim() const { return atoms_.cols(); }
  const RowMatrix& atoms() const { return atoms_; }
  const Vector& weights() const { return weights_; }
  Domain domain() const { return domain_; }

 private:
  RowMatrix atoms_;
  Vector weights_;
  Domain domain_;
};

enum class CostFamily : std::uint8_t {
  SqEuclidean = 0,
  Euclidean = 1,
  SphericalGeodesic = 2
};

struct CostSpec {
  CostFamily family = CostFamily::SqEuclidean;
};

struct CostMatrix {
  RowMatrix values;  // n x m, finite, nonnegative

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
};

struct PlanEntry {
  std::int64_t row = 0;
  std::int64_t col = 0;
  double mass = 0.0;

  friend bool operator==(const PlanEntry&, const PlanEntry&) = default;
};

// Coupling between two measures: dense nonnegative matrix, or the sparse
// monotone chain of a 1D solution kept as (row, col, mass) triples sorted by
// (row, col).
class TransportPlan {
 public:
  enum class Rep { Dense, SparseChain };

  static TransportPlan dense(RowMatrix values, double epsilon);
  static TransportPlan sparse_chain(std::vector<PlanEntry> entries,
                                    Eigen::Index n, Eigen::Index m,
                                    double epsilon);

  Rep rep() const { return rep_; }
  Eigen::Index rows() const { return n_; }
  Eigen::Index cols() const { return m_; }
  double epsilon() const { return epsilon_; }

  const RowMatrix& dense_values() const;          // Dense rep only
  const std::vector<PlanEntry>& entries() const;  // SparseChain rep only

  RowMatrix to_dense_values() const;  // either rep
  TransportPlan to_dense() const;
  // Positive-mass entries of a dense plan as a sorted triple list.
  TransportPlan to_sparse_chain() const;

  double total_mass() const;
  // Throws MassMismatch unless total mass is 1 within tol.
  void require_normalized(double tol = 1e-9) const;

 private:
  TransportPlan() = default;

  Rep rep_ = Rep::Dense;
  Eigen::Index n_ = 0, m_ = 0;
  double epsilon_ = 0.0;
  RowMatrix dense_;
  std::vector<PlanEntry> entries_;
};

// Dual pair for the regularization level it was computed at (epsilon = 0 for
// unregularized 1D potentials).
struct Potentials {
  Vector f;
  Vector g;
  double epsilon = 0.0;
};

CostMatrix build_cost_matrix(const DiscreteMeasure& mu,
                             const DiscreteMeasure& nu, const CostSpec& cost);

// P_ij = exp((f_i + g_j - C_ij) / epsilon), exponent formed before the single
// exponentiation.
TransportPlan plan_from_potentials(const Potentials& pot, const CostMatrix& C);

// (||P 1 - alpha||_1, ||P^T 1 - beta||_1)
std::pair<double, double> marginal_errors(const TransportPlan& plan,
                                          const DiscreteMeasure& mu,
                                          const DiscreteMeasure& nu);

}  // namespace aot
