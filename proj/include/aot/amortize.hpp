#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aot/measures.hpp"
#include "aot/sinkhorn.hpp"
#include "aot/slicing.hpp"

namespace aot {

struct MeasurePair {
  DiscreteMeasure mu;
  DiscreteMeasure nu;
};

struct TrainingSet {
  std::vector<MeasurePair> pairs;
  CostSpec cost;
  double epsilon = 0.1;
};

enum class TrainedBy : std::uint8_t { RA = 0, OA = 1 };

struct TrainMeta {
  int pairs_used = 0;
  int pairs_skipped = 0;  // ground truth failed to converge
  double wall_seconds = 0.0;
  double normal_eq_residual_rel = 0.0;  // RA only
  double best_objective = 0.0;          // OA only
};

// Linear model over sliced potentials: f_hat = X omega.
struct AmortizedModel {
  Vector omega;
  ProjectionSet pset;
  CostSpec cost;
  double epsilon = 0.1;
  double ridge_lambda = 0.0;
  TrainedBy trained_by = TrainedBy::RA;
  TrainMeta train_meta;
};

// Running normal equations: gram = sum X^T X, moment = sum X^T y.
class RAAccumulator {
 public:
  explicit RAAccumulator(int L);

  void add(const RowMatrix& X, const Vector& y);

  const Eigen::MatrixXd& gram() const { return gram_; }
  const Vector& moment() const { return moment_; }
  int pairs_seen() const { return pairs_seen_; }

  // Solves (gram + lambda * pairs_seen * I) omega = moment by Cholesky with a
  // 1e-10 diagonal jitter fallback and one iterative-refinement pass.
  // residual_rel, when given, receives ||A omega - b|| / ||b|| for the
  // unjittered system.
  Vector solve(double ridge_lambda, double* residual_rel = nullptr) const;

 private:
  Eigen::MatrixXd gram_;
  Vector moment_;
  int pairs_seen_ = 0;
};

// Ridge regression of converged Sinkhorn potentials (alpha-recentered to the
// feature gauge) on sliced-potential features. Pairs whose ground truth does
// not converge are skipped and counted.
AmortizedModel ra_fit(const TrainingSet& train, const ProjectionSet& pset,
                      double ridge_lambda);

struct OAConfig {
  double lr = 1e-3;
  int iters = 5000;
  int batch = 0;  // 0 = full batch
  std::uint64_t seed = 0;
};

// Gradient ascent of the mean semi-dual objective over omega with Adam
// (beta1=0.9, beta2=0.999, eps=1e-8), omega initialized to zero, features
// computed once per pair. Returns the best iterate by full-pool objective.
AmortizedModel oa_fit(const TrainingSet& train, const ProjectionSet& pset,
                      const OAConfig& cfg);

// Per-pair precomputed inputs for the OA inner loop; the seam used by oa_fit,
// the sweep harness, and tests that inject synthetic features.
struct OAPairData {
  RowMatrix X;  // n x L features
  Vector alpha;
  Vector beta;
  RowMatrix C;  // n x m cost table
};

Vector oa_fit_coefficients(std::span<const OAPairData> pairs, double epsilon,
                           const OAConfig& cfg,
                           double* best_objective = nullptr);

Vector predict_potential(const AmortizedModel& model, const DiscreteMeasure& mu,
                         const DiscreteMeasure& nu);

// f_hat = X omega, g = soft response, plan from the pair; column marginals
// equal beta by construction.
TransportPlan predict_plan(const AmortizedModel& model,
                           const DiscreteMeasure& mu,
                           const DiscreteMeasure& nu);

}  // namespace aot
