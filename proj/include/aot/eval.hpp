#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aot/amortize.hpp"
#include "aot/baselines.hpp"
#include "aot/tasks.hpp"

namespace aot {

// sqrt(mean over all n*m entries of the squared difference)
double plan_rmse(const TransportPlan& predicted, const TransportPlan& truth);

enum class Method : std::uint8_t { RA = 0, OA = 1, MinSWGG = 2, Sinkhorn = 3 };

std::string method_name(Method m);

struct PairEval {
  int pair_index = 0;
  double rmse = 0.0;
  double infer_ms = 0.0;
};

struct EvalReport {
  std::string method;
  std::string spec_echo;
  std::vector<PairEval> records;
  int pairs_evaluated = 0;
  int pairs_dropped = 0;  // ground truth did not converge
  double rmse_mean = 0.0;
  double rmse_std = 0.0;
  double train_s = 0.0;
  double infer_ms_mean = 0.0;
  double infer_ms_std = 0.0;
};

// Converged ground truths for a fixed test set; nullopt where the solver did
// not converge. Computed once and shared across method evaluations.
std::vector<std::optional<SinkhornResult>> ground_truths(
    std::span<const MeasurePair> test_pairs, const CostSpec& cost,
    const SinkhornConfig& cfg);

// Per-pair plan RMSE against converged Sinkhorn ground truth plus inference
// wall time (feature extraction + prediction + soft g + plan assembly;
// ground-truth time excluded). model is required for RA/OA, baseline_pset for
// MinSWGG.
EvalReport evaluate(Method method, const AmortizedModel* model,
                    std::span<const MeasurePair> test_pairs,
                    const CostSpec& cost, const SinkhornConfig& gt_cfg,
                    const ProjectionSet* baseline_pset,
                    const std::string& spec_echo = {});

EvalReport evaluate_with_gt(
    Method method, const AmortizedModel* model,
    std::span<const MeasurePair> test_pairs,
    std::span<const std::optional<SinkhornResult>> gts, const CostSpec& cost,
    const SinkhornConfig& gt_cfg, const ProjectionSet* baseline_pset,
    const std::string& spec_echo = {});

// Displacement interpolation: atoms (1-t) x_i + t y_j for entries above
// mass_floor, masses renormalized. SqEuclidean ambient cost only.
DiscreteMeasure interpolate(const TransportPlan& plan,
                            const DiscreteMeasure& mu,
                            const DiscreteMeasure& nu, double t,
                            const CostSpec& cost, double mass_floor = 1e-12);

// k seeded i.i.d. draws from the categorical distribution over (i, j) with
// probabilities P_ij / total mass.
std::vector<std::pair<int, int>> sample_coupling(const TransportPlan& plan,
                                                 int k, std::uint64_t seed);

// Training/evaluation hyperparameters shared by the CLI and the sweep.
struct Hyper {
  int L = 100;
  double ridge_lambda = 1e-3;
  double lr = 1e-3;
  int iters = 5000;
  int batch = 0;  // 0 = full batch
  double split = 0.7;
  int train_m = 0;  // 0 = full train split
  int test_n = 0;   // 0 = full test split
  ProjectionFamily projection = ProjectionFamily::LinearSphere;
  bool projection_set = false;  // false -> family default
};

struct SweepCell {
  int L = 0;
  int M = 0;
  Method method = Method::RA;
  bool failed = false;
  std::string error;
  EvalReport report;
};

struct SweepResult {
  std::vector<SweepCell> cells;
};

// Trains and evaluates every (L, M, method) cell over one shared seeded pool.
// Ground truths and feature accumulators are computed once at max L and
// reused; the projection nesting contract makes the reuse exact. Failed cells
// are recorded and the sweep continues.
SweepResult bench_sweep(const TaskSpec& spec, const Hyper& hyper,
                        const std::vector<int>& L_values,
                        const std::vector<int>& M_values,
                        const std::vector<Method>& methods);

std::string sweep_csv(const SweepResult& result);
std::string sweep_json(const SweepResult& result);
std::string report_json(const EvalReport& report);
std::string report_csv(const EvalReport& report);

}  // namespace aot
