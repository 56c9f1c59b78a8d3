#include "aot/amortize.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <numeric>
#include <optional>

#include "aot/kernels.hpp"
#include "aot/rng.hpp"
#include "aot/threads.hpp"

namespace aot {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

Vector recentered(const Vector& f, const Vector& alpha) {
  return f.array() - alpha.dot(f);
}

}  // namespace

RAAccumulator::RAAccumulator(int L)
    : gram_(Eigen::MatrixXd::Zero(L, L)), moment_(Vector::Zero(L)) {
  if (L < 1) fail(ErrorCode::BadDimension, "accumulator needs L >= 1");
}

void RAAccumulator::add(const RowMatrix& X, const Vector& y) {
  if (X.cols() != gram_.rows())
    fail(ErrorCode::ShapeMismatch, "feature width does not match accumulator");
  if (X.rows() != y.size())
    fail(ErrorCode::ShapeMismatch, "response length does not match features");
  Eigen::MatrixXd g = X.transpose() * X;
  gram_ += 0.5 * (g + g.transpose());  // keep exact symmetry
  moment_ += X.transpose() * y;
  ++pairs_seen_;
}

Vector RAAccumulator::solve(double ridge_lambda, double* residual_rel) const {
  if (ridge_lambda < 0.0)
    fail(ErrorCode::InvalidSpec, "ridge lambda must be nonnegative");
  if (pairs_seen_ == 0)
    fail(ErrorCode::SingularGram, "no pairs accumulated");
  const Eigen::Index L = gram_.rows();
  const Eigen::MatrixXd A =
      gram_ + ridge_lambda * double(pairs_seen_) * Eigen::MatrixXd::Identity(L, L);

  Eigen::LLT<Eigen::MatrixXd> llt(A);
  std::optional<Eigen::LLT<Eigen::MatrixXd>> jittered;
  if (llt.info() != Eigen::Success) {
    jittered.emplace(A + 1e-10 * Eigen::MatrixXd::Identity(L, L));
    if (jittered->info() != Eigen::Success)
      fail(ErrorCode::SingularGram, "gram matrix is numerically singular");
  }
  const auto solve_with = [&](const Vector& b) {
    return jittered ? jittered->solve(b) : llt.solve(b);
  };

  Vector omega = solve_with(moment_);
  omega += solve_with(Vector(moment_ - A * omega));  // one refinement pass
  if (residual_rel) {
    const double denom = std::max(moment_.norm(), 1e-300);
    *residual_rel = (moment_ - A * omega).norm() / denom;
  }
  if (!omega.allFinite())
    fail(ErrorCode::NonFinite, "ridge solution is not finite");
  return omega;
}

AmortizedModel ra_fit(const TrainingSet& train, const ProjectionSet& pset,
                      double ridge_lambda) {
  if (train.pairs.empty())
    fail(ErrorCode::InvalidSpec, "training set is empty");
  if (!(train.epsilon > 0.0))
    fail(ErrorCode::EpsilonNonPositive, "training epsilon must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  const int M = int(train.pairs.size());
  const SinkhornConfig gt_cfg{train.epsilon, 10000, 1e-9};

  struct PairFit {
    RowMatrix X;
    Vector y;
    bool ok = false;
  };
  std::vector<PairFit> fits(M);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
  for (int p = 0; p < M; ++p) {
    const auto& [mu, nu] = train.pairs[p];
    const CostMatrix C = build_cost_matrix(mu, nu, train.cost);
    const SinkhornResult sr = sinkhorn_solve(mu, nu, C, gt_cfg);
    if (!sr.converged) continue;
    fits[p].X = sliced_features(mu, nu, train.cost, pset).X;
    fits[p].y = recentered(sr.potentials.f, mu.weights());
    fits[p].ok = true;
  }

  RAAccumulator acc(pset.count());
  int skipped = 0;
  for (int p = 0; p < M; ++p) {  // fixed fold order
    if (!fits[p].ok) {
      ++skipped;
      std::cerr << "ra_fit: skipping pair " << p
                << " (ground truth did not converge)\n";
      continue;
    }
    acc.add(fits[p].X, fits[p].y);
  }
  if (acc.pairs_seen() == 0)
    fail(ErrorCode::NonFinite, "no training pair reached converged ground truth");

  AmortizedModel model{Vector(), pset, train.cost, train.epsilon, ridge_lambda,
                       TrainedBy::RA, TrainMeta{}};
  model.omega = acc.solve(ridge_lambda, &model.train_meta.normal_eq_residual_rel);
  model.train_meta.pairs_used = acc.pairs_seen();
  model.train_meta.pairs_skipped = skipped;
  model.train_meta.wall_seconds = seconds_since(t0);
  return model;
}

namespace {

struct Adam {
  Vector m, v;
  double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  int t = 0;

  explicit Adam(Eigen::Index L) : m(Vector::Zero(L)), v(Vector::Zero(L)) {}

  void ascend(Vector& w, const Vector& grad, double lr) {
    ++t;
    m = beta1 * m + (1.0 - beta1) * grad;
    v = beta2 * v + (1.0 - beta2) * grad.cwiseProduct(grad);
    const double bc1 = 1.0 - std::pow(beta1, t);
    const double bc2 = 1.0 - std::pow(beta2, t);
    w.array() +=
        lr * (m.array() / bc1) / ((v.array() / bc2).sqrt() + eps);
  }
};

}  // namespace

Vector oa_fit_coefficients(std::span<const OAPairData> pairs, double epsilon,
                           const OAConfig& cfg, double* best_objective) {
  const int M = int(pairs.size());
  if (M == 0) fail(ErrorCode::InvalidSpec, "no training pairs");
  if (!(epsilon > 0.0))
    fail(ErrorCode::EpsilonNonPositive, "epsilon must be positive");
  if (cfg.iters < 1 || !(cfg.lr > 0.0))
    fail(ErrorCode::InvalidSpec, "iters >= 1 and lr > 0 required");
  if (cfg.batch < 0 || cfg.batch > M)
    fail(ErrorCode::InvalidSpec, "batch must lie in [1, M] (0 = full)");
  const Eigen::Index L = pairs[0].X.cols();
  for (const auto& p : pairs)
    if (p.X.cols() != L)
      fail(ErrorCode::ShapeMismatch, "inconsistent feature widths");

  struct Scratch {
    Vector f, g, rows;
    RowMatrix E;
    Vector grad_w;
    double J = 0.0;
  };
  std::vector<Scratch> scratch(M);

  const auto eval_pair = [&](int p, const Vector& w, bool with_grad) {
    Scratch& s = scratch[p];
    s.f = pairs[p].X * w;
    s.J = kernels::semi_dual_at(pairs[p].C, s.f, pairs[p].alpha, pairs[p].beta,
                                epsilon, s.g, s.rows, s.E);
    if (with_grad)
      s.grad_w = pairs[p].X.transpose() * Vector(pairs[p].alpha - s.rows);
  };
  const auto mean_objective = [&](const Vector& w) {
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (int p = 0; p < M; ++p) eval_pair(p, w, false);
    double sum = 0.0;
    for (int p = 0; p < M; ++p) sum += scratch[p].J;
    return sum / double(M);
  };

  Vector omega = Vector::Zero(L);
  Adam adam(L);
  double best_J = mean_objective(omega);
  Vector best = omega;

  const int batch_size = (cfg.batch == 0 || cfg.batch >= M) ? M : cfg.batch;
  const bool full_batch = batch_size == M;
  std::vector<int> order(M);
  std::iota(order.begin(), order.end(), 0);
  CounterRng shuffle_rng(cfg.seed, 0x0a5huffle);
  std::size_t cursor = 0;
  const int eval_every = std::max(1, M / batch_size);

  std::vector<int> batch(batch_size);
  for (int it = 0; it < cfg.iters; ++it) {
    if (full_batch) {
      batch = order;
    } else {
      for (int b = 0; b < batch_size; ++b) {
        if (cursor == 0) deterministic_shuffle(order, shuffle_rng);
        batch[b] = order[cursor];
        cursor = (cursor + 1) % order.size();
      }
    }
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (int b = 0; b < batch_size; ++b) eval_pair(batch[b], omega, true);

    Vector grad = Vector::Zero(L);
    double batch_J = 0.0;
    for (int b = 0; b < batch_size; ++b) {  // fixed fold order
      grad += scratch[batch[b]].grad_w;
      batch_J += scratch[batch[b]].J;
    }
    grad /= double(batch_size);
    batch_J /= double(batch_size);
    if (!std::isfinite(batch_J) || !grad.allFinite())
      fail(ErrorCode::NonFinite, "semi-dual objective or gradient is not finite");

    if (full_batch) {
      if (batch_J > best_J) {
        best_J = batch_J;
        best = omega;
      }
    } else if (it % eval_every == 0) {
      const double J = mean_objective(omega);
      if (J > best_J) {
        best_J = J;
        best = omega;
      }
    }
    adam.ascend(omega, grad, cfg.lr);
  }
  const double final_J = mean_objective(omega);
  if (final_J > best_J) {
    best_J = final_J;
    best = omega;
  }
  if (best_objective) *best_objective = best_J;
  return best;
}

AmortizedModel oa_fit(const TrainingSet& train, const ProjectionSet& pset,
                      const OAConfig& cfg) {
  if (train.pairs.empty())
    fail(ErrorCode::InvalidSpec, "training set is empty");
  const auto t0 = std::chrono::steady_clock::now();
  const int M = int(train.pairs.size());

  std::vector<OAPairData> data(M);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
  for (int p = 0; p < M; ++p) {
    const auto& [mu, nu] = train.pairs[p];
    data[p].X = sliced_features(mu, nu, train.cost, pset).X;
    data[p].alpha = mu.weights();
    data[p].beta = nu.weights();
    data[p].C = build_cost_matrix(mu, nu, train.cost).values;
  }

  AmortizedModel model{Vector(), pset, train.cost, train.epsilon, 0.0,
                       TrainedBy::OA, TrainMeta{}};
  model.omega =
      oa_fit_coefficients(data, train.epsilon, cfg, &model.train_meta.best_objective);
  model.train_meta.pairs_used = M;
  model.train_meta.wall_seconds = seconds_since(t0);
  return model;
}

Vector predict_potential(const AmortizedModel& model, const DiscreteMeasure& mu,
                         const DiscreteMeasure& nu) {
  if (model.omega.size() != model.pset.count())
    fail(ErrorCode::ShapeMismatch, "model coefficients do not match projections");
  const SlicedFeatures feats = sliced_features(mu, nu, model.cost, model.pset);
  return feats.X * model.omega;
}

TransportPlan predict_plan(const AmortizedModel& model,
                           const DiscreteMeasure& mu,
                           const DiscreteMeasure& nu) {
  const CostMatrix C = build_cost_matrix(mu, nu, model.cost);
  const Vector f = predict_potential(model, mu, nu);
  const Vector g = g_from_f(f, mu, nu, C, model.epsilon);
  return plan_from_potentials(Potentials{f, g, model.epsilon}, C);
}

}  // namespace aot
