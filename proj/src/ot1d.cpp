#include "aot/ot1d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace aot {

namespace {

constexpr double kTieTol = 1e-12;  // absolute, on cumulative masses

double one_d_cost(double x, double y, OneDCost h) {
  const double diff = x - y;
  return h == OneDCost::Square ? diff * diff : std::abs(diff);
}

}  // namespace

Projected1DMeasure make_projected(Vector positions, Vector weights) {
  if (positions.size() == 0) fail(ErrorCode::EmptyMeasure, "empty 1D measure");
  if (positions.size() != weights.size())
    fail(ErrorCode::ShapeMismatch, "positions and weights sizes differ");
  Projected1DMeasure out;
  out.order.resize(positions.size());
  std::iota(out.order.begin(), out.order.end(), Eigen::Index{0});
  std::stable_sort(out.order.begin(), out.order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     return positions[a] < positions[b];
                   });
  out.positions = std::move(positions);
  out.weights = std::move(weights);
  return out;
}

OneDSolution solve_1d(const Projected1DMeasure& a, const Projected1DMeasure& b,
                      OneDCost h) {
  const Eigen::Index na = a.positions.size(), nb = b.positions.size();
  if (na == 0 || nb == 0) fail(ErrorCode::EmptyMeasure, "empty 1D measure");
  if (std::abs(a.weights.sum() - 1.0) > 1e-9 ||
      std::abs(b.weights.sum() - 1.0) > 1e-9)
    fail(ErrorCode::MassMismatch, "1D weights must sum to 1 within 1e-9");

  // cumulative masses in sorted order; the final entries are pinned to 1 so
  // the sweep always terminates on a tie
  Vector ca(na), cb(nb);
  double acc = 0.0;
  for (Eigen::Index k = 0; k < na; ++k) {
    acc += a.weights[a.order[k]];
    ca[k] = acc;
  }
  ca[na - 1] = 1.0;
  acc = 0.0;
  for (Eigen::Index k = 0; k < nb; ++k) {
    acc += b.weights[b.order[k]];
    cb[k] = acc;
  }
  cb[nb - 1] = 1.0;

  // north-west-corner sweep in sorted index space
  struct SortedEntry {
    Eigen::Index i, j;
    double mass;
  };
  std::vector<SortedEntry> chain;
  chain.reserve(na + nb - 1);
  Eigen::Index i = 0, j = 0;
  double consumed = 0.0;
  while (true) {
    const double cai = ca[i], cbj = cb[j];
    const bool tie = std::abs(cai - cbj) <= kTieTol;
    const double next = std::min(cai, cbj);
    chain.push_back({i, j, std::max(0.0, next - consumed)});
    consumed = next;
    if (tie) {
      if (i + 1 >= na && j + 1 >= nb) break;
      if (i + 1 < na && j + 1 < nb) {
        // simultaneous advance: zero-mass pivot keeps the chain connected so
        // the duals stay defined
        chain.push_back({i + 1, j, 0.0});
        ++i;
        ++j;
      } else if (i + 1 < na) {
        ++i;
      } else {
        ++j;
      }
    } else if (cai < cbj) {
      if (i + 1 >= na) break;
      ++i;
    } else {
      if (j + 1 >= nb) break;
      ++j;
    }
  }

  // propagate duals along the chain: g = 0 at the first sorted target atom,
  // each later triple introduces exactly one new index
  Vector fs(na), gs(nb);
  const double c00 = one_d_cost(a.positions[a.order[0]],
                                b.positions[b.order[0]], h);
  gs[0] = 0.0;
  fs[0] = c00;
  Eigen::Index pi = 0, pj = 0;
  for (std::size_t k = 1; k < chain.size(); ++k) {
    const auto& e = chain[k];
    const double cij = one_d_cost(a.positions[a.order[e.i]],
                                  b.positions[b.order[e.j]], h);
    if (e.i != pi) {
      fs[e.i] = cij - gs[e.j];
    } else {
      gs[e.j] = cij - fs[e.i];
    }
    pi = e.i;
    pj = e.j;
  }
  (void)pj;

  OneDSolution sol;
  sol.f.resize(na);
  sol.g.resize(nb);
  for (Eigen::Index k = 0; k < na; ++k) sol.f[a.order[k]] = fs[k];
  for (Eigen::Index k = 0; k < nb; ++k) sol.g[b.order[k]] = gs[k];

  double cost = 0.0;
  std::vector<PlanEntry> entries;
  entries.reserve(chain.size());
  for (const auto& e : chain) {
    cost += e.mass * one_d_cost(a.positions[a.order[e.i]],
                                b.positions[b.order[e.j]], h);
    entries.push_back({a.order[e.i], b.order[e.j], e.mass});
  }
  sol.cost = cost;
  sol.plan = TransportPlan::sparse_chain(std::move(entries), na, nb, 0.0);
  return sol;
}

namespace {

// Enumerates all vertices of the transportation polytope by repeatedly
// saturating an active cell; every basic feasible solution is reachable by
// some saturation order. Exponential; gated by the caller.
void enumerate_vertices(const RowMatrix& C, Vector& rem_a, Vector& rem_b,
                        RowMatrix& partial, double& best_cost,
                        RowMatrix& best_plan, double partial_cost) {
  if (partial_cost >= best_cost) return;
  bool any_active = false;
  for (Eigen::Index i = 0; i < rem_a.size() && !any_active; ++i) {
    if (rem_a[i] <= kTieTol) continue;
    for (Eigen::Index j = 0; j < rem_b.size(); ++j) {
      if (rem_b[j] > kTieTol) {
        any_active = true;
        break;
      }
    }
  }
  if (!any_active) {
    best_cost = partial_cost;
    best_plan = partial;
    return;
  }
  for (Eigen::Index i = 0; i < rem_a.size(); ++i) {
    if (rem_a[i] <= kTieTol) continue;
    for (Eigen::Index j = 0; j < rem_b.size(); ++j) {
      if (rem_b[j] <= kTieTol) continue;
      const double mass = std::min(rem_a[i], rem_b[j]);
      rem_a[i] -= mass;
      rem_b[j] -= mass;
      partial(i, j) += mass;
      enumerate_vertices(C, rem_a, rem_b, partial, best_cost, best_plan,
                         partial_cost + mass * C(i, j));
      partial(i, j) -= mass;
      rem_a[i] += mass;
      rem_b[j] += mass;
    }
  }
}

bool uniform_weights(const Vector& w) {
  const double target = 1.0 / double(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (std::abs(w[i] - target) > 1e-12) return false;
  return true;
}

}  // namespace

std::pair<double, TransportPlan> lp_oracle_small(const DiscreteMeasure& mu,
                                                 const DiscreteMeasure& nu,
                                                 const CostMatrix& C) {
  const Eigen::Index n = mu.size(), m = nu.size();
  if (C.rows() != n || C.cols() != m)
    fail(ErrorCode::ShapeMismatch, "cost matrix shape does not match measures");
  if (n > 6 || m > 6)
    fail(ErrorCode::TooLarge, "oracle limited to n <= 6 and m <= 6");

  if (n == 1 || m == 1) {
    // single feasible coupling
    RowMatrix P(n, m);
    if (n == 1)
      P.row(0) = nu.weights().transpose();
    else
      P.col(0) = mu.weights();
    double cost = (P.array() * C.values.array()).sum();
    return {cost, TransportPlan::dense(std::move(P), 0.0)};
  }

  if (n == m && uniform_weights(mu.weights()) && uniform_weights(nu.weights())) {
    std::vector<Eigen::Index> perm(n);
    std::iota(perm.begin(), perm.end(), Eigen::Index{0});
    double best = std::numeric_limits<double>::infinity();
    std::vector<Eigen::Index> best_perm = perm;
    do {
      double cost = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) cost += C.values(i, perm[i]);
      if (cost < best) {
        best = cost;
        best_perm = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    RowMatrix P = RowMatrix::Zero(n, m);
    for (Eigen::Index i = 0; i < n; ++i) P(i, best_perm[i]) = 1.0 / double(n);
    return {best / double(n), TransportPlan::dense(std::move(P), 0.0)};
  }

  if (n * m > 12)
    fail(ErrorCode::TooLarge,
         "general-weight oracle limited to n*m <= 12 cells");
  Vector rem_a = mu.weights(), rem_b = nu.weights();
  RowMatrix partial = RowMatrix::Zero(n, m);
  RowMatrix best_plan = RowMatrix::Zero(n, m);
  double best_cost = std::numeric_limits<double>::infinity();
  enumerate_vertices(C.values, rem_a, rem_b, partial, best_cost, best_plan,
                     0.0);
  return {best_cost, TransportPlan::dense(std::move(best_plan), 0.0)};
}

}  // namespace aot
