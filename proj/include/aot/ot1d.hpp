#pragma once

#include <utility>
#include <vector>

#include "aot/measures.hpp"

namespace aot {

// A measure pushed to the line. positions/weights are in original atom order;
// order[k] is the original index of the k-th smallest position.
struct Projected1DMeasure {
  Vector positions;
  Vector weights;
  std::vector<Eigen::Index> order;
};

Projected1DMeasure make_projected(Vector positions, Vector weights);

enum class OneDCost { Square, Abs };

// Exact 1D solution: monotone chain plan (original index space, zero-mass
// pivots retained) plus the Kantorovich duals propagated along the chain under
// the convention g = 0 at the first sorted target atom.
struct OneDSolution {
  TransportPlan plan;
  Vector f;  // size n, original order
  Vector g;  // size m, original order
  double cost = 0.0;
};

OneDSolution solve_1d(const Projected1DMeasure& a, const Projected1DMeasure& b,
                      OneDCost h);

// Exhaustive unregularized optimum for tiny instances; test oracle only.
// Supported: n == 1 or m == 1; uniform equal weights with n == m (permutation
// enumeration); otherwise n*m <= 12 (vertex enumeration by repeated
// leaf-cell saturation). Throws TooLarge outside these regimes.
std::pair<double, TransportPlan> lp_oracle_small(const DiscreteMeasure& mu,
                                                 const DiscreteMeasure& nu,
                                                 const CostMatrix& C);

}  // namespace aot
