#pragma once

#include "aot/measures.hpp"
#include "aot/slicing.hpp"

namespace aot {

struct LiftedPlanResult {
  TransportPlan plan;  // sparse chain on original indices
  int chosen_theta_index = 0;
  double lifted_cost = 0.0;  // <C, plan> in the ambient cost
};

// Training-free baseline: lift each slice's monotone 1D coupling to the
// original indices, score it against the ambient cost table, and keep the
// cheapest direction (ties break to the smallest index).
LiftedPlanResult min_swgg_plan(const DiscreteMeasure& mu,
                               const DiscreteMeasure& nu, const CostSpec& cost,
                               const ProjectionSet& pset);

}  // namespace aot
