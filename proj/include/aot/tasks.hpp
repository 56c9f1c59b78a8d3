#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>

#include "aot/amortize.hpp"
#include "aot/measures.hpp"

namespace aot {

enum class TaskFamily : std::uint8_t {
  Grid2D = 0,
  SphereSupplyDemand = 1,
  ColorClouds = 2
};

double default_epsilon(TaskFamily family);          // 0.1 / 0.5 / 0.005
CostSpec default_cost(TaskFamily family);
ProjectionFamily default_projection(TaskFamily family);

struct TaskSpec {
  TaskFamily family = TaskFamily::Grid2D;
  int n = 196;
  int m = 196;
  double epsilon = 0.0;  // 0 -> family default
  CostSpec cost;
  bool cost_set = false;  // false -> family default
  std::uint64_t seed = 0;
  int count = 100;

  double resolved_epsilon() const {
    return epsilon > 0.0 ? epsilon : default_epsilon(family);
  }
  CostSpec resolved_cost() const {
    return cost_set ? cost : default_cost(family);
  }
};

// Deterministic synthetic meta-distribution; pair p is a pure function of
// (spec.seed, p).
TrainingSet generate(const TaskSpec& spec);

// Loads an AOTM pair and validates it against the cost family. The total mass
// may deviate from 1 by at most 1e-6 before normalization.
MeasurePair load_measure_pair(const std::filesystem::path& path_mu,
                              const std::filesystem::path& path_nu,
                              const CostSpec& cost);

// First floor(fraction * count) pairs train, the rest test.
std::pair<TrainingSet, TrainingSet> split_train_test(const TrainingSet& all,
                                                     double train_fraction = 0.7);

}  // namespace aot
