#pragma once

#include <cstdint>
#include <vector>

#include "aot/measures.hpp"
#include "aot/ot1d.hpp"

namespace aot {

enum class ProjectionFamily : std::uint8_t { LinearSphere = 0, Stereographic = 1 };

// L unit directions on S^{d-1}. Direction l is drawn from the counter stream
// (seed, l), so a set of size L' <= L generated from the same seed is a prefix
// of this one.
class ProjectionSet {
 public:
  ProjectionSet(ProjectionFamily family, RowMatrix thetas, std::uint64_t seed);

  ProjectionFamily family() const { return family_; }
  int count() const { return int(thetas_.rows()); }
  int dim() const { return int(thetas_.cols()); }
  const RowMatrix& thetas() const { return thetas_; }
  Eigen::RowVectorXd theta(int l) const { return thetas_.row(l); }
  std::uint64_t seed() const { return seed_; }

  // First L directions as a set of their own.
  ProjectionSet prefix(int L) const;

 private:
  ProjectionFamily family_;
  RowMatrix thetas_;
  std::uint64_t seed_;
};

ProjectionSet sample_projections(ProjectionFamily family, int L, int d,
                                 std::uint64_t seed);

// LinearSphere: <theta_l, x>. Stereographic: rotate theta_l to the north pole,
// stereograph from the pole onto the equatorial plane, and keep the radial
// coordinate signed by the first rotated component; pole-coincident atoms map
// to the sentinel 1e12.
Projected1DMeasure project(const ProjectionSet& pset, int l,
                           const DiscreteMeasure& measure);

// Per-slice 1D ground cost: squared difference everywhere except the
// Euclidean ambient cost, which slices with the absolute difference.
OneDCost one_d_cost_for(CostFamily family);

// Feature matrix X: column l is the sliced potential f*_{theta_l} read at the
// mu atoms (original order), re-centered to alpha-weighted mean zero.
struct SlicedFeatures {
  RowMatrix X;                        // n x L
  std::vector<OneDSolution> slices;   // filled when requested
};

SlicedFeatures sliced_features(const DiscreteMeasure& mu,
                               const DiscreteMeasure& nu, const CostSpec& cost,
                               const ProjectionSet& pset,
                               bool keep_slices = false);

}  // namespace aot
