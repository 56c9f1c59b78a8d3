#include "aot/slicing.hpp"

#include <cmath>

#include "aot/rng.hpp"
#include "aot/threads.hpp"

namespace aot {

namespace {

constexpr double kPoleSentinel = 1e12;

}  // namespace

ProjectionSet::ProjectionSet(ProjectionFamily family, RowMatrix thetas,
                             std::uint64_t seed)
    : family_(family), thetas_(std::move(thetas)), seed_(seed) {
  if (thetas_.rows() < 1)
    fail(ErrorCode::BadDimension, "projection set needs L >= 1");
  for (Eigen::Index l = 0; l < thetas_.rows(); ++l) {
    if (std::abs(thetas_.row(l).norm() - 1.0) > 1e-9)
      fail(ErrorCode::BadDimension, "projection directions must be unit norm");
  }
}

ProjectionSet ProjectionSet::prefix(int L) const {
  if (L < 1 || L > count())
    fail(ErrorCode::BadDimension, "prefix length out of range");
  return ProjectionSet(family_, thetas_.topRows(L), seed_);
}

ProjectionSet sample_projections(ProjectionFamily family, int L, int d,
                                 std::uint64_t seed) {
  if (L < 1) fail(ErrorCode::BadDimension, "L must be >= 1");
  if (d < 1) fail(ErrorCode::BadDimension, "d must be >= 1");
  if (family == ProjectionFamily::Stereographic && d < 3)
    fail(ErrorCode::BadDimension, "stereographic slicing needs d >= 3");
  RowMatrix thetas(L, d);
  // direction l draws from stream (seed, l): prefixes are stable in L
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (int l = 0; l < L; ++l) {
    CounterRng rng(seed, std::uint64_t(l));
    double norm = 0.0;
    do {
      for (int k = 0; k < d; ++k) thetas(l, k) = rng.next_gaussian();
      norm = thetas.row(l).norm();
    } while (norm < 1e-12);
    thetas.row(l) /= norm;
  }
  return ProjectionSet(family, std::move(thetas), seed);
}

namespace {

// Signed stereographic coordinate for unit atoms after rotating theta to the
// north pole e_d. The pole component of a rotated atom is <x, theta>; only the
// sign of the first rotated component needs the explicit rotation axis.
struct StereographicFrame {
  Eigen::VectorXd theta;
  Eigen::VectorXd sign_axis;  // R^T e_1

  explicit StereographicFrame(const Eigen::RowVectorXd& theta_row) {
    const Eigen::Index d = theta_row.size();
    theta = theta_row.transpose();
    Eigen::VectorXd e1 = Eigen::VectorXd::Zero(d);
    e1[0] = 1.0;
    const double c = theta[d - 1];  // <theta, e_d>
    Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
    w[d - 1] = 1.0;
    w -= c * theta;
    const double s = w.norm();
    if (s < 1e-12) {
      // theta is at a pole: identity for +e_d, half-turn in the (e_1, e_d)
      // plane for -e_d
      sign_axis = (c > 0.0) ? e1 : Eigen::VectorXd(-e1);
      return;
    }
    const Eigen::VectorXd b = w / s;
    sign_axis =
        e1 + (c - 1.0) * (theta[0] * theta + b[0] * b) - s * (theta[0] * b - b[0] * theta);
  }

  double position(const Eigen::RowVectorXd& atom) const {
    const double pole = atom.dot(theta.transpose());
    const double denom = 1.0 - pole;
    const double sign = atom.dot(sign_axis.transpose()) < 0.0 ? -1.0 : 1.0;
    if (denom < 1e-15) return sign * kPoleSentinel;
    const double radial = std::sqrt(std::max(0.0, 1.0 - pole * pole)) / denom;
    return sign * std::min(radial, kPoleSentinel);
  }
};

}  // namespace

Projected1DMeasure project(const ProjectionSet& pset, int l,
                           const DiscreteMeasure& measure) {
  if (measure.dim() != pset.dim())
    fail(ErrorCode::DimensionMismatch,
         "atom dimension does not match projection set");
  const Eigen::Index n = measure.size();
  Vector positions(n);
  if (pset.family() == ProjectionFamily::LinearSphere) {
    positions = measure.atoms() * pset.theta(l).transpose();
  } else {
    if (measure.domain() != Domain::UnitSphere)
      fail(ErrorCode::DomainMismatch,
           "stereographic projection requires UnitSphere atoms");
    const StereographicFrame frame(pset.theta(l));
    for (Eigen::Index i = 0; i < n; ++i)
      positions[i] = frame.position(measure.atoms().row(i));
  }
  return make_projected(std::move(positions), measure.weights());
}

OneDCost one_d_cost_for(CostFamily family) {
  return family == CostFamily::Euclidean ? OneDCost::Abs : OneDCost::Square;
}

SlicedFeatures sliced_features(const DiscreteMeasure& mu,
                               const DiscreteMeasure& nu, const CostSpec& cost,
                               const ProjectionSet& pset, bool keep_slices) {
  if (cost.family == CostFamily::SphericalGeodesic &&
      pset.family() != ProjectionFamily::Stereographic)
    fail(ErrorCode::DomainMismatch,
         "geodesic cost slices through stereographic projections");
  const int L = pset.count();
  const Eigen::Index n = mu.size();
  const OneDCost h = one_d_cost_for(cost.family);

  SlicedFeatures out;
  out.X.resize(n, L);
  if (keep_slices) out.slices.resize(L);

#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (int l = 0; l < L; ++l) {
    const Projected1DMeasure pa = project(pset, l, mu);
    const Projected1DMeasure pb = project(pset, l, nu);
    OneDSolution sol = solve_1d(pa, pb, h);
    const double mean = mu.weights().dot(sol.f);
    for (Eigen::Index i = 0; i < n; ++i) out.X(i, l) = sol.f[i] - mean;
    if (keep_slices) out.slices[l] = std::move(sol);
  }
  if (!out.X.allFinite())
    fail(ErrorCode::NonFinite, "sliced features are not finite");
  return out;
}

}  // namespace aot
