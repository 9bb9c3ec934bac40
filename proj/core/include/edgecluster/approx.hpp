#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "edgecluster/kmeans.hpp"

namespace edgecluster {

// Active points are the points that change cluster membership between the
// first and second assignment passes; everything else is frozen afterwards.
// r close to 0 marks a point sitting on a cluster boundary; inactive points
// carry r = 1 by convention.
struct ActiveReport {
  std::vector<std::size_t> active_ids;
  std::vector<double> r_values;  // one per point
  double active_fraction = 0.0;
};

// 1 - d(x, nearest) / d(x, second nearest), Euclidean. 1 when the point sits
// on a centroid, 0 when the two nearest centroids are equidistant.
double r_value(std::span<const double> point, const CentroidSet& centroids);

// Snapshot after the two detection iterations; approx_lloyd resumes from it
// without recomputing the passes.
struct TwoIterState {
  std::vector<int> labels;       // after the second assignment
  CentroidSet centroids;         // after the second update
  std::vector<double> objective_trace;  // J1, J2
  std::uint64_t evaluations = 0;
};

std::pair<ActiveReport, TwoIterState> detect_active(const PointSet& points,
                                                    const CentroidSet& seeds);

// Lloyd with inactive points frozen after iteration 2: their mass stays in
// the per-cluster running sums (centroids remain means over all points) but
// only active points are re-evaluated, which is where the work saving comes
// from. Iterations 1-2 are identical to lloyd, including stop handling.
ClusterRun approx_lloyd(const PointSet& points, const CentroidSet& seeds,
                        const StopRule& stop, ActiveReport* report = nullptr);

}  // namespace edgecluster
