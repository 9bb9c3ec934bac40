#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "edgecluster/points.hpp"

namespace edgecluster::detail {

// Turns accumulated per-cluster sums/counts into centroids and applies the
// empty-cluster rule: an empty cluster is re-seeded with the movable point
// farthest from its own current mean (lowest point index on ties), and that
// point's mass is moved out of its source cluster. Empty clusters are visited
// in ascending index order. Only points listed in `movable` may be donated;
// when a cluster is empty and no movable donor exists the row falls back to
// `previous` (when given) or to the lowest-index point.
//
// `labels` entries for donated points are rewritten in place.
CentroidSet finalize_means(const PointSet& points, std::size_t k,
                           std::vector<double>& sums,
                           std::vector<std::uint64_t>& counts,
                           std::span<const std::size_t> movable,
                           std::vector<int>& labels,
                           const CentroidSet* previous);

// Nearest + second-nearest squared distances for one point.
struct Margins {
  int best = 0;
  double best_sq = 0.0;
  double second_sq = 0.0;
};
Margins nearest_two(std::span<const double> point, const CentroidSet& centroids);

}  // namespace edgecluster::detail
