#pragma once

// Independent straight-line reference implementations used as oracles. These
// deliberately avoid the library's internal helpers: plain vector-of-vector
// storage and naive scans, so they share no code with the paths they check.

#include <cstdint>
#include <vector>

#include "edgecluster/descriptor.hpp"
#include "edgecluster/image.hpp"
#include "edgecluster/kmeans.hpp"
#include "edgecluster/pipeline.hpp"

namespace oracles {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

Mat to_rows(const edgecluster::VecArray& array);
edgecluster::VecArray from_rows(const Mat& rows);

// Dense gradient-orientation descriptors, coded from the procedure statement.
Mat reference_extract(const edgecluster::GrayImage& image,
                      const edgecluster::ExtractorParams& params);

// Exhaustive nearest-centroid search (lowest index on ties).
std::vector<int> brute_force_assign(const Mat& points, const Mat& centroids);
double brute_force_objective(const Mat& points, const Mat& centroids,
                             const std::vector<int>& labels);

// Means by direct per-cluster summation; requires every cluster non-empty.
Mat reference_update(const Mat& points, const std::vector<int>& labels, std::size_t k);

struct ReferenceRun {
  std::vector<std::vector<int>> label_trace;  // labels after each assignment
  std::vector<double> objective_trace;
  Mat centroids;
  int iterations = 0;
  bool hit_empty_cluster = false;  // true if any assignment left a cluster empty
};

// Straight-line Lloyd with the same stop semantics; instances that trigger
// the empty-cluster rule are flagged so tests can skip or regenerate.
ReferenceRun reference_lloyd(const Mat& points, const Mat& seeds, int max_iterations,
                             bool stop_on_no_change);

// Exhaustive best-permutation overlap; k <= 8.
double brute_overlap(const std::vector<int>& a, const std::vector<int>& b, std::size_t k);

std::vector<std::uint32_t> reference_vectorize(const Mat& descriptors, const Mat& words);

// Per-cluster member closest to the centroid; pairs of (cluster, item index).
std::vector<std::pair<int, std::size_t>> reference_representatives(
    const Mat& points, const std::vector<int>& labels, const Mat& centroids);

}  // namespace oracles
