#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "edgecluster/points.hpp"

namespace edgecluster {

// Convergence criterion for Lloyd iterations. NoChange and EpsilonChange
// additionally carry a hard iteration cap so degenerate tie cycles terminate.
struct StopRule {
  enum class Kind { FixedIterations, NoChange, EpsilonChange };

  Kind kind = Kind::NoChange;
  int max_iterations = 100;
  double epsilon = 0.0;

  static StopRule fixed(int iterations) {
    return {Kind::FixedIterations, iterations, 0.0};
  }
  static StopRule no_change(int cap = 100) { return {Kind::NoChange, cap, 0.0}; }
  static StopRule epsilon_change(double epsilon, int cap = 100) {
    return {Kind::EpsilonChange, cap, epsilon};
  }
};

enum class StopReason { FixedIterations, NoChange, EpsilonChange, IterationCap };

struct ClusterRun {
  std::vector<int> labels;
  CentroidSet final_centroids;
  std::vector<double> objective_trace;  // J after each assignment pass
  int iterations = 0;
  StopReason stop_reason = StopReason::NoChange;
  std::uint64_t evaluations = 0;  // point-centroid distance computations
};

struct AssignResult {
  std::vector<int> labels;
  double objective = 0.0;
};

// Nearest-centroid assignment by squared Euclidean distance, ties to the
// lowest centroid index. objective is the summed squared distance.
AssignResult assign_step(const PointSet& points, const CentroidSet& centroids);

// Per-cluster means. An empty cluster is re-seeded with the point farthest
// from its own (freshly computed) centroid, lowest point index on ties; the
// donated point is excluded from its source mean. Empty clusters are handled
// in ascending index order.
CentroidSet update_step(const PointSet& points, std::span<const int> labels,
                        std::size_t k);

ClusterRun lloyd(const PointSet& points, const CentroidSet& seeds,
                 const StopRule& stop);

// Forgy seeding: k distinct point values sampled without replacement with the
// generator documented in docs/rng.md.
CentroidSet seed_random(const PointSet& points, std::size_t k,
                        std::uint64_t rng_seed);

// Text seed files: first line "k d", then one centroid per line.
void write_seed_file(std::ostream& out, const CentroidSet& centroids);
void write_seed_file(const std::filesystem::path& path, const CentroidSet& centroids);
CentroidSet read_seed_file(std::istream& in);
CentroidSet read_seed_file(const std::filesystem::path& path);

}  // namespace edgecluster
