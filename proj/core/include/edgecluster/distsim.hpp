#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "edgecluster/kmeans.hpp"
#include "edgecluster/wire.hpp"

namespace edgecluster {

struct DeviceSpec {
  int device_id = 0;
  double compute_rate = 1.0;  // distance evaluations per second
  std::vector<std::size_t> local_point_ids;
};

// Per ordered device pair. A device's link to itself is implicit and free;
// broadcast is modeled as a unicast on each master->worker link.
class NetworkSpec {
 public:
  void add_link(int from, int to, double bandwidth_bps, double latency_s);

  // Transfer time for a message of `bytes` on the from->to link.
  double transfer_seconds(int from, int to, std::size_t bytes) const;

 private:
  struct Link {
    double bandwidth_bps;
    double latency_s;
  };
  std::map<std::pair<int, int>, Link> links_;
};

// Assignment plus per-cluster sums/counts over one device's shard.
PartialSums local_partial(const PointSet& local_points, const CentroidSet& centroids);

// Count-weighted merge: centroid j = sum of sums / sum of counts; a globally
// empty cluster keeps its previous coordinates (the master holds no raw
// points to re-seed from).
CentroidSet merge_partials(std::span<const PartialSums> partials, const CentroidSet& previous);

enum class SimEventKind {
  BroadcastSent,
  BroadcastReceived,
  ComputeDone,
  PartialSent,
  PartialReceived,
  MergeDone,
  ConvergedSent,
  ConvergedReceived,
};
const char* to_string(SimEventKind kind);

struct SimEvent {
  double time = 0.0;
  int iteration = 0;
  SimEventKind kind = SimEventKind::BroadcastSent;
  int from = 0;
  int to = 0;
};

struct SimReport {
  CentroidSet final_centroids;
  std::vector<int> labels;  // global point order
  double simulated_clock = 0.0;
  std::uint64_t bytes_transferred = 0;
  std::vector<SimEvent> timeline;
  int iterations = 0;
  StopReason stop_reason = StopReason::NoChange;
};

// Deterministic discrete-event run of the master/worker protocol: the master
// broadcasts centroids, every device computes a PartialSums over its shard
// and replies, the master merges and either iterates or sends Converged.
// Simultaneous events are ordered by (time, device, event kind). The fleet
// must partition the points; the master may or may not hold a shard.
SimReport simulate(const PointSet& points, const CentroidSet& seeds,
                   const StopRule& stop, const std::vector<DeviceSpec>& fleet,
                   const NetworkSpec& network, int master);

}  // namespace edgecluster
