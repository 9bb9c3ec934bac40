#include "edgecluster/distsim.hpp"

#include <algorithm>
#include <optional>
#include <queue>

#include "edgecluster/error.hpp"

namespace edgecluster {

void NetworkSpec::add_link(int from, int to, double bandwidth_bps, double latency_s) {
  if (bandwidth_bps <= 0.0) fail(Errc::ConfigError, "link bandwidth must be positive");
  if (latency_s < 0.0) fail(Errc::ConfigError, "link latency must be non-negative");
  links_[{from, to}] = Link{bandwidth_bps, latency_s};
}

double NetworkSpec::transfer_seconds(int from, int to, std::size_t bytes) const {
  if (from == to) return 0.0;  // self links are free
  const auto it = links_.find({from, to});
  if (it == links_.end()) {
    fail(Errc::ConfigError,
         "no link from device " + std::to_string(from) + " to " + std::to_string(to));
  }
  return it->second.latency_s + static_cast<double>(bytes) / it->second.bandwidth_bps;
}

PartialSums local_partial(const PointSet& local_points, const CentroidSet& centroids) {
  if (local_points.dim() != centroids.dim() && local_points.size() > 0) {
    fail(Errc::DimensionMismatch, "shard dimension does not match centroids");
  }
  PartialSums partial;
  partial.k = centroids.size();
  partial.d = centroids.dim();
  partial.sums.assign(partial.k * partial.d, 0.0);
  partial.counts.assign(partial.k, 0);
  if (local_points.size() == 0) return partial;

  const AssignResult assigned = assign_step(local_points, centroids);
  for (std::size_t i = 0; i < local_points.size(); ++i) {
    const auto point = local_points[i];
    const auto target = static_cast<std::size_t>(assigned.labels[i]);
    for (std::size_t c = 0; c < partial.d; ++c) partial.sums[target * partial.d + c] += point[c];
    partial.counts[target] += 1;
  }
  return partial;
}

CentroidSet merge_partials(std::span<const PartialSums> partials, const CentroidSet& previous) {
  if (partials.empty()) fail(Errc::ConfigError, "nothing to merge");
  const std::size_t k = previous.size();
  const std::size_t d = previous.dim();
  const int iteration = partials[0].iteration;
  std::vector<double> sums(k * d, 0.0);
  std::vector<std::uint64_t> counts(k, 0);
  for (const PartialSums& partial : partials) {
    if (partial.iteration != iteration) {
      fail(Errc::IterationMismatch, "partials from different iterations");
    }
    if (partial.k != k || partial.d != d) {
      fail(Errc::DimensionMismatch, "partial shape does not match centroids");
    }
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t c = 0; c < d; ++c) sums[j * d + c] += partial.sums[j * d + c];
      counts[j] += partial.counts[j];
    }
  }
  CentroidSet merged(k, d);
  for (std::size_t j = 0; j < k; ++j) {
    auto row = merged.row(j);
    if (counts[j] == 0) {
      const auto prev = previous[j];
      for (std::size_t c = 0; c < d; ++c) row[c] = prev[c];
    } else {
      for (std::size_t c = 0; c < d; ++c) {
        row[c] = sums[j * d + c] / static_cast<double>(counts[j]);
      }
    }
  }
  return merged;
}

const char* to_string(SimEventKind kind) {
  switch (kind) {
    case SimEventKind::BroadcastSent: return "broadcast_sent";
    case SimEventKind::BroadcastReceived: return "broadcast_received";
    case SimEventKind::ComputeDone: return "compute_done";
    case SimEventKind::PartialSent: return "partial_sent";
    case SimEventKind::PartialReceived: return "partial_received";
    case SimEventKind::MergeDone: return "merge_done";
    case SimEventKind::ConvergedSent: return "converged_sent";
    case SimEventKind::ConvergedReceived: return "converged_received";
  }
  return "unknown";
}

namespace {

struct QueuedEvent {
  double time;
  int device;  // where the event happens; simultaneity tiebreak
  int kind_rank;
  int from;
  int to;
  int iteration;
  std::uint64_t seq;
  SimEventKind kind;
};

struct LaterEvent {
  bool operator()(const QueuedEvent& a, const QueuedEvent& b) const {
    const auto key = [](const QueuedEvent& e) {
      return std::tuple(e.time, e.device, e.kind_rank, e.from, e.to, e.seq);
    };
    return key(a) > key(b);
  }
};

int rank_of(SimEventKind kind) { return static_cast<int>(kind); }

}  // namespace

SimReport simulate(const PointSet& points, const CentroidSet& seeds,
                   const StopRule& stop, const std::vector<DeviceSpec>& fleet,
                   const NetworkSpec& network, int master) {
  if (points.dim() != seeds.dim()) {
    fail(Errc::DimensionMismatch, "seed dimension does not match points");
  }
  if (seeds.empty()) fail(Errc::TooFewCentroids, "need at least one centroid");
  if (stop.max_iterations < 1) fail(Errc::ConfigError, "iteration bound must be >= 1");
  if (fleet.empty()) fail(Errc::PartitionError, "fleet is empty");

  // The fleet must partition the points.
  std::vector<int> owner(points.size(), -1);
  std::ptrdiff_t master_index = -1;
  for (std::size_t w = 0; w < fleet.size(); ++w) {
    if (fleet[w].compute_rate <= 0.0) fail(Errc::ConfigError, "compute_rate must be positive");
    if (fleet[w].device_id == master) master_index = static_cast<std::ptrdiff_t>(w);
    for (const std::size_t id : fleet[w].local_point_ids) {
      if (id >= points.size() || owner[id] != -1) {
        fail(Errc::PartitionError, "point owned by zero or multiple devices");
      }
      owner[id] = static_cast<int>(w);
    }
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (owner[i] == -1) fail(Errc::PartitionError, "point owned by no device");
  }
  if (master_index < 0) fail(Errc::ConfigError, "master is not part of the fleet");

  const std::size_t k = seeds.size();
  const std::size_t d = seeds.dim();
  const std::size_t fleet_size = fleet.size();

  std::vector<PointSet> shards;
  shards.reserve(fleet_size);
  for (const DeviceSpec& device : fleet) {
    PointSet shard(device.local_point_ids.size(), d);
    for (std::size_t i = 0; i < device.local_point_ids.size(); ++i) {
      const auto src = points[device.local_point_ids[i]];
      auto row = shard.row(i);
      std::copy(src.begin(), src.end(), row.begin());
    }
    shards.push_back(std::move(shard));
  }

  SimReport report;
  CentroidSet centroids = seeds;
  std::vector<std::optional<PartialSums>> inbox(fleet_size);
  std::vector<std::vector<int>> last_labels(fleet_size);
  std::size_t collected = 0;
  int iteration = 1;

  std::priority_queue<QueuedEvent, std::vector<QueuedEvent>, LaterEvent> queue;
  std::uint64_t seq = 0;
  const auto push = [&](double time, SimEventKind kind, int event_device, int from, int to,
                        int iter) {
    queue.push({time, event_device, rank_of(kind), from, to, iter, seq++, kind});
  };

  const auto compute_partial = [&](std::size_t w) {
    const AssignResult assigned = shards[w].size() > 0
                                      ? assign_step(shards[w], centroids)
                                      : AssignResult{};
    last_labels[w] = assigned.labels;
    PartialSums partial;
    partial.k = k;
    partial.d = d;
    partial.sums.assign(k * d, 0.0);
    partial.counts.assign(k, 0);
    for (std::size_t i = 0; i < shards[w].size(); ++i) {
      const auto point = shards[w][i];
      const auto target = static_cast<std::size_t>(assigned.labels[i]);
      for (std::size_t c = 0; c < d; ++c) partial.sums[target * d + c] += point[c];
      partial.counts[target] += 1;
    }
    partial.sender = fleet[w].device_id;
    partial.iteration = iteration;
    return partial;
  };

  const auto start_round = [&](double time) {
    for (std::size_t w = 0; w < fleet_size; ++w) {
      const int dev = fleet[w].device_id;
      if (static_cast<std::ptrdiff_t>(w) == master_index) {
        // The master's own shard needs no transfer.
        const double compute = static_cast<double>(shards[w].size()) *
                               static_cast<double>(k) / fleet[w].compute_rate;
        push(time + compute, SimEventKind::ComputeDone, dev, dev, dev, iteration);
        continue;
      }
      push(time, SimEventKind::BroadcastSent, master, master, dev, iteration);
      report.bytes_transferred += broadcast_bytes(k, d);
      const double arrival = time + network.transfer_seconds(master, dev, broadcast_bytes(k, d));
      push(arrival, SimEventKind::BroadcastReceived, dev, master, dev, iteration);
    }
  };

  start_round(0.0);
  while (!queue.empty()) {
    const QueuedEvent event = queue.top();
    queue.pop();
    report.timeline.push_back({event.time, event.iteration, event.kind, event.from, event.to});

    const auto fleet_index_of = [&](int dev) {
      for (std::size_t w = 0; w < fleet_size; ++w) {
        if (fleet[w].device_id == dev) return w;
      }
      fail(Errc::ConfigError, "unknown device in event");
    };

    switch (event.kind) {
      case SimEventKind::BroadcastReceived: {
        const std::size_t w = fleet_index_of(event.to);
        const double compute = static_cast<double>(shards[w].size()) *
                               static_cast<double>(k) / fleet[w].compute_rate;
        push(event.time + compute, SimEventKind::ComputeDone, event.to, event.to, event.to,
             event.iteration);
        break;
      }
      case SimEventKind::ComputeDone: {
        const std::size_t w = fleet_index_of(event.to);
        inbox[w] = compute_partial(w);
        if (static_cast<std::ptrdiff_t>(w) == master_index) {
          if (++collected == fleet_size) {
            push(event.time, SimEventKind::MergeDone, master, master, master, event.iteration);
          }
        } else {
          push(event.time, SimEventKind::PartialSent, event.to, event.to, master,
               event.iteration);
          report.bytes_transferred += partial_bytes(k, d);
          const double arrival =
              event.time + network.transfer_seconds(event.to, master, partial_bytes(k, d));
          push(arrival, SimEventKind::PartialReceived, master, event.to, master,
               event.iteration);
        }
        break;
      }
      case SimEventKind::PartialReceived: {
        if (++collected == fleet_size) {
          push(event.time, SimEventKind::MergeDone, master, master, master, event.iteration);
        }
        break;
      }
      case SimEventKind::MergeDone: {
        std::vector<PartialSums> partials;
        partials.reserve(fleet_size);
        for (auto& slot : inbox) {
          partials.push_back(std::move(*slot));
          slot.reset();
        }
        collected = 0;
        CentroidSet merged = merge_partials(partials, centroids);
        const double moved = max_row_displacement(centroids, merged);
        centroids = std::move(merged);
        report.iterations = iteration;

        bool stop_now = false;
        if (stop.kind == StopRule::Kind::FixedIterations) {
          if (iteration >= stop.max_iterations) {
            report.stop_reason = StopReason::FixedIterations;
            stop_now = true;
          }
        } else if (stop.kind == StopRule::Kind::NoChange && moved == 0.0) {
          report.stop_reason = StopReason::NoChange;
          stop_now = true;
        } else if (stop.kind == StopRule::Kind::EpsilonChange && moved <= stop.epsilon) {
          report.stop_reason = StopReason::EpsilonChange;
          stop_now = true;
        } else if (iteration >= stop.max_iterations) {
          report.stop_reason = StopReason::IterationCap;
          stop_now = true;
        }

        if (stop_now) {
          report.simulated_clock = event.time;
          for (std::size_t w = 0; w < fleet_size; ++w) {
            if (static_cast<std::ptrdiff_t>(w) == master_index) continue;
            const int dev = fleet[w].device_id;
            push(event.time, SimEventKind::ConvergedSent, master, master, dev, iteration);
            report.bytes_transferred += converged_bytes();
            const double arrival =
                event.time + network.transfer_seconds(master, dev, converged_bytes());
            push(arrival, SimEventKind::ConvergedReceived, dev, master, dev, iteration);
          }
        } else {
          ++iteration;
          start_round(event.time);
        }
        break;
      }
      case SimEventKind::BroadcastSent:
      case SimEventKind::PartialSent:
      case SimEventKind::ConvergedSent:
      case SimEventKind::ConvergedReceived:
        break;  // timeline bookkeeping only
    }
  }

  report.final_centroids = std::move(centroids);
  report.labels.assign(points.size(), 0);
  for (std::size_t w = 0; w < fleet_size; ++w) {
    for (std::size_t i = 0; i < fleet[w].local_point_ids.size(); ++i) {
      report.labels[fleet[w].local_point_ids[i]] = last_labels[w][i];
    }
  }
  return report;
}

}  // namespace edgecluster
