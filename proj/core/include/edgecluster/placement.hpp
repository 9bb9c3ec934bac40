#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace edgecluster {

// Pipeline stages in execution order; the placement cut indexes into this.
enum PipelineStage : int {
  kStageExtract = 0,
  kStageVocab = 1,
  kStageVectorize = 2,
  kStageImgCluster = 3,
};
inline constexpr int kStageCount = 4;

struct WorkloadProfile {
  // Per-stage work in distance-evaluation-equivalent scalar operations.
  std::array<double, kStageCount> work{};
  double raw_images_bytes = 0.0;
  double descriptors_bytes = 0.0;
  double vocabulary_bytes = 0.0;
  double bow_bytes = 0.0;
  double representative_image_bytes = 0.0;  // per image
  std::uint64_t image_count = 0;
};

// cut c: stages with index < c run on the mobile fleet, the rest in the
// cloud. c = 4 is all-mobile, c = 0 all-cloud; only these five windowed
// placements exist. f is the fraction of photos uploaded as representatives.
struct PlacementConfig {
  int cut = 4;
  double f = 0.0;
};

struct RateModel {
  double mobile_rate = 1.0;  // operations per second
  double cloud_rate = 1.0;
  double bandwidth_bps = 1.0;
  double uplink_latency_s = 0.0;
};

struct CostBreakdown {
  double t_mobile = 0.0;
  double t_cloud = 0.0;
  double t_tx = 0.0;
  double total = 0.0;  // always t_mobile + t_cloud + t_tx
};

// Payload crossing the mobile/cloud boundary for a given cut: raw images at
// cut 0, descriptors at cut 1, descriptors plus vocabulary at cut 2 (cloud
// vectorization needs both), BoW vectors at cut 3, nothing at cut 4.
// Representatives are charged in every configuration.
double cut_bytes(const WorkloadProfile& workload, int cut);

CostBreakdown evaluate_config(const WorkloadProfile& workload,
                              const PlacementConfig& placement,
                              const RateModel& rates);

struct SweepRow {
  double bandwidth_bps = 0.0;
  std::array<double, 5> totals{};
  int argmin_cut = 4;  // ties prefer the larger cut (more mobile)
};

std::vector<SweepRow> sweep(const WorkloadProfile& workload, const RateModel& rates,
                            std::span<const double> bandwidths_bps, double f);

// CSV: bandwidth_bps,cut0,cut1,cut2,cut3,cut4,argmin_cut
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace edgecluster
