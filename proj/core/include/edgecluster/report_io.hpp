#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "edgecluster/distsim.hpp"
#include "edgecluster/pipeline.hpp"
#include "edgecluster/placement.hpp"

namespace edgecluster {

const char* stop_reason_name(StopReason reason);

// Reports are JSON with stable key order; wall-clock times live only in
// "wall_ms" fields so deterministic comparisons can strip them.
std::string pipeline_report_to_json(const PipelineReport& report);
void save_pipeline_report(const std::filesystem::path& path, const PipelineReport& report);

// Image-cluster labels as stored in a pipeline report, for baseline overlap.
struct StoredImageLabels {
  std::vector<std::uint32_t> image_ids;
  std::vector<int> labels;
  std::size_t k = 0;
};
StoredImageLabels load_report_image_labels(const std::filesystem::path& path);

std::string sim_report_to_json(const SimReport& report, std::uint64_t rng_seed, int master);
void save_sim_report(const std::filesystem::path& path, const SimReport& report,
                     std::uint64_t rng_seed, int master);

// Label files: first line "n k", then one label per line.
void write_labels_file(const std::filesystem::path& path, std::span<const int> labels,
                       std::size_t k);
struct LabelsFile {
  std::vector<int> labels;
  std::size_t k = 0;
};
LabelsFile read_labels_file(const std::filesystem::path& path);

// Sorted active-point r values as plot-ready "r_value,cdf" rows.
void write_rvalue_cdf(const std::filesystem::path& path, std::span<const double> active_r);

struct PlacementInput {
  WorkloadProfile workload;
  RateModel rates;
  double f = 0.0;
  std::vector<double> bandwidths_bps;
};
PlacementInput load_placement_config(const std::filesystem::path& path);
std::string placement_config_to_json(const PlacementInput& input);
void save_placement_config(const std::filesystem::path& path, const PlacementInput& input);

}  // namespace edgecluster
