#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "edgecluster/manifest.hpp"

namespace edgecluster {

// Synthetic stand-ins for a co-located photo fleet. Images are tilings of
// oriented stripe patches, so descriptor clusters are controlled by the
// stripe angle:
//   blobs          - well-separated angle classes (tight descriptor groups)
//   geo-correlated - two angle classes aligned with two GPS sites
//   overlapping    - wide per-patch angle jitter, tuned so a large share of
//                    descriptors sit on vocabulary-cluster boundaries
enum class DatasetProfile { Blobs, GeoCorrelated, Overlapping };

DatasetProfile dataset_profile_from_string(const std::string& name);
const char* to_string(DatasetProfile profile);

struct GroundTruth {
  std::uint32_t image_id = 0;
  int cls = 0;
  int site = 0;
  double theta_deg = 0.0;  // class stripe angle
};

struct GeneratedDataset {
  DatasetManifest manifest;
  std::vector<GroundTruth> truth;
};

// Writes manifest.json, images/*.pgm and ground_truth.json under out_dir.
// Byte-identical outputs for identical (profile, n_images, rng_seed).
GeneratedDataset generate_dataset(DatasetProfile profile, int n_images,
                                  const std::filesystem::path& out_dir,
                                  std::uint64_t rng_seed);

}  // namespace edgecluster
