#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace edgecluster {

// Capture metadata delivered through the manifest (sidecar for EXIF-style
// GPS/orientation fields).
struct Metadata {
  double lat = 0.0;          // degrees, [-90, 90]
  double lon = 0.0;          // degrees, [-180, 180]
  double orientation = 0.0;  // compass degrees, [0, 360)
};

struct ImageRecord {
  std::uint32_t image_id = 0;
  int device_id = 0;
  std::filesystem::path path;  // resolved against the manifest directory
  Metadata meta;
};

struct LinkSpec {
  int from = 0;
  int to = 0;
  double bandwidth_bps = 0.0;
  double latency_s = 0.0;
};

struct DeviceEntry {
  int device_id = 0;
  std::optional<double> compute_rate;  // distance evaluations per second
  std::vector<ImageRecord> images;
};

struct DatasetManifest {
  std::vector<DeviceEntry> devices;
  std::vector<LinkSpec> links;

  std::vector<ImageRecord> all_images() const;
  std::size_t image_count() const;
};

// Validates ids, ranges and path resolvability; image paths are rewritten to
// be relative to the manifest's directory.
DatasetManifest load_manifest(const std::filesystem::path& path);
DatasetManifest parse_manifest(const std::string& json_text,
                               const std::filesystem::path& base_dir);

std::string manifest_to_json(const DatasetManifest& manifest,
                             const std::filesystem::path& base_dir);
void save_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);

}  // namespace edgecluster
