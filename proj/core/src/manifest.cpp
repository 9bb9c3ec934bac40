#include "edgecluster/manifest.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "edgecluster/error.hpp"

namespace edgecluster {

using nlohmann::json;

std::vector<ImageRecord> DatasetManifest::all_images() const {
  std::vector<ImageRecord> out;
  for (const DeviceEntry& device : devices) {
    out.insert(out.end(), device.images.begin(), device.images.end());
  }
  return out;
}

std::size_t DatasetManifest::image_count() const {
  std::size_t count = 0;
  for (const DeviceEntry& device : devices) count += device.images.size();
  return count;
}

namespace {

double require_number(const json& node, const char* key) {
  if (!node.contains(key) || !node[key].is_number()) {
    fail(Errc::ManifestError, std::string("missing numeric field: ") + key);
  }
  const double value = node[key].get<double>();
  if (!std::isfinite(value)) {
    fail(Errc::ManifestError, std::string("non-finite field: ") + key);
  }
  return value;
}

void validate_meta(const Metadata& meta) {
  if (meta.lat < -90.0 || meta.lat > 90.0) fail(Errc::ManifestError, "lat outside [-90, 90]");
  if (meta.lon < -180.0 || meta.lon > 180.0) fail(Errc::ManifestError, "lon outside [-180, 180]");
  if (meta.orientation < 0.0 || meta.orientation >= 360.0) {
    fail(Errc::ManifestError, "orientation outside [0, 360)");
  }
}

}  // namespace

DatasetManifest parse_manifest(const std::string& json_text,
                               const std::filesystem::path& base_dir) {
  json root = json::parse(json_text, nullptr, false);
  if (root.is_discarded()) fail(Errc::ManifestError, "manifest is not valid JSON");
  if (!root.is_object() || !root.contains("devices") || !root["devices"].is_array()) {
    fail(Errc::ManifestError, "manifest must contain a 'devices' array");
  }

  DatasetManifest manifest;
  std::set<std::uint32_t> image_ids;
  std::set<int> device_ids;
  for (const json& device_node : root["devices"]) {
    DeviceEntry device;
    device.device_id = static_cast<int>(require_number(device_node, "device_id"));
    if (!device_ids.insert(device.device_id).second) {
      fail(Errc::ManifestError, "duplicate device_id");
    }
    if (device_node.contains("compute_rate")) {
      const double rate = require_number(device_node, "compute_rate");
      if (rate <= 0.0) fail(Errc::ManifestError, "compute_rate must be positive");
      device.compute_rate = rate;
    }
    if (device_node.contains("images")) {
      if (!device_node["images"].is_array()) fail(Errc::ManifestError, "'images' must be an array");
      for (const json& image_node : device_node["images"]) {
        ImageRecord record;
        record.device_id = device.device_id;
        const double raw_id = require_number(image_node, "image_id");
        if (raw_id < 0 || raw_id != std::floor(raw_id)) {
          fail(Errc::ManifestError, "image_id must be a non-negative integer");
        }
        record.image_id = static_cast<std::uint32_t>(raw_id);
        if (!image_ids.insert(record.image_id).second) {
          fail(Errc::ManifestError, "duplicate image_id");
        }
        if (!image_node.contains("path") || !image_node["path"].is_string()) {
          fail(Errc::ManifestError, "image entry missing 'path'");
        }
        record.path = base_dir / image_node["path"].get<std::string>();
        if (!std::filesystem::exists(record.path)) {
          fail(Errc::ManifestError, "image path not resolvable: " + record.path.string());
        }
        record.meta.lat = require_number(image_node, "lat");
        record.meta.lon = require_number(image_node, "lon");
        record.meta.orientation = require_number(image_node, "orientation");
        validate_meta(record.meta);
        device.images.push_back(std::move(record));
      }
    }
    manifest.devices.push_back(std::move(device));
  }

  if (root.contains("links")) {
    if (!root["links"].is_array()) fail(Errc::ManifestError, "'links' must be an array");
    for (const json& link_node : root["links"]) {
      LinkSpec link;
      link.from = static_cast<int>(require_number(link_node, "from"));
      link.to = static_cast<int>(require_number(link_node, "to"));
      link.bandwidth_bps = require_number(link_node, "bandwidth_bps");
      link.latency_s = require_number(link_node, "latency_s");
      if (link.bandwidth_bps <= 0.0) fail(Errc::ManifestError, "bandwidth_bps must be positive");
      if (link.latency_s < 0.0) fail(Errc::ManifestError, "latency_s must be non-negative");
      manifest.links.push_back(link);
    }
  }
  return manifest;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot open manifest: " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_manifest(text, path.parent_path());
}

std::string manifest_to_json(const DatasetManifest& manifest,
                             const std::filesystem::path& base_dir) {
  json devices = json::array();
  for (const DeviceEntry& device : manifest.devices) {
    json images = json::array();
    for (const ImageRecord& record : device.images) {
      images.push_back({
          {"image_id", record.image_id},
          {"path", record.path.lexically_relative(base_dir).generic_string()},
          {"lat", record.meta.lat},
          {"lon", record.meta.lon},
          {"orientation", record.meta.orientation},
      });
    }
    json device_node = {{"device_id", device.device_id}, {"images", std::move(images)}};
    if (device.compute_rate) device_node["compute_rate"] = *device.compute_rate;
    devices.push_back(std::move(device_node));
  }
  json root = {{"devices", std::move(devices)}};
  if (!manifest.links.empty()) {
    json links = json::array();
    for (const LinkSpec& link : manifest.links) {
      links.push_back({{"from", link.from},
                       {"to", link.to},
                       {"bandwidth_bps", link.bandwidth_bps},
                       {"latency_s", link.latency_s}});
    }
    root["links"] = std::move(links);
  }
  return root.dump(2) + "\n";
}

void save_manifest(const std::filesystem::path& path, const DatasetManifest& manifest) {
  std::ofstream out(path);
  if (!out) fail(Errc::IoError, "cannot open manifest for writing: " + path.string());
  out << manifest_to_json(manifest, path.parent_path());
  if (!out.good()) fail(Errc::IoError, "manifest write failed: " + path.string());
}

}  // namespace edgecluster
