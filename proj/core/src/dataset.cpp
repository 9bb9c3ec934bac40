#include "edgecluster/dataset.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include <nlohmann/json.hpp>

#include "edgecluster/error.hpp"
#include "edgecluster/image.hpp"
#include "edgecluster/rng.hpp"

namespace edgecluster {

namespace {

constexpr int kImageSize = 96;
constexpr int kBlock = 16;  // one extractor patch per block at default params
constexpr double kStripePeriod = 8.0;
constexpr int kDeviceCount = 3;
constexpr double kComputeRates[kDeviceCount] = {1.0e6, 8.0e5, 1.2e6};
constexpr double kLinkBandwidth = 1.0e6;  // bytes/s
constexpr double kLinkLatency = 0.01;     // s

struct ProfileSpec {
  int classes;
  double class_theta[3];
  double patch_jitter_deg;  // uniform +/- around the class angle, per block
  double pixel_noise;       // uniform +/- intensity noise
  bool geo_sites;
  bool micro_clumps;  // overlapping profile: clumped patch angles, see below
};

ProfileSpec spec_for(DatasetProfile profile) {
  switch (profile) {
    case DatasetProfile::Blobs:
      return {3, {0.0, 45.0, 90.0}, 1.0, 2.0, false, false};
    case DatasetProfile::GeoCorrelated:
      return {2, {0.0, 90.0, 0.0}, 3.0, 2.0, true, false};
    case DatasetProfile::Overlapping:
      // Patch angles come from 12 tight micro-clumps spread over [0, 180);
      // each class owns four of them and bleeds into the rest. Several
      // vocabulary words end up competing inside every clump, which is what
      // produces a large boundary (active) share with near-zero r values
      // while the class-level BoW histograms stay separable.
      return {3, {0.0, 60.0, 120.0}, 1.5, 10.0, false, true};
  }
  fail(Errc::ConfigError, "unknown dataset profile");
}

constexpr int kMicroClumps = 24;
constexpr double kMicroBleed = 0.1;  // share of patches drawn outside the class

double micro_clump_theta(const ProfileSpec& spec, int cls, Xoshiro256ss& rng) {
  const int per_class = kMicroClumps / spec.classes;
  int micro;
  if (rng.unit() < kMicroBleed) {
    micro = static_cast<int>(rng.bounded(kMicroClumps));
  } else {
    micro = cls * per_class + static_cast<int>(rng.bounded(per_class));
  }
  const double center = 180.0 * (micro + 0.5) / kMicroClumps;
  return center + rng.uniform(-spec.patch_jitter_deg, spec.patch_jitter_deg);
}

// Two fixed capture sites, far enough apart that the metadata clustering is
// unambiguous.
constexpr double kSiteLat[2] = {40.7812, 40.7050};
constexpr double kSiteLon[2] = {-73.9665, -74.0100};

GrayImage render_image(const ProfileSpec& spec, int cls, Xoshiro256ss& rng) {
  GrayImage image;
  image.width = kImageSize;
  image.height = kImageSize;
  image.maxval = 255;
  image.pixels.assign(static_cast<std::size_t>(kImageSize) * kImageSize, 0);

  constexpr double kDegToRad = std::numbers::pi / 180.0;
  for (int block_row = 0; block_row < kImageSize / kBlock; ++block_row) {
    for (int block_col = 0; block_col < kImageSize / kBlock; ++block_col) {
      const double theta_deg =
          spec.micro_clumps
              ? micro_clump_theta(spec, cls, rng)
              : spec.class_theta[cls] +
                    rng.uniform(-spec.patch_jitter_deg, spec.patch_jitter_deg);
      const double theta = theta_deg * kDegToRad;
      const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double cos_t = std::cos(theta);
      const double sin_t = std::sin(theta);
      // Overlapping profile: superpose a second grating at a random angle and
      // vary the stripe period so descriptors spread within the class instead
      // of collapsing onto a few duplicates.
      double cross_weight = 0.0, cross_cos = 0.0, cross_sin = 0.0, cross_phase = 0.0;
      double period = kStripePeriod;
      if (spec.micro_clumps) {
        cross_weight = rng.uniform(0.3, 0.9);
        const double cross_theta = rng.uniform(0.0, 180.0) * kDegToRad;
        cross_cos = std::cos(cross_theta);
        cross_sin = std::sin(cross_theta);
        cross_phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        period = rng.uniform(5.0, 11.0);
      }
      const double amplitude = 0.45 / (1.0 + cross_weight);
      for (int r = 0; r < kBlock; ++r) {
        for (int c = 0; c < kBlock; ++c) {
          const int row = block_row * kBlock + r;
          const int col = block_col * kBlock + c;
          double wave = std::sin(
              2.0 * std::numbers::pi * (col * cos_t + row * sin_t) / period + phase);
          if (cross_weight > 0.0) {
            wave += cross_weight *
                    std::sin(2.0 * std::numbers::pi * (col * cross_cos + row * cross_sin) /
                                 period +
                             cross_phase);
          }
          const double noise = rng.uniform(-spec.pixel_noise, spec.pixel_noise);
          double value = 255.0 * (0.5 + amplitude * wave) + noise;
          if (value < 0.0) value = 0.0;
          if (value > 255.0) value = 255.0;
          image.pixels[static_cast<std::size_t>(row) * kImageSize + col] =
              static_cast<std::uint8_t>(std::lround(value));
        }
      }
    }
  }
  return image;
}

}  // namespace

DatasetProfile dataset_profile_from_string(const std::string& name) {
  if (name == "blobs") return DatasetProfile::Blobs;
  if (name == "geo-correlated") return DatasetProfile::GeoCorrelated;
  if (name == "overlapping") return DatasetProfile::Overlapping;
  fail(Errc::ConfigError, "unknown dataset profile: " + name);
}

const char* to_string(DatasetProfile profile) {
  switch (profile) {
    case DatasetProfile::Blobs: return "blobs";
    case DatasetProfile::GeoCorrelated: return "geo-correlated";
    case DatasetProfile::Overlapping: return "overlapping";
  }
  return "unknown";
}

GeneratedDataset generate_dataset(DatasetProfile profile, int n_images,
                                  const std::filesystem::path& out_dir,
                                  std::uint64_t rng_seed) {
  if (n_images < 0) fail(Errc::ConfigError, "n_images must be non-negative");
  const ProfileSpec spec = spec_for(profile);

  std::error_code ec;
  std::filesystem::create_directories(out_dir / "images", ec);
  if (ec) fail(Errc::IoError, "cannot create output directory: " + out_dir.string());

  Xoshiro256ss rng(rng_seed);
  GeneratedDataset result;
  result.manifest.devices.resize(kDeviceCount);
  for (int dev = 0; dev < kDeviceCount; ++dev) {
    result.manifest.devices[static_cast<std::size_t>(dev)].device_id = dev;
    result.manifest.devices[static_cast<std::size_t>(dev)].compute_rate = kComputeRates[dev];
  }
  for (int from = 0; from < kDeviceCount; ++from) {
    for (int to = 0; to < kDeviceCount; ++to) {
      if (from == to) continue;
      result.manifest.links.push_back({from, to, kLinkBandwidth, kLinkLatency});
    }
  }

  for (int i = 0; i < n_images; ++i) {
    const int cls = i % spec.classes;
    const int device = (i / spec.classes) % kDeviceCount;
    const int site = spec.geo_sites ? cls : 0;

    const GrayImage image = render_image(spec, cls, rng);
    char name[32];
    std::snprintf(name, sizeof name, "img_%04d.pgm", i);
    const std::filesystem::path path = out_dir / "images" / name;
    save_pgm(path, image);

    ImageRecord record;
    record.image_id = static_cast<std::uint32_t>(i);
    record.device_id = device;
    record.path = path;
    record.meta.lat = kSiteLat[site] + rng.uniform(-0.0005, 0.0005);
    record.meta.lon = kSiteLon[site] + rng.uniform(-0.0005, 0.0005);
    if (spec.geo_sites) {
      const double base = cls == 0 ? 90.0 : 270.0;
      record.meta.orientation = base + rng.uniform(-10.0, 10.0);
    } else {
      record.meta.orientation = rng.uniform(0.0, 360.0);
    }
    result.manifest.devices[static_cast<std::size_t>(device)].images.push_back(record);
    result.truth.push_back({record.image_id, cls, site, spec.class_theta[cls]});
  }

  save_manifest(out_dir / "manifest.json", result.manifest);

  nlohmann::json truth = nlohmann::json::array();
  for (const GroundTruth& gt : result.truth) {
    truth.push_back({{"image_id", gt.image_id},
                     {"class", gt.cls},
                     {"site", gt.site},
                     {"theta_deg", gt.theta_deg}});
  }
  nlohmann::json root = {{"profile", to_string(profile)}, {"images", std::move(truth)}};
  std::ofstream out(out_dir / "ground_truth.json");
  if (!out) fail(Errc::IoError, "cannot write ground_truth.json");
  out << root.dump(2) << '\n';
  return result;
}

}  // namespace edgecluster
