#include <cmath>
#include <numbers>
#include <set>

#include "edgecluster/error.hpp"
#include "edgecluster/pipeline.hpp"

namespace edgecluster {

namespace {

// Standardize to zero mean, unit variance (population); constant columns
// collapse to zero.
void standardize(std::vector<double>& values) {
  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (const double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size());
  const double sd = std::sqrt(var);
  for (double& v : values) v = sd == 0.0 ? 0.0 : (v - mean) / sd;
}

std::size_t distinct_rows(const PointSet& points) {
  std::set<std::vector<double>> seen;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto row = points[i];
    seen.emplace(row.begin(), row.end());
  }
  return seen.size();
}

}  // namespace

CentroidSet metadata_seeds(std::span<const ImageRecord> records,
                           std::span<const std::vector<Descriptor>> descriptors_per_image,
                           std::size_t k_vocab) {
  if (k_vocab == 0) fail(Errc::TooFewCentroids, "k_vocab must be >= 1");
  if (records.size() != descriptors_per_image.size()) {
    fail(Errc::LengthMismatch, "one descriptor list per image record required");
  }
  if (records.empty()) fail(Errc::TooFewImages, "metadata seeding needs at least one image");

  const std::size_t n = records.size();
  std::vector<double> lat(n), lon(n);
  for (std::size_t i = 0; i < n; ++i) {
    lat[i] = records[i].meta.lat;
    lon[i] = records[i].meta.lon;
  }
  standardize(lat);
  standardize(lon);

  PointSet embedded(n, 4);
  for (std::size_t i = 0; i < n; ++i) {
    const double rad = records[i].meta.orientation * std::numbers::pi / 180.0;
    auto row = embedded.row(i);
    row[0] = lat[i];
    row[1] = lon[i];
    row[2] = std::cos(rad);
    row[3] = std::sin(rad);
  }

  // Exact Lloyd over the embedded metadata; k is capped by the number of
  // distinct embeddings so Forgy seeding stays feasible.
  const std::size_t k_meta = std::min({k_vocab, n, distinct_rows(embedded)});
  const ClusterRun meta_run =
      lloyd(embedded, seed_random(embedded, k_meta, 0), StopRule::no_change());

  // One seed per metadata cluster: the mean of its images' descriptors.
  // Clusters whose images produced no descriptors contribute nothing here.
  CentroidSet seeds;
  for (std::size_t j = 0; j < k_meta; ++j) {
    std::vector<double> sum(kDescriptorDim, 0.0);
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (static_cast<std::size_t>(meta_run.labels[i]) != j) continue;
      for (const Descriptor& desc : descriptors_per_image[i]) {
        for (std::size_t c = 0; c < kDescriptorDim; ++c) sum[c] += desc.values[c];
        ++count;
      }
    }
    if (count == 0) continue;
    for (double& v : sum) v /= static_cast<double>(count);
    seeds.push_back(sum);
  }

  if (seeds.size() < k_vocab) {
    std::size_t total = 0;
    for (const auto& descs : descriptors_per_image) total += descs.size();
    if (total == 0) fail(Errc::NoDescriptors, "no descriptors available for seeding");
    PointSet pooled(total, kDescriptorDim);
    std::size_t cursor = 0;
    for (const auto& descs : descriptors_per_image) {
      for (const Descriptor& desc : descs) {
        auto row = pooled.row(cursor++);
        for (std::size_t c = 0; c < kDescriptorDim; ++c) row[c] = desc.values[c];
      }
    }
    const CentroidSet fill = seed_random(pooled, k_vocab - seeds.size(), 0);
    for (std::size_t j = 0; j < fill.size(); ++j) seeds.push_back(fill[j]);
  }
  return seeds;
}

}  // namespace edgecluster
