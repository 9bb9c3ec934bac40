#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "edgecluster/approx.hpp"
#include "edgecluster/descriptor.hpp"
#include "edgecluster/kmeans.hpp"
#include "edgecluster/manifest.hpp"

namespace edgecluster {

struct Vocabulary {
  CentroidSet words;  // descriptor-space centroids, dim 128

  std::size_t size() const { return words.size(); }
};

struct BowVector {
  std::vector<std::uint32_t> counts;  // one per vocabulary word
  std::uint32_t image_id = 0;
};

struct Seeding {
  enum class Kind { Random, Metadata, FromFile };
  Kind kind = Kind::Random;
  std::filesystem::path file;  // FromFile only
};

struct PipelineConfig {
  std::size_t k_vocab = 64;
  std::size_t k_img = 8;
  ExtractorParams extractor;
  StopRule vocab_stop = StopRule::no_change();
  StopRule img_stop = StopRule::no_change();
  Seeding seeding;
  bool approx = false;  // approximate K-Means for the vocabulary stage
  std::uint64_t rng_seed = 0;
};

struct StageMetric {
  std::string name;
  double wall_ms = 0.0;
  std::uint64_t evaluations = 0;
};

struct RunSummary {
  std::size_t k = 0;
  int iterations = 0;
  StopReason stop_reason = StopReason::NoChange;
  std::vector<double> objective_trace;
  std::uint64_t evaluations = 0;
};

struct ActiveStats {
  double fraction = 0.0;
  std::vector<double> r_values_active;  // r of active points, point order
};

struct Representative {
  int cluster = 0;
  std::uint32_t image_id = 0;
};

struct ImageStat {
  std::uint32_t image_id = 0;
  int device_id = 0;
  std::uint32_t descriptor_count = 0;
};

struct PipelineReport {
  std::uint64_t rng_seed = 0;
  std::string seeding;
  bool approx = false;
  std::vector<StageMetric> stages;
  RunSummary vocabulary;
  std::optional<ActiveStats> active;
  RunSummary image_clusters;
  std::vector<ImageStat> images;        // ingestion order
  std::vector<int> image_labels;        // parallel to images
  std::vector<Representative> representatives;
  std::vector<int> empty_clusters;
  std::optional<double> overlap_vs_baseline;
};

struct PipelineResult {
  PipelineReport report;
  Vocabulary vocabulary;
  std::vector<int> vocab_labels;  // pooled descriptor labels, ingestion order
  std::vector<BowVector> bows;
  std::vector<ImageRecord> records;
};

struct VocabularyBuild {
  Vocabulary vocabulary;
  ClusterRun run;
  ActiveReport active;  // populated when cfg.approx is set
};

// Stage 2. Seeds resolve from cfg.seeding; Metadata seeding is resolved by
// the caller (see metadata_seeds) and passed in. FromFile adopts the file's k.
VocabularyBuild build_vocabulary(const PointSet& all_descriptors,
                                 const PipelineConfig& cfg,
                                 const CentroidSet* metadata_seed_override = nullptr);

// Capture-metadata seeding: embed each image's metadata as
// (lat, lon, cos o, sin o) with lat/lon standardized, cluster those 4-d
// points exactly, then map each metadata cluster to the mean of its images'
// descriptors; shortfalls are filled by Forgy draws from the pooled
// descriptors (rng seed 0 throughout).
CentroidSet metadata_seeds(std::span<const ImageRecord> records,
                           std::span<const std::vector<Descriptor>> descriptors_per_image,
                           std::size_t k_vocab);

// Stage 3: histogram of nearest vocabulary words, ties to the lowest index.
BowVector vectorize(std::span<const Descriptor> image_descriptors,
                    const Vocabulary& vocabulary, std::uint32_t image_id);

// Stage 4: exact Lloyd over the BoW vectors, Forgy-seeded with cfg.rng_seed.
ClusterRun cluster_images(const std::vector<BowVector>& bows, const PipelineConfig& cfg);

// Per non-empty cluster, the member image closest to its centroid (Euclidean,
// lowest image_id on ties). Empty clusters yield no entry.
std::vector<Representative> select_representatives(const ClusterRun& run,
                                                   const std::vector<BowVector>& bows);

PipelineResult run_pipeline(const DatasetManifest& manifest, const PipelineConfig& cfg);

}  // namespace edgecluster
