#include "edgecluster/pipeline.hpp"

#include <chrono>

#include "edgecluster/error.hpp"
#include "edgecluster/image.hpp"

namespace edgecluster {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

const char* seeding_name(Seeding::Kind kind) {
  switch (kind) {
    case Seeding::Kind::Random: return "random";
    case Seeding::Kind::Metadata: return "metadata";
    case Seeding::Kind::FromFile: return "file";
  }
  return "random";
}

RunSummary summarize(const ClusterRun& run, std::size_t k) {
  RunSummary summary;
  summary.k = k;
  summary.iterations = run.iterations;
  summary.stop_reason = run.stop_reason;
  summary.objective_trace = run.objective_trace;
  summary.evaluations = run.evaluations;
  return summary;
}

}  // namespace

VocabularyBuild build_vocabulary(const PointSet& all_descriptors,
                                 const PipelineConfig& cfg,
                                 const CentroidSet* metadata_seed_override) {
  if (all_descriptors.empty()) fail(Errc::NoDescriptors, "no descriptors to cluster");
  if (cfg.approx && cfg.k_vocab < 2) {
    fail(Errc::TooFewCentroids, "approximate clustering needs k_vocab >= 2");
  }

  CentroidSet seeds;
  switch (cfg.seeding.kind) {
    case Seeding::Kind::Random:
      seeds = seed_random(all_descriptors, cfg.k_vocab, cfg.rng_seed);
      break;
    case Seeding::Kind::Metadata:
      if (metadata_seed_override == nullptr) {
        fail(Errc::ConfigError, "metadata seeding requires resolved seeds");
      }
      seeds = *metadata_seed_override;
      break;
    case Seeding::Kind::FromFile:
      seeds = read_seed_file(cfg.seeding.file);
      if (seeds.dim() != all_descriptors.dim()) {
        fail(Errc::DimensionMismatch, "seed file dimension does not match descriptors");
      }
      break;
  }

  VocabularyBuild build;
  if (cfg.approx) {
    build.run = approx_lloyd(all_descriptors, seeds, cfg.vocab_stop, &build.active);
  } else {
    build.run = lloyd(all_descriptors, seeds, cfg.vocab_stop);
  }
  build.vocabulary.words = build.run.final_centroids;
  return build;
}

BowVector vectorize(std::span<const Descriptor> image_descriptors,
                    const Vocabulary& vocabulary, std::uint32_t image_id) {
  if (vocabulary.size() == 0) fail(Errc::TooFewCentroids, "vocabulary is empty");
  BowVector bow;
  bow.image_id = image_id;
  bow.counts.assign(vocabulary.size(), 0);
  for (const Descriptor& desc : image_descriptors) {
    double point[kDescriptorDim];
    for (std::size_t c = 0; c < kDescriptorDim; ++c) point[c] = desc.values[c];
    int best = 0;
    double best_sq = squared_distance({point, kDescriptorDim}, vocabulary.words[0]);
    for (std::size_t j = 1; j < vocabulary.size(); ++j) {
      const double dist = squared_distance({point, kDescriptorDim}, vocabulary.words[j]);
      if (dist < best_sq) {
        best_sq = dist;
        best = static_cast<int>(j);
      }
    }
    bow.counts[static_cast<std::size_t>(best)] += 1;
  }
  return bow;
}

namespace {

PointSet bows_to_points(const std::vector<BowVector>& bows) {
  if (bows.empty()) fail(Errc::TooFewImages, "no BoW vectors");
  PointSet points(bows.size(), bows[0].counts.size());
  for (std::size_t i = 0; i < bows.size(); ++i) {
    if (bows[i].counts.size() != points.dim()) {
      fail(Errc::DimensionMismatch, "BoW vectors disagree on vocabulary size");
    }
    auto row = points.row(i);
    for (std::size_t c = 0; c < points.dim(); ++c) {
      row[c] = static_cast<double>(bows[i].counts[c]);
    }
  }
  return points;
}

}  // namespace

ClusterRun cluster_images(const std::vector<BowVector>& bows, const PipelineConfig& cfg) {
  if (bows.size() < cfg.k_img) {
    fail(Errc::TooFewImages, "fewer images than requested image clusters");
  }
  const PointSet points = bows_to_points(bows);
  const CentroidSet seeds = seed_random(points, cfg.k_img, cfg.rng_seed);
  return lloyd(points, seeds, cfg.img_stop);
}

std::vector<Representative> select_representatives(const ClusterRun& run,
                                                   const std::vector<BowVector>& bows) {
  const PointSet points = bows_to_points(bows);
  const std::size_t k = run.final_centroids.size();
  std::vector<Representative> reps;
  for (std::size_t j = 0; j < k; ++j) {
    bool found = false;
    double best_sq = 0.0;
    std::uint32_t best_id = 0;
    for (std::size_t i = 0; i < bows.size(); ++i) {
      if (static_cast<std::size_t>(run.labels[i]) != j) continue;
      const double dist = squared_distance(points[i], run.final_centroids[j]);
      if (!found || dist < best_sq ||
          (dist == best_sq && bows[i].image_id < best_id)) {
        found = true;
        best_sq = dist;
        best_id = bows[i].image_id;
      }
    }
    if (found) reps.push_back({static_cast<int>(j), best_id});
  }
  return reps;
}

PipelineResult run_pipeline(const DatasetManifest& manifest, const PipelineConfig& cfg) {
  PipelineResult result;
  result.records = manifest.all_images();
  PipelineReport& report = result.report;
  report.rng_seed = cfg.rng_seed;
  report.seeding = seeding_name(cfg.seeding.kind);
  report.approx = cfg.approx;

  // Stage 1: per-image feature extraction.
  auto start = Clock::now();
  std::vector<std::vector<Descriptor>> per_image;
  per_image.reserve(result.records.size());
  std::size_t total_descriptors = 0;
  for (const ImageRecord& record : result.records) {
    const GrayImage image = load_pgm(record.path);
    per_image.push_back(extract_descriptors(image, cfg.extractor, record.image_id));
    total_descriptors += per_image.back().size();
    report.images.push_back({record.image_id, record.device_id,
                             static_cast<std::uint32_t>(per_image.back().size())});
  }
  report.stages.push_back({"extract", ms_since(start), 0});

  PointSet pooled(total_descriptors, kDescriptorDim);
  {
    std::size_t cursor = 0;
    for (const auto& descs : per_image) {
      for (const Descriptor& desc : descs) {
        auto row = pooled.row(cursor++);
        for (std::size_t c = 0; c < kDescriptorDim; ++c) row[c] = desc.values[c];
      }
    }
  }

  // Stage 2: vocabulary construction.
  start = Clock::now();
  CentroidSet meta_seeds;
  const CentroidSet* seed_override = nullptr;
  if (cfg.seeding.kind == Seeding::Kind::Metadata) {
    meta_seeds = metadata_seeds(result.records, per_image, cfg.k_vocab);
    seed_override = &meta_seeds;
  }
  VocabularyBuild build = build_vocabulary(pooled, cfg, seed_override);
  report.stages.push_back({"vocabulary", ms_since(start), build.run.evaluations});
  report.vocabulary = summarize(build.run, build.vocabulary.size());
  if (cfg.approx) {
    ActiveStats stats;
    stats.fraction = build.active.active_fraction;
    for (const std::size_t id : build.active.active_ids) {
      stats.r_values_active.push_back(build.active.r_values[id]);
    }
    report.active = std::move(stats);
  }
  result.vocabulary = std::move(build.vocabulary);
  result.vocab_labels = std::move(build.run.labels);

  // Stage 3: per-image vectorization.
  start = Clock::now();
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    result.bows.push_back(vectorize(per_image[i], result.vocabulary,
                                    result.records[i].image_id));
  }
  const std::uint64_t vectorize_evals =
      static_cast<std::uint64_t>(total_descriptors) * result.vocabulary.size();
  report.stages.push_back({"vectorize", ms_since(start), vectorize_evals});

  // Stage 4: image clustering and representative selection.
  start = Clock::now();
  ClusterRun image_run = cluster_images(result.bows, cfg);
  report.stages.push_back({"imgcluster", ms_since(start), image_run.evaluations});
  report.image_clusters = summarize(image_run, cfg.k_img);
  report.image_labels = image_run.labels;
  report.representatives = select_representatives(image_run, result.bows);
  std::vector<bool> has_rep(cfg.k_img, false);
  for (const Representative& rep : report.representatives) {
    has_rep[static_cast<std::size_t>(rep.cluster)] = true;
  }
  for (std::size_t j = 0; j < cfg.k_img; ++j) {
    if (!has_rep[j]) report.empty_clusters.push_back(static_cast<int>(j));
  }
  return result;
}

}  // namespace edgecluster
