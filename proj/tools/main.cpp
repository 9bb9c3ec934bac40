// Command-line surface for the edge image-clustering experiments: synthetic
// dataset generation, pipeline runs, distributed K-Means simulation,
// placement sweeps and a label-overlap utility.
//
// Exit status: 0 success, 1 usage error, 2 data/format error.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "edgecluster/dataset.hpp"
#include "edgecluster/descriptor_io.hpp"
#include "edgecluster/error.hpp"
#include "edgecluster/image.hpp"
#include "edgecluster/overlap.hpp"
#include "edgecluster/pipeline.hpp"
#include "edgecluster/report_io.hpp"
#include "edgecluster/wire.hpp"

namespace ec = edgecluster;
namespace fs = std::filesystem;

namespace {

struct StopFlags {
  std::string kind = "nochange";
  int iterations = 100;
  double epsilon = 0.0;

  ec::StopRule resolve() const {
    if (kind == "fixed") return ec::StopRule::fixed(iterations);
    if (kind == "nochange") return ec::StopRule::no_change(iterations);
    if (kind == "epsilon") return ec::StopRule::epsilon_change(epsilon, iterations);
    ec::fail(ec::Errc::ConfigError, "stop rule must be fixed|nochange|epsilon");
  }

  void attach(CLI::App* cmd, const std::string& prefix) {
    cmd->add_option("--" + prefix + "stop", kind,
                    "stop rule: fixed|nochange|epsilon")
        ->default_val(kind);
    cmd->add_option("--" + prefix + "iters", iterations,
                    "fixed iteration count / hard cap")
        ->default_val(iterations);
    cmd->add_option("--" + prefix + "epsilon", epsilon,
                    "epsilon for the epsilon stop rule")
        ->default_val(epsilon);
  }
};

ec::Seeding parse_seeding(const std::string& text) {
  ec::Seeding seeding;
  if (text == "random") {
    seeding.kind = ec::Seeding::Kind::Random;
  } else if (text == "metadata") {
    seeding.kind = ec::Seeding::Kind::Metadata;
  } else if (text.rfind("file:", 0) == 0) {
    seeding.kind = ec::Seeding::Kind::FromFile;
    seeding.file = text.substr(5);
  } else {
    ec::fail(ec::Errc::ConfigError, "seeding must be random|metadata|file:<path>");
  }
  return seeding;
}

void ensure_out_dir(const fs::path& out) {
  std::error_code errc;
  fs::create_directories(out, errc);
  if (errc) ec::fail(ec::Errc::IoError, "cannot create output directory: " + out.string());
}

std::string format_double(double value) {
  char buf[32];
  auto [ptr, unused] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

struct PipelineFlags {
  std::string manifest;
  std::string out;
  std::size_t k_vocab = 64;
  std::size_t k_img = 8;
  std::string seeding = "random";
  bool approx = false;
  std::uint64_t rng_seed = 0;
  std::string baseline;
  int patch_size = 16;
  int stride = 16;
  double energy_threshold = 1.0;
  StopFlags vocab_stop;
  StopFlags img_stop;

  ec::PipelineConfig config() const {
    ec::PipelineConfig cfg;
    cfg.k_vocab = k_vocab;
    cfg.k_img = k_img;
    cfg.extractor = {patch_size, stride, energy_threshold};
    cfg.vocab_stop = vocab_stop.resolve();
    cfg.img_stop = img_stop.resolve();
    cfg.seeding = parse_seeding(seeding);
    cfg.approx = approx;
    cfg.rng_seed = rng_seed;
    return cfg;
  }
};

void attach_pipeline_flags(CLI::App* cmd, PipelineFlags& flags, bool with_img_stage) {
  cmd->add_option("--manifest", flags.manifest, "dataset manifest JSON")->required();
  cmd->add_option("--out", flags.out, "output directory")->required();
  cmd->add_option("--k-vocab", flags.k_vocab, "vocabulary size")->default_val(flags.k_vocab);
  cmd->add_option("--seeding", flags.seeding, "random|metadata|file:<path>")
      ->default_val(flags.seeding);
  cmd->add_option("--rng-seed", flags.rng_seed, "seed for all randomized choices")
      ->default_val(flags.rng_seed);
  cmd->add_option("--patch-size", flags.patch_size, "extractor patch size")
      ->default_val(flags.patch_size);
  cmd->add_option("--stride", flags.stride, "extractor stride")->default_val(flags.stride);
  cmd->add_option("--energy-threshold", flags.energy_threshold,
                  "minimum per-patch gradient energy")
      ->default_val(flags.energy_threshold);
  if (with_img_stage) {
    cmd->add_option("--k-img", flags.k_img, "image cluster count")->default_val(flags.k_img);
    cmd->add_flag("--approx", flags.approx, "approximate K-Means for the vocabulary stage");
    cmd->add_option("--baseline", flags.baseline,
                    "pipeline report to compare image clusters against");
    flags.vocab_stop.attach(cmd, "vocab-");
    flags.img_stop.attach(cmd, "img-");
  } else {
    flags.vocab_stop.attach(cmd, "");
  }
}

int run_pipeline_cmd(const PipelineFlags& flags) {
  const ec::DatasetManifest manifest = ec::load_manifest(flags.manifest);
  const ec::PipelineConfig cfg = flags.config();
  ec::PipelineResult result = ec::run_pipeline(manifest, cfg);

  if (!flags.baseline.empty()) {
    const ec::StoredImageLabels baseline = ec::load_report_image_labels(flags.baseline);
    if (baseline.image_ids.size() != result.report.image_labels.size()) {
      ec::fail(ec::Errc::LengthMismatch, "baseline report covers a different image set");
    }
    for (std::size_t i = 0; i < baseline.image_ids.size(); ++i) {
      if (baseline.image_ids[i] != result.report.images[i].image_id) {
        ec::fail(ec::Errc::LengthMismatch, "baseline report image ids differ");
      }
    }
    if (baseline.k != cfg.k_img) {
      ec::fail(ec::Errc::LengthMismatch, "baseline report uses a different k_img");
    }
    result.report.overlap_vs_baseline =
        ec::cluster_overlap(result.report.image_labels, baseline.labels, cfg.k_img);
  }

  const fs::path out(flags.out);
  ensure_out_dir(out);
  ec::save_pipeline_report(out / "report.json", result.report);
  ec::write_seed_file(out / "vocab_seeds.txt", result.vocabulary.words);
  ec::write_labels_file(out / "vocab_labels.txt", result.vocab_labels,
                        result.vocabulary.size());
  ec::write_labels_file(out / "image_labels.txt", result.report.image_labels, cfg.k_img);
  if (result.report.active) {
    ec::write_rvalue_cdf(out / "rvalues.csv", result.report.active->r_values_active);
  }
  std::cout << "pipeline: " << result.report.images.size() << " images, "
            << result.vocabulary.size() << " words, stage-2 iterations "
            << result.report.vocabulary.iterations << "\n";
  return 0;
}

struct SimulateFlags {
  PipelineFlags pipeline;  // manifest/out/k-vocab/seeding/rng-seed/extractor/stop
  int master = -1;
};

int run_simulate_cmd(const SimulateFlags& flags) {
  const ec::DatasetManifest manifest = ec::load_manifest(flags.pipeline.manifest);
  if (manifest.devices.empty()) ec::fail(ec::Errc::ManifestError, "manifest lists no devices");
  const ec::PipelineConfig cfg = flags.pipeline.config();

  // Per-device extraction; shard ownership follows image ownership.
  std::vector<ec::ImageRecord> records = manifest.all_images();
  std::vector<std::vector<ec::Descriptor>> per_image;
  std::size_t total = 0;
  for (const ec::ImageRecord& record : records) {
    per_image.push_back(ec::extract_descriptors(ec::load_pgm(record.path), cfg.extractor,
                                                record.image_id));
    total += per_image.back().size();
  }
  if (total == 0) ec::fail(ec::Errc::NoDescriptors, "dataset produced no descriptors");

  ec::PointSet pooled(total, ec::kDescriptorDim);
  std::vector<ec::DeviceSpec> fleet;
  for (const ec::DeviceEntry& device : manifest.devices) {
    if (!device.compute_rate) {
      ec::fail(ec::Errc::ManifestError, "simulate needs compute_rate on every device");
    }
    fleet.push_back({device.device_id, *device.compute_rate, {}});
  }
  {
    std::size_t cursor = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
      for (const ec::Descriptor& desc : per_image[i]) {
        auto row = pooled.row(cursor);
        for (std::size_t c = 0; c < ec::kDescriptorDim; ++c) row[c] = desc.values[c];
        for (ec::DeviceSpec& spec : fleet) {
          if (spec.device_id == records[i].device_id) {
            spec.local_point_ids.push_back(cursor);
            break;
          }
        }
        ++cursor;
      }
    }
  }

  ec::NetworkSpec network;
  for (const ec::LinkSpec& link : manifest.links) {
    network.add_link(link.from, link.to, link.bandwidth_bps, link.latency_s);
  }

  ec::CentroidSet seeds;
  switch (cfg.seeding.kind) {
    case ec::Seeding::Kind::Random:
      seeds = ec::seed_random(pooled, cfg.k_vocab, cfg.rng_seed);
      break;
    case ec::Seeding::Kind::Metadata:
      seeds = ec::metadata_seeds(records, per_image, cfg.k_vocab);
      break;
    case ec::Seeding::Kind::FromFile:
      seeds = ec::read_seed_file(cfg.seeding.file);
      break;
  }

  const int master = flags.master >= 0 ? flags.master : manifest.devices.front().device_id;
  const ec::SimReport report =
      ec::simulate(pooled, seeds, cfg.vocab_stop, fleet, network, master);

  const fs::path out(flags.pipeline.out);
  ensure_out_dir(out);
  ec::save_sim_report(out / "sim_report.json", report, cfg.rng_seed, master);
  ec::write_labels_file(out / "sim_labels.txt", report.labels, seeds.size());
  std::cout << "simulate: " << report.iterations << " iterations, clock "
            << format_double(report.simulated_clock) << " s, "
            << report.bytes_transferred << " bytes\n";
  return 0;
}

struct PlacementFlags {
  std::string config;
  std::string out;
  double f = -1.0;  // keeps config value unless set
  bool measure = false;
  PipelineFlags pipeline;
};

int run_placement_cmd(const PlacementFlags& flags) {
  ec::PlacementInput input = ec::load_placement_config(flags.config);
  if (flags.f >= 0.0) input.f = flags.f;

  const fs::path out(flags.out);
  ensure_out_dir(out);

  if (flags.measure) {
    const ec::DatasetManifest manifest = ec::load_manifest(flags.pipeline.manifest);
    const ec::PipelineConfig cfg = flags.pipeline.config();
    const ec::PipelineResult result = ec::run_pipeline(manifest, cfg);

    std::size_t descriptors = 0;
    for (const ec::ImageStat& image : result.report.images) descriptors += image.descriptor_count;
    double raw_bytes = 0.0;
    for (const ec::ImageRecord& record : result.records) {
      raw_bytes += static_cast<double>(fs::file_size(record.path));
    }
    const double ops_per_distance = static_cast<double>(ec::kDescriptorDim);
    ec::WorkloadProfile& w = input.workload;
    w.work[ec::kStageExtract] = static_cast<double>(descriptors) *
                                cfg.extractor.patch_size * cfg.extractor.patch_size * 4.0;
    w.work[ec::kStageVocab] =
        static_cast<double>(result.report.vocabulary.evaluations) * ops_per_distance;
    w.work[ec::kStageVectorize] = static_cast<double>(descriptors) *
                                  static_cast<double>(result.vocabulary.size()) *
                                  ops_per_distance;
    w.work[ec::kStageImgCluster] =
        static_cast<double>(result.report.image_clusters.evaluations) *
        static_cast<double>(result.vocabulary.size());
    w.raw_images_bytes = raw_bytes;
    w.descriptors_bytes = static_cast<double>(ec::descriptor_file_bytes(descriptors));
    w.vocabulary_bytes =
        static_cast<double>(ec::broadcast_bytes(result.vocabulary.size(), ec::kDescriptorDim));
    w.bow_bytes = static_cast<double>(result.records.size()) *
                  static_cast<double>(result.vocabulary.size()) * 4.0;
    w.image_count = result.records.size();
    w.representative_image_bytes =
        result.records.empty() ? 0.0 : raw_bytes / static_cast<double>(result.records.size());
    ec::save_placement_config(out / "measured_workload.json", input);
  }

  const std::vector<ec::SweepRow> rows =
      ec::sweep(input.workload, input.rates, input.bandwidths_bps, input.f);
  std::ofstream csv(out / "sweep.csv", std::ios::binary);
  if (!csv) ec::fail(ec::Errc::IoError, "cannot open sweep.csv for writing");
  ec::write_sweep_csv(csv, rows);
  std::cout << "placement: " << rows.size() << " bandwidths, argmin at min/max = "
            << rows.front().argmin_cut << "/" << rows.back().argmin_cut << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edge image-clustering pipeline experiments"};
  app.require_subcommand(1);

  // gen-dataset
  std::string gen_profile;
  int gen_n = 30;
  std::string gen_out;
  std::uint64_t gen_seed = 0;
  CLI::App* gen = app.add_subcommand("gen-dataset", "generate a synthetic device fleet dataset");
  gen->add_option("--profile", gen_profile, "blobs|geo-correlated|overlapping")->required();
  gen->add_option("--n-images", gen_n, "number of images")->default_val(gen_n);
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_option("--rng-seed", gen_seed, "generator seed")->default_val(gen_seed);

  // pipeline
  PipelineFlags pipeline_flags;
  CLI::App* pipeline = app.add_subcommand("pipeline", "run the four-stage pipeline");
  attach_pipeline_flags(pipeline, pipeline_flags, true);

  // simulate
  SimulateFlags simulate_flags;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "distributed vocabulary K-Means over the simulated fleet");
  attach_pipeline_flags(simulate, simulate_flags.pipeline, false);
  simulate->add_option("--master", simulate_flags.master,
                       "master device id (default: first device)");

  // placement
  PlacementFlags placement_flags;
  CLI::App* placement = app.add_subcommand("placement", "pipeline placement cost sweep");
  placement->add_option("--config", placement_flags.config, "placement config JSON")->required();
  placement->add_option("--out", placement_flags.out, "output directory")->required();
  placement->add_option("--f", placement_flags.f, "fraction of photos to upload");
  placement->add_flag("--measure", placement_flags.measure,
                      "measure the workload with a fresh pipeline run");
  placement->add_option("--manifest", placement_flags.pipeline.manifest,
                        "manifest for --measure");
  placement->add_option("--k-vocab", placement_flags.pipeline.k_vocab, "vocabulary size")
      ->default_val(placement_flags.pipeline.k_vocab);
  placement->add_option("--k-img", placement_flags.pipeline.k_img, "image cluster count")
      ->default_val(placement_flags.pipeline.k_img);
  placement->add_option("--rng-seed", placement_flags.pipeline.rng_seed, "pipeline seed")
      ->default_val(placement_flags.pipeline.rng_seed);

  // overlap
  std::string overlap_a, overlap_b;
  CLI::App* overlap = app.add_subcommand("overlap", "overlap between two label files");
  overlap->add_option("--a", overlap_a, "first labels file")->required();
  overlap->add_option("--b", overlap_b, "second labels file")->required();

  try {
    app.parse(argc, argv);

    if (gen->parsed()) {
      const auto profile = ec::dataset_profile_from_string(gen_profile);
      const auto dataset = ec::generate_dataset(profile, gen_n, gen_out, gen_seed);
      std::cout << "gen-dataset: " << dataset.truth.size() << " images under " << gen_out
                << "\n";
      return 0;
    }
    if (pipeline->parsed()) return run_pipeline_cmd(pipeline_flags);
    if (simulate->parsed()) {
      if (simulate_flags.pipeline.approx) {
        ec::fail(ec::Errc::ConfigError, "simulate runs the exact distributed algorithm");
      }
      return run_simulate_cmd(simulate_flags);
    }
    if (placement->parsed()) {
      if (placement_flags.measure && placement_flags.pipeline.manifest.empty()) {
        ec::fail(ec::Errc::ConfigError, "--measure requires --manifest");
      }
      return run_placement_cmd(placement_flags);
    }
    if (overlap->parsed()) {
      const ec::LabelsFile a = ec::read_labels_file(overlap_a);
      const ec::LabelsFile b = ec::read_labels_file(overlap_b);
      if (a.k != b.k) ec::fail(ec::Errc::LengthMismatch, "label files use different k");
      std::cout << format_double(ec::cluster_overlap(a.labels, b.labels, a.k)) << "\n";
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const ec::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
