#include "edgecluster/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "edgecluster/error.hpp"

namespace edgecluster {

using nlohmann::json;

const char* stop_reason_name(StopReason reason) {
  switch (reason) {
    case StopReason::FixedIterations: return "fixed_iterations";
    case StopReason::NoChange: return "no_change";
    case StopReason::EpsilonChange: return "epsilon_change";
    case StopReason::IterationCap: return "iteration_cap";
  }
  return "unknown";
}

namespace {

json summary_to_json(const RunSummary& summary) {
  return {{"k", summary.k},
          {"iterations", summary.iterations},
          {"stop_reason", stop_reason_name(summary.stop_reason)},
          {"evaluations", summary.evaluations},
          {"objective_trace", summary.objective_trace}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot open for writing: " + path.string());
  out << text;
  if (!out.good()) fail(Errc::IoError, "write failed: " + path.string());
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot open: " + path.string());
  json root = json::parse(in, nullptr, false);
  if (root.is_discarded()) fail(Errc::ConfigError, "invalid JSON: " + path.string());
  return root;
}

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

}  // namespace

std::string pipeline_report_to_json(const PipelineReport& report) {
  json stages = json::array();
  for (const StageMetric& stage : report.stages) {
    stages.push_back({{"name", stage.name},
                      {"wall_ms", stage.wall_ms},
                      {"evaluations", stage.evaluations}});
  }
  json images = json::array();
  for (const ImageStat& image : report.images) {
    images.push_back({{"image_id", image.image_id},
                      {"device_id", image.device_id},
                      {"descriptor_count", image.descriptor_count}});
  }
  json representatives = json::array();
  for (const Representative& rep : report.representatives) {
    representatives.push_back({{"cluster", rep.cluster}, {"image_id", rep.image_id}});
  }
  json image_clusters = summary_to_json(report.image_clusters);
  image_clusters["labels"] = report.image_labels;

  json root = {{"rng_seed", report.rng_seed},
               {"seeding", report.seeding},
               {"approx", report.approx},
               {"stages", std::move(stages)},
               {"vocabulary", summary_to_json(report.vocabulary)},
               {"image_clusters", std::move(image_clusters)},
               {"images", std::move(images)},
               {"representatives", std::move(representatives)},
               {"empty_clusters", report.empty_clusters}};
  if (report.active) {
    root["active"] = {{"fraction", report.active->fraction},
                      {"r_values_active", report.active->r_values_active}};
  }
  if (report.overlap_vs_baseline) {
    root["overlap_vs_baseline"] = *report.overlap_vs_baseline;
  }
  return root.dump(2) + "\n";
}

void save_pipeline_report(const std::filesystem::path& path, const PipelineReport& report) {
  write_text(path, pipeline_report_to_json(report));
}

StoredImageLabels load_report_image_labels(const std::filesystem::path& path) {
  const json root = load_json(path);
  if (!root.contains("images") || !root.contains("image_clusters")) {
    fail(Errc::ConfigError, "not a pipeline report: " + path.string());
  }
  StoredImageLabels stored;
  for (const json& image : root["images"]) {
    stored.image_ids.push_back(image["image_id"].get<std::uint32_t>());
  }
  stored.labels = root["image_clusters"]["labels"].get<std::vector<int>>();
  stored.k = root["image_clusters"]["k"].get<std::size_t>();
  if (stored.labels.size() != stored.image_ids.size()) {
    fail(Errc::ConfigError, "report labels do not match image list");
  }
  return stored;
}

std::string sim_report_to_json(const SimReport& report, std::uint64_t rng_seed, int master) {
  json timeline = json::array();
  for (const SimEvent& event : report.timeline) {
    timeline.push_back({{"t", event.time},
                        {"iteration", event.iteration},
                        {"kind", to_string(event.kind)},
                        {"from", event.from},
                        {"to", event.to}});
  }
  json centroids = json::array();
  for (std::size_t j = 0; j < report.final_centroids.size(); ++j) {
    const auto row = report.final_centroids[j];
    centroids.push_back(std::vector<double>(row.begin(), row.end()));
  }
  json root = {{"rng_seed", rng_seed},
               {"master", master},
               {"k", report.final_centroids.size()},
               {"d", report.final_centroids.dim()},
               {"iterations", report.iterations},
               {"stop_reason", stop_reason_name(report.stop_reason)},
               {"simulated_clock_s", report.simulated_clock},
               {"bytes_transferred", report.bytes_transferred},
               {"final_centroids", std::move(centroids)},
               {"labels", report.labels},
               {"timeline", std::move(timeline)}};
  return root.dump(2) + "\n";
}

void save_sim_report(const std::filesystem::path& path, const SimReport& report,
                     std::uint64_t rng_seed, int master) {
  write_text(path, sim_report_to_json(report, rng_seed, master));
}

void write_labels_file(const std::filesystem::path& path, std::span<const int> labels,
                       std::size_t k) {
  std::string text = std::to_string(labels.size()) + ' ' + std::to_string(k) + '\n';
  for (const int label : labels) {
    text += std::to_string(label);
    text += '\n';
  }
  write_text(path, text);
}

LabelsFile read_labels_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot open labels file: " + path.string());
  std::size_t n = 0;
  LabelsFile file;
  if (!(in >> n >> file.k)) fail(Errc::ConfigError, "labels file header must be 'n k'");
  file.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(in >> file.labels[i])) fail(Errc::ConfigError, "labels file truncated");
  }
  return file;
}

void write_rvalue_cdf(const std::filesystem::path& path, std::span<const double> active_r) {
  std::vector<double> sorted(active_r.begin(), active_r.end());
  std::sort(sorted.begin(), sorted.end());
  std::string text = "r_value,cdf\n";
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    text += format_double(sorted[i]);
    text += ',';
    text += format_double(static_cast<double>(i + 1) / static_cast<double>(sorted.size()));
    text += '\n';
  }
  write_text(path, text);
}

namespace {

double field(const json& node, const char* key) {
  if (!node.contains(key) || !node[key].is_number()) {
    fail(Errc::ConfigError, std::string("missing numeric field: ") + key);
  }
  const double value = node[key].get<double>();
  if (!std::isfinite(value)) fail(Errc::ConfigError, std::string("non-finite field: ") + key);
  return value;
}

}  // namespace

PlacementInput load_placement_config(const std::filesystem::path& path) {
  const json root = load_json(path);
  if (!root.contains("workload") || !root.contains("rates")) {
    fail(Errc::ConfigError, "placement config needs 'workload' and 'rates'");
  }
  PlacementInput input;
  const json& workload = root["workload"];
  const json& work = workload.contains("work") ? workload["work"] : json::object();
  input.workload.work[kStageExtract] = field(work, "extract");
  input.workload.work[kStageVocab] = field(work, "vocab");
  input.workload.work[kStageVectorize] = field(work, "vectorize");
  input.workload.work[kStageImgCluster] = field(work, "imgcluster");
  input.workload.raw_images_bytes = field(workload, "raw_images_bytes");
  input.workload.descriptors_bytes = field(workload, "descriptors_bytes");
  input.workload.vocabulary_bytes = field(workload, "vocabulary_bytes");
  input.workload.bow_bytes = field(workload, "bow_bytes");
  input.workload.representative_image_bytes = field(workload, "representative_image_bytes");
  input.workload.image_count = static_cast<std::uint64_t>(field(workload, "image_count"));

  const json& rates = root["rates"];
  input.rates.mobile_rate = field(rates, "mobile_rate");
  input.rates.cloud_rate = field(rates, "cloud_rate");
  input.rates.uplink_latency_s =
      rates.contains("uplink_latency_s") ? field(rates, "uplink_latency_s") : 0.0;
  input.f = root.contains("f") ? field(root, "f") : 0.0;

  if (root.contains("bandwidths_bps")) {
    input.bandwidths_bps = root["bandwidths_bps"].get<std::vector<double>>();
  } else if (root.contains("bandwidth_grid")) {
    const json& grid = root["bandwidth_grid"];
    const double lo = field(grid, "min_bps");
    const double hi = field(grid, "max_bps");
    const auto points = static_cast<std::size_t>(field(grid, "points"));
    if (lo <= 0.0 || hi < lo || points < 1) fail(Errc::ConfigError, "invalid bandwidth grid");
    if (points == 1) {
      input.bandwidths_bps.push_back(lo);
    } else {
      const double step = (std::log(hi) - std::log(lo)) / static_cast<double>(points - 1);
      for (std::size_t i = 0; i < points; ++i) {
        input.bandwidths_bps.push_back(std::exp(std::log(lo) + step * static_cast<double>(i)));
      }
    }
  }
  return input;
}

std::string placement_config_to_json(const PlacementInput& input) {
  json root = {
      {"workload",
       {{"work",
         {{"extract", input.workload.work[kStageExtract]},
          {"vocab", input.workload.work[kStageVocab]},
          {"vectorize", input.workload.work[kStageVectorize]},
          {"imgcluster", input.workload.work[kStageImgCluster]}}},
        {"raw_images_bytes", input.workload.raw_images_bytes},
        {"descriptors_bytes", input.workload.descriptors_bytes},
        {"vocabulary_bytes", input.workload.vocabulary_bytes},
        {"bow_bytes", input.workload.bow_bytes},
        {"representative_image_bytes", input.workload.representative_image_bytes},
        {"image_count", input.workload.image_count}}},
      {"rates",
       {{"mobile_rate", input.rates.mobile_rate},
        {"cloud_rate", input.rates.cloud_rate},
        {"uplink_latency_s", input.rates.uplink_latency_s}}},
      {"f", input.f},
      {"bandwidths_bps", input.bandwidths_bps},
  };
  return root.dump(2) + "\n";
}

void save_placement_config(const std::filesystem::path& path, const PlacementInput& input) {
  write_text(path, placement_config_to_json(input));
}

}  // namespace edgecluster
