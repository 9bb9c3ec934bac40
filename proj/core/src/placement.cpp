#include "edgecluster/placement.hpp"

#include <charconv>
#include <ostream>

#include "edgecluster/error.hpp"

namespace edgecluster {

double cut_bytes(const WorkloadProfile& workload, int cut) {
  switch (cut) {
    case 0: return workload.raw_images_bytes;
    case 1: return workload.descriptors_bytes;
    case 2: return workload.descriptors_bytes + workload.vocabulary_bytes;
    case 3: return workload.bow_bytes;
    case 4: return 0.0;
    default: fail(Errc::ConfigError, "cut must be in [0, 4]");
  }
}

CostBreakdown evaluate_config(const WorkloadProfile& workload,
                              const PlacementConfig& placement,
                              const RateModel& rates) {
  if (placement.cut < 0 || placement.cut > 4) fail(Errc::ConfigError, "cut must be in [0, 4]");
  if (placement.f < 0.0 || placement.f > 1.0) fail(Errc::ConfigError, "f must be in [0, 1]");
  if (rates.mobile_rate <= 0.0 || rates.cloud_rate <= 0.0 || rates.bandwidth_bps <= 0.0) {
    fail(Errc::ConfigError, "rates and bandwidth must be positive");
  }

  CostBreakdown cost;
  for (int stage = 0; stage < kStageCount; ++stage) {
    if (stage < placement.cut) {
      cost.t_mobile += workload.work[static_cast<std::size_t>(stage)] / rates.mobile_rate;
    } else {
      cost.t_cloud += workload.work[static_cast<std::size_t>(stage)] / rates.cloud_rate;
    }
  }
  cost.t_tx = rates.uplink_latency_s +
              cut_bytes(workload, placement.cut) / rates.bandwidth_bps +
              placement.f * static_cast<double>(workload.image_count) *
                  workload.representative_image_bytes / rates.bandwidth_bps;
  cost.total = cost.t_mobile + cost.t_cloud + cost.t_tx;
  return cost;
}

std::vector<SweepRow> sweep(const WorkloadProfile& workload, const RateModel& rates,
                            std::span<const double> bandwidths_bps, double f) {
  if (bandwidths_bps.empty()) fail(Errc::EmptySweep, "bandwidth sweep is empty");
  double previous = 0.0;
  for (const double bw : bandwidths_bps) {
    if (bw <= 0.0) fail(Errc::ConfigError, "bandwidths must be positive");
    if (bw < previous) fail(Errc::ConfigError, "bandwidths must be ascending");
    previous = bw;
  }

  std::vector<SweepRow> rows;
  rows.reserve(bandwidths_bps.size());
  for (const double bw : bandwidths_bps) {
    RateModel at_bw = rates;
    at_bw.bandwidth_bps = bw;
    SweepRow row;
    row.bandwidth_bps = bw;
    for (int cut = 0; cut <= 4; ++cut) {
      row.totals[static_cast<std::size_t>(cut)] =
          evaluate_config(workload, {cut, f}, at_bw).total;
    }
    row.argmin_cut = 0;
    for (int cut = 1; cut <= 4; ++cut) {
      // <= so exact ties resolve toward the larger cut (prefer mobile)
      if (row.totals[static_cast<std::size_t>(cut)] <=
          row.totals[static_cast<std::size_t>(row.argmin_cut)]) {
        row.argmin_cut = cut;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

void append_double(std::ostream& out, double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  out.write(buf, ptr - buf);
}

}  // namespace

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "bandwidth_bps,cut0,cut1,cut2,cut3,cut4,argmin_cut\n";
  for (const SweepRow& row : rows) {
    append_double(out, row.bandwidth_bps);
    for (const double total : row.totals) {
      out << ',';
      append_double(out, total);
    }
    out << ',' << row.argmin_cut << '\n';
  }
}

}  // namespace edgecluster
