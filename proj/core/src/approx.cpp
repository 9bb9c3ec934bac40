#include "edgecluster/approx.hpp"

#include <cmath>

#include "cluster_detail.hpp"
#include "edgecluster/error.hpp"

namespace edgecluster {

namespace {

void require_two_centroids(const PointSet& points, const CentroidSet& centroids) {
  if (points.dim() != centroids.dim()) {
    fail(Errc::DimensionMismatch, "point dimension does not match centroid dimension");
  }
  if (centroids.size() < 2) {
    fail(Errc::TooFewCentroids, "active-point analysis needs k >= 2");
  }
}

double r_from_margins(double best_sq, double second_sq) {
  if (best_sq == 0.0) return 1.0;  // on a centroid (covers duplicate centroids)
  return 1.0 - std::sqrt(best_sq / second_sq);
}

struct MarginPass {
  std::vector<int> labels;
  std::vector<double> best_sq;
  std::vector<double> second_sq;
  double objective = 0.0;
};

MarginPass assign_with_margins(const PointSet& points, const CentroidSet& centroids) {
  MarginPass pass;
  pass.labels.resize(points.size());
  pass.best_sq.resize(points.size());
  pass.second_sq.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto m = detail::nearest_two(points[i], centroids);
    pass.labels[i] = m.best;
    pass.best_sq[i] = m.best_sq;
    pass.second_sq[i] = m.second_sq;
    pass.objective += m.best_sq;
  }
  return pass;
}

ActiveReport build_report(std::size_t n, const std::vector<int>& first,
                          const MarginPass& second) {
  ActiveReport report;
  report.r_values.assign(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (first[i] == second.labels[i]) continue;
    report.active_ids.push_back(i);
    report.r_values[i] = r_from_margins(second.best_sq[i], second.second_sq[i]);
  }
  report.active_fraction =
      n == 0 ? 0.0 : static_cast<double>(report.active_ids.size()) / static_cast<double>(n);
  return report;
}

}  // namespace

double r_value(std::span<const double> point, const CentroidSet& centroids) {
  if (centroids.size() < 2) {
    fail(Errc::TooFewCentroids, "r-value needs k >= 2");
  }
  if (point.size() != centroids.dim()) {
    fail(Errc::DimensionMismatch, "point dimension does not match centroid dimension");
  }
  const auto m = detail::nearest_two(point, centroids);
  return r_from_margins(m.best_sq, m.second_sq);
}

std::pair<ActiveReport, TwoIterState> detect_active(const PointSet& points,
                                                    const CentroidSet& seeds) {
  require_two_centroids(points, seeds);
  const std::size_t n = points.size();
  const std::size_t k = seeds.size();

  AssignResult first = assign_step(points, seeds);
  CentroidSet after_first = update_step(points, first.labels, k);
  MarginPass second = assign_with_margins(points, after_first);
  CentroidSet after_second = update_step(points, second.labels, k);

  TwoIterState state;
  state.labels = second.labels;
  state.centroids = std::move(after_second);
  state.objective_trace = {first.objective, second.objective};
  state.evaluations = 2 * static_cast<std::uint64_t>(n) * k;
  return {build_report(n, first.labels, second), std::move(state)};
}

ClusterRun approx_lloyd(const PointSet& points, const CentroidSet& seeds,
                        const StopRule& stop, ActiveReport* report) {
  require_two_centroids(points, seeds);
  if (stop.max_iterations < 1) fail(Errc::ConfigError, "iteration bound must be >= 1");
  const std::size_t n = points.size();
  const std::size_t d = points.dim();
  const std::size_t k = seeds.size();

  ClusterRun run;
  const auto stopped = [&](int iteration, double moved) {
    if (stop.kind == StopRule::Kind::FixedIterations) {
      if (iteration >= stop.max_iterations) {
        run.stop_reason = StopReason::FixedIterations;
        return true;
      }
      return false;
    }
    if (stop.kind == StopRule::Kind::NoChange && moved == 0.0) {
      run.stop_reason = StopReason::NoChange;
      return true;
    }
    if (stop.kind == StopRule::Kind::EpsilonChange && moved <= stop.epsilon) {
      run.stop_reason = StopReason::EpsilonChange;
      return true;
    }
    if (iteration >= stop.max_iterations) {
      run.stop_reason = StopReason::IterationCap;
      return true;
    }
    return false;
  };

  // Iteration 1 (same as lloyd).
  AssignResult first = assign_step(points, seeds);
  run.evaluations += static_cast<std::uint64_t>(n) * k;
  run.objective_trace.push_back(first.objective);
  run.iterations = 1;
  CentroidSet centroids = update_step(points, first.labels, k);
  double moved = max_row_displacement(seeds, centroids);
  if (stopped(1, moved)) {
    if (report) {
      report->active_ids.clear();
      report->r_values.assign(n, 1.0);
      report->active_fraction = 0.0;
    }
    run.labels = std::move(first.labels);
    run.final_centroids = std::move(centroids);
    return run;
  }

  // Iteration 2: detection pass, margins give the r-values for free.
  MarginPass second = assign_with_margins(points, centroids);
  run.evaluations += static_cast<std::uint64_t>(n) * k;
  run.objective_trace.push_back(second.objective);
  run.iterations = 2;
  ActiveReport active = build_report(n, first.labels, second);
  if (report) *report = active;

  std::vector<int> labels = second.labels;
  CentroidSet next = update_step(points, labels, k);
  moved = max_row_displacement(centroids, next);
  centroids = std::move(next);
  if (stopped(2, moved)) {
    run.labels = std::move(labels);
    run.final_centroids = std::move(centroids);
    return run;
  }

  // Freeze inactive mass once; from here on only active points move.
  std::vector<double> frozen_sums(k * d, 0.0);
  std::vector<std::uint64_t> frozen_counts(k, 0);
  {
    std::size_t cursor = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (cursor < active.active_ids.size() && active.active_ids[cursor] == i) {
        ++cursor;
        continue;
      }
      const auto point = points[i];
      const auto target = static_cast<std::size_t>(labels[i]);
      for (std::size_t c = 0; c < d; ++c) frozen_sums[target * d + c] += point[c];
      frozen_counts[target] += 1;
    }
  }

  std::vector<double> sums(k * d);
  std::vector<std::uint64_t> counts(k);
  for (int iteration = 3;; ++iteration) {
    // Assignment over active points only; the objective is still Eq-style
    // bookkeeping over every point (not billed as evaluations).
    double objective = 0.0;
    std::size_t cursor = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (cursor < active.active_ids.size() && active.active_ids[cursor] == i) {
        ++cursor;
        const auto m = detail::nearest_two(points[i], centroids);
        labels[i] = m.best;
        objective += m.best_sq;
      } else {
        objective += squared_distance(points[i], centroids[static_cast<std::size_t>(labels[i])]);
      }
    }
    run.evaluations += static_cast<std::uint64_t>(active.active_ids.size()) * k;
    run.objective_trace.push_back(objective);
    run.iterations = iteration;

    sums = frozen_sums;
    counts = frozen_counts;
    for (const std::size_t i : active.active_ids) {
      const auto point = points[i];
      const auto target = static_cast<std::size_t>(labels[i]);
      for (std::size_t c = 0; c < d; ++c) sums[target * d + c] += point[c];
      counts[target] += 1;
    }
    CentroidSet updated = detail::finalize_means(points, k, sums, counts,
                                                 active.active_ids, labels, &centroids);
    moved = max_row_displacement(centroids, updated);
    centroids = std::move(updated);
    if (stopped(iteration, moved)) break;
  }
  run.labels = std::move(labels);
  run.final_centroids = std::move(centroids);
  return run;
}

}  // namespace edgecluster
