#include "edgecluster/kmeans.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "cluster_detail.hpp"
#include "edgecluster/error.hpp"
#include "edgecluster/rng.hpp"

namespace edgecluster {

namespace detail {

CentroidSet finalize_means(const PointSet& points, std::size_t k,
                           std::vector<double>& sums,
                           std::vector<std::uint64_t>& counts,
                           std::span<const std::size_t> movable,
                           std::vector<int>& labels,
                           const CentroidSet* previous) {
  const std::size_t d = points.dim();
  CentroidSet centroids(k, d);
  for (std::size_t j = 0; j < k; ++j) {
    if (counts[j] == 0) continue;
    auto row = centroids.row(j);
    for (std::size_t c = 0; c < d; ++c) row[c] = sums[j * d + c] / static_cast<double>(counts[j]);
  }

  for (std::size_t j = 0; j < k; ++j) {
    if (counts[j] != 0) continue;
    std::ptrdiff_t donor = -1;
    double worst = -1.0;
    for (const std::size_t id : movable) {
      const std::size_t source = static_cast<std::size_t>(labels[id]);
      if (counts[source] < 2) continue;  // donating would empty the source
      const double dist = squared_distance(points[id], centroids[source]);
      if (dist > worst) {
        worst = dist;
        donor = static_cast<std::ptrdiff_t>(id);
      }
    }
    if (donor < 0) {
      // Degenerate: nothing can move. Keep the previous row when we have one.
      auto row = centroids.row(j);
      auto src = previous != nullptr ? (*previous)[j] : points[0];
      for (std::size_t c = 0; c < d; ++c) row[c] = src[c];
      continue;
    }
    const std::size_t id = static_cast<std::size_t>(donor);
    const std::size_t source = static_cast<std::size_t>(labels[id]);
    const auto point = points[id];
    for (std::size_t c = 0; c < d; ++c) sums[source * d + c] -= point[c];
    counts[source] -= 1;
    auto src_row = centroids.row(source);
    for (std::size_t c = 0; c < d; ++c) src_row[c] = sums[source * d + c] / static_cast<double>(counts[source]);
    auto new_row = centroids.row(j);
    for (std::size_t c = 0; c < d; ++c) {
      sums[j * d + c] = point[c];
      new_row[c] = point[c];
    }
    counts[j] = 1;
    labels[id] = static_cast<int>(j);
  }
  return centroids;
}

Margins nearest_two(std::span<const double> point, const CentroidSet& centroids) {
  Margins m;
  m.best_sq = std::numeric_limits<double>::infinity();
  m.second_sq = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < centroids.size(); ++j) {
    const double dist = squared_distance(point, centroids[j]);
    if (dist < m.best_sq) {
      m.second_sq = m.best_sq;
      m.best_sq = dist;
      m.best = static_cast<int>(j);
    } else if (dist < m.second_sq) {
      m.second_sq = dist;
    }
  }
  return m;
}

}  // namespace detail

namespace {

void check_dims(const PointSet& points, const CentroidSet& centroids) {
  if (points.dim() != centroids.dim()) {
    fail(Errc::DimensionMismatch, "point dimension does not match centroid dimension");
  }
  if (centroids.empty()) fail(Errc::TooFewCentroids, "need at least one centroid");
}

}  // namespace

AssignResult assign_step(const PointSet& points, const CentroidSet& centroids) {
  check_dims(points, centroids);
  AssignResult result;
  result.labels.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto point = points[i];
    int best = 0;
    double best_sq = squared_distance(point, centroids[0]);
    for (std::size_t j = 1; j < centroids.size(); ++j) {
      const double dist = squared_distance(point, centroids[j]);
      if (dist < best_sq) {  // strict: ties stay with the lower index
        best_sq = dist;
        best = static_cast<int>(j);
      }
    }
    result.labels[i] = best;
    result.objective += best_sq;
  }
  return result;
}

CentroidSet update_step(const PointSet& points, std::span<const int> labels,
                        std::size_t k) {
  if (labels.size() != points.size()) {
    fail(Errc::LengthMismatch, "one label per point required");
  }
  if (k == 0) fail(Errc::TooFewCentroids, "k must be >= 1");
  const std::size_t d = points.dim();
  std::vector<double> sums(k * d, 0.0);
  std::vector<std::uint64_t> counts(k, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const int label = labels[i];
    if (label < 0 || static_cast<std::size_t>(label) >= k) {
      fail(Errc::InvalidLabel, "label outside [0, k)");
    }
    const auto point = points[i];
    for (std::size_t c = 0; c < d; ++c) sums[static_cast<std::size_t>(label) * d + c] += point[c];
    counts[static_cast<std::size_t>(label)] += 1;
  }
  std::vector<std::size_t> movable(points.size());
  std::iota(movable.begin(), movable.end(), std::size_t{0});
  std::vector<int> scratch_labels(labels.begin(), labels.end());
  return detail::finalize_means(points, k, sums, counts, movable, scratch_labels, nullptr);
}

ClusterRun lloyd(const PointSet& points, const CentroidSet& seeds,
                 const StopRule& stop) {
  check_dims(points, seeds);
  if (stop.max_iterations < 1) fail(Errc::ConfigError, "iteration bound must be >= 1");
  const std::size_t k = seeds.size();

  ClusterRun run;
  CentroidSet centroids = seeds;
  for (int iteration = 1;; ++iteration) {
    AssignResult assigned = assign_step(points, centroids);
    run.evaluations += static_cast<std::uint64_t>(points.size()) * k;
    run.labels = std::move(assigned.labels);
    run.objective_trace.push_back(assigned.objective);
    run.iterations = iteration;

    CentroidSet next = update_step(points, run.labels, k);
    const double moved = max_row_displacement(centroids, next);
    centroids = std::move(next);

    if (stop.kind == StopRule::Kind::FixedIterations) {
      if (iteration >= stop.max_iterations) {
        run.stop_reason = StopReason::FixedIterations;
        break;
      }
      continue;
    }
    if (stop.kind == StopRule::Kind::NoChange && moved == 0.0) {
      run.stop_reason = StopReason::NoChange;
      break;
    }
    if (stop.kind == StopRule::Kind::EpsilonChange && moved <= stop.epsilon) {
      run.stop_reason = StopReason::EpsilonChange;
      break;
    }
    if (iteration >= stop.max_iterations) {
      run.stop_reason = StopReason::IterationCap;
      break;
    }
  }
  run.final_centroids = std::move(centroids);
  return run;
}

CentroidSet seed_random(const PointSet& points, std::size_t k,
                        std::uint64_t rng_seed) {
  if (k == 0) fail(Errc::TooFewCentroids, "k must be >= 1");
  // Distinct point values in first-occurrence order.
  std::vector<std::size_t> distinct;
  std::set<std::vector<double>> seen;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto row = points[i];
    if (seen.emplace(row.begin(), row.end()).second) distinct.push_back(i);
  }
  if (distinct.size() < k) {
    fail(Errc::NotEnoughDistinctPoints, "fewer distinct points than requested seeds");
  }
  // Partial Fisher-Yates over the distinct list (documented in docs/rng.md).
  Xoshiro256ss rng(rng_seed);
  for (std::size_t t = 0; t < k; ++t) {
    const std::size_t j = t + rng.bounded(distinct.size() - t);
    std::swap(distinct[t], distinct[j]);
  }
  CentroidSet seeds(k, points.dim());
  for (std::size_t t = 0; t < k; ++t) {
    auto row = seeds.row(t);
    const auto src = points[distinct[t]];
    for (std::size_t c = 0; c < points.dim(); ++c) row[c] = src[c];
  }
  return seeds;
}

namespace {

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

}  // namespace

void write_seed_file(std::ostream& out, const CentroidSet& centroids) {
  out << centroids.size() << ' ' << centroids.dim() << '\n';
  for (std::size_t j = 0; j < centroids.size(); ++j) {
    const auto row = centroids[j];
    for (std::size_t c = 0; c < centroids.dim(); ++c) {
      if (c) out << ' ';
      out << format_double(row[c]);
    }
    out << '\n';
  }
}

void write_seed_file(const std::filesystem::path& path, const CentroidSet& centroids) {
  std::ofstream out(path);
  if (!out) fail(Errc::IoError, "cannot open seed file for writing: " + path.string());
  write_seed_file(out, centroids);
  if (!out.good()) fail(Errc::IoError, "seed file write failed: " + path.string());
}

CentroidSet read_seed_file(std::istream& in) {
  std::size_t k = 0, d = 0;
  if (!(in >> k >> d)) fail(Errc::ConfigError, "seed file header must be 'k d'");
  if (k == 0 || d == 0) fail(Errc::ConfigError, "seed file dimensions must be positive");
  CentroidSet centroids(k, d);
  for (std::size_t j = 0; j < k; ++j) {
    auto row = centroids.row(j);
    for (std::size_t c = 0; c < d; ++c) {
      if (!(in >> row[c])) fail(Errc::ConfigError, "seed file truncated");
      if (!std::isfinite(row[c])) fail(Errc::ConfigError, "seed coordinates must be finite");
    }
  }
  return centroids;
}

CentroidSet read_seed_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::SeedFileMissing, "seed file not found: " + path.string());
  return read_seed_file(in);
}

}  // namespace edgecluster
